#pragma once

// Umbrella header: exact quasi-polynomial coefficients of Sylvester's
// denumerant via signed unimodular cone decompositions and constant terms.
// jsonio.hpp is not included here; it needs nlohmann/json on the include path.

#include "cone.hpp"
#include "ctseries.hpp"
#include "denumerant.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "rat.hpp"
#include "steppoly.hpp"
