#pragma once

#include "lattice.hpp"

namespace denum {

/// Rescale every generator to a primitive integer vector (directions kept).
inline IntMat normalize_cone(const RatMat& gens) {
    if (gens.cols() == 0) throw DegenerateInputError("normalize_cone: no generators");
    IntMat out(gens.rows(), gens.cols());
    for (int j = 0; j < gens.cols(); ++j) {
        IntVec c = primitive(gens.col(j));
        for (int i = 0; i < gens.rows(); ++i) out.at(i, j) = c[i];
    }
    return out;
}

inline IntMat normalize_cone(const IntMat& gens) { return normalize_cone(to_rat(gens)); }

/// Index of a full-dimensional simplicial cone: |det| of normalized generators.
inline Int cone_index(const RatMat& gens) {
    IntMat a = normalize_cone(gens);
    if (a.rows() != a.cols())
        throw DimensionError("cone_index: cone is not full-dimensional (embed first)");
    Int d = det(a);
    if (d == 0) throw DimensionError("cone_index: generators are linearly dependent");
    return d < 0 ? Int(-d) : d;
}

inline Int cone_index(const IntMat& gens) { return cone_index(to_rat(gens)); }

/// Dual cone generators: primitive columns of (A^-1)^T.
inline IntMat dual_cone(const RatMat& gens) {
    IntMat a = normalize_cone(gens);
    if (a.rows() != a.cols())
        throw DimensionError("dual_cone: cone is not full-dimensional (embed first)");
    if (det(a) == 0) throw DimensionError("dual_cone: generators are linearly dependent");
    return normalize_cone(invert(to_rat(a)).transpose());
}

inline IntMat dual_cone(const IntMat& gens) { return dual_cone(to_rat(gens)); }

struct SignedCone {
    int sign;     // +1 or -1
    IntMat gens;  // unimodular integer generators, columns
};

namespace detail {

inline IntMat replace_col(const IntMat& m, int j, const IntVec& v) {
    IntMat r = m;
    for (int i = 0; i < m.rows(); ++i) r.at(i, j) = v[i];
    return r;
}

inline IntMat primal_from_dual(const IntMat& b) {
    return to_int_exact(invert(to_rat(b)).transpose());
}

}  // namespace detail

/// Barvinok signed decomposition into unimodular cones.
///
/// Works on the dual side: splits along a short lattice vector of L(B^-1)
/// until every piece is unimodular, then maps back to primal generators.
/// The fast LLL candidate is used when it already meets the Minkowski bound
/// ind^(-1/d); otherwise the exact enumeration kicks in.
inline std::vector<SignedCone> barvinok_decompose(const RatMat& gens) {
    IntMat a = normalize_cone(gens);
    if (a.rows() != a.cols())
        throw DimensionError("barvinok_decompose: cone is not full-dimensional (embed first)");
    int d = a.rows();
    Int da = det(a);
    if (da == 0) throw DimensionError("barvinok_decompose: generators are linearly dependent");
    if (da == 1 || da == -1) return {SignedCone{1, a}};

    std::vector<SignedCone> uni;
    std::vector<SignedCone> todo{SignedCone{1, dual_cone(to_rat(a))}};
    long steps = 0;
    while (!todo.empty()) {
        if (++steps > 10000000) throw ResourceError("barvinok_decompose: step limit exceeded");
        SignedCone cur = todo.back();
        todo.pop_back();
        const IntMat& b = cur.gens;
        Int ind = det(b);
        if (ind < 0) ind = -ind;
        if (ind == 1) {
            uni.push_back(SignedCone{cur.sign, detail::primal_from_dual(b)});
            continue;
        }
        RatMat binv = invert(to_rat(b));
        RatVec beta = smallest_vector(binv, SvMode::Fast);
        if (rat_pow(inf_norm(beta), d) * Rat(ind) > 1)
            beta = smallest_vector(binv, SvMode::Exact);
        RatVec gq = to_rat(b) * beta;
        IntVec gamma = primitive(gq);  // divides out the content; signs preserved
        RatVec k = binv * to_rat(gamma);
        bool all_nonpos = true;
        for (const Rat& x : k)
            if (x > 0) { all_nonpos = false; break; }
        if (all_nonpos) {
            for (Int& x : gamma) x = -x;
            for (Rat& x : k) x = -x;
        }
        for (int i = 0; i < d; ++i) {
            if (k[i] == 0) continue;  // lower-dimensional piece, dropped
            IntMat bi = detail::replace_col(b, i, gamma);
            int sign = cur.sign * rat_sign(k[i]);
            Int di = det(bi);
            if (di == 1 || di == -1) {
                uni.push_back(SignedCone{sign, detail::primal_from_dual(bi)});
            } else {
                todo.push_back(SignedCone{sign, bi});
            }
        }
    }
    return uni;
}

inline std::vector<SignedCone> barvinok_decompose(const IntMat& gens) {
    return barvinok_decompose(to_rat(gens));
}

namespace detail {

/// Lower-triangularize by unimodular column operations; positive diagonal.
inline IntMat column_triangularize(const IntMat& m0) {
    IntMat m = m0;
    int d = m.rows();
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            while (m.at(i, j) != 0) {
                Int q = m.at(i, i) / m.at(i, j);
                for (int t = 0; t < d; ++t) m.at(t, i) -= q * m.at(t, j);
                for (int t = 0; t < d; ++t) std::swap(m.at(t, i), m.at(t, j));
            }
        }
        if (m.at(i, i) < 0)
            for (int t = 0; t < d; ++t) m.at(t, i) = -m.at(t, i);
        if (m.at(i, i) == 0) throw SingularError("column_triangularize: singular matrix");
    }
    return m;
}

inline IntVec floor_vec(const RatVec& v) {
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = rat_floor(v[i]);
    return r;
}

}  // namespace detail

/// Integer points of the half-open parallelepiped v + { A x : x in [0,1)^d }.
///
/// Enumerates one representative per residue class of Z^d / L(A) (a box over
/// a column-triangularized basis) and reduces it into the parallelepiped.
/// Output size is exactly ind(A); the guard bounds that count.
inline std::vector<IntVec> parallelepiped_points(const IntMat& gens, const RatVec* shift = nullptr,
                                                 const Int& guard = Int(100000)) {
    if (gens.rows() != gens.cols())
        throw DimensionError("parallelepiped_points: cone is not full-dimensional");
    int d = gens.rows();
    Int ind = det(gens);
    if (ind == 0) throw DimensionError("parallelepiped_points: generators are linearly dependent");
    if (ind < 0) ind = -ind;
    if (ind > guard) throw ResourceError("parallelepiped_points: index exceeds guard");

    RatVec v(d, Rat(0));
    if (shift) {
        if (static_cast<int>(shift->size()) != d)
            throw DimensionError("parallelepiped_points: shift length mismatch");
        v = *shift;
    }
    IntMat tri = detail::column_triangularize(gens);
    std::vector<long> h(d);
    for (int i = 0; i < d; ++i) h[i] = tri.at(i, i).get_si();
    RatMat ainv = invert(to_rat(gens));

    std::vector<IntVec> pts;
    pts.reserve(ind.get_ui());
    IntVec r(d, 0);
    while (true) {
        RatVec diff(d);
        for (int i = 0; i < d; ++i) diff[i] = Rat(r[i]) - v[i];
        IntVec fl = detail::floor_vec(ainv * diff);
        IntVec p = r;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) p[i] -= gens.at(i, j) * fl[j];
        pts.push_back(p);
        int i = 0;
        while (i < d && r[i] == h[i] - 1) { r[i] = 0; ++i; }
        if (i == d) break;
        r[i] += 1;
    }
    return pts;
}

namespace detail {

inline Rat pow_vec(const RatVec& y, const IntVec& e) {
    Rat p(1);
    for (size_t i = 0; i < y.size(); ++i) {
        if (e[i] == 0) continue;
        if (!e[i].fits_slong_p()) throw ResourceError("pow_vec: exponent too large");
        p *= rat_pow(y[i], e[i].get_si());
    }
    return p;
}

}  // namespace detail

/// Generating function of v + C(A) for unimodular A at the point y.
inline Rat gf_eval_unimodular(const IntMat& gens, const RatVec& vertex, const RatVec& y) {
    int d = gens.cols();
    if (gens.rows() != static_cast<int>(y.size()))
        throw DimensionError("gf_eval_unimodular: y dimension mismatch");
    if (gens.rows() != d)
        throw DimensionError("gf_eval_unimodular: cone is not full-dimensional");
    RatVec ell = invert(to_rat(gens)) * vertex;
    IntVec e(gens.rows(), 0);
    for (int j = 0; j < d; ++j) {
        Int c = rat_ceil(ell[j]);
        for (int i = 0; i < gens.rows(); ++i) e[i] += c * gens.at(i, j);
    }
    Rat num = detail::pow_vec(y, e);
    Rat den(1);
    for (int j = 0; j < d; ++j) {
        Rat f = Rat(1) - detail::pow_vec(y, gens.col(j));
        if (f == 0) throw PoleError("gf_eval_unimodular: y is a pole of the generating function");
        den *= f;
    }
    return num / den;
}

/// Stanley formula: sum the parallelepiped points of v + Pi(A) over the
/// denominator product.  Exact oracle; cost proportional to ind(A).
inline Rat gf_eval_cone(const IntMat& gens, const RatVec& vertex, const RatVec& y,
                        const Int& guard = Int(100000)) {
    IntMat a = normalize_cone(gens);
    std::vector<IntVec> pts = parallelepiped_points(a, &vertex, guard);
    Rat num(0);
    for (const IntVec& p : pts) num += detail::pow_vec(y, p);
    Rat den(1);
    for (int j = 0; j < a.cols(); ++j) {
        Rat f = Rat(1) - detail::pow_vec(y, a.col(j));
        if (f == 0) throw PoleError("gf_eval_cone: y is a pole of the generating function");
        den *= f;
    }
    return num / den;
}

inline Rat gf_eval_decomposition(const std::vector<SignedCone>& pieces, const RatVec& vertex,
                                 const RatVec& y) {
    Rat s(0);
    for (const SignedCone& c : pieces)
        s += Rat(c.sign) * gf_eval_unimodular(c.gens, vertex, y);
    return s;
}

/// Change of coordinates that flattens the denumerant cone of (f, alist).
///
/// H stacks the relation row -alist over f*I; U is a unimodular completion
/// of (f, alist); U*H = (0; Hp) with Hp full-dimensional in dimension d.
struct DenumerantEmbedding {
    Int f;
    IntVec alist;
    IntMat H;     // (d+1) x d
    IntMat U;     // (d+1) x (d+1), first row (f, alist)
    IntMat Uinv;  // integer inverse of U
    IntMat Hp;    // d x d, full-dimensional image
};

inline DenumerantEmbedding denumerant_embed(const Int& f, const IntVec& alist) {
    if (f < 1) throw InputError("denumerant_embed: f must be positive");
    if (alist.empty()) throw InputError("denumerant_embed: alist must be nonempty");
    for (const Int& x : alist)
        if (x < 1) throw InputError("denumerant_embed: alist entries must be positive");
    IntVec w;
    w.push_back(f);
    for (const Int& x : alist) w.push_back(x);
    if (vec_gcd(w) != 1) throw InputError("denumerant_embed: gcd(f, alist) must be 1");

    int d = static_cast<int>(alist.size());
    DenumerantEmbedding e;
    e.f = f;
    e.alist = alist;
    e.H = IntMat(d + 1, d);
    for (int j = 0; j < d; ++j) {
        e.H.at(0, j) = -alist[j];
        e.H.at(j + 1, j) = f;
    }
    e.U = unimodular_completion(w);
    e.Uinv = to_int_exact(invert(to_rat(e.U)));
    IntMat uh = e.U * e.H;
    e.Hp = IntMat(d, d);
    for (int j = 0; j < d; ++j) {
        if (uh.at(0, j) != 0) throw Error("denumerant_embed: first row of U*H not zero");
        for (int i = 0; i < d; ++i) e.Hp.at(i, j) = uh.at(i + 1, j);
    }
    return e;
}

/// Unimodular piece lifted back to the ambient lattice of the denumerant cone.
struct SignedUniCone {
    int sign;
    IntMat gens;  // (d+1) x d ambient generators
    RatVec k;     // vertex coordinates per unit T: B^-1 v' with v' from U(1/f, 0..0)
};

inline std::vector<SignedUniCone> lift_decomposition(const DenumerantEmbedding& e,
                                                     const std::vector<SignedCone>& pieces) {
    int d = static_cast<int>(e.alist.size());
    RatVec vp(d);
    for (int i = 0; i < d; ++i) vp[i] = make_rat(e.U.at(i + 1, 0), e.f);
    std::vector<SignedUniCone> out;
    out.reserve(pieces.size());
    for (const SignedCone& p : pieces) {
        SignedUniCone c;
        c.sign = p.sign;
        c.k = invert(to_rat(p.gens)) * vp;
        IntMat stacked(d + 1, d);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) stacked.at(i + 1, j) = p.gens.at(i, j);
        c.gens = e.Uinv * stacked;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace denum
