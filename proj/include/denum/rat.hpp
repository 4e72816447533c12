#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace denum {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct SingularError : Error { using Error::Error; };
struct RankError : Error { using Error::Error; };
struct DegenerateInputError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct ResourceError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct InputError : Error { using Error::Error; };
struct SlackError : Error { using Error::Error; };

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int vec_gcd(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = int_gcd(g, x);
    return g;
}

/// Rational from numerator/denominator, canonicalized.  den must be nonzero.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw DomainError("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Int rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

/// Fractional part x - floor(x), always in [0, 1).
inline Rat rat_frac(const Rat& x) {
    Rat r = x - Rat(rat_floor(x));
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline int rat_sign(const Rat& x) { return sgn(x); }

/// x^e for integer e (negative allowed when x != 0).
inline Rat rat_pow(const Rat& x, long e) {
    if (e == 0) return Rat(1);
    if (x == 0) {
        if (e < 0) throw DomainError("rat_pow: negative power of zero");
        return Rat(0);
    }
    Rat base = x;
    unsigned long n;
    if (e < 0) {
        base = Rat(x.get_den(), x.get_num());
        base.canonicalize();
        n = static_cast<unsigned long>(-e);
    } else {
        n = static_cast<unsigned long>(e);
    }
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), n);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), n);
    // gcd(p,q)=1 implies gcd(p^n,q^n)=1, so out is already canonical.
    return out;
}

inline std::string to_string(const Rat& x) { return x.get_str(); }
inline std::string to_string(const Int& x) { return x.get_str(); }

/// Parse "p" or "p/q" into a canonical rational.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw InputError("parse_rat: empty string");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw InputError("parse_rat: bad character in '" + s + "'");
    }
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw InputError("parse_rat: cannot parse '" + s + "'");
    if (r.get_den() == 0) throw InputError("parse_rat: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

}  // namespace denum
