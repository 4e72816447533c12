#pragma once

#include <random>
#include <set>
#include <tuple>

#include "cone.hpp"
#include "steppoly.hpp"

namespace denum {

/// One lifted cone term after the slack substitution:
///   sign * q^m0 e^{b0 x} / [ prod_{b in B0}(1-e^{bx})
///                            prod_mixed (1-q^m e^{bx}) prod_pureq (1-q^m) ]
struct HatGTerm {
    int sign = 1;
    StepPoly m0;
    StepPoly b0;
    RatVec B0;                               // pure-x rates, nonzero
    std::vector<std::pair<Int, Rat>> mixed;  // (m, b), both nonzero
    std::vector<Int> pureq;                  // nonzero q-exponents
};

/// Summand of CT_x: coeff * b0^b0pow * q^qexp / prod (1-q^m)^pow.
struct QRatTerm {
    Rat coeff;
    int b0pow = 0;
    StepPoly qexp;
    std::map<Int, int> den;
};

/// Summand of G(s) = c * e^{b0 s} / prod_j (1 - e^{b_j s}).
struct GTerm {
    StepPoly c;
    StepPoly b0;
    RatVec rates;
};

namespace detail {

inline std::vector<Rat> bernoulli_numbers(int n) {
    // B_0..B_n via sum_{j<=k} C(k+1,j) B_j = 0 (second Bernoulli, B_1 = -1/2
    // is not used here; this recurrence gives B_1 = -1/2 automatically).
    std::vector<Rat> b(n + 1);
    b[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Rat s(0);
        Int binom = 1;  // C(k+1, j) built incrementally
        for (int j = 0; j < k; ++j) {
            s += Rat(binom) * b[j];
            binom = binom * (k + 1 - j) / (j + 1);
        }
        b[k] = -s / Rat(binom);
    }
    return b;
}

/// Coefficient lists of the Eulerian numerators A_0..A_n where
/// sum_{i>=0} i^k w^i = A_k(w) / (1-w)^{k+1}.
inline std::vector<std::vector<Rat>> eulerian_numerators(int n) {
    std::vector<std::vector<Rat>> a(n + 1);
    a[0] = {Rat(1)};
    for (int k = 1; k <= n; ++k) {
        a[k].assign(k + 1, Rat(0));
        for (int i = 0; i <= k; ++i) {
            Rat v(0);
            if (i < k) v += Rat(i) * a[k - 1][i];
            if (i >= 1) v += Rat(k - i + 1) * a[k - 1][i - 1];
            a[k][i] = v;
        }
    }
    return a;
}

inline std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, int n) {
    std::vector<Rat> c(n + 1, Rat(0));
    for (int i = 0; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= n; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

struct QFrac {
    std::map<Int, Rat> num;  // Laurent polynomial in q
    std::map<Int, int> den;  // (1-q^m)^pow
};

inline QFrac qfrac_mul(const QFrac& a, const QFrac& b) {
    QFrac c;
    for (const auto& [ea, ca] : a.num)
        for (const auto& [eb, cb] : b.num) {
            Rat& slot = c.num[ea + eb];
            slot += ca * cb;
        }
    for (auto it = c.num.begin(); it != c.num.end();) {
        if (it->second == 0) it = c.num.erase(it);
        else ++it;
    }
    c.den = a.den;
    for (const auto& [m, e] : b.den) c.den[m] += e;
    return c;
}

}  // namespace detail

/// Integer slack vector c making c . alpha nonzero for every zero-q-weight
/// denominator row.  Tries c = 0, then geometric vectors (1, t, t^2, ...),
/// then seeded random vectors.
inline IntVec choose_slack(const std::vector<std::pair<Int, IntVec>>& rows, uint64_t seed = 0) {
    if (rows.empty()) throw DegenerateInputError("choose_slack: no rows");
    size_t dim = rows[0].second.size();
    std::vector<const IntVec*> zero_rows;
    for (const auto& [w, alpha] : rows) {
        if (alpha.size() != dim) throw DimensionError("choose_slack: ragged rows");
        if (w == 0) zero_rows.push_back(&alpha);
    }
    auto ok = [&](const IntVec& c) {
        for (const IntVec* alpha : zero_rows) {
            Int dot = 0;
            for (size_t i = 0; i < dim; ++i) dot += c[i] * (*alpha)[i];
            if (dot == 0) return false;
        }
        return true;
    };
    IntVec c(dim, 0);
    if (ok(c)) return c;
    for (long t = 2; t <= 40; ++t) {
        Int p = 1;
        for (size_t i = 0; i < dim; ++i) {
            c[i] = p;
            p *= t;
        }
        if (ok(c)) return c;
    }
    std::mt19937_64 rng(seed ^ 0x5bd1e995u);
    long bound = 16;
    for (int attempt = 0; attempt < 2000; ++attempt) {
        if (attempt % 100 == 99) bound *= 2;
        std::uniform_int_distribution<long> dist(-bound, bound);
        for (size_t i = 0; i < dim; ++i) c[i] = Int(dist(rng));
        if (ok(c)) return c;
    }
    throw SlackError("choose_slack: no valid slack vector found");
}

/// Apply y_0 = e^{c_0 x}, y_l = e^{c_l x} q^{a_l} to one lifted cone piece.
inline HatGTerm substitute(const SignedUniCone& piece, const IntVec& alist, const IntVec& slack) {
    int d = static_cast<int>(alist.size());
    if (piece.gens.rows() != d + 1 || piece.gens.cols() != d)
        throw DimensionError("substitute: piece shape mismatch");
    if (static_cast<int>(slack.size()) != d + 1)
        throw DimensionError("substitute: slack length must be d+1");
    HatGTerm h;
    h.sign = piece.sign;
    for (int j = 0; j < d; ++j) {
        IntVec alpha = piece.gens.col(j);
        Int w = 0;
        for (int l = 0; l < d; ++l) w += alist[l] * alpha[l + 1];
        Int xw = 0;
        for (int i = 0; i <= d; ++i) xw += slack[i] * alpha[i];
        StepPoly frac = atom_canon(Rat(-piece.k[j]));
        h.m0 += frac * Rat(w);
        h.b0 += frac * Rat(xw);
        if (w == 0) {
            if (xw == 0) throw SlackError("substitute: invalid slack vector (vanishing denominator)");
            h.B0.push_back(Rat(xw));
        } else if (xw != 0) {
            h.mixed.emplace_back(w, Rat(xw));
        } else {
            h.pureq.push_back(w);
        }
    }
    return h;
}

/// Constant term in x of one HatGTerm, exactly, as a sum of QRatTerms.
///
/// The pure-x factors contribute Todd series and an x^-|B0| pole, the mixed
/// factors expand through sum_i i^k w^i = A_k(w)/(1-w)^{k+1}, and e^{b0 x}
/// stays symbolic through b0pow.
inline std::vector<QRatTerm> ct_x(const HatGTerm& h) {
    int p = static_cast<int>(h.B0.size());
    std::vector<Rat> bern = detail::bernoulli_numbers(p);
    std::vector<std::vector<Rat>> eul = detail::eulerian_numerators(p);

    // Product over factor series, truncated at degree p.  Coefficients are
    // formal sums of QFracs.
    std::vector<std::vector<detail::QFrac>> acc(p + 1);
    {
        detail::QFrac one;
        one.num[0] = 1;
        acc[0].push_back(one);
    }
    auto mul_factor = [&](auto&& coeff_k) {
        std::vector<std::vector<detail::QFrac>> next(p + 1);
        for (int k = 0; k <= p; ++k) {
            detail::QFrac fk = coeff_k(k);
            if (fk.num.empty()) continue;
            for (int i = 0; i + k <= p; ++i)
                for (const detail::QFrac& g : acc[i]) next[i + k].push_back(detail::qfrac_mul(g, fk));
        }
        acc = std::move(next);
    };

    Rat prefac(1);
    for (const Rat& b : h.B0) {
        if (b == 0) throw DomainError("ct_x: zero pure-x rate");
        prefac *= Rat(-1) / b;
        mul_factor([&](int k) {
            detail::QFrac f;
            Rat c = bern[k] * rat_pow(b, k);
            for (int i = 2; i <= k; ++i) c /= Rat(i);
            if (c != 0) f.num[0] = c;
            return f;
        });
    }
    for (const auto& [m, b] : h.mixed) {
        if (m == 0 || b == 0) throw DomainError("ct_x: degenerate mixed factor");
        mul_factor([&](int k) {
            detail::QFrac f;
            Rat fact(1);
            for (int i = 2; i <= k; ++i) fact *= Rat(i);
            Rat scale = rat_pow(b, k) / fact;
            for (int i = 0; i <= k; ++i) {
                if (eul[k][i] == 0) continue;
                f.num[Int(m * i)] = scale * eul[k][i];
            }
            if (!f.num.empty()) f.den[m] = k + 1;
            return f;
        });
    }

    std::map<Int, int> base_den;
    for (const Int& m : h.pureq) {
        if (m == 0) throw DomainError("ct_x: zero pure-q exponent");
        base_den[m] += 1;
    }

    std::map<std::tuple<int, Int, std::map<Int, int>>, Rat> combined;
    int nmax = h.b0.is_zero() ? 0 : p;
    Rat nfact(1);
    for (int n = 0; n <= nmax; ++n) {
        if (n >= 2) nfact *= Rat(n);
        for (const detail::QFrac& f : acc[p - n]) {
            std::map<Int, int> den = base_den;
            for (const auto& [m, e] : f.den) den[m] += e;
            for (const auto& [e, c] : f.num) {
                Rat v = Rat(h.sign) * prefac * c / nfact;
                combined[{n, e, den}] += v;
            }
        }
    }

    std::vector<QRatTerm> out;
    for (const auto& [key, c] : combined) {
        if (c == 0) continue;
        QRatTerm t;
        t.coeff = c;
        t.b0pow = std::get<0>(key);
        t.qexp = h.m0 + StepPoly::constant(Rat(std::get<1>(key)));
        t.den = std::get<2>(key);
        out.push_back(std::move(t));
    }
    return out;
}

/// Fold q = e^s into the CT_x output and append the rates of the divisible
/// block a(f); the overall factor f is NOT applied here.
inline std::vector<GTerm> build_G(const std::vector<QRatTerm>& terms, const StepPoly& b0_sym,
                                  const IntVec& af) {
    std::vector<GTerm> out;
    out.reserve(terms.size());
    for (const QRatTerm& t : terms) {
        GTerm g;
        g.c = StepPoly::constant(t.coeff) * b0_sym.pow(t.b0pow);
        if (g.c.is_zero()) continue;
        g.b0 = t.qexp;
        for (const auto& [m, e] : t.den)
            for (int i = 0; i < e; ++i) g.rates.push_back(Rat(m));
        for (const Int& v : af) g.rates.push_back(Rat(v));
        out.push_back(std::move(g));
    }
    return out;
}

/// Taylor coefficients M_0..M_order of
///   hatG(s) = e^{(sum b)/2 s} prod_j b_j s / (1 - e^{b_j s}).
/// hatG is even, so odd coefficients vanish.
inline std::vector<Rat> todd_coeffs(const RatVec& rates, int order) {
    if (order < 0) throw DomainError("todd_coeffs: negative order");
    std::vector<Rat> bern = detail::bernoulli_numbers(order);
    std::vector<Rat> acc(order + 1, Rat(0));
    acc[0] = 1;
    Rat half_sum(0);
    for (const Rat& b : rates) {
        if (b == 0) throw DomainError("todd_coeffs: zero rate");
        half_sum += b / 2;
        std::vector<Rat> f(order + 1);
        Rat bp(1), fact(1);
        for (int k = 0; k <= order; ++k) {
            if (k >= 2) fact *= Rat(k);
            f[k] = -bern[k] * bp / fact;
            bp *= b;
        }
        acc = detail::series_mul(acc, f, order);
    }
    std::vector<Rat> ex(order + 1);
    Rat hp(1), fact(1);
    for (int k = 0; k <= order; ++k) {
        if (k >= 2) fact *= Rat(k);
        ex[k] = hp / fact;
        hp *= half_sum;
    }
    return detail::series_mul(acc, ex, order);
}

/// Laurent coefficient [s^{-1-m}] of a GTerm, using precomputed todd
/// coefficients M (must cover order u-1-m).
inline StepPoly s_coeff(const GTerm& g, int m, const std::vector<Rat>& M) {
    if (m < 0) throw DomainError("s_coeff: negative m");
    int u = static_cast<int>(g.rates.size());
    if (u < m + 1) return StepPoly();
    int need = u - 1 - m;
    if (static_cast<int>(M.size()) <= need) throw DimensionError("s_coeff: todd order too small");
    Rat prod(1), half(0);
    for (const Rat& b : g.rates) {
        prod *= b;
        half += b / 2;
    }
    StepPoly shifted = g.b0 - StepPoly::constant(half);
    StepPoly acc;
    StepPoly power = StepPoly::constant(Rat(1));
    Rat fact(1);
    for (int k = 0; k <= need; ++k) {
        if (k >= 2) fact *= Rat(k);
        acc += power * (M[need - k] / fact);
        if (k < need) power = power * shifted;
    }
    return (g.c * acc) * (Rat(1) / prod);
}

inline StepPoly s_coeff(const GTerm& g, int m) {
    int u = static_cast<int>(g.rates.size());
    if (m < 0) throw DomainError("s_coeff: negative m");
    if (u < m + 1) return StepPoly();
    return s_coeff(g, m, todd_coeffs(g.rates, u - 1 - m));
}

}  // namespace denum
