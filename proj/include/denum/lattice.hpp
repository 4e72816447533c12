#pragma once

#include "matrix.hpp"

namespace denum {

namespace detail {

struct Gso {
    std::vector<RatVec> bstar;
    std::vector<std::vector<Rat>> mu;  // mu[i][j], j < i
    RatVec nsq;                        // |b*_i|^2
};

inline Gso gram_schmidt(const std::vector<RatVec>& b) {
    int d = static_cast<int>(b.size());
    Gso g;
    g.bstar.resize(d);
    g.mu.assign(d, std::vector<Rat>(d, Rat(0)));
    g.nsq.resize(d);
    for (int i = 0; i < d; ++i) {
        g.bstar[i] = b[i];
        for (int j = 0; j < i; ++j) {
            g.mu[i][j] = vec_dot(b[i], g.bstar[j]) / g.nsq[j];
            for (size_t t = 0; t < g.bstar[i].size(); ++t)
                g.bstar[i][t] -= g.mu[i][j] * g.bstar[j][t];
        }
        g.nsq[i] = vec_dot(g.bstar[i], g.bstar[i]);
        if (g.nsq[i] == 0) throw RankError("lll_reduce: columns are linearly dependent");
    }
    return g;
}

inline Int round_nearest(const Rat& x) { return rat_floor(x + Rat(1, 2)); }

}  // namespace detail

/// LLL reduction of the lattice basis given by the columns of `basis`.
inline RatMat lll_reduce(const RatMat& basis, const Rat& delta = Rat(3, 4)) {
    if (!(delta > Rat(1, 4) && delta <= 1)) throw DomainError("lll_reduce: delta outside (1/4, 1]");
    int d = basis.cols();
    if (d == 0 || basis.rows() < d) throw RankError("lll_reduce: more columns than rows");
    std::vector<RatVec> b(d);
    for (int j = 0; j < d; ++j) b[j] = basis.col(j);

    detail::Gso g = detail::gram_schmidt(b);
    int k = 1;
    while (k < d) {
        for (int j = k - 1; j >= 0; --j) {
            if (rat_abs(g.mu[k][j]) > Rat(1, 2)) {
                Int q = detail::round_nearest(g.mu[k][j]);
                Rat qq(q);
                for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= qq * b[j][t];
                for (int t = 0; t < j; ++t) g.mu[k][t] -= qq * g.mu[j][t];
                g.mu[k][j] -= qq;
            }
        }
        Rat lhs = g.nsq[k];
        Rat rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.nsq[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            g = detail::gram_schmidt(b);
            k = std::max(k - 1, 1);
        }
    }
    RatMat out(basis.rows(), d);
    for (int j = 0; j < d; ++j) out.set_col(j, b[j]);
    return out;
}

enum class SvMode { Fast, Exact };

namespace detail {

/// (inf norm, 1-norm, entry sequence) comparison; returns true when a < b.
inline bool sv_less(const RatVec& a, const RatVec& b) {
    Rat ia = inf_norm(a), ib = inf_norm(b);
    if (ia != ib) return ia < ib;
    Rat oa = one_norm(a), ob = one_norm(b);
    if (oa != ob) return oa < ob;
    return a < b;
}

}  // namespace detail

/// Short nonzero vector of the lattice spanned by the columns of `basis`.
///
/// Fast mode returns the minimum-infinity-norm column of the LLL-reduced
/// basis.  Exact mode enumerates coefficient vectors inside a provably
/// sufficient box around the fast candidate and attains the true minimum.
inline RatVec smallest_vector(const RatMat& basis, SvMode mode = SvMode::Exact,
                              const Rat& delta = Rat(3, 4)) {
    RatMat red = lll_reduce(basis, delta);
    int d = red.cols();
    RatVec best = red.col(0);
    for (int j = 1; j < d; ++j) {
        RatVec c = red.col(j);
        if (detail::sv_less(c, best)) best = c;
    }
    if (mode == SvMode::Fast) return best;

    // Any lattice vector v = red * c with |v|_inf <= R satisfies
    // |c_i| = |row_i(red^-1) v| <= ||row_i(red^-1)||_1 * R.
    Rat r = inf_norm(best);
    if (red.rows() != d) throw RankError("smallest_vector: exact mode needs a square basis");
    RatMat inv = invert(red);
    std::vector<long> bound(d);
    double total = 1.0;
    for (int i = 0; i < d; ++i) {
        Rat m = one_norm(inv.row(i)) * r;
        if (m > Rat(100000000)) throw ResourceError("smallest_vector: enumeration box too large");
        bound[i] = rat_floor(m).get_si();
        total *= 2.0 * static_cast<double>(bound[i]) + 1.0;
        if (total > 5e8) throw ResourceError("smallest_vector: enumeration box too large");
    }
    std::vector<long> c(d, 0);
    for (int i = 0; i < d; ++i) c[i] = -bound[i];
    while (true) {
        bool zero = true;
        for (int i = 0; i < d; ++i)
            if (c[i] != 0) { zero = false; break; }
        if (!zero) {
            RatVec v(red.rows(), Rat(0));
            for (int j = 0; j < d; ++j) {
                if (c[j] == 0) continue;
                Rat cj(static_cast<long>(c[j]));
                for (int i = 0; i < red.rows(); ++i) v[i] += cj * red.at(i, j);
            }
            if (detail::sv_less(v, best)) best = v;
        }
        int i = 0;
        while (i < d && c[i] == bound[i]) { c[i] = -bound[i]; ++i; }
        if (i == d) break;
        ++c[i];
    }
    return best;
}

}  // namespace denum
