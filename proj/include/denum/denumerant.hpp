#pragma once

#include <numeric>

#include "ctseries.hpp"

namespace denum {

/// Poset of subset gcds f with their divisible blocks a(f) = {a_i : f | a_i}.
struct FLattice {
    std::vector<Int> S;                 // ascending
    std::map<Int, IntVec> assoc;        // f -> a(f), multiplicities kept
};

/// All gcds of nonempty subsets of a, with a(f) materialized semantically
/// (the incremental union in the folklore recurrence can double-insert or
/// miss entries, e.g. for (4,6,9), so a(f) is rebuilt from its definition).
inline FLattice fset(const IntVec& a) {
    if (a.empty()) throw InputError("fset: empty sequence");
    for (const Int& x : a)
        if (x < 1) throw InputError("fset: entries must be positive");
    std::vector<Int> vals = a;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

    std::set<Int> s;
    s.insert(vals[0]);
    for (size_t i = 1; i < vals.size(); ++i) {
        std::set<Int> snapshot = s;
        for (const Int& f : snapshot) s.insert(int_gcd(vals[i], f));
        s.insert(vals[i]);
    }
    FLattice fl;
    fl.S.assign(s.begin(), s.end());
    for (const Int& f : fl.S) {
        IntVec block;
        for (const Int& x : a)
            if (x % f == 0) block.push_back(x);
        fl.assoc[f] = std::move(block);
    }
    return fl;
}

/// The f with at least m+1 divisible entries; these carry E_m contributions.
inline std::vector<Int> frak_f(const FLattice& fl, int m) {
    if (m < 0) throw DomainError("frak_f: negative m");
    std::vector<Int> out;
    for (const Int& f : fl.S)
        if (static_cast<int>(fl.assoc.at(f).size()) >= m + 1) out.push_back(f);
    return out;
}

/// Inclusion-exclusion weights over the divisibility poset:
/// mu(f) = 1 - sum of mu(f') over proper multiples f' of f in the set.
/// Zero weights are dropped.
inline std::map<Int, Int> moebius(const std::vector<Int>& frak) {
    std::vector<Int> fs = frak;
    std::sort(fs.begin(), fs.end());
    std::map<Int, Int> mu;
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
        const Int& f = *it;
        Int v = 1;
        for (auto jt = fs.rbegin(); jt != it; ++jt) {
            const Int& fp = *jt;
            if (fp != f && fp % f == 0) {
                auto found = mu.find(fp);
                if (found != mu.end()) v -= found->second;
            }
        }
        if (v != 0) mu[f] = v;
    }
    return mu;
}

/// Instrumentation for the pipeline (sharing economies are asserted in tests).
struct PipelineStats {
    long emf_calls = 0;
    long todd_calls = 0;
    std::map<Int, long> cones_per_f;
};

/// Step-polynomial coefficients E_m(a; f, T) for all m in mset.
///
/// Builds the lifted unimodular decomposition of the denumerant cone of
/// (f, {a_i : f not| a_i}) once, folds it through CT_x, and extracts every
/// requested m from shared todd series.
inline std::map<int, StepPoly> compute_Emf(const IntVec& a, const Int& f, const std::set<int>& mset,
                                           PipelineStats* stats = nullptr, uint64_t seed = 0) {
    if (a.empty()) throw InputError("compute_Emf: empty sequence");
    for (const Int& x : a)
        if (x < 1) throw InputError("compute_Emf: entries must be positive");
    if (vec_gcd(a) != 1) throw InputError("compute_Emf: gcd(a) must be 1");
    if (f < 1) throw InputError("compute_Emf: f must be positive");
    if (mset.empty()) throw InputError("compute_Emf: empty m set");
    if (*mset.begin() < 0) throw DomainError("compute_Emf: negative m");
    if (stats) ++stats->emf_calls;

    IntVec af, alist;
    for (const Int& x : a)
        (x % f == 0 ? af : alist).push_back(x);

    std::vector<GTerm> gterms;
    if (alist.empty()) {
        // f divides every entry, so f = gcd(a) = 1 and the constant-term
        // factor is 1: G(s) = 1 / prod (1 - e^{a_i s}).
        GTerm g;
        g.c = StepPoly::constant(Rat(1));
        g.rates = to_rat(a);
        gterms.push_back(std::move(g));
    } else {
        DenumerantEmbedding emb = denumerant_embed(f, alist);
        std::vector<SignedCone> pieces = barvinok_decompose(emb.Hp);
        std::vector<SignedUniCone> lifted = lift_decomposition(emb, pieces);
        if (stats) stats->cones_per_f[f] = static_cast<long>(lifted.size());
        std::vector<std::pair<Int, IntVec>> rows;
        for (const SignedUniCone& piece : lifted) {
            int d = static_cast<int>(alist.size());
            for (int j = 0; j < d; ++j) {
                IntVec alpha = piece.gens.col(j);
                Int w = 0;
                for (int l = 0; l < d; ++l) w += alist[l] * alpha[l + 1];
                rows.emplace_back(w, std::move(alpha));
            }
        }
        IntVec slack = choose_slack(rows, seed);
        for (const SignedUniCone& piece : lifted) {
            HatGTerm hat = substitute(piece, alist, slack);
            std::vector<GTerm> gs = build_G(ct_x(hat), hat.b0, af);
            for (GTerm& g : gs) gterms.push_back(std::move(g));
        }
    }

    int min_m = *mset.begin();
    std::map<int, StepPoly> out;
    for (int m : mset) out[m] = StepPoly();
    for (const GTerm& g : gterms) {
        int u = static_cast<int>(g.rates.size());
        int order = u - 1 - min_m;
        if (order < 0) continue;
        std::vector<Rat> M = todd_coeffs(g.rates, order);
        if (stats) ++stats->todd_calls;
        for (int m : mset)
            if (u >= m + 1) out[m] += s_coeff(g, m, M);
    }
    for (int m : mset) {
        Rat scale = Rat(f);
        for (int i = 2; i <= m; ++i) scale /= Rat(i);
        if (m % 2 == 0) scale = -scale;  // (-1)^{m+1}
        out[m] = out[m] * scale;
    }
    return out;
}

/// Full pipeline: E_m(a; T) = sum_f mu_m(f) E_m(a; f, T) for each requested m.
inline QuasiPolynomial ct_knapsack(const IntVec& a, const std::set<int>& mset,
                                   PipelineStats* stats = nullptr, uint64_t seed = 0) {
    if (a.empty()) throw InputError("ct_knapsack: empty sequence");
    for (const Int& x : a)
        if (x < 1) throw InputError("ct_knapsack: entries must be positive");
    if (vec_gcd(a) != 1)
        throw InputError("ct_knapsack: gcd(a) must be 1 (reduce the sequence first)");
    if (mset.empty()) throw InputError("ct_knapsack: empty m set");
    if (*mset.begin() < 0) throw DomainError("ct_knapsack: negative m");

    int n = static_cast<int>(a.size()) - 1;
    FLattice fl = fset(a);
    std::map<int, std::map<Int, Int>> mu;      // m -> (f -> weight)
    std::map<Int, std::set<int>> m_of_f;       // f -> requested m with nonzero weight
    std::map<int, StepPoly> coeffs;
    for (int m : mset) {
        if (m > n) continue;  // E_m = 0 beyond the degree bound
        coeffs[m] = StepPoly();
        mu[m] = moebius(frak_f(fl, m));
        for (const auto& [f, w] : mu[m]) m_of_f[f].insert(m);
    }
    for (const auto& [f, ms] : m_of_f) {
        std::map<int, StepPoly> emf = compute_Emf(a, f, ms, stats, seed);
        for (int m : ms) coeffs[m] += emf[m] * Rat(mu[m][f]);
    }
    return QuasiPolynomial(a, std::move(coeffs));
}

/// Independent oracle: coin-counting DP over t.
inline Int oracle_count(const IntVec& a, const Int& t) {
    if (a.empty()) throw InputError("oracle_count: empty sequence");
    for (const Int& x : a)
        if (x < 1) throw InputError("oracle_count: entries must be positive");
    if (t < 0) throw InputError("oracle_count: t must be nonnegative");
    if (t > 3000000) throw ResourceError("oracle_count: t too large for the DP oracle");
    size_t tt = t.get_ui();
    std::vector<Int> dp(tt + 1);
    dp[0] = 1;
    for (const Int& coin : a) {
        size_t c = coin.get_ui();
        for (size_t s = c; s <= tt; ++s) dp[s] += dp[s - c];
    }
    return dp[tt];
}

namespace detail {

inline Int int128_to_mpz(unsigned __int128 v) {
    Int hi(static_cast<unsigned long>(v >> 64));
    Int lo(static_cast<unsigned long>(v));
    return (hi << 64) + lo;
}

}  // namespace detail

/// Batched oracle: one DP sweep up to max(ts), then read off all values.
/// Uses 128-bit counters when an a-priori bound certifies no overflow.
inline std::vector<Int> oracle_count_many(const IntVec& a, const std::vector<Int>& ts) {
    if (a.empty()) throw InputError("oracle_count_many: empty sequence");
    for (const Int& x : a)
        if (x < 1) throw InputError("oracle_count_many: entries must be positive");
    Int maxt = 0;
    for (const Int& t : ts) {
        if (t < 0) throw InputError("oracle_count_many: t must be nonnegative");
        if (t > maxt) maxt = t;
    }
    if (maxt > 30000000) throw ResourceError("oracle_count_many: t too large for the DP oracle");
    size_t tt = maxt.get_ui();

    // Bound the counts: all but the smallest coin have at most maxt/a_i + 1
    // choices, and those determine the remaining coordinate.
    size_t skip = 0;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] < a[skip]) skip = i;
    Int bound = 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (i != skip) bound *= maxt / a[i] + 1;

    std::vector<Int> out(ts.size());
    if (mpz_sizeinbase(bound.get_mpz_t(), 2) <= 126) {
        std::vector<unsigned __int128> dp(tt + 1, 0);
        dp[0] = 1;
        for (const Int& coin : a) {
            size_t c = coin.get_ui();
            for (size_t s = c; s <= tt; ++s) dp[s] += dp[s - c];
        }
        for (size_t i = 0; i < ts.size(); ++i) out[i] = detail::int128_to_mpz(dp[ts[i].get_ui()]);
    } else {
        if (maxt > 3000000)
            throw ResourceError("oracle_count_many: counts too large for the 128-bit DP");
        std::vector<Int> dp(tt + 1);
        dp[0] = 1;
        for (const Int& coin : a) {
            size_t c = coin.get_ui();
            for (size_t s = c; s <= tt; ++s) dp[s] += dp[s - c];
        }
        for (size_t i = 0; i < ts.size(); ++i) out[i] = dp[ts[i].get_ui()];
    }
    return out;
}

}  // namespace denum
