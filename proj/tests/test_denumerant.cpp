#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include <denum/denumerant.hpp>

using namespace denum;

namespace {

StepPoly half_atom() { return StepPoly::atom(make_rat(1, 2)); }
StepPoly third_atom() { return StepPoly::atom(make_rat(2, 3)); }

/// E(2,3,3,6; t) written out coefficient by coefficient.
QuasiPolynomial golden_quasi() {
    StepPoly a = half_atom(), b = third_atom();
    std::map<int, StepPoly> c;
    c[3] = StepPoly::constant(make_rat(1, 648));
    c[2] = StepPoly::constant(make_rat(1, 24)) - b * make_rat(1, 36);
    c[1] = StepPoly::constant(make_rat(13, 36)) - a.pow(2) * make_rat(1, 6) +
           b.pow(2) * make_rat(1, 6) - b * make_rat(1, 2);
    c[0] = a.pow(3) * make_rat(2, 3) + a.pow(2) * b - b.pow(3) * make_rat(1, 3) -
           a.pow(2) * make_rat(3, 2) + b.pow(2) * make_rat(3, 2) - a * make_rat(1, 6) -
           b * make_rat(13, 6) + StepPoly::constant(Rat(1));
    return QuasiPolynomial({2, 3, 3, 6}, std::move(c));
}

IntVec random_sequence(std::mt19937_64& rng, int maxlen, long maxval) {
    std::uniform_int_distribution<long> len(2, maxlen), val(1, maxval);
    while (true) {
        IntVec a(len(rng));
        for (Int& x : a) x = val(rng);
        if (vec_gcd(a) == 1) return a;
    }
}

}  // namespace

TEST_CASE("subset gcd lattice", "[denumerant]") {
    FLattice fl = fset({2, 3, 3, 6});
    CHECK(fl.S == std::vector<Int>{1, 2, 3, 6});
    CHECK(fl.assoc.at(1) == IntVec{2, 3, 3, 6});
    CHECK(fl.assoc.at(2) == IntVec{2, 6});
    CHECK(fl.assoc.at(3) == IntVec{3, 3, 6});
    CHECK(fl.assoc.at(6) == IntVec{6});

    // 3 = gcd(6,9) appears even though it divides no single later entry pair
    FLattice tricky = fset({4, 6, 9});
    CHECK(tricky.S == std::vector<Int>{1, 2, 3, 4, 6, 9});
    CHECK(tricky.assoc.at(3) == IntVec{6, 9});
    CHECK(tricky.assoc.at(2) == IntVec{4, 6});

    FLattice paper = fset({10, 11, 5, 17});
    CHECK(paper.S == std::vector<Int>{1, 5, 10, 11, 17});
    CHECK(paper.assoc.at(5) == IntVec{10, 5});

    CHECK(fset({1}).S == std::vector<Int>{1});
    CHECK(fset({2, 4}).S == std::vector<Int>{2, 4});

    CHECK_THROWS_AS(fset({}), InputError);
    CHECK_THROWS_AS(fset({3, 0}), InputError);
}

TEST_CASE("contributing divisors per degree", "[denumerant]") {
    FLattice fl = fset({2, 3, 3, 6});
    CHECK(frak_f(fl, 0) == std::vector<Int>{1, 2, 3, 6});
    CHECK(frak_f(fl, 1) == std::vector<Int>{1, 2, 3});
    CHECK(frak_f(fl, 2) == std::vector<Int>{1, 3});
    CHECK(frak_f(fl, 3) == std::vector<Int>{1});
    CHECK(frak_f(fl, 4).empty());
    CHECK_THROWS_AS(frak_f(fl, -1), DomainError);
}

TEST_CASE("inclusion-exclusion weights", "[denumerant]") {
    CHECK(moebius({1, 2, 3}) == std::map<Int, Int>{{1, -1}, {2, 1}, {3, 1}});
    CHECK(moebius({1, 2, 3, 6}) == std::map<Int, Int>{{6, 1}});
    CHECK(moebius({1, 3}) == std::map<Int, Int>{{3, 1}});
    CHECK(moebius({1}) == std::map<Int, Int>{{1, 1}});
}

TEST_CASE("weights sum to one over every divisor chain", "[denumerant]") {
    auto verify = [](const std::vector<Int>& fs) {
        std::map<Int, Int> mu = moebius(fs);
        for (const Int& f : fs) {
            Int s = 0;
            for (const auto& [fp, w] : mu)
                if (fp % f == 0) s += w;
            CHECK(s == 1);
        }
    };
    verify({1, 2, 3});
    verify({1, 2, 3, 6});
    verify({2, 4, 8, 12});

    std::mt19937_64 rng(67);
    std::uniform_int_distribution<long> cnt(1, 8), val(1, 100);
    for (int trial = 0; trial < 30; ++trial) {
        std::set<Int> s;
        int k = static_cast<int>(cnt(rng));
        for (int i = 0; i < k; ++i) s.insert(Int(val(rng)));
        verify(std::vector<Int>(s.begin(), s.end()));
    }
}

TEST_CASE("per-divisor coefficients of the worked example", "[denumerant]") {
    IntVec a{2, 3, 3, 6};
    StepPoly b = third_atom();

    std::map<int, StepPoly> at3 = compute_Emf(a, 3, {1, 2});
    CHECK(at3[2] == StepPoly::constant(make_rat(1, 24)) - b * make_rat(1, 36));
    CHECK(at3[1] == StepPoly::constant(make_rat(49, 144)) - b * make_rat(1, 2) +
                        b.pow(2) * make_rat(1, 6));

    std::map<int, StepPoly> at1 = compute_Emf(a, 1, {3});
    CHECK(at1[3] == StepPoly::constant(make_rat(1, 648)));

    std::map<int, StepPoly> at6 = compute_Emf(a, 6, {0});
    CHECK(at6[0] == golden_quasi().coeff(0));

    // beyond the reach of u rates the coefficient is identically zero
    std::map<int, StepPoly> high = compute_Emf({2, 3}, 2, {5});
    CHECK(high[5].is_zero());

    CHECK_THROWS_AS(compute_Emf({2, 4}, 2, {0}), InputError);
    CHECK_THROWS_AS(compute_Emf(a, 0, {0}), InputError);
    CHECK_THROWS_AS(compute_Emf(a, 3, {}), InputError);
    CHECK_THROWS_AS(compute_Emf(a, 3, {-1, 0}), DomainError);
}

TEST_CASE("per-divisor coefficients do not depend on the slack seed", "[denumerant]") {
    IntVec a{2, 3, 3, 6};
    for (Int f : {Int(2), Int(3), Int(6)}) {
        std::map<int, StepPoly> s0 = compute_Emf(a, f, {0, 1}, nullptr, 0);
        std::map<int, StepPoly> s1 = compute_Emf(a, f, {0, 1}, nullptr, 987654);
        CHECK(s0 == s1);
    }
    CHECK(ct_knapsack({4, 6, 9}, {0, 1, 2}, nullptr, 1) ==
          ct_knapsack({4, 6, 9}, {0, 1, 2}, nullptr, 424242));
}

TEST_CASE("full pipeline reproduces the worked example", "[denumerant]") {
    QuasiPolynomial q = ct_knapsack({2, 3, 3, 6}, {0, 1, 2, 3});
    CHECK(q == golden_quasi());
    CHECK(q.eval_count(8) == 5);
    CHECK(q.eval_count(0) == 1);
    CHECK(q.eval_count(1) == 0);
    CHECK(q.lcm() == 6);
    CHECK(q.period(3) == 1);
    CHECK(q.period(2) == 3);
    CHECK(q.period(1) == 6);
    CHECK(q.period(0) == 6);
    for (Int t = 0; t <= 60; t += 1) CHECK(q.eval_count(t) == oracle_count({2, 3, 3, 6}, t));
}

TEST_CASE("edge sequences", "[denumerant]") {
    QuasiPolynomial one = ct_knapsack({1}, {0});
    CHECK(one.degree_bound() == 0);
    CHECK(one.coeff(0) == StepPoly::constant(Rat(1)));
    CHECK(one.eval_count(17) == 1);

    QuasiPolynomial pair = ct_knapsack({2, 3}, {0, 1});
    CHECK(pair.coeff(1) == StepPoly::constant(make_rat(1, 6)));
    for (Int t = 0; t <= 30; t += 1) CHECK(pair.eval_count(t) == oracle_count({2, 3}, t));

    // requested m beyond the degree bound are simply absent
    QuasiPolynomial q = ct_knapsack({2, 3, 3, 6}, {0, 1, 2, 3, 4, 5, 6});
    CHECK(q.coeff(5).is_zero());
    CHECK(q == golden_quasi());
}

TEST_CASE("pipeline agrees with the counting oracle", "[denumerant]") {
    IntVec sel{1, 2, 3, 4, 5, 6};
    QuasiPolynomial q = ct_knapsack(sel, {0, 1, 2, 3, 4, 5});
    std::vector<Int> ts(200);
    std::iota(ts.begin(), ts.end(), 0);
    std::vector<Int> counts = oracle_count_many(sel, ts);
    for (size_t i = 0; i < ts.size(); ++i) CHECK(q.eval_count(ts[i]) == counts[i]);

    IntVec paper{10, 11, 5, 17};
    QuasiPolynomial qp = ct_knapsack(paper, {0, 1, 2, 3});
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<long> tv(0, 5610);
    for (int i = 0; i < 12; ++i) {
        Int t(tv(rng));
        CHECK(qp.eval_count(t) == oracle_count(paper, t));
    }
}

TEST_CASE("coefficient structure on random sequences", "[denumerant]") {
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<long> tv(0, 100000);
    for (int trial = 0; trial < 10; ++trial) {
        IntVec a = random_sequence(rng, 4, 9);
        int n = static_cast<int>(a.size()) - 1;
        std::set<int> mset;
        for (int m = 0; m <= n; ++m) mset.insert(m);
        QuasiPolynomial q = ct_knapsack(a, mset);

        // leading coefficient is the constant 1/(N! prod a_i)
        Rat lead(1);
        for (const Int& x : a) lead /= Rat(x);
        for (int i = 2; i <= n; ++i) lead /= Rat(i);
        CHECK(q.coeff(n) == StepPoly::constant(lead));

        Int l = q.lcm();
        for (int m = 0; m <= n; ++m) CHECK(l % q.period(m) == 0);

        // step coefficients only see t through t mod period
        for (int m = 0; m <= n; ++m) {
            StepPoly c = q.coeff(m);
            Int t(tv(rng));
            CHECK(c.eval(t) == c.eval(t + c.period() * 7));
        }
    }
}

TEST_CASE("pipeline instrumentation records sharing", "[denumerant]") {
    PipelineStats full;
    ct_knapsack({2, 3, 3, 6}, {0, 1, 2, 3}, &full);
    CHECK(full.emf_calls == 4);  // one per distinct contributing divisor
    CHECK(full.cones_per_f.size() == 3);  // f = 1 never builds a cone
    for (const auto& [f, c] : full.cones_per_f) CHECK(c >= 1);
    CHECK(full.todd_calls >= 4);

    PipelineStats top;
    ct_knapsack({2, 3, 3, 6}, {3}, &top);
    CHECK(top.emf_calls == 1);
    CHECK(top.cones_per_f.empty());
    CHECK(top.todd_calls == 1);

    PipelineStats mid;
    ct_knapsack({2, 3, 3, 6}, {2}, &mid);
    CHECK(mid.emf_calls == 1);
    CHECK(mid.cones_per_f == std::map<Int, long>{{3, 1}});
}

TEST_CASE("pipeline input validation", "[denumerant]") {
    CHECK_THROWS_AS(ct_knapsack({}, {0}), InputError);
    CHECK_THROWS_AS(ct_knapsack({2, 4}, {0}), InputError);
    CHECK_THROWS_AS(ct_knapsack({2, 0}, {0}), InputError);
    CHECK_THROWS_AS(ct_knapsack({2, 3}, {}), InputError);
    CHECK_THROWS_AS(ct_knapsack({2, 3}, {-2}), DomainError);
}

TEST_CASE("counting oracle fixtures", "[denumerant]") {
    CHECK(oracle_count({2, 3, 3, 6}, 8) == 5);
    CHECK(oracle_count({2, 3, 3, 6}, 0) == 1);
    CHECK(oracle_count({2, 3, 3, 6}, 1) == 0);
    CHECK(oracle_count({3, 5, 7}, 10) == 2);
    CHECK(oracle_count({1, 1}, 4) == 5);

    CHECK_THROWS_AS(oracle_count({2, 3}, -1), InputError);
    CHECK_THROWS_AS(oracle_count({}, 3), InputError);
    CHECK_THROWS_AS(oracle_count({2, 3}, 3000001), ResourceError);
}

TEST_CASE("batched oracle matches the single-shot oracle", "[denumerant]") {
    std::mt19937_64 rng(79);
    std::uniform_int_distribution<long> tv(0, 400);
    for (int trial = 0; trial < 8; ++trial) {
        IntVec a = random_sequence(rng, 5, 12);
        std::vector<Int> ts(25);
        for (Int& t : ts) t = tv(rng);
        std::vector<Int> got = oracle_count_many(a, ts);
        for (size_t i = 0; i < ts.size(); ++i) CHECK(got[i] == oracle_count(a, ts[i]));
    }
}

TEST_CASE("batched oracle on both counter widths", "[denumerant]") {
    auto binom = [](unsigned long n, unsigned long k) {
        Int r;
        mpz_bin_uiui(r.get_mpz_t(), n, k);
        return r;
    };

    // small bound: 128-bit counters
    IntVec ones3(3, 1);
    std::vector<Int> ts{0, 1, 1999, 2000};
    std::vector<Int> got = oracle_count_many(ones3, ts);
    for (size_t i = 0; i < ts.size(); ++i) CHECK(got[i] == binom(ts[i].get_ui() + 2, 2));

    // 25 unit coins overflow the a-priori 128-bit bound at maxt = 200
    IntVec ones25(25, 1);
    std::vector<Int> big{0, 7, 100, 200};
    std::vector<Int> wide = oracle_count_many(ones25, big);
    for (size_t i = 0; i < big.size(); ++i) CHECK(wide[i] == binom(big[i].get_ui() + 24, 24));

    CHECK_THROWS_AS(oracle_count_many({5}, {Int(30000001)}), ResourceError);
    CHECK_THROWS_AS(oracle_count_many(ones25, {Int(3000001)}), ResourceError);
    CHECK_THROWS_AS(oracle_count_many({2, -3}, {Int(5)}), InputError);
    CHECK_THROWS_AS(oracle_count_many({2, 3}, {Int(-5)}), InputError);
}
