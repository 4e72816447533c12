#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <denum/steppoly.hpp>

using namespace denum;

namespace {

StepPoly a23() { return StepPoly::atom(Rat(2, 3)); }   // {2T/3}
StepPoly a12() { return StepPoly::atom(Rat(1, 2)); }   // {T/2}
StepPoly konst(const Rat& c) { return StepPoly::constant(c); }

/// The worked E_1 coefficient at f = 3: 49/144 - {2T/3}/2 + {2T/3}^2/6.
StepPoly e1_at_f3() {
    return konst(Rat(49, 144)) - a23() * Rat(1, 2) + a23().pow(2) * Rat(1, 6);
}

StepPoly random_steppoly(std::mt19937_64& rng) {
    static const Rat atoms[] = {Rat(1, 2), Rat(2, 3), Rat(1, 4), Rat(3, 5)};
    std::uniform_int_distribution<int> coeff(-5, 5), pick(0, 3), deg(0, 2);
    StepPoly p = konst(Rat(coeff(rng)));
    for (int i = 0; i < 3; ++i) {
        StepPoly term = konst(Rat(coeff(rng)));
        for (int j = deg(rng); j > 0; --j) term = term * StepPoly::atom(atoms[pick(rng)]);
        p += term;
    }
    return p;
}

}  // namespace

TEST_CASE("atom canonicalization", "[steppoly]") {
    CHECK(atom_canon(Rat(-1, 3)) == a23());
    CHECK(atom_canon(Rat(5)).is_zero());
    CHECK(atom_canon(Rat(7, 6)) == StepPoly::atom(Rat(1, 6)));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 12), shift(-5, 5);
    for (int i = 0; i < 50; ++i) {
        Rat k = make_rat(num(rng), den(rng));
        CHECK(atom_canon(k) == atom_canon(k + Rat(shift(rng))));
    }
    CHECK_THROWS_AS(StepPoly::atom(Rat(3, 2)), DomainError);
    CHECK_THROWS_AS(StepPoly::atom(Rat(0)), DomainError);
}

TEST_CASE("steppoly arithmetic fixtures", "[steppoly]") {
    StepPoly p = a12() + konst(Rat(1));
    CHECK(p.pow(2) == a12().pow(2) + a12() * Rat(2) + konst(Rat(1)));

    CHECK((p * Rat(0)).is_zero());
    CHECK((p * StepPoly()).is_zero());

    // (6 {2T/3} - 9)^2 / 2 - 15/4, scaled by 3/324.
    StepPoly b = a23() * Rat(6) - konst(Rat(9));
    StepPoly scaled = (b.pow(2) * Rat(1, 2) - konst(Rat(15, 4))) * make_rat(3, 324);
    CHECK(scaled == e1_at_f3());

    CHECK_THROWS_AS(p.pow(-1), DomainError);
}

TEST_CASE("steppoly ring laws on random elements", "[steppoly]") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        StepPoly p = random_steppoly(rng), q = random_steppoly(rng), r = random_steppoly(rng);
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("steppoly evaluation", "[steppoly]") {
    CHECK(a23().eval(8) == Rat(1, 3));  // {16/3}
    CHECK(konst(Rat(49, 144)).eval(123456) == Rat(49, 144));
    CHECK(e1_at_f3().eval(8) == Rat(83, 432));
}

TEST_CASE("steppoly periods", "[steppoly]") {
    CHECK(konst(Rat(5, 7)).period() == 1);
    StepPoly e2 = konst(Rat(1, 24)) - a23() * Rat(1, 36);
    CHECK(e2.period() == 3);

    StepPoly e0 = a12().pow(3) * Rat(2, 3) + a12().pow(2) * a23() - a23().pow(3) * Rat(1, 3)
                  - a12().pow(2) * Rat(3, 2) + a23().pow(2) * Rat(3, 2) - a12() * Rat(1, 6)
                  - a23() * Rat(13, 6) + konst(Rat(1));
    CHECK(e0.period() == 6);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> tv(0, 100000);
    for (int i = 0; i < 10; ++i) {
        StepPoly p = random_steppoly(rng);
        Int per = p.period();
        for (int j = 0; j < 10; ++j) {
            Int t(tv(rng));
            CHECK(p.eval(t) == p.eval(t + per));
        }
    }
}

TEST_CASE("quasi-polynomial evaluation on the worked example", "[steppoly]") {
    StepPoly e3 = konst(Rat(1, 648));
    StepPoly e2 = konst(Rat(1, 24)) - a23() * Rat(1, 36);
    StepPoly e1 = konst(Rat(13, 36)) - a12().pow(2) * Rat(1, 6) + a23().pow(2) * Rat(1, 6)
                  - a23() * Rat(1, 2);
    StepPoly e0 = a12().pow(3) * Rat(2, 3) + a12().pow(2) * a23() - a23().pow(3) * Rat(1, 3)
                  - a12().pow(2) * Rat(3, 2) + a23().pow(2) * Rat(3, 2) - a12() * Rat(1, 6)
                  - a23() * Rat(13, 6) + konst(Rat(1));
    QuasiPolynomial q({2, 3, 3, 6}, {{0, e0}, {1, e1}, {2, e2}, {3, e3}});

    CHECK(q.eval_count(8) == 5);
    CHECK(q.eval_count(0) == 1);
    CHECK(q.eval_count(1) == 0);
    CHECK(q.lcm() == 6);
    CHECK(q.period(3) == 1);
    CHECK(q.period(2) == 3);
    CHECK(q.period(0) == 6);
    CHECK(q.coeff(2) == e2);

    CHECK_THROWS_AS(QuasiPolynomial({2, 3}, {{2, e3}}), DomainError);
}

TEST_CASE("steppoly rendering", "[steppoly]") {
    StepPoly e2 = konst(Rat(1, 24)) - a23() * Rat(1, 36);
    CHECK(e2.text() == "1/24 - 1/36 {2t/3}");
    CHECK(StepPoly().text() == "0");
    CHECK((a12().pow(2) * a23()).text("T") == "{T/2}^2 {2T/3}");
}
