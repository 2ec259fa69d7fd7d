#include "kkw/verify.hpp"

#include <doctest.h>

#include <random>

using namespace kkw;

namespace {

const GaussianRational I(0, 1);

ScalarXi post(const ScalarXi::Numerator& n, int plus, int minus) {
    return ScalarXi(n, XiDenominator{XiMode::Post, 0, plus, minus});
}

Scalar q(long p, long d, long ip = 0, long id = 1) { return Scalar(GaussianRational::frac(p, d, ip, id)); }

}  // namespace

TEST_CASE("restriction to the cosphere") {
    ScalarXi a = ScalarXi::over_rho(Scalar(1), 1).restrict();
    CHECK(a.denominator() == XiDenominator{XiMode::Post, 0, 1, 1});
    ScalarXi b = ScalarXi::over_rho(Scalar::u(), 2).restrict();
    CHECK(b.equals(post({{0, Scalar(1)}}, 2, 2)));
    ScalarXi c = (ScalarXi::xin() * ScalarXi::over_rho(Scalar(1), 2)).restrict();
    CHECK(c.equals(post({{1, Scalar(1)}}, 2, 2)));
}

TEST_CASE("partial fractions") {
    auto pf = post({{0, Scalar(1)}}, 1, 1).partial_fractions();
    CHECK(pf.plus.at(1) == q(0, 1, -1, 2));
    CHECK(pf.minus.at(1) == q(0, 1, 1, 2));
    CHECK(pf.poly.empty());

    auto pf2 = post({{1, Scalar(1)}}, 2, 2).partial_fractions();
    CHECK(pf2.plus.at(2) == q(0, 1, -1, 4));
    CHECK(!pf2.plus.count(1));
    CHECK(pf2.minus.at(2) == q(0, 1, 1, 4));
    CHECK(!pf2.minus.count(1));

    auto pf3 = post({{0, Scalar(1)}}, 1, 0).partial_fractions();
    CHECK(pf3.plus.size() == 1);
    CHECK(pf3.minus.empty());

    auto pf4 = post({{3, Scalar(1)}}, 1, 1).partial_fractions();
    CHECK(pf4.poly.at(1) == Scalar(1));
}

TEST_CASE("recomposition is exact") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> o(0, 4), c(-5, 5);
    for (int t = 0; t < 100; ++t) {
        int a = o(rng), b = o(rng);
        ScalarXi::Numerator n;
        for (int p = 0; p <= a + b + 1; ++p) n[p] = Scalar(GaussianRational(c(rng), c(rng)));
        ScalarXi f = post(n, a, b);
        CHECK(ScalarXi::recompose(f.partial_fractions()).equals(f));
    }
}

TEST_CASE("pi+ projection") {
    CHECK(post({{0, Scalar(1)}}, 1, 1).pi_plus().equals(post({{0, q(0, 1, -1, 2)}}, 1, 0)));
    CHECK(post({{0, Scalar(1)}}, 2, 2).pi_plus().equals(post({{0, q(0, 1, -1, 4)}}, 1, 0) +
                                                        post({{0, q(-1, 4)}}, 2, 0)));
    CHECK(post({{0, Scalar(1)}}, 0, 1).pi_plus().is_zero());
    CHECK_THROWS_AS(post({{2, Scalar(1)}}, 1, 1).pi_plus(), InvariantError);
}

TEST_CASE("xi_n derivatives") {
    CHECK(post({{0, Scalar(1)}}, 1, 0).deriv_xin().equals(post({{0, Scalar(-1)}}, 2, 0)));
    ScalarXi third = ScalarXi::over_rho(Scalar(1), 1).deriv_xin(3).restrict();
    CHECK(third.equals(post({{1, Scalar(24)}, {3, Scalar(-24)}}, 4, 4)));
    ScalarXi first = ScalarXi::over_rho(Scalar(1), 1).deriv_xin().restrict();
    CHECK(first.equals(post({{1, Scalar(-2)}}, 2, 2)));
    // Pre and Post derivatives agree.
    ScalarXi f = ScalarXi::xin(Scalar(3)) * ScalarXi::over_rho(Scalar(1), 2);
    CHECK(f.deriv_xin(2).restrict().equals(f.restrict().deriv_xin(2)));
}

TEST_CASE("line integrals by residue") {
    Scalar pi = Scalar::pi();
    CHECK(post({{0, Scalar(1)}}, 1, 1).integrate_line() == pi);
    CHECK(post({{0, Scalar(1)}}, 2, 2).integrate_line() == pi * GaussianRational::frac(1, 2));
    ScalarXi f = post({{2, Scalar(-6)}, {1, Scalar(GaussianRational(0, 8))}, {0, Scalar(6)}}, 6, 2);
    CHECK(f.integrate_line() == pi * GaussianRational::frac(5, 4));
    CHECK_THROWS_AS(post({{1, Scalar(1)}}, 1, 1).integrate_line(), InvariantError);
}

TEST_CASE("pi+ invariants and residue quadrature on random functions") {
    std::mt19937_64 rng(21);
    auto a = verify::pi_plus_invariants(100, rng);
    INFO(a.detail);
    CHECK(a.pass);
    auto b = verify::residue_quadrature(20, rng);
    INFO(b.detail);
    CHECK(b.pass);
}
