#include "kkw/numeric_oracle.hpp"
#include "kkw/verify.hpp"

#include <doctest.h>

#include <random>

using namespace kkw;

namespace {

CliffordElement e(int j) { return CliffordElement::generator(j); }

CliffordElement c_xi_tangential() {
    CliffordElement c;
    for (int j = 1; j <= 4; ++j) c += e(j) * Scalar::xi(j);
    return c;
}

}  // namespace

TEST_CASE("generators square to -1 and anticommute") {
    CHECK(e(1) * e(1) == CliffordElement(-1));
    CHECK(e(2) * e(1) == -(e(1) * e(2)));
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b)
            CHECK(e(a) * e(b) + e(b) * e(a) == CliffordElement(a == b ? -2 : 0));
    CHECK(word_product(0x03, 0x03) == std::pair<int, CliffordWord>{-1, 0});
}

TEST_CASE("c(xi') squares to -|xi'|^2") {
    CliffordElement c = c_xi_tangential();
    Scalar norm;
    for (int j = 1; j <= 4; ++j) norm += Scalar::xi(j, 2);
    CHECK(c * c == CliffordElement(-norm));
    CHECK((c * c).map_scalars([](const Scalar& s) { return s.restrict_unit(); }) == CliffordElement(-1));
}

TEST_CASE("trace of words") {
    CHECK(trace(CliffordElement(1)) == Scalar(4));
    CHECK(trace(e(1) * e(2)).is_zero());
    CHECK(trace(e(1) * e(2) * e(1) * e(2)) == Scalar(-4));
    CHECK(trace(e(5) * e(5)) == Scalar(-4));
    CHECK(trace(c_xi_tangential() * e(5)).is_zero());
    for (int w = 1; w < 32; ++w)
        if (w != kVolumeWord) CHECK(trace(CliffordElement::word(static_cast<CliffordWord>(w))).is_zero());
    oracle::ExactAssignment none;
    CHECK(oracle::oracle_trace(CliffordElement::word(kVolumeWord), none) == volume_trace());
}

TEST_CASE("tr[c(xi')c(X)] = -4 g(X, xi')") {
    CliffordElement cx = e(5) * Scalar::symbol(ParamSymbol::an());
    Scalar g;
    for (int j = 1; j <= 4; ++j) {
        cx += e(j) * Scalar::symbol(ParamSymbol::x(j));
        g += Scalar::symbol(ParamSymbol::x(j)) * Scalar::xi(j);
    }
    CHECK(trace(c_xi_tangential() * cx) == g * GaussianRational(-4));
}

TEST_CASE("coframe jets") {
    Scalar h1 = Scalar::symbol(ParamSymbol::h1()), h2 = Scalar::symbol(ParamSymbol::h2());
    for (auto frame : {FrameConvention::Printed, FrameConvention::Geometric}) {
        ModelOptions o;
        o.frame = frame;
        BoundaryModel m(o);
        auto first = m.c_dx(1).dt().value();
        auto second = m.c_dx(1).dt().dt().value();
        CHECK(first.equals(SymbolValue(e(1) * (h1 * GaussianRational::frac(1, 2)))));
        CHECK(m.c_dx(5).dt().value().is_zero());
        Scalar a2 = frame == FrameConvention::Printed
                        ? h1 * h1 * GaussianRational::frac(3, 4) - h2 * GaussianRational::frac(1, 2)
                        : h2 * GaussianRational::frac(1, 2) - h1 * h1 * GaussianRational::frac(1, 4);
        CHECK(m.frame_a2() == a2);
        CHECK(second.equals(SymbolValue(e(1) * a2)));
    }
}

TEST_CASE("boundary trace identities") {
    auto r = verify::trace_identities(BoundaryModel());
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("gamma representation and 200 random oracle traces") {
    CHECK(verify::gamma_relations().pass);
    std::mt19937_64 rng(3);
    auto r = verify::trace_oracle(200, rng);
    INFO(r.detail);
    CHECK(r.pass);
}

TEST_CASE("odd words are traceless and the product is associative") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> w(0, 31);
    for (int t = 0; t < 100; ++t) {
        auto a = CliffordElement::word(static_cast<CliffordWord>(w(rng)), Scalar(GaussianRational(t + 1)));
        auto b = CliffordElement::word(static_cast<CliffordWord>(w(rng)), Scalar::xi(1 + t % 4));
        auto c = CliffordElement::word(static_cast<CliffordWord>(w(rng)), Scalar::symbol(ParamSymbol::h1()));
        CHECK((a * b) * c == a * (b * c));
        CHECK(trace(a * b) == trace(b * a));
    }
    CHECK(trace(e(1) * e(2) * e(3)).is_zero());
}
