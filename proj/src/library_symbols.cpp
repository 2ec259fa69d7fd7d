#include "kkw/sphere_tensor.hpp"
#include "kkw/symbol_calculus.hpp"

#include <array>

namespace kkw {

namespace {

// Building blocks at x0 with |xi'| = 1.
struct Blocks {
    SymbolValue e5, cxi_t, cxi, dcxi_t;
    Scalar h1, h2;

    explicit Blocks(const BoundaryModel& model) {
        h1 = Scalar::symbol(ParamSymbol::h1());
        h2 = Scalar::symbol(ParamSymbol::h2());
        e5 = SymbolValue(CliffordElement::generator(5));
        CliffordElement ct;
        for (int j = 1; j <= 4; ++j) ct += CliffordElement::generator(j) * Scalar::xi(j);
        cxi_t = SymbolValue(ct);
        cxi = cxi_t + SymbolValue::xin(CliffordElement::generator(5));
        // d/dx_n c(xi') = H1/2 c(xi') in either coframe convention
        dcxi_t = cxi_t * (model.frame_factor().at(1));
    }

    static SymbolValue e(int j) { return SymbolValue(CliffordElement::generator(j)); }
    static SymbolValue s(const Scalar& v) { return SymbolValue(CliffordElement(v)); }
    // c / (1 + xi_n^2)^k
    static SymbolValue inv(int k, const Scalar& c = Scalar(1)) {
        return SymbolValue({{0, CliffordElement(c)}}, XiDenominator{XiMode::Post, 0, k, k});
    }
    static SymbolValue xin_poly(std::initializer_list<std::pair<int, GaussianRational>> terms) {
        SymbolValue r;
        for (auto [p, c] : terms) {
            SymbolValue t({{p, CliffordElement(Scalar(c))}}, XiDenominator{XiMode::Post, 0, 0, 0});
            r += t;
        }
        return r;
    }
};

const GaussianRational I(0, 1);

SymbolValue sigma_m2(const Blocks& b) {
    // c(xi) p0 c(xi) / |xi|^4 + c(xi)/|xi|^6 c(dx_n)[d_n c(xi') |xi|^2 - c(xi) H1 |xi'|^2]
    SymbolValue p0 = b.e5 * (-b.h1);
    SymbolValue rho = Blocks::xin_poly({{0, 1}, {2, 1}});
    return Blocks::inv(2) * b.cxi * p0 * b.cxi +
           Blocks::inv(3) * b.cxi * b.e5 * (b.dcxi_t * rho - b.cxi * b.h1);
}

SymbolValue sigma_m3(const Blocks& b) {
    const auto& c = b.cxi;
    const auto& n = b.e5;
    const auto& dc = b.dcxi_t;
    Scalar h1sq = b.h1 * b.h1;
    SymbolValue r;
    r += Blocks::inv(3, h1sq * -I) * c * n * c * n * c;
    r += Blocks::inv(3, b.h1 * I) * c * n * c * n * dc;
    r += Blocks::inv(4, h1sq * -I) * c * n * c * n * c;

    // Curvature sums, grouped so that each xi-dependent product is formed once.
    auto gen = [](int j) { return CliffordElement::generator(j); };
    std::array<SymbolValue, 5> cic;  // c(xi) e_i c(xi)
    for (int i = 1; i <= 4; ++i) cic[i] = c * Blocks::e(i) * c;
    SymbolValue curv4, curv5, curv6;
    for (int i = 1; i <= 4; ++i) {
        CliffordElement m4;
        for (int beta = 1; beta <= 4; ++beta)
            for (int s = 1; s <= 4; ++s)
                for (int alpha = 1; alpha <= 4; ++alpha) {
                    if ((beta == i) || (s == alpha)) continue;  // R vanishes on equal antisymmetric indices
                    m4 += gen(beta) * gen(s) * gen(alpha) * Scalar::symbol(ParamSymbol::riem(beta, i, s, alpha));
                }
        curv4 += cic[i] * SymbolValue(m4) * c;
        for (int j = 1; j <= 4; ++j) {
            CliffordElement m5;
            Scalar m6;
            for (int l = 1; l <= 4; ++l)
                for (int t = 1; t <= 4; ++t) {
                    Scalar R = Scalar::symbol(ParamSymbol::riem(t, i, l, j)) + Scalar::symbol(ParamSymbol::riem(t, j, l, i));
                    m5 += gen(j) * gen(t) * (canonicalize_riemann(R) * Scalar::xi(l));
                }
            for (int a = 1; a <= 4; ++a)
                for (int be = 1; be <= 4; ++be) {
                    Scalar R = Scalar::symbol(ParamSymbol::riem(i, a, j, be)) + Scalar::symbol(ParamSymbol::riem(i, be, j, a));
                    m6 += canonicalize_riemann(R) * Scalar::xi(a) * Scalar::xi(be);
                }
            curv5 += cic[i] * SymbolValue(m5);
            curv6 += cic[i] * Blocks::e(j) * c * m6;
        }
    }
    r += Blocks::inv(3, Scalar(GaussianRational::frac(0, 1, -1, 8))) * curv4;
    r += Blocks::inv(3, Scalar(GaussianRational::frac(0, 1, -1, 6))) * curv5;
    r += Blocks::inv(4, Scalar(GaussianRational::frac(0, 1, 1, 3))) * curv6;

    r += (Blocks::inv(3, b.h1 * I) + Blocks::inv(4, b.h1 * I)) * c * n * dc * n * c;
    r += (Blocks::inv(3, (h1sq - b.h2) * -I) + Blocks::inv(4, (h1sq * GaussianRational(2) - b.h2) * -I) +
          Blocks::inv(5, h1sq * GaussianRational(-3) * I)) *
         c * n * c * n * c;
    r += (Blocks::inv(3, b.h1 * I) + Blocks::inv(4, b.h1 * GaussianRational(3) * I)) * c * n * c * n * dc;
    r += Blocks::inv(3, Scalar(-I)) * c * n * dc * n * dc;
    Scalar printed_a2 = h1sq * GaussianRational::frac(3, 4) - b.h2 * GaussianRational::frac(1, 2);
    r += Blocks::inv(4, printed_a2 * -I) * c * n * c * n * b.cxi_t;
    return r.map([](const CliffordElement& e) {
        return e.map_scalars([](const Scalar& s) { return canonicalize_riemann(s); });
    });
}

SymbolValue perturbation_m3(const Blocks& b) {
    const auto& c = b.cxi;
    const auto& n = b.e5;
    const auto& ct = b.cxi_t;
    const auto& dc = b.dcxi_t;
    auto X = [](int j) { return Scalar::symbol(ParamSymbol::x(j)); };
    auto DX = [](int k, int j) { return Scalar::symbol(ParamSymbol::dx(k, j)); };
    Scalar an = Scalar::symbol(ParamSymbol::an());
    Scalar dan = Scalar::symbol(ParamSymbol::dan());

    SymbolValue cX = Blocks::s(an) * n;
    Scalar gXt;  // g(X', xi')
    for (int j = 1; j <= 4; ++j) {
        cX += Blocks::s(X(j)) * Blocks::e(j);
        gXt += X(j) * Scalar::xi(j);
    }
    SymbolValue gX = Blocks::s(gXt) + SymbolValue::xin(CliffordElement(an));
    SymbolValue dn_cX = Blocks::s(dan) * n;
    Scalar dn_gXt;
    for (int j = 1; j <= 4; ++j) {
        Scalar comp = DX(5, j) + X(j) * b.h1 * GaussianRational::frac(1, 2);
        dn_cX += Blocks::s(comp) * Blocks::e(j);
        dn_gXt += (DX(5, j) + X(j) * b.h1) * Scalar::xi(j);
    }
    SymbolValue dn_gX = Blocks::s(dn_gXt) + SymbolValue::xin(CliffordElement(dan));

    SymbolValue r;
    r += Blocks::xin_poly({{4, -I}, {2, -I}, {0, I * GaussianRational(2)}}) * Blocks::inv(4, b.h1) * c * cX * n;
    r += Blocks::xin_poly({{3, -I * GaussianRational(2)}, {1, -I * GaussianRational(4)}}) * Blocks::inv(4, b.h1) * c * cX * ct;
    r += Blocks::inv(3, Scalar(-I)) * c * cX * ct * n * dc;
    r += SymbolValue::xin(CliffordElement(Scalar(I))) * Blocks::inv(3) * c * cX * dc;
    r += Blocks::inv(2, Scalar(-I)) * c * cX;
    r += Blocks::inv(3, gXt * (I * GaussianRational(2))) * c * c;
    r += SymbolValue::xin(CliffordElement(an * (I * GaussianRational(2)))) * Blocks::inv(3) * c * c;
    for (int j = 1; j <= 4; ++j) {
        SymbolValue dj_cX = Blocks::s(DX(j, 5)) * n;
        Scalar dj_gXt;
        for (int k = 1; k <= 4; ++k) {
            dj_cX += Blocks::s(DX(j, k)) * Blocks::e(k);
            dj_gXt += DX(j, k) * Scalar::xi(k);
        }
        r += Blocks::inv(2, Scalar(-I)) * c * Blocks::e(j) * dj_cX;
        r += Blocks::inv(3, dj_gXt * (I * GaussianRational(2))) * c * Blocks::e(j) * c;
        r += SymbolValue::xin(CliffordElement(DX(j, 5) * (I * GaussianRational(2)))) * Blocks::inv(3) * c *
             Blocks::e(j) * c;
    }
    r += Blocks::inv(2, Scalar(-I)) * c * n * dn_cX;
    r += Blocks::inv(3, b.h1 * I) * c * n * cX;
    r += Blocks::inv(3, Scalar(I * GaussianRational(2))) * dn_gX * c * n * c;
    r += Blocks::inv(3, Scalar(I * GaussianRational(2))) * gX * c * n * dc;
    r += Blocks::inv(4, b.h1 * (I * GaussianRational(-4))) * gX * c * n * c;
    return r;
}

}  // namespace

SymbolValue library_symbol(LibrarySymbol which, const BoundaryModel& model) {
    Blocks b(model);
    switch (which) {
        case LibrarySymbol::SigmaM2Dirac: return sigma_m2(b);
        case LibrarySymbol::SigmaM3Dirac: return sigma_m3(b);
        case LibrarySymbol::PerturbationM3: return perturbation_m3(b);
    }
    throw std::invalid_argument("unknown library symbol");
}

}  // namespace kkw
