#include "printed_formulas.hpp"

#include <set>

namespace kkw::printed {

namespace {

const GaussianRational I(0, 1);

CliffordElement cc(const CliffordElement& e, const GaussianRational& c) { return e * c; }

using Key = std::pair<CliffordWord, Monomial>;

// Parameter part of every coefficient, by Clifford word.
std::set<Key> keys(const SymbolValue& v) {
    std::set<Key> out;
    for (const auto& [p, e] : v.numerator())
        for (const auto& [w, s] : e.terms())
            for (const auto& [m, c] : s.terms()) {
                Monomial k = m;
                k.xi = {0, 0, 0, 0};
                out.emplace(w, k);
            }
    return out;
}

}  // namespace

CliffordElement c_xi_tangential() {
    CliffordElement e;
    for (int j = 1; j <= 4; ++j) e += CliffordElement::generator(j) * Scalar::xi(j);
    return e;
}

CliffordElement c_dxn() { return CliffordElement::generator(5); }

CliffordElement c_X() {
    CliffordElement e = c_dxn() * Scalar::symbol(ParamSymbol::an());
    for (int j = 1; j <= 4; ++j) e += CliffordElement::generator(j) * Scalar::symbol(ParamSymbol::x(j));
    return e;
}

Scalar g_X_xi_tangential() {
    Scalar g;
    for (int j = 1; j <= 4; ++j) g += Scalar::symbol(ParamSymbol::x(j)) * Scalar::xi(j);
    return g;
}

SymbolValue post(const std::map<int, CliffordElement>& num, int plus, int minus) {
    return SymbolValue(num, XiDenominator{XiMode::Post, 0, plus, minus});
}

SymbolValue sum(const std::vector<Term>& terms) {
    SymbolValue s;
    for (const auto& t : terms) s += t.value;
    return s;
}

std::vector<Term> q1_third_xin_derivative() {
    CliffordElement t = c_xi_tangential(), n = c_dxn();
    return {
        {"c(xi') part", post({{1, cc(t, I * 24)}, {3, cc(t, I * -24)}}, 4, 4)},
        {"c(dx_n) part", post({{0, cc(n, I * -6)}, {2, cc(n, I * 36)}, {4, cc(n, I * -6)}}, 4, 4)},
    };
}

std::vector<Term> q1_second_xin_derivative() {
    CliffordElement t = c_xi_tangential(), n = c_dxn();
    return {
        {"c(xi') part", post({{0, cc(t, I * -2)}, {2, cc(t, I * 6)}}, 3, 3)},
        {"c(dx_n) part", post({{1, cc(n, I * -6)}, {3, cc(n, I * 2)}}, 3, 3)},
    };
}

std::vector<Term> q1_first_xin_derivative() {
    CliffordElement t = c_xi_tangential(), n = c_dxn();
    return {
        {"c(xi') part", post({{1, cc(t, I * -2)}}, 2, 2)},
        {"c(dx_n) part", post({{0, cc(n, I)}, {2, cc(n, -I)}}, 2, 2)},
    };
}

std::vector<Term> pi_plus_q1_first_xin_derivative() {
    CliffordElement t = c_xi_tangential(), n = c_dxn();
    return {
        {"c(xi') part", post({{0, cc(t, GaussianRational::frac(-1, 2))}}, 2, 0)},
        {"c(dx_n) part", post({{0, cc(n, GaussianRational::frac(0, 1, -1, 2))}}, 2, 0)},
    };
}

std::vector<Term> pi_plus_q1_second_xin_derivative() {
    CliffordElement t = c_xi_tangential(), n = c_dxn();
    return {
        {"c(xi') part", post({{0, t}}, 3, 0)},
        {"c(dx_n) part", post({{0, cc(n, GaussianRational::frac(0, 1, 1, 2))}}, 3, 0)},
    };
}

std::vector<Term> pi_plus_q1_second_xn_derivative() {
    CliffordElement t = c_xi_tangential(), n = c_dxn();
    Scalar h1 = Scalar::symbol(ParamSymbol::h1()), h2 = Scalar::symbol(ParamSymbol::h2());
    Scalar h1sq = h1 * h1;
    Scalar a2 = h1sq * GaussianRational::frac(3, 4) - h2 * GaussianRational::frac(1, 2);
    // d_{x_n} c(xi') = h1/2 c(xi')
    CliffordElement dt = t * (h1 * GaussianRational::frac(1, 2));
    return {
        {"second coframe jet", post({{0, t * (a2 * GaussianRational::frac(1, 2))}}, 1, 0)},
        {"first coframe jet", post({{1, dt * (h1 * GaussianRational::frac(-1, 2))}, {0, dt * (h1 * I)}}, 2, 0)},
        {"h'' on c(xi')", post({{1, t * (h2 * GaussianRational::frac(-1, 4))}, {0, t * (h2 * (I * GaussianRational::frac(1, 2)))}},
                               2, 0)},
        {"h'' on c(dx_n)", post({{0, n * (h2 * GaussianRational::frac(-1, 4))}}, 2, 0)},
        {"h'^2 on c(xi')",
         post({{2, t * (h1sq * GaussianRational::frac(6, 16))},
               {1, t * (h1sq * (I * GaussianRational::frac(-18, 16)))},
               {0, t * (h1sq * GaussianRational::frac(-16, 16))}},
              3, 0)},
        {"h'^2 on c(dx_n)",
         post({{1, n * (h1sq * GaussianRational::frac(2, 16))}, {0, n * (h1sq * (I * GaussianRational::frac(-6, 16)))}}, 3,
              0)},
    };
}

std::vector<Term> pi_plus_c_xi_over_rho2() {
    CliffordElement t = c_xi_tangential(), n = c_dxn();
    return {
        {"simple pole", post({{0, cc(t, GaussianRational::frac(0, 1, -1, 4))}}, 1, 0)},
        {"double pole", post({{0, cc(t, GaussianRational::frac(-1, 4)) + cc(n, GaussianRational::frac(0, 1, -1, 4))}}, 2, 0)},
    };
}

std::vector<Term> pi_plus_g_c_xi_over_rho2() {
    CliffordElement t = c_xi_tangential(), n = c_dxn();
    Scalar g = g_X_xi_tangential(), an = Scalar::symbol(ParamSymbol::an());
    return {
        {"g(X',xi') c(xi')", post({{1, t * (g * GaussianRational::frac(0, 1, -1, 4))}, {0, t * (g * GaussianRational::frac(-1, 2))}},
                                  2, 0)},
        {"g(X',xi') c(dx_n)", post({{0, n * (g * GaussianRational::frac(0, 1, -1, 4))}}, 2, 0)},
        {"a_n c(xi')", post({{0, t * (an * GaussianRational::frac(0, 1, -1, 4))}}, 2, 0)},
        {"a_n c(dx_n)", post({{1, n * (an * GaussianRational::frac(0, 1, -1, 4))}}, 2, 0)},
    };
}

std::vector<Term> pi_plus_c_X_over_rho() {
    return {{"c(X)", post({{0, cc(c_X(), GaussianRational::frac(0, 1, -1, 2))}}, 1, 0)}};
}

SymbolValue c_xi_over_rho2() {
    SymbolValue cxi = SymbolValue(c_xi_tangential()) + SymbolValue::xin(c_dxn());
    return cxi * SymbolValue::over_rho(CliffordElement(1), 2);
}

SymbolValue g_c_xi_over_rho2() {
    SymbolValue g = SymbolValue(CliffordElement(g_X_xi_tangential())) +
                    SymbolValue::xin(CliffordElement(Scalar::symbol(ParamSymbol::an())));
    return g * c_xi_over_rho2();
}

SymbolValue c_X_over_rho() { return SymbolValue::over_rho(c_X(), 1); }

bool same(const SymbolValue& a, const SymbolValue& b) {
    auto r = [](const SymbolValue& v) {
        return v.map([](const CliffordElement& e) { return restrict_coefficient(e); });
    };
    return r(a - b).equals(SymbolValue());
}

std::vector<std::string> unmatched_terms(const SymbolValue& engine, const std::vector<Term>& printed) {
    SymbolValue diff = (engine - sum(printed)).map([](const CliffordElement& e) { return restrict_coefficient(e); });
    std::set<Key> bad = keys(diff.normalized());
    std::vector<std::string> out;
    std::set<Key> covered;
    for (const auto& t : printed) {
        std::set<Key> k = keys(t.value.map([](const CliffordElement& e) { return restrict_coefficient(e); }));
        covered.insert(k.begin(), k.end());
        for (const auto& key : k)
            if (bad.count(key)) {
                out.push_back(t.label);
                break;
            }
    }
    for (const auto& key : bad)
        if (!covered.count(key)) {
            out.push_back("component absent from the printed form");
            break;
        }
    return out;
}

}  // namespace kkw::printed
