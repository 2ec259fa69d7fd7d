#include "kkw/symbol_calculus.hpp"

namespace kkw {

namespace {

SymbolValue clifford_value(const CliffordElement& e) { return SymbolValue(e); }

}  // namespace

BoundaryModel::BoundaryModel(ModelOptions opts) : opts_(opts) {}

int BoundaryModel::tangential_validity() const {
    return opts_.flat_boundary ? Jet<Scalar>::kExact : 1;
}

Jet<Scalar> BoundaryModel::h() const {
    Jet<Scalar> j(Scalar(1), 2, tangential_validity());
    j.set(1, 0, Scalar::symbol(ParamSymbol::h1()));
    j.set(2, 0, Scalar::symbol(ParamSymbol::h2()) * GaussianRational::frac(1, 2));
    return j;
}

Scalar BoundaryModel::frame_a2() const {
    Scalar h1sq = Scalar::symbol(ParamSymbol::h1(), 2);
    Scalar h2 = Scalar::symbol(ParamSymbol::h2());
    if (opts_.frame == FrameConvention::Printed)
        return h1sq * GaussianRational::frac(3, 4) - h2 * GaussianRational::frac(1, 2);
    return h2 * GaussianRational::frac(1, 2) - h1sq * GaussianRational::frac(1, 4);
}

Jet<Scalar> BoundaryModel::frame_factor() const {
    Jet<Scalar> j(Scalar(1), 2, tangential_validity());
    j.set(1, 0, Scalar::symbol(ParamSymbol::h1()) * GaussianRational::frac(1, 2));
    j.set(2, 0, frame_a2() * GaussianRational::frac(1, 2));
    return j;
}

SymbolField BoundaryModel::lift(const Jet<Scalar>& s) const {
    return s.map([](const Scalar& v) { return SymbolValue(CliffordElement(v)); });
}

SymbolField BoundaryModel::c_dx(int j) const {
    if (j == 5) return SymbolField(clifford_value(CliffordElement::generator(5)));
    return lift(frame_factor()) * SymbolField(clifford_value(CliffordElement::generator(j)));
}

SymbolField BoundaryModel::c_xi_tangential() const {
    CliffordElement c;
    for (int j = 1; j <= 4; ++j) c += CliffordElement::generator(j) * Scalar::xi(j);
    return lift(frame_factor()) * SymbolField(clifford_value(c));
}

SymbolField BoundaryModel::c_xi() const {
    return c_xi_tangential() + SymbolField(SymbolValue::xin(CliffordElement::generator(5)));
}

SymbolField BoundaryModel::inverse_norm(int k) const {
    // (rho + delta)^{-k}, delta = (H1 t + H2/2 t^2) u
    Scalar u = Scalar::u();
    Scalar h1 = Scalar::symbol(ParamSymbol::h1());
    Scalar h2 = Scalar::symbol(ParamSymbol::h2());
    auto term = [](const Scalar& c, int power) { return SymbolValue::over_rho(CliffordElement(c), power); };
    GaussianRational c1 = negative_binomial(k, 1), c2 = negative_binomial(k, 2);
    SymbolField r(term(Scalar(1), k), 2, tangential_validity());
    r.set(1, 0, term(h1 * u * c1, k + 1));
    r.set(2, 0, term(h2 * u * c1 * GaussianRational::frac(1, 2), k + 1) + term(h1 * h1 * u * u * c2, k + 2));
    return r;
}

SymbolField BoundaryModel::c_X() const {
    if (!opts_.perturbation) return SymbolField(SymbolValue(), Jet<SymbolValue>::kExact, Jet<SymbolValue>::kExact);
    SymbolField total;
    for (int j = 1; j <= 5; ++j) {
        Jet<Scalar> comp(j == 5 ? Scalar::symbol(ParamSymbol::an()) : Scalar::symbol(ParamSymbol::x(j)), 1, 1);
        comp.set(1, 0, Scalar::symbol(j == 5 ? ParamSymbol::dan() : ParamSymbol::dx(5, j)));
        for (int k = 1; k <= 4; ++k) comp.set(0, k, Scalar::symbol(ParamSymbol::dx(k, j)));
        total += lift(comp) * c_dx(j);
    }
    return total;
}

SymbolField BoundaryModel::p0_dirac() const {
    int xv = opts_.flat_boundary ? Jet<Scalar>::kExact : 0;
    Scalar h1 = Scalar::symbol(ParamSymbol::h1());
    Jet<Scalar> coef(-h1, 0, xv);
    if (opts_.potential == DiracPotential::Warped) {
        // -(h'/h) = -H1 - (H2 - H1^2) t + O(t^2)
        coef.set_validity(1, xv);
        coef.set(1, 0, h1 * h1 - Scalar::symbol(ParamSymbol::h2()));
    }
    return lift(coef) * c_dx(5);
}

PDOSymbol BoundaryModel::perturbed_dirac_symbol() const {
    PDOSymbol p;
    p[1] = c_xi() * SymbolField(SymbolValue(CliffordElement(Scalar(GaussianRational(0, 1)))));
    p[0] = p0_dirac() + c_X();
    return p;
}

SymbolField BoundaryModel::leading_inverse() const {
    return c_xi() * inverse_norm(1) * SymbolField(SymbolValue(CliffordElement(Scalar(GaussianRational(0, 1)))));
}

PDOSymbol BoundaryModel::parametrix(int depth) const {
    return invert(perturbed_dirac_symbol(), depth, leading_inverse());
}

// ---------------------------------------------------------------------------

SymbolField d_xi(const SymbolField& s, int direction) {
    if (direction == 5) return s.map([](const SymbolValue& v) { return v.deriv_xin(); });
    return s.map([direction](const SymbolValue& v) { return v.deriv_xi(direction); });
}

SymbolField d_x(const SymbolField& s, int direction) {
    SymbolField r = direction == 5 ? s.dt() : s.dx(direction);
    return r.map([](const SymbolValue& v) { return v * GaussianRational(0, -1); });
}

namespace {

// Multi-indices over five directions with |alpha| = n, as direction lists in
// nondecreasing order, together with alpha!.
void multi_indices(int n, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (int d = start; d <= 5; ++d) {
        cur.push_back(d);
        multi_indices(n, d, cur, out);
        cur.pop_back();
    }
}

long alpha_factorial(const std::vector<int>& alpha) {
    long f = 1;
    int run = 0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        run = (k > 0 && alpha[k] == alpha[k - 1]) ? run + 1 : 1;
        f *= run;
    }
    return f;
}

bool field_is_zero(const SymbolField& f) {
    for (int a = 0; a <= SymbolField::kT; ++a)
        for (int d = 0; d <= 4; ++d)
            if (f.present(a, d)) return false;
    return true;
}

// Sum over alpha with |alpha| = n of (1/alpha!) d_xi^alpha a * D_x^alpha b.
SymbolField graded_term(const SymbolField& a, const SymbolField& b, int n) {
    std::vector<std::vector<int>> alphas;
    std::vector<int> cur;
    multi_indices(n, 1, cur, alphas);
    SymbolField total;
    for (const auto& alpha : alphas) {
        SymbolField da = a;
        for (int d : alpha) da = d_xi(da, d);
        if (field_is_zero(da)) continue;
        SymbolField db = b;
        for (int d : alpha) db = d_x(db, d);
        SymbolField prod = da * db;
        total += prod.map([&](const SymbolValue& v) { return v * GaussianRational::frac(1, alpha_factorial(alpha)); });
    }
    return total;
}

}  // namespace

PDOSymbol compose(const PDOSymbol& a, const PDOSymbol& b, int cutoff) {
    if (a.empty() || b.empty()) return {};
    int amax = a.rbegin()->first, amin = a.begin()->first;
    int bmax = b.rbegin()->first, bmin = b.begin()->first;
    int lowest = std::max(cutoff, amax + bmin);
    (void)amin;
    PDOSymbol out;
    for (int m = amax + bmax; m >= lowest; --m) {
        SymbolField acc;
        for (const auto& [i, ai] : a)
            for (const auto& [j, bj] : b) {
                int n = i + j - m;
                if (n < 0) continue;
                acc += graded_term(ai, bj, n);
            }
        out[m] = acc;
    }
    return out;
}

PDOSymbol invert(const PDOSymbol& p, int depth, const SymbolField& leading_inverse) {
    if (p.empty() || p.rbegin()->first != 1) throw std::invalid_argument("invert expects a first-order symbol");
    PDOSymbol q;
    q[-1] = leading_inverse;
    for (int m = 2; m <= depth; ++m) {
        SymbolField acc;
        for (const auto& [i, pi] : p)
            for (int b = 1; b < m; ++b) {
                int n = i - b - (1 - m);
                if (n < 0) continue;
                acc += graded_term(pi, q.at(-b), n);
            }
        q[-m] = -(leading_inverse * acc);
    }
    return q;
}

PerturbationSplit perturbation_split(const BoundaryModel& model) {
    if (!model.options().perturbation) throw std::invalid_argument("perturbation split needs c(X)");
    ModelOptions pure_opts = model.options();
    pure_opts.perturbation = false;
    BoundaryModel pure(pure_opts);

    PerturbationSplit s;
    s.q1 = model.leading_inverse();
    PDOSymbol qd = invert(pure.perturbed_dirac_symbol(), 2, s.q1);
    s.q2_dirac = qd.at(-2);
    SymbolField cx = model.c_X();
    s.q2_pert = -(s.q1 * cx * s.q1);

    SymbolField p0d = model.p0_dirac();
    auto at0 = [](const SymbolField& f) { return f.value(); };
    SymbolValue inner = at0(cx) * at0(s.q2_dirac) + at0(p0d) * at0(s.q2_pert) + at0(cx) * at0(s.q2_pert);
    for (int j = 1; j <= 5; ++j) {
        // d_xi_j p1 = i c(dx_j); combined with D_x = -i d_x this is c(dx_j) d_j.
        SymbolField dq = j == 5 ? s.q2_pert.dt() : s.q2_pert.dx(j);
        inner += at0(model.c_dx(j)) * dq.value();
    }
    s.r3_at_x0 = -(at0(s.q1) * inner);
    return s;
}

}  // namespace kkw
