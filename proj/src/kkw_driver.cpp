#include "kkw/kkw_driver.hpp"

#include <future>

namespace kkw {

std::vector<CaseIndex> enumerate_cases() {
    // Fixed presentation order; every family satisfies r + l - k - j - |alpha| = -4.
    return {
        {1, -1, -1, 0, 1, 1},  {2, -1, -1, 0, 2, 0},  {3, -1, -1, 0, 0, 2},  {4, -1, -1, 1, 1, 0},
        {5, -1, -1, 1, 0, 1},  {6, -1, -1, 2, 0, 0},  {7, -1, -2, 0, 1, 0},  {8, -1, -2, 0, 0, 1},
        {9, -1, -2, 1, 0, 0},  {10, -2, -1, 0, 1, 0}, {11, -2, -1, 0, 0, 1}, {12, -2, -1, 1, 0, 0},
        {13, -2, -2, 0, 0, 0}, {14, -1, -3, 0, 0, 0}, {15, -3, -1, 0, 0, 0},
    };
}

const CaseIndex& case_by_id(int id) {
    static const std::vector<CaseIndex> cases = enumerate_cases();
    if (id < 1 || id > static_cast<int>(cases.size())) throw std::out_of_range("case number must be in 1..15");
    return cases[id - 1];
}

GaussianRational case_prefactor(const CaseIndex& c) {
    long fact = 1;
    for (int m = 2; m <= c.j + c.k + 1; ++m) fact *= m;
    return GaussianRational(0, -1).pow(c.alpha + c.j + c.k + 1) / GaussianRational(fact);
}

// ---------------------------------------------------------------------------

void ConstantsTable::add(const ImportedConstant& c) {
    entries_.push_back(c);
}

bool ConstantsTable::has(int case_id) const {
    for (const auto& e : entries_)
        if (e.case_id == case_id) return true;
    return false;
}

BoundaryVector ConstantsTable::vector_for(int case_id) const {
    BoundaryVector v;
    for (const auto& e : entries_) {
        if (e.case_id != case_id) continue;
        // Omega_3 = 2 pi^2
        int pi = e.pi_power + 2 * e.omega_power;
        if (pi != 3) throw InvariantError("imported constant is not of pi^3 grade");
        v.add(e.monomial, e.value * GaussianRational(2).pow(e.omega_power));
    }
    return v;
}

std::string ConstantsTable::citation_for(int case_id) const {
    for (const auto& e : entries_)
        if (e.case_id == case_id) return e.source;
    return {};
}

// ---------------------------------------------------------------------------

namespace {

SymbolField frozen(const SymbolValue& v) {
    return SymbolField(v, 0, 0);
}

}  // namespace

SymbolLibrary::SymbolLibrary(const ModelOptions& opts) : model_(opts) {
    PerturbationSplit s = perturbation_split(model_);
    parts_[1] = {{"dirac", s.q1}};
    parts_[2] = {{"dirac", s.q2_dirac}, {"perturbation", s.q2_pert}};
    parts_[3] = {{"dirac", frozen(library_symbol(LibrarySymbol::SigmaM3Dirac, model_))},
                 {"perturbation", frozen(s.r3_at_x0)}};
}

const std::vector<std::pair<std::string, SymbolField>>& SymbolLibrary::order(int m) const {
    return parts_.at(m);
}

namespace {

// Products pi^+[first-factor] x second-factor, one per tangential direction
// of the alpha sum (a single entry when |alpha| = 0).
std::vector<SymbolValue> pair_products(const CaseIndex& c, const SymbolField& first, const SymbolField& second,
                                       int ibp_shift) {
    if (c.alpha > 1) {
        // Second tangential derivatives: the jets carry first-order tangential
        // data only, so this throws for curvature-limited fields.
        (void)second.dx(1).dx(1);
    }
    std::vector<int> directions = c.alpha == 0 ? std::vector<int>{0} : std::vector<int>{1, 2, 3, 4};
    std::vector<SymbolValue> out;
    for (int dir : directions) {
        SymbolField f = first;
        for (int s = 0; s < c.j; ++s) f = f.dt();
        SymbolValue fv = f.value();
        if (dir) fv = fv.deriv_xi(dir);
        fv = fv.deriv_xin(c.k + ibp_shift).restrict().pi_plus();

        SymbolField g = second;
        for (int s = 0; s < c.k; ++s) g = g.dt();
        if (dir) g = g.dx(dir);
        SymbolValue gv = g.value().deriv_xin(c.j + 1 - ibp_shift).restrict();
        out.push_back(fv * gv);
    }
    return out;
}

GaussianRational ibp_sign(int ibp_shift) {
    return (ibp_shift % 2) ? GaussianRational(-1) : GaussianRational(1);
}

}  // namespace

ScalarXi pair_integrand(const CaseIndex& c, const SymbolField& first, const SymbolField& second, int ibp_shift) {
    ScalarXi out;
    for (const auto& prod : pair_products(c, first, second, ibp_shift))
        out += prod.map([](const CliffordElement& e) { return sphere_integrate(trace(e)); });
    return out * ibp_sign(ibp_shift);
}

BoundaryVector evaluate_pair(const CaseIndex& c, const SymbolField& first, const SymbolField& second, int ibp_shift,
                             bool* volume_cancels) {
    Scalar integrated;
    Scalar volume;
    for (const auto& prod : pair_products(c, first, second, ibp_shift)) {
        ScalarXi tr = prod.map([](const CliffordElement& e) { return trace(e); });
        ScalarXi vol = prod.map([](const CliffordElement& e) { return volume_part(e); });
        integrated += tr.integrate_line();
        volume += vol.integrate_line();
    }
    Scalar sphere = sphere_integrate(integrated) * ibp_sign(ibp_shift);
    if (volume_cancels) *volume_cancels = canonicalize_riemann(sphere_integrate(volume)).is_zero();
    return contract(sphere);
}

CaseResult evaluate_case(const CaseIndex& c, const SymbolLibrary& lib, const ConstantsTable& imports,
                         const DriverOptions& opts) {
    CaseResult out;
    out.index = c;
    out.prefactor = case_prefactor(c);
    const auto& A = lib.order(-c.r);
    const auto& B = lib.order(-c.l);
    ChannelResult dirac{"dirac", Provenance::Engine, {}, {}};
    ChannelResult pert{"perturbation", Provenance::Engine, {}, {}};
    bool dirac_unmodeled = false;
    for (std::size_t a = 0; a < A.size(); ++a)
        for (std::size_t b = 0; b < B.size(); ++b) {
            bool pure = (a == 0 && b == 0);
            ChannelResult& target = pure ? dirac : pert;
            try {
                bool cancels = true;
                BoundaryVector v = evaluate_pair(c, A[a].second, B[b].second, opts.ibp_shift, &cancels);
                out.volume_word_cancels = out.volume_word_cancels && cancels;
                for (auto& [t, coef] : v.coeffs) coef *= out.prefactor;
                target.value += v;
            } catch (const UnmodeledDerivative& e) {
                if (!pure) throw;
                dirac_unmodeled = true;
                dirac.note = e.what();
            }
        }
    if (dirac_unmodeled) {
        if (!imports.has(c.id))
            throw InvariantError("case " + std::to_string(c.id) + " needs an imported unperturbed value");
        dirac.value = imports.vector_for(c.id);
        dirac.provenance = Provenance::Imported;
        dirac.note = imports.citation_for(c.id);
    }
    out.channels = {dirac, pert};
    out.total = dirac.value;
    out.total += pert.value;
    return out;
}

std::vector<CaseResult> evaluate_all(const SymbolLibrary& lib, const ConstantsTable& imports,
                                     const DriverOptions& opts) {
    std::vector<std::future<CaseResult>> jobs;
    for (const auto& c : enumerate_cases())
        jobs.push_back(std::async(std::launch::async, [&, c] { return evaluate_case(c, lib, imports, opts); }));
    std::vector<CaseResult> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

BoundaryVector sum_total(const std::vector<CaseResult>& cases) {
    BoundaryVector t;
    for (const auto& c : cases) t += c.total;
    return t;
}

GeometricVector geometric_form(const BoundaryVector& total) {
    Scalar k = Scalar::symbol(ParamSymbol::k());
    Scalar h1 = k * GaussianRational::frac(-1, 2);
    Scalar h2 = (h1 * h1 * GaussianRational(3) + Scalar::symbol(ParamSymbol::sb()) - Scalar::symbol(ParamSymbol::sm())) *
                GaussianRational::frac(1, 4);
    Scalar x2 = Scalar::symbol(ParamSymbol::norm_xp2()) + Scalar::symbol(ParamSymbol::an(), 2);
    Scalar s = to_scalar(total).substitute(
        {{ParamSymbol::h1(), h1}, {ParamSymbol::h2(), h2}, {ParamSymbol::norm_x2(), x2}});
    GeometricVector g;
    g.pi_power = total.pi_power;
    for (const auto& [m, c] : s.terms()) {
        Monomial bare = m;
        bare.pi = 0;
        bool found = false;
        for (int t = 0; t <= static_cast<int>(GeometricMonomial::DIVX); ++t) {
            auto tag_t = static_cast<GeometricMonomial>(t);
            if (geometric_scalar(tag_t).terms().begin()->first == bare) {
                g.add(tag_t, c);
                found = true;
            }
        }
        if (!found) throw InvariantError("geometric form: unexpected monomial " + Scalar::monomial(m, c).str());
    }
    return g;
}

}  // namespace kkw
