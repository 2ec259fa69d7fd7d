#pragma once

#include "kkw/coefficient_algebra.hpp"

#include <map>
#include <string>

namespace kkw {

// Integral of xi^a over the unit sphere S^3 in R^4, as a multiple of pi^2.
// Zero unless every exponent is even.
mpq_class sphere_moment(const std::array<int, 4>& exps);

// Replaces every xi monomial by its sphere moment (pi-grade +2). Requires a
// restricted scalar, i.e. no formal |xi'|^2.
Scalar sphere_integrate(const Scalar& s);

// Rewrites Riemann components into a basis of independent components:
// antisymmetry in each pair, pair symmetry and the first Bianchi identity
// (R1423 -> R1324 - R1234). Ricci symbols expand to Riemann traces.
Scalar canonicalize_riemann(const Scalar& s);

enum class BoundaryMonomial { H1SQ, H2, SB, AN_H1, DAN, XP2, XP2_H1, AN2, DIVX, X2 };
enum class GeometricMonomial { K2, SM, SB, AN_K, XP2, XP2_K, AN2, DAN, DIVX };

const char* tag(BoundaryMonomial m);
const char* tag(GeometricMonomial m);
BoundaryMonomial parse_boundary_tag(const std::string& s);
Scalar boundary_scalar(BoundaryMonomial m);
Scalar geometric_scalar(GeometricMonomial m);

// Value sum_m c_m * m * pi^3 in a fixed monomial basis.
template <class Tag>
struct InvariantVector {
    std::map<Tag, GaussianRational> coeffs;
    int pi_power = 3;

    GaussianRational at(Tag t) const {
        auto it = coeffs.find(t);
        return it == coeffs.end() ? GaussianRational(0) : it->second;
    }
    void add(Tag t, const GaussianRational& c) {
        auto& v = coeffs[t];
        v += c;
        if (v.is_zero()) coeffs.erase(t);
    }
    InvariantVector& operator+=(const InvariantVector& o) {
        if (!o.coeffs.empty() && !coeffs.empty() && o.pi_power != pi_power)
            throw InvariantError("adding invariants with different pi powers");
        if (coeffs.empty()) pi_power = o.pi_power;
        for (const auto& [t, c] : o.coeffs) add(t, c);
        return *this;
    }
    bool is_zero() const { return coeffs.empty(); }
    friend bool operator==(const InvariantVector& a, const InvariantVector& b) {
        return a.coeffs == b.coeffs && (a.coeffs.empty() || a.pi_power == b.pi_power);
    }
};

using BoundaryVector = InvariantVector<BoundaryMonomial>;
using GeometricVector = InvariantVector<GeometricMonomial>;

// Contracts an integrated scalar (explicit components, pi^3) to invariants.
// Throws InvariantError on any free index or non-invariant remainder.
BoundaryVector contract(const Scalar& s);
Scalar to_scalar(const BoundaryVector& v);
Scalar to_scalar(const GeometricVector& v);

}  // namespace kkw
