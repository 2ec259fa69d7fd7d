#pragma once

#include "kkw/jet.hpp"
#include "kkw/xin_residue.hpp"

#include <map>

namespace kkw {

// A symbol component: Clifford-valued rational function of xi_n, carried as
// a jet in the base coordinates around x0.
using SymbolField = Jet<SymbolValue>;

// Graded symbol, keyed by order.
using PDOSymbol = std::map<int, SymbolField>;

// Second x_n-derivative of the tangential coframe, c(dx_j)'' = a2 c(dx_j).
// The first derivative is H1/2 c(dx_j) in both conventions.
enum class FrameConvention {
    Printed,   // a2 = 3/4 H1^2 - 1/2 H2
    Geometric  // a2 = 1/2 H2 - 1/4 H1^2, the jet of sqrt(h)
};

// How much of the unperturbed zeroth-order symbol is known off x0.
enum class DiracPotential {
    PointValue,  // only p0(x0) = -H1 c(dx_n)
    Warped       // p0 = -(h'/h) c(dx_n) along the normal, valid to first order
};

struct ModelOptions {
    FrameConvention frame = FrameConvention::Printed;
    DiracPotential potential = DiracPotential::PointValue;
    // Treat the boundary as flat: tangential jets of the metric, coframe and
    // unperturbed potential become exact instead of curvature-limited.
    bool flat_boundary = false;
    bool perturbation = true;
};

class BoundaryModel {
public:
    explicit BoundaryModel(ModelOptions opts = {});

    const ModelOptions& options() const { return opts_; }

    // Scalar jets of the collar.
    Jet<Scalar> h() const;
    Jet<Scalar> frame_factor() const;
    Scalar frame_a2() const;

    SymbolField lift(const Jet<Scalar>& s) const;
    SymbolField c_dx(int j) const;  // j = 1..5
    SymbolField c_xi() const;        // c(xi) = sum xi_j c(dx_j) + xi_n c(dx_n)
    SymbolField c_xi_tangential() const;
    SymbolField inverse_norm(int k) const;  // |xi|^{-2k}
    SymbolField c_X() const;
    SymbolField p0_dirac() const;

    // Full symbol of the perturbed operator: order 1 is i c(xi), order 0 is
    // p0_dirac + c(X).
    PDOSymbol perturbed_dirac_symbol() const;
    // Leading inverse i c(xi) / |xi|^2.
    SymbolField leading_inverse() const;
    // q_{-1}, ..., q_{-depth}
    PDOSymbol parametrix(int depth) const;

private:
    ModelOptions opts_;
    int tangential_validity() const;
};

// d/dxi^alpha on every jet coefficient; direction 5 is xi_n.
SymbolField d_xi(const SymbolField& s, int direction);
// D_x = -i d/dx in one direction; direction 5 is x_n.
SymbolField d_x(const SymbolField& s, int direction);

// Graded composition sum_alpha (1/alpha!) d_xi^alpha a D_x^alpha b, keeping
// the orders >= cutoff that the supplied components determine completely.
PDOSymbol compose(const PDOSymbol& a, const PDOSymbol& b, int cutoff);
// Parametrix recursion q_{-m} = -q_{-1} sum(...) from a supplied leading
// inverse.
PDOSymbol invert(const PDOSymbol& p, int depth, const SymbolField& leading_inverse);

// Named library symbols at x0 with |xi'| = 1.
enum class LibrarySymbol {
    SigmaM2Dirac,   // sigma_{-2} of the unperturbed inverse
    SigmaM3Dirac,   // sigma_{-3} of the unperturbed inverse, with curvature
    PerturbationM3  // printed closed form of the perturbation part of q_{-3}
};
SymbolValue library_symbol(LibrarySymbol which, const BoundaryModel& model);

// Perturbation parts: q_{-2}^X = -q_{-1} c(X) q_{-1} and the order -3 remainder
// R_{-3} = -q_{-1}[c(X) q_{-2}^D + p0^D q_{-2}^X + c(X) q_{-2}^X + sum_j c(dx_j) d_j q_{-2}^X]
// (tangential derivatives only in the last sum; the x_n term uses D_{x_n}).
struct PerturbationSplit {
    SymbolField q1;
    SymbolField q2_dirac;
    SymbolField q2_pert;
    SymbolValue r3_at_x0;
};
PerturbationSplit perturbation_split(const BoundaryModel& model);

}  // namespace kkw
