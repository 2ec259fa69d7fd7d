#pragma once

#include "kkw/symbol_calculus.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace kkw::oracle {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;

// Exact 4x4 matrix over Q(i).
struct ExactMatrix {
    std::array<std::array<GaussianRational, 4>, 4> a{};

    static ExactMatrix identity();
    friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y);
    friend ExactMatrix operator+(const ExactMatrix& x, const ExactMatrix& y);
    friend ExactMatrix operator*(const GaussianRational& c, const ExactMatrix& x);
    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;
    GaussianRational trace() const;
};

// gamma_j = i G_j for the Hermitian quintuple G = (s1 x s1, s1 x s2, s1 x s3,
// s2 x 1, s3 x 1); every gamma_j squares to -1.
class GammaRep {
public:
    static const GammaRep& reference();
    const ExactMatrix& gamma(int j) const { return g_[j - 1]; }
    const Mat4& numeric(int j) const { return n_[j - 1]; }
    // gamma_a gamma_b + gamma_b gamma_a = -2 delta_ab, checked exactly.
    bool relations_hold() const;

private:
    GammaRep();
    std::array<ExactMatrix, 5> g_;
    std::array<Mat4, 5> n_;
};

// Exact rational assignment for parameters and xi' (|xi'|^2 comes from xi).
struct ExactAssignment {
    std::map<ParamSymbol, mpq_class> params;
    std::array<mpq_class, 4> xi{};
};

GaussianRational evaluate_exact(const Scalar& s, const ExactAssignment& a);
ExactMatrix to_matrix(const CliffordElement& e, const ExactAssignment& a);
// Literal matrix trace of e at the assignment.
GaussianRational oracle_trace(const CliffordElement& e, const ExactAssignment& a);

// Real-line integral by adaptive Gauss-Kronrod on [-T, T] plus the two tails.
struct QuadratureResult {
    cplx value;
    double error_estimate = 0;
};
QuadratureResult integrate_real_line(const std::function<cplx(double)>& f, double tol = 1e-12);
// Trapezoid rule after xi = tan(theta); exact for rational integrands whose
// only poles are +-i, once `nodes` exceeds the total pole order.
cplx periodic_line_rule(const std::function<cplx(double)>& f, int nodes);
// Value of f at a complex xi_n.
cplx evaluate_xi(const ScalarXi& f, const std::map<ParamSymbol, double>& params, const std::array<double, 4>& xi,
                 cplx xin);
// Numeric integral of f over xi_n at the given parameter values.
QuadratureResult quadrature_line(const ScalarXi& f, const std::map<ParamSymbol, double>& params,
                                 const std::array<double, 4>& xi = {0, 0, 0, 0});

// Sphere moment from the Gamma-function formula, as a multiple of pi^2.
mpq_class moment_oracle(const std::array<int, 4>& exps);
// Monte Carlo estimate of the same multiple of pi^2.
double moment_monte_carlo(const std::array<int, 4>& exps, std::size_t samples, std::mt19937_64& rng);
// Several moments from one set of samples.
std::vector<double> moment_monte_carlo(const std::vector<std::array<int, 4>>& exps, std::size_t samples,
                                       std::mt19937_64& rng);

// Integral over S^3 of a smooth function by a Hopf-coordinate product rule,
// exact for polynomials of degree <= 9.
cplx sphere_quadrature(const std::function<cplx(const std::array<double, 4>&)>& f);

// Float model of the collar and the one-form, independent of the symbolic
// jets: h(t) = 1 + H1 t + H2 t^2 / 2, the coframe factor carries the chosen
// second jet, X_j(t, x) = X_j + DX[5][j] t + sum_k DX[k][j] x_k.
struct NumericParams {
    double h1 = 0, h2 = 0, an = 0, dan = 0;
    std::array<double, 4> x{};
    std::array<std::array<double, 5>, 5> dx{};  // dx[k-1][j-1] = d_k X_j
    FrameConvention frame = FrameConvention::Printed;

    static NumericParams random(std::mt19937_64& rng);
    std::map<ParamSymbol, double> assignment() const;
};

enum class NumericField { Q1, Q2Dirac, Q2Pert, R3 };

// Value of a symbol component at (t, x') for real xi' (not necessarily unit)
// and complex xi_n.
Mat4 numeric_field(NumericField f, const NumericParams& p, double t, const std::array<double, 4>& x,
                   const std::array<double, 4>& xi, cplx xin);

// Independent float evaluation of one channel pair of a case: finite
// differences for x and xi' derivatives, contour integrals for pi^+ and the
// xi_n derivatives, Gauss-Kronrod over xi_n and a product rule over S^3.
// Returns the integral without the case prefactor.
cplx case_pair_oracle(int r, int l, int k, int j, int alpha, NumericField first, NumericField second,
                      const NumericParams& p);

}  // namespace kkw::oracle
