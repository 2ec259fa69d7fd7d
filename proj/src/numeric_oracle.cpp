#include "kkw/numeric_oracle.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace kkw::oracle {

ExactMatrix ExactMatrix::identity() {
    ExactMatrix m;
    for (int r = 0; r < 4; ++r) m.a[r][r] = 1;
    return m;
}

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
    ExactMatrix m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            for (int k = 0; k < 4; ++k)
                if (!x.a[r][k].is_zero() && !y.a[k][c].is_zero()) m.a[r][c] += x.a[r][k] * y.a[k][c];
    return m;
}

ExactMatrix operator+(const ExactMatrix& x, const ExactMatrix& y) {
    ExactMatrix m = x;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m.a[r][c] += y.a[r][c];
    return m;
}

ExactMatrix operator*(const GaussianRational& s, const ExactMatrix& x) {
    ExactMatrix m = x;
    for (auto& row : m.a)
        for (auto& v : row) v *= s;
    return m;
}

GaussianRational ExactMatrix::trace() const {
    GaussianRational t;
    for (int r = 0; r < 4; ++r) t += a[r][r];
    return t;
}

namespace {

using Pauli = std::array<std::array<GaussianRational, 2>, 2>;

ExactMatrix kron(const Pauli& A, const Pauli& B) {
    ExactMatrix m;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) m.a[2 * a + b][2 * c + d] = A[a][c] * B[b][d];
    return m;
}

Mat4 to_numeric(const ExactMatrix& m) {
    Mat4 n;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) n(r, c) = cplx(m.a[r][c].re().get_d(), m.a[r][c].im().get_d());
    return n;
}

}  // namespace

GammaRep::GammaRep() {
    const GaussianRational I(0, 1);
    Pauli one{{{1, 0}, {0, 1}}};
    Pauli s1{{{0, 1}, {1, 0}}};
    Pauli s2{{{0, -I}, {I, 0}}};
    Pauli s3{{{1, 0}, {0, -1}}};
    std::array<ExactMatrix, 5> herm = {kron(s1, s1), kron(s1, s2), kron(s1, s3), kron(s2, one), kron(s3, one)};
    for (int j = 0; j < 5; ++j) {
        g_[j] = I * herm[j];
        n_[j] = to_numeric(g_[j]);
    }
}

const GammaRep& GammaRep::reference() {
    static const GammaRep rep;
    return rep;
}

bool GammaRep::relations_hold() const {
    ExactMatrix id = ExactMatrix::identity();
    for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b) {
            ExactMatrix anti = gamma(a) * gamma(b) + gamma(b) * gamma(a);
            ExactMatrix want = GaussianRational(a == b ? -2 : 0) * id;
            if (!(anti == want)) return false;
        }
    return id.trace() == GaussianRational(4);
}

GaussianRational evaluate_exact(const Scalar& s, const ExactAssignment& a) {
    mpq_class u = 0;
    for (const auto& x : a.xi) u += x * x;
    GaussianRational total;
    for (const auto& [m, c] : s.terms()) {
        if (m.pi != 0) throw InvariantError("oracle evaluation of a pi-graded term");
        mpq_class v = 1;
        for (int k = 0; k < Monomial::kSlots && m.sym[k] != 0; ++k) {
            ParamSymbol sym{m.sym[k]};
            mpq_class base;
            if (sym.kind() == ParamKind::U) {
                base = u;
            } else {
                auto it = a.params.find(sym);
                if (it == a.params.end()) throw InvariantError("missing assignment for " + sym.name());
                base = it->second;
            }
            for (int e = 0; e < m.exp[k]; ++e) v *= base;
        }
        for (int j = 0; j < 4; ++j)
            for (int e = 0; e < m.xi[j]; ++e) v *= a.xi[j];
        total += c * GaussianRational(v);
    }
    return total;
}

ExactMatrix to_matrix(const CliffordElement& e, const ExactAssignment& a) {
    const GammaRep& rep = GammaRep::reference();
    ExactMatrix total;
    for (const auto& [w, coef] : e.terms()) {
        ExactMatrix m = ExactMatrix::identity();
        for (int j = 1; j <= 5; ++j)
            if (w & (1u << (j - 1))) m = m * rep.gamma(j);
        total = total + evaluate_exact(coef, a) * m;
    }
    return total;
}

GaussianRational oracle_trace(const CliffordElement& e, const ExactAssignment& a) {
    return to_matrix(e, a).trace();
}

// ---------------------------------------------------------------------------

QuadratureResult integrate_real_line(const std::function<cplx(double)>& f, double tol) {
    using boost::math::quadrature::gauss_kronrod;
    constexpr double T = 40.0;
    constexpr unsigned kDepth = 12;
    const double inf = std::numeric_limits<double>::infinity();
    QuadratureResult out;
    double err = 0;
    out.value += gauss_kronrod<double, 31>::integrate(f, -T, T, kDepth, tol, &err);
    out.error_estimate += err;
    // Tails beyond T, integrated after the library's semi-infinite mapping.
    out.value += gauss_kronrod<double, 31>::integrate(f, T, inf, kDepth, tol, &err);
    out.error_estimate += err;
    out.value += gauss_kronrod<double, 31>::integrate(f, -inf, -T, kDepth, tol, &err);
    out.error_estimate += err;
    return out;
}

cplx periodic_line_rule(const std::function<cplx(double)>& f, int nodes) {
    // xi = tan(theta): a rational integrand with poles only at +-i becomes a
    // trigonometric polynomial in 2 theta, integrated exactly by the
    // trapezoid rule once nodes exceed its degree.
    cplx acc = 0;
    for (int s = 0; s < nodes; ++s) {
        double th = -M_PI / 2 + M_PI * (s + 0.5) / nodes;
        double c = std::cos(th);
        acc += f(std::tan(th)) / (c * c);
    }
    return acc * (M_PI / nodes);
}

cplx evaluate_xi(const ScalarXi& f, const std::map<ParamSymbol, double>& params, const std::array<double, 4>& xi,
                 cplx xin) {
    std::map<ParamSymbol, double> assign = params;
    double u = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + xi[3] * xi[3];
    assign.emplace(ParamSymbol::make(ParamKind::U), u);
    cplx num = 0;
    for (const auto& [p, c] : f.numerator()) num += c.evaluate(assign, xi) * std::pow(xin, p);
    const XiDenominator& d = f.denominator();
    cplx den = d.mode == XiMode::Pre ? std::pow(u + xin * xin, d.rho)
                                     : std::pow(xin - cplx(0, 1), d.plus) * std::pow(xin + cplx(0, 1), d.minus);
    return num / den;
}

QuadratureResult quadrature_line(const ScalarXi& f, const std::map<ParamSymbol, double>& params,
                                 const std::array<double, 4>& xi) {
    const XiDenominator& d = f.denominator();
    int total = d.mode == XiMode::Pre ? 2 * d.rho : d.plus + d.minus;
    if (f.degree() > total - 2) throw InvariantError("quadrature of a symbol without xi_n^-2 decay");
    std::map<ParamSymbol, double> assign = params;
    double u = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + xi[3] * xi[3];
    assign.emplace(ParamSymbol::make(ParamKind::U), u);
    std::map<int, cplx> coef;
    for (const auto& [p, c] : f.numerator()) coef[p] = c.evaluate(assign, xi);
    auto value = [&](double x) {
        cplx num = 0;
        for (const auto& [p, c] : coef) num += c * std::pow(x, p);
        cplx den = d.mode == XiMode::Pre ? std::pow(cplx(u + x * x), d.rho)
                                         : std::pow(cplx(x, -1), d.plus) * std::pow(cplx(x, 1), d.minus);
        return num / den;
    };
    return integrate_real_line(value);
}

// ---------------------------------------------------------------------------

mpq_class moment_oracle(const std::array<int, 4>& exps) {
    // int_{S^3} prod |x_i|^{a_i} = 2 prod Gamma((a_i+1)/2) / Gamma((|a|+4)/2);
    // for even a_i, Gamma((a+1)/2) = (a-1)!! sqrt(pi) / 2^{a/2}.
    int half = 0;
    mpz_class num = 2;
    for (int a : exps) {
        if (a % 2) return 0;
        for (int k = a - 1; k > 1; k -= 2) num *= k;
        half += a / 2;
    }
    mpz_class den = 1;
    for (int k = 0; k < half; ++k) den *= 2;
    for (int k = 2; k <= half + 1; ++k) den *= k;
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

double moment_monte_carlo(const std::array<int, 4>& exps, std::size_t samples, std::mt19937_64& rng) {
    return moment_monte_carlo(std::vector<std::array<int, 4>>{exps}, samples, rng)[0];
}

std::vector<double> moment_monte_carlo(const std::vector<std::array<int, 4>>& exps, std::size_t samples,
                                       std::mt19937_64& rng) {
    // Uniform points on S^3 from two points in the unit disk (Marsaglia).
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto disk = [&](double& x, double& y) {
        double r2;
        do {
            x = unit(rng);
            y = unit(rng);
            r2 = x * x + y * y;
        } while (r2 >= 1 || r2 == 0);
        return r2;
    };
    int top = 0;
    for (const auto& e : exps)
        for (int a : e) top = std::max(top, a);
    std::vector<double> acc(exps.size(), 0.0);
    std::vector<std::array<double, 4>> pw(top + 1);
    for (std::size_t s = 0; s < samples; ++s) {
        std::array<double, 4> v;
        double s1 = disk(v[0], v[1]);
        double s2 = disk(v[2], v[3]);
        double f = std::sqrt((1 - s1) / s2);
        v[2] *= f;
        v[3] *= f;
        pw[0] = {1, 1, 1, 1};
        for (int k = 1; k <= top; ++k)
            for (int i = 0; i < 4; ++i) pw[k][i] = pw[k - 1][i] * v[i];
        for (std::size_t k = 0; k < exps.size(); ++k)
            acc[k] += pw[exps[k][0]][0] * pw[exps[k][1]][1] * pw[exps[k][2]][2] * pw[exps[k][3]][3];
    }
    // Vol(S^3) = 2 pi^2
    for (auto& a : acc) a = 2.0 * a / static_cast<double>(samples);
    return acc;
}

cplx sphere_quadrature(const std::function<cplx(const std::array<double, 4>&)>& f) {
    // xi = (cos a cos b, cos a sin b, sin a cos c, sin a sin c), s = sin^2 a,
    // dS = ds db dc / 2.
    constexpr int kAngles = 8;
    using Rule = boost::math::quadrature::gauss<double, 5>;
    cplx total = 0;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    auto node = [&](double s, double weight) {
        double ca = std::sqrt(1 - s), sa = std::sqrt(s);
        cplx acc = 0;
        for (int ib = 0; ib < kAngles; ++ib)
            for (int ic = 0; ic < kAngles; ++ic) {
                double b = 2 * M_PI * ib / kAngles, c = 2 * M_PI * ic / kAngles;
                acc += f({ca * std::cos(b), ca * std::sin(b), sa * std::cos(c), sa * std::sin(c)});
            }
        double cell = (2 * M_PI / kAngles) * (2 * M_PI / kAngles);
        total += acc * cell * weight * 0.25;  // ds = dy/2 on [0,1], dS = ds db dc / 2
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) {
            node(0.5, w[i]);
        } else {
            node(0.5 * (1 + x[i]), w[i]);
            node(0.5 * (1 - x[i]), w[i]);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------

NumericParams NumericParams::random(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    NumericParams p;
    p.h1 = d(rng);
    p.h2 = d(rng);
    p.an = d(rng);
    p.dan = d(rng);
    for (auto& v : p.x) v = d(rng);
    for (auto& row : p.dx)
        for (auto& v : row) v = d(rng);
    return p;
}

std::map<ParamSymbol, double> NumericParams::assignment() const {
    std::map<ParamSymbol, double> a;
    a[ParamSymbol::h1()] = h1;
    a[ParamSymbol::h2()] = h2;
    a[ParamSymbol::an()] = an;
    a[ParamSymbol::dan()] = dan;
    double xp2 = 0, div = 0;
    for (int j = 1; j <= 4; ++j) {
        a[ParamSymbol::x(j)] = x[j - 1];
        xp2 += x[j - 1] * x[j - 1];
        div += dx[j - 1][j - 1];
    }
    for (int k = 1; k <= 5; ++k)
        for (int j = 1; j <= 5; ++j) a[ParamSymbol::dx(k, j)] = dx[k - 1][j - 1];
    a[ParamSymbol::norm_xp2()] = xp2;
    a[ParamSymbol::norm_x2()] = xp2 + an * an;
    a[ParamSymbol::divx()] = div;
    return a;
}

namespace {

const cplx I(0, 1);

const Mat4& gam(int j) { return GammaRep::reference().numeric(j); }

double frame(const NumericParams& p, double t) {
    double a2 = p.frame == FrameConvention::Printed ? 0.75 * p.h1 * p.h1 - 0.5 * p.h2 : 0.5 * p.h2 - 0.25 * p.h1 * p.h1;
    return 1 + 0.5 * p.h1 * t + 0.5 * a2 * t * t;
}

double hfun(const NumericParams& p, double t) { return 1 + p.h1 * t + 0.5 * p.h2 * t * t; }

Mat4 c_xi_t(const NumericParams& p, double t, const std::array<double, 4>& xi) {
    Mat4 m = Mat4::Zero();
    for (int j = 1; j <= 4; ++j) m += xi[j - 1] * gam(j);
    return frame(p, t) * m;
}

Mat4 q1(const NumericParams& p, double t, const std::array<double, 4>& xi, cplx xin) {
    double u = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + xi[3] * xi[3];
    cplx n = hfun(p, t) * u + xin * xin;
    return (I / n) * (c_xi_t(p, t, xi) + xin * gam(5));
}

Mat4 c_X(const NumericParams& p, double t, const std::array<double, 4>& x) {
    Mat4 m = Mat4::Zero();
    for (int j = 1; j <= 5; ++j) {
        double comp = j == 5 ? p.an + p.dan * t : p.x[j - 1] + p.dx[4][j - 1] * t;
        for (int k = 1; k <= 4; ++k) comp += p.dx[k - 1][j - 1] * x[k - 1];
        m += (j == 5 ? comp : comp * frame(p, t)) * gam(j);
    }
    return m;
}

Mat4 q2_pert(const NumericParams& p, double t, const std::array<double, 4>& x, const std::array<double, 4>& xi,
             cplx xin) {
    Mat4 a = q1(p, t, xi, xin);
    return -(a * c_X(p, t, x) * a);
}

template <class F>
Mat4 derivative(F g, int order, double step) {
    if (order == 0) return g(0.0);
    auto once = [&](double h) -> Mat4 {
        if (order == 1) return (g(h) - g(-h)) / (2 * h);
        return (g(h) - 2.0 * g(0.0) + g(-h)) / (h * h);
    };
    if (order > 2) throw std::invalid_argument("finite differences implemented up to order 2");
    // Richardson extrapolation of the O(h^2) central difference.
    return (4.0 * once(step / 2) - once(step)) / 3.0;
}

constexpr double kStep = 4e-3;

bool at_origin(double t, const std::array<double, 4>& x) {
    return t == 0 && x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0;
}

}  // namespace

Mat4 numeric_field(NumericField f, const NumericParams& p, double t, const std::array<double, 4>& x,
                   const std::array<double, 4>& xi, cplx xin) {
    switch (f) {
        case NumericField::Q1: return q1(p, t, xi, xin);
        case NumericField::Q2Pert: return q2_pert(p, t, x, xi, xin);
        case NumericField::Q2Dirac:
        case NumericField::R3: break;
    }
    if (!at_origin(t, x)) throw UnmodeledDerivative("numeric field known at x0 only");
    double u = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] + xi[3] * xi[3];
    cplx n = u + xin * xin;
    Mat4 a = q1(p, 0, xi, xin);
    Mat4 p0 = -p.h1 * gam(5);
    // d/dt q1 at t = 0, in closed form
    Mat4 dq1 = I * (0.5 * p.h1 * c_xi_t(p, 0, xi) / n - (c_xi_t(p, 0, xi) + xin * gam(5)) * (p.h1 * u) / (n * n));
    Mat4 q2d = -(a * (p0 * a + gam(5) * dq1));
    if (f == NumericField::Q2Dirac) return q2d;

    Mat4 cx = c_X(p, 0, x);
    Mat4 q2x = q2_pert(p, 0, x, xi, xin);
    Mat4 inner = cx * q2d + p0 * q2x + cx * q2x;
    for (int j = 1; j <= 4; ++j) {
        Mat4 dcx = p.dx[j - 1][4] * gam(5);
        for (int k = 1; k <= 4; ++k) dcx += p.dx[j - 1][k - 1] * gam(k);
        inner += gam(j) * (-(a * dcx * a));
    }
    inner += gam(5) * derivative([&](double s) { return q2_pert(p, s, x, xi, xin); }, 1, kStep);
    return -(a * inner);
}

namespace {

constexpr int kContour = 32;
constexpr int kLaurent = 8;
constexpr double kRadius = 0.6;

// Laurent coefficients of the principal part of g at `pole`:
// A_p = (1/2 pi i) oint g(eta) (eta - pole)^{p-1} d eta.
std::array<Mat4, kLaurent + 1> principal_part(const std::function<Mat4(cplx)>& g, cplx pole) {
    std::array<Mat4, kLaurent + 1> a;
    for (auto& m : a) m = Mat4::Zero();
    for (int s = 0; s < kContour; ++s) {
        double th = 2 * M_PI * s / kContour;
        cplx w = kRadius * std::exp(I * th);
        Mat4 v = g(pole + w) / static_cast<double>(kContour);
        cplx wp = 1;
        for (int p = 1; p <= kLaurent; ++p) {
            wp *= w;
            a[p] += v * wp;
        }
    }
    return a;
}

// k-th xi_n derivative of sum_p A_p (xi - pole)^{-p} at real xi.
Mat4 eval_principal(const std::array<Mat4, kLaurent + 1>& a, cplx pole, int k, double xi) {
    Mat4 m = Mat4::Zero();
    cplx z = xi - pole;
    for (int p = 1; p <= kLaurent; ++p) {
        double c = 1;
        for (int s = 0; s < k; ++s) c *= -(p + s);
        m += a[p] * (c * std::pow(z, -(p + k)));
    }
    return m;
}

}  // namespace

cplx case_pair_oracle(int r, int l, int k, int j, int alpha, NumericField first, NumericField second,
                      const NumericParams& p) {
    (void)r;
    (void)l;
    if (alpha > 1) throw UnmodeledDerivative("oracle supports |alpha| <= 1");
    std::vector<int> dirs = alpha == 0 ? std::vector<int>{0} : std::vector<int>{1, 2, 3, 4};
    const std::array<double, 4> origin{0, 0, 0, 0};

    auto integrand_at = [&](const std::array<double, 4>& xi) -> cplx {
        cplx total = 0;
        for (int d : dirs) {
            // First factor: d_t^j, then d_xi_d, then pi^+ through the contour
            // at i, then d_xin^k.
            auto f_t = [&](const std::array<double, 4>& xs, cplx eta) {
                return derivative([&](double t) { return numeric_field(first, p, t, origin, xs, eta); }, j, kStep);
            };
            auto f_eta = [&](cplx eta) -> Mat4 {
                if (d == 0) return f_t(xi, eta);
                return derivative(
                    [&](double s) {
                        std::array<double, 4> xs = xi;
                        xs[d - 1] += s;
                        return f_t(xs, eta);
                    },
                    1, kStep);
            };
            auto A = principal_part(f_eta, I);

            // Second factor: d_t^k d_x_d, then j+1 xi_n derivatives through the
            // partial fractions at +i and -i.
            auto g_eta = [&](cplx eta) -> Mat4 {
                auto g_t = [&](const std::array<double, 4>& xs) {
                    return derivative([&](double t) { return numeric_field(second, p, t, xs, xi, eta); }, k, kStep);
                };
                if (d == 0) return g_t(origin);
                return derivative(
                    [&](double s) {
                        std::array<double, 4> xs = origin;
                        xs[d - 1] += s;
                        return g_t(xs);
                    },
                    1, kStep);
            };
            auto Bp = principal_part(g_eta, I);
            auto Bm = principal_part(g_eta, -I);
            total += periodic_line_rule(
                [&](double x) {
                    Mat4 a = eval_principal(A, I, k, x);
                    Mat4 b = eval_principal(Bp, I, j + 1, x) + eval_principal(Bm, -I, j + 1, x);
                    return (a * b).trace();
                },
                96);
        }
        return total;
    };
    return sphere_quadrature(integrand_at);
}

}  // namespace kkw::oracle
