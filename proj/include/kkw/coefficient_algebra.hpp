#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kkw {

// Raised whenever an internal algebraic invariant is violated. The CLI maps
// this to exit code 2.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact element of Q(i).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v), im_(0) {}
    GaussianRational(mpq_class re, mpq_class im = 0);

    static GaussianRational i() { return {0, 1}; }
    static GaussianRational frac(long p, long q, long ip = 0, long iq = 1);
    // Parses "p/q" or "p" for each component.
    static GaussianRational parse(const std::string& re, const std::string& im);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    GaussianRational conj() const { return {re_, -im_}; }
    GaussianRational pow(int k) const;

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // "a", "a*i" or "a+b*i" with rational components in lowest terms.
    std::string str() const;

private:
    mpq_class re_ = 0;
    mpq_class im_ = 0;
};

std::string rational_str(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

enum class ParamKind : std::uint8_t {
    H1 = 1,    // h'(0)
    H2,        // h''(0)
    AN,        // a_n(x0)
    DAN,       // d/dx_n a_n (x0)
    X,         // X_j(x0), j = 1..4
    DX,        // d/dx_k X_j (x0); k = 1..5, j = 1..5 (j = 5 is a_n)
    SB,        // boundary scalar curvature
    RIEM,      // boundary Riemann component R[a,b,c,d], a..d in 1..4
    RICCI,     // boundary Ricci component
    NORM_XP2,  // |X'|^2 at x0
    NORM_X2,   // |X|^2 at x0
    DIVX,      // sum_j d/dx_j X_j (x0)
    K,         // trace of the second fundamental form
    SM,        // scalar curvature of M
    U          // |xi'|^2, kept formal before restriction
};

// A named real parameter, optionally carrying up to four indices in 1..5.
struct ParamSymbol {
    std::uint32_t code = 0;

    static ParamSymbol make(ParamKind k, std::array<int, 4> idx = {0, 0, 0, 0});
    static ParamSymbol h1() { return make(ParamKind::H1); }
    static ParamSymbol h2() { return make(ParamKind::H2); }
    static ParamSymbol an() { return make(ParamKind::AN); }
    static ParamSymbol dan() { return make(ParamKind::DAN); }
    static ParamSymbol x(int j) { return make(ParamKind::X, {j, 0, 0, 0}); }
    static ParamSymbol dx(int k, int j) { return make(ParamKind::DX, {k, j, 0, 0}); }
    static ParamSymbol sb() { return make(ParamKind::SB); }
    static ParamSymbol riem(int a, int b, int c, int d) { return make(ParamKind::RIEM, {a, b, c, d}); }
    static ParamSymbol ricci(int a, int b) { return make(ParamKind::RICCI, {a, b, 0, 0}); }
    static ParamSymbol norm_xp2() { return make(ParamKind::NORM_XP2); }
    static ParamSymbol norm_x2() { return make(ParamKind::NORM_X2); }
    static ParamSymbol divx() { return make(ParamKind::DIVX); }
    static ParamSymbol k() { return make(ParamKind::K); }
    static ParamSymbol sm() { return make(ParamKind::SM); }

    ParamKind kind() const { return static_cast<ParamKind>(code >> 16); }
    int index(int slot) const { return static_cast<int>((code >> (12 - 4 * slot)) & 0xF); }
    std::string name() const;

    auto operator<=>(const ParamSymbol&) const = default;
};

// Product of parameter powers, cotangent components xi_1..xi_4, and pi.
// |xi'|^2 is tracked through the U parameter kind.
struct Monomial {
    static constexpr int kSlots = 5;
    std::array<std::uint32_t, kSlots> sym{};
    std::array<std::int16_t, kSlots> exp{};
    std::array<std::uint8_t, 4> xi{};
    std::int16_t pi = 0;

    int param_count() const;
    int exponent_of(ParamSymbol s) const;
    void multiply_param(ParamSymbol s, int e);
    Monomial without_param(ParamSymbol s) const;
    bool has_xi() const { return xi[0] | xi[1] | xi[2] | xi[3]; }
    std::string str() const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    auto operator<=>(const Monomial&) const = default;
};

// Sparse polynomial over Q(i) in the parameters, the xi' components and pi.
class Scalar {
public:
    using Terms = std::map<Monomial, GaussianRational>;

    Scalar() = default;
    Scalar(long v) : Scalar(GaussianRational(v)) {}
    Scalar(const GaussianRational& c);
    static Scalar symbol(ParamSymbol s, int e = 1);
    static Scalar xi(int j, int e = 1);
    static Scalar u(int e = 1) { return symbol(ParamSymbol::make(ParamKind::U), e); }
    static Scalar pi(int e = 1);
    static Scalar monomial(const Monomial& m, const GaussianRational& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Monomial& m, const GaussianRational& c);

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const GaussianRational& c);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator*(Scalar a, const GaussianRational& c) { return a *= c; }
    friend Scalar operator*(const GaussianRational& c, Scalar a) { return a *= c; }
    Scalar operator-() const;
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

    // Partial derivative in xi_j, j = 1..4, treating U as |xi'|^2.
    Scalar d_xi(int j) const;
    // Replaces every parameter s by its image; unmapped parameters are kept.
    Scalar substitute(const std::map<ParamSymbol, Scalar>& subs) const;
    // Rewrites xi_4^2 as U - xi_1^2 - xi_2^2 - xi_3^2 repeatedly: the normal
    // form modulo the cosphere relation.
    Scalar cosphere_normal() const;
    // Sets U = 1 and reduces modulo |xi'|^2 = 1.
    Scalar restrict_unit() const;
    Scalar map_coefficients(const std::function<GaussianRational(const GaussianRational&)>& f) const;
    // Coefficient of the monomial free of parameters, xi and pi.
    GaussianRational constant_term() const;
    // Numeric evaluation; every parameter and xi component must be assigned.
    std::complex<double> evaluate(const std::map<ParamSymbol, double>& params,
                                  const std::array<double, 4>& xi = {0, 0, 0, 0}) const;

    std::string str() const;

private:
    Terms terms_;
};

}  // namespace kkw
