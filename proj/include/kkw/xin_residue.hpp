#pragma once

#include "kkw/clifford_trace.hpp"

#include <map>
#include <stdexcept>

namespace kkw {

// Coefficient hooks used by XiRational. A coefficient type must be a module
// over Scalar.
inline Scalar restrict_coefficient(const Scalar& s) { return s.restrict_unit(); }
inline CliffordElement restrict_coefficient(const CliffordElement& e) {
    return e.map_scalars([](const Scalar& s) { return s.restrict_unit(); });
}
inline Scalar d_xi_coefficient(const Scalar& s, int j) { return s.d_xi(j); }
inline CliffordElement d_xi_coefficient(const CliffordElement& e, int j) {
    return e.map_scalars([j](const Scalar& s) { return s.d_xi(j); });
}
inline bool coefficient_is_zero(const Scalar& s) { return s.is_zero(); }
inline bool coefficient_is_zero(const CliffordElement& e) { return e.is_zero(); }
inline Scalar normal_coefficient(const Scalar& s) { return s.cosphere_normal(); }
inline CliffordElement normal_coefficient(const CliffordElement& e) {
    return e.map_scalars([](const Scalar& s) { return s.cosphere_normal(); });
}

enum class XiMode {
    Pre,   // denominator (|xi'|^2 + xi_n^2)^k with |xi'|^2 formal
    Post   // denominator (xi_n - i)^a (xi_n + i)^b after |xi'| = 1
};

struct XiDenominator {
    XiMode mode = XiMode::Pre;
    int rho = 0;    // Pre: power of |xi'|^2 + xi_n^2
    int plus = 0;   // Post: order at xi_n = i
    int minus = 0;  // Post: order at xi_n = -i

    bool trivial() const { return rho == 0 && plus == 0 && minus == 0; }
    friend bool operator==(const XiDenominator&, const XiDenominator&) = default;
};

// Polynomial in xi_n with Q(i) coefficients, used for the Post denominators.
using GaussPoly = std::map<int, GaussianRational>;
GaussPoly gauss_poly_mul(const GaussPoly& a, const GaussPoly& b);
// (xi_n - i)^a (xi_n + i)^b
GaussPoly post_denominator_poly(int a, int b);
long binomial(long n, long k);
// Generalized binomial coefficient C(-b, m) for b >= 0.
GaussianRational negative_binomial(int b, int m);

// Principal parts of a rational function in xi_n at +i and -i plus its
// polynomial part. plus[p] multiplies (xi_n - i)^{-p}.
template <class C>
struct PartialFractions {
    std::map<int, C> plus;
    std::map<int, C> minus;
    std::map<int, C> poly;
};

// Rational function N(xi_n) / D(xi_n) with coefficients in C.
template <class C>
class XiRational {
public:
    using Numerator = std::map<int, C>;

    XiRational() = default;
    XiRational(const C& c) { add_power(0, c); }
    XiRational(Numerator num, XiDenominator den) : num_(std::move(num)), den_(den) { prune(); }

    static XiRational xin(const C& c = C(1)) {
        XiRational r;
        r.add_power(1, c);
        return r;
    }
    // c / (|xi'|^2 + xi_n^2)^k
    static XiRational over_rho(const C& c, int k) {
        XiRational r(c);
        r.den_ = XiDenominator{XiMode::Pre, k, 0, 0};
        return r;
    }

    const Numerator& numerator() const { return num_; }
    const XiDenominator& denominator() const { return den_; }
    bool is_zero() const { return num_.empty(); }
    int degree() const { return num_.empty() ? -1 : num_.rbegin()->first; }

    void add_power(int p, const C& c) {
        if (coefficient_is_zero(c)) return;
        auto [it, inserted] = num_.try_emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (coefficient_is_zero(it->second)) num_.erase(it);
        }
    }

    XiRational& operator+=(const XiRational& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) {
            *this = o;
            return *this;
        }
        XiDenominator common = join(den_, o.den_);
        Numerator a = lift(num_, den_, common);
        Numerator b = lift(o.num_, o.den_, common);
        num_ = std::move(a);
        den_ = common;
        for (auto& [p, c] : b) add_power(p, c);
        return *this;
    }
    XiRational& operator-=(const XiRational& o) { return *this += -o; }
    friend XiRational operator+(XiRational a, const XiRational& b) { return a += b; }
    friend XiRational operator-(XiRational a, const XiRational& b) { return a -= b; }
    XiRational operator-() const {
        XiRational r;
        r.den_ = den_;
        for (const auto& [p, c] : num_) r.num_.emplace(p, -c);
        return r;
    }

    template <class D, class F>
    XiRational<D> product_with(const XiRational<D>& o, F mul) const {
        XiDenominator d = combine(den_, o.denominator());
        typename XiRational<D>::Numerator n;
        XiRational<D> r({}, d);
        for (const auto& [pa, ca] : num_)
            for (const auto& [pb, cb] : o.numerator()) r.add_power(pa + pb, mul(ca, cb));
        return r;
    }

    friend XiRational operator*(const XiRational& a, const XiRational& b) {
        return a.product_with(b, [](const C& x, const C& y) { return x * y; });
    }
    friend XiRational operator*(const XiRational& a, const Scalar& s) {
        XiRational r;
        r.den_ = a.den_;
        for (const auto& [p, c] : a.num_) r.add_power(p, c * s);
        return r;
    }
    friend XiRational operator*(const XiRational& a, const GaussianRational& s) { return a * Scalar(s); }

    template <class F>
    auto map(F f) const -> XiRational<decltype(f(std::declval<C>()))> {
        using D = decltype(f(std::declval<C>()));
        XiRational<D> r({}, den_);
        for (const auto& [p, c] : num_) r.add_power(p, f(c));
        return r;
    }

    // d/dxi_n
    XiRational deriv_xin(int k = 1) const {
        XiRational r = *this;
        for (int s = 0; s < k; ++s) r = r.deriv_once();
        return r;
    }

    // d/dxi_j, j = 1..4; only meaningful before restriction.
    XiRational deriv_xi(int j) const {
        if (den_.mode == XiMode::Post && !den_.trivial())
            throw InvariantError("xi' derivative after restriction to |xi'| = 1");
        XiRational r;
        r.den_ = den_;
        for (const auto& [p, c] : num_) r.add_power(p, d_xi_coefficient(c, j));
        if (den_.rho > 0) {
            // -k * 2 xi_j * N / rho^{k+1}
            XiRational extra;
            extra.den_ = XiDenominator{XiMode::Pre, den_.rho + 1, 0, 0};
            for (const auto& [p, c] : num_) extra.add_power(p, c * (Scalar::xi(j) * GaussianRational(-2L * den_.rho)));
            r += extra;
        }
        return r;
    }

    // Sets |xi'| = 1: (|xi'|^2 + xi_n^2)^k -> (xi_n - i)^k (xi_n + i)^k.
    XiRational restrict() const {
        if (den_.mode == XiMode::Post) return *this;
        XiRational r;
        r.den_ = XiDenominator{XiMode::Post, 0, den_.rho, den_.rho};
        for (const auto& [p, c] : num_) r.add_power(p, restrict_coefficient(c));
        return r;
    }

    PartialFractions<C> partial_fractions() const {
        require_post("partial fractions");
        PartialFractions<C> pf;
        pf.plus = principal_part(den_.plus, den_.minus, GaussianRational(0, 1));
        pf.minus = principal_part(den_.minus, den_.plus, GaussianRational(0, -1));
        // Polynomial part by long division with the monic denominator.
        GaussPoly d = post_denominator_poly(den_.plus, den_.minus);
        int dd = den_.plus + den_.minus;
        Numerator rem = num_;
        while (!rem.empty() && rem.rbegin()->first >= dd) {
            auto [top, lead] = *rem.rbegin();
            int shift = top - dd;
            pf.poly[shift] += lead;
            for (const auto& [p, g] : d) {
                C term = lead * Scalar(-g);
                auto [it, inserted] = rem.try_emplace(p + shift, term);
                if (!inserted) {
                    it->second += term;
                }
                if (coefficient_is_zero(rem[p + shift])) rem.erase(p + shift);
            }
        }
        for (auto it = pf.poly.begin(); it != pf.poly.end();)
            it = coefficient_is_zero(it->second) ? pf.poly.erase(it) : std::next(it);
        return pf;
    }

    static XiRational recompose(const PartialFractions<C>& pf) {
        XiRational r;
        for (const auto& [p, c] : pf.plus) r += XiRational({{0, c}}, XiDenominator{XiMode::Post, 0, p, 0});
        for (const auto& [p, c] : pf.minus) r += XiRational({{0, c}}, XiDenominator{XiMode::Post, 0, 0, p});
        for (const auto& [p, c] : pf.poly) r += XiRational({{p, c}}, XiDenominator{XiMode::Post, 0, 0, 0});
        return r;
    }

    // Keeps the poles at xi_n = i. A polynomial part means the symbol does
    // not decay and the projection is undefined.
    XiRational pi_plus() const {
        XiRational r = restricted_or_throw();
        if (r.degree() >= r.den_.plus + r.den_.minus)
            throw InvariantError("pi_plus applied to a symbol with a polynomial part");
        PartialFractions<C> pf = r.partial_fractions();
        pf.minus.clear();
        return recompose(pf);
    }

    XiRational pi_minus() const {
        XiRational r = restricted_or_throw();
        if (r.degree() >= r.den_.plus + r.den_.minus)
            throw InvariantError("pi_minus applied to a symbol with a polynomial part");
        PartialFractions<C> pf = r.partial_fractions();
        pf.plus.clear();
        return recompose(pf);
    }

    // Integral over the real xi_n line by closing in the upper half plane:
    // 2*pi*i times the residue at i. Requires decay of order 2.
    C integrate_line() const {
        XiRational r = restricted_or_throw();
        if (r.degree() > r.den_.plus + r.den_.minus - 2)
            throw InvariantError("line integral of a symbol without xi_n^-2 decay");
        PartialFractions<C> pf = r.partial_fractions();
        auto it = pf.plus.find(1);
        if (it == pf.plus.end()) return C();
        return it->second * (Scalar::pi(1) * GaussianRational(0, 2));
    }

    // Canonical form for equality: coefficients in cosphere normal form and
    // Post rational functions compared through their partial fractions.
    bool equals(const XiRational& o) const {
        XiRational d = *this - o;
        for (const auto& [p, c] : d.num_)
            if (!coefficient_is_zero(normal_coefficient(c))) return false;
        return true;
    }

    XiRational normalized() const {
        XiRational r;
        r.den_ = den_;
        for (const auto& [p, c] : num_) r.add_power(p, normal_coefficient(c));
        return r;
    }

private:
    Numerator num_;
    XiDenominator den_;

    void prune() {
        for (auto it = num_.begin(); it != num_.end();)
            it = coefficient_is_zero(it->second) ? num_.erase(it) : std::next(it);
    }

    void require_post(const char* what) const {
        if (den_.mode != XiMode::Post && !den_.trivial())
            throw InvariantError(std::string(what) + " requires restriction to |xi'| = 1");
    }

    XiRational restricted_or_throw() const {
        if (den_.trivial()) {
            XiRational r = *this;
            r.den_.mode = XiMode::Post;
            return r;
        }
        require_post("residue operation");
        return *this;
    }

    static XiDenominator join(const XiDenominator& a, const XiDenominator& b) {
        if (a.trivial()) return XiDenominator{b.mode, b.rho, b.plus, b.minus};
        if (b.trivial()) return a;
        if (a.mode != b.mode) throw InvariantError("mixing restricted and unrestricted symbols");
        return XiDenominator{a.mode, std::max(a.rho, b.rho), std::max(a.plus, b.plus), std::max(a.minus, b.minus)};
    }

    static XiDenominator combine(const XiDenominator& a, const XiDenominator& b) {
        if (!a.trivial() && !b.trivial() && a.mode != b.mode)
            throw InvariantError("mixing restricted and unrestricted symbols");
        XiMode m = a.trivial() ? b.mode : a.mode;
        return XiDenominator{m, a.rho + b.rho, a.plus + b.plus, a.minus + b.minus};
    }

    // Multiplies a numerator by the factor turning denominator `from` into `to`.
    static Numerator lift(const Numerator& n, const XiDenominator& from, const XiDenominator& to) {
        if (to.mode == XiMode::Pre) {
            int d = to.rho - from.rho;
            if (d == 0) return n;
            // (u + xi_n^2)^d
            Numerator out;
            for (int m = 0; m <= d; ++m) {
                Scalar f = Scalar::u(d - m) * GaussianRational(binomial(d, m));
                for (const auto& [p, c] : n) {
                    C term = c * f;
                    auto [it, inserted] = out.try_emplace(p + 2 * m, term);
                    if (!inserted) it->second += term;
                }
            }
            return out;
        }
        GaussPoly f = post_denominator_poly(to.plus - from.plus, to.minus - from.minus);
        if (f.size() == 1 && f.begin()->first == 0) return n;
        Numerator out;
        for (const auto& [q, g] : f)
            for (const auto& [p, c] : n) {
                C term = c * Scalar(g);
                auto [it, inserted] = out.try_emplace(p + q, term);
                if (!inserted) it->second += term;
            }
        return out;
    }

    XiRational deriv_once() const {
        XiRational r;
        if (den_.trivial()) {
            r.den_ = den_;
            for (const auto& [p, c] : num_)
                if (p > 0) r.add_power(p - 1, c * Scalar(GaussianRational(p)));
            return r;
        }
        if (den_.mode == XiMode::Pre) {
            // (N' rho - 2k xi_n N) / rho^{k+1}
            r.den_ = XiDenominator{XiMode::Pre, den_.rho + 1, 0, 0};
            for (const auto& [p, c] : num_) {
                if (p > 0) {
                    C dp = c * Scalar(GaussianRational(p));
                    r.add_power(p - 1, dp * Scalar::u());
                    r.add_power(p + 1, dp);
                }
                r.add_power(p + 1, c * Scalar(GaussianRational(-2L * den_.rho)));
            }
            return r;
        }
        // (N'(x-i)(x+i) - a N (x+i) - b N (x-i)) / ((x-i)^{a+1} (x+i)^{b+1})
        int a = den_.plus, b = den_.minus;
        r.den_ = XiDenominator{XiMode::Post, 0, a + 1, b + 1};
        const GaussianRational I(0, 1);
        for (const auto& [p, c] : num_) {
            if (p > 0) {
                C dp = c * Scalar(GaussianRational(p));
                r.add_power(p + 1, dp);
                r.add_power(p - 1, dp);
            }
            // -a N (x + i) - b N (x - i) = -(a+b) x N - i(a-b) N
            r.add_power(p + 1, c * Scalar(GaussianRational(-(a + b))));
            r.add_power(p, c * Scalar(-(I * GaussianRational(a - b))));
        }
        return r;
    }

    // Principal part at the pole `at` of order `order`; `other` is the order
    // of the remaining pole at -at.
    std::map<int, C> principal_part(int order, int other, const GaussianRational& at) const {
        std::map<int, C> out;
        if (order == 0) return out;
        // Shift N(at + w) up to w^{order-1}.
        std::vector<C> shifted(order);
        std::vector<GaussianRational> powers;
        for (const auto& [p, c] : num_) {
            GaussianRational atp(1);
            // coefficient of w^k in (at + w)^p is C(p,k) at^{p-k}
            for (int k = 0; k < order && k <= p; ++k) {
                GaussianRational coef = GaussianRational(binomial(p, k)) * at.pow(p - k);
                shifted[k] += c * Scalar(coef);
            }
        }
        // (w + 2 at)^{-other} = sum_m C(-other, m) (2 at)^{-other-m} w^m
        GaussianRational two_at = at * GaussianRational(2);
        for (int k = 0; k < order; ++k) {
            C acc;
            for (int m = 0; m <= k; ++m) {
                GaussianRational g = negative_binomial(other, m) * two_at.pow(-other - m);
                acc += shifted[k - m] * Scalar(g);
            }
            if (!coefficient_is_zero(acc)) out.emplace(order - k, acc);
        }
        return out;
    }
};

using SymbolValue = XiRational<CliffordElement>;
using ScalarXi = XiRational<Scalar>;

}  // namespace kkw
