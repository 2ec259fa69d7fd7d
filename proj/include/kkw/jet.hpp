#pragma once

#include "kkw/coefficient_algebra.hpp"

#include <array>
#include <string>

namespace kkw {

// Raised when a computation needs a Taylor coefficient the model does not
// supply (for instance a curvature-level derivative of the metric).
class UnmodeledDerivative : public InvariantError {
public:
    using InvariantError::InvariantError;
};

// Truncated Taylor jet in t = x_n (orders 0..2) and the tangential
// coordinates x_1..x_4 (total degree <= 1, no mixed x' terms of degree 2).
// Coefficient (a, d) multiplies t^a (d == 0) or t^a x_d. Validity records how
// far the stored coefficients are trustworthy; kExact means the function is
// exactly the stored polynomial.
template <class V>
class Jet {
public:
    static constexpr int kT = 2;
    static constexpr int kExact = 1000;

    Jet() = default;
    explicit Jet(const V& constant, int t_valid = kExact, int x_valid = kExact)
        : t_valid_(t_valid), x_valid_(x_valid) {
        set(0, 0, constant);
    }

    int t_valid() const { return t_valid_; }
    int x_valid() const { return x_valid_; }
    void set_validity(int t, int x) {
        t_valid_ = t;
        x_valid_ = x;
    }

    void set(int a, int d, const V& v) {
        coef_[a][d] = v;
        present_[a][d] = !coefficient_zero(v);
    }

    // Raw Taylor coefficient; throws when outside the validity window.
    const V& at(int a, int d = 0) const {
        if (a > t_valid_ || (d != 0 && x_valid_ < 1) || (d == 0 && x_valid_ < 0) || a < 0)
            throw UnmodeledDerivative("jet coefficient t^" + std::to_string(a) + (d ? " x" + std::to_string(d) : "") +
                                      " outside the modeled window");
        return coef_[a][d];
    }
    const V& value() const { return at(0, 0); }

    Jet dt() const {
        if (t_valid_ < 1) throw UnmodeledDerivative("x_n derivative beyond the modeled jet order");
        Jet r;
        r.t_valid_ = t_valid_ == kExact ? kExact : t_valid_ - 1;
        r.x_valid_ = x_valid_;
        for (int a = 1; a <= kT; ++a)
            for (int d = 0; d <= 4; ++d)
                if (present_[a][d]) r.set(a - 1, d, scaled(coef_[a][d], a));
        return r;
    }

    Jet dx(int k) const {
        if (k < 1 || k > 4) throw std::invalid_argument("tangential direction must be in 1..4");
        if (x_valid_ < 1) throw UnmodeledDerivative("tangential derivative beyond the modeled jet order");
        Jet r;
        r.t_valid_ = t_valid_;
        r.x_valid_ = x_valid_ == kExact ? kExact : x_valid_ - 1;
        for (int a = 0; a <= kT; ++a)
            if (present_[a][k]) r.set(a, 0, coef_[a][k]);
        return r;
    }

    template <class F>
    auto map(F f) const -> Jet<decltype(f(std::declval<V>()))> {
        Jet<decltype(f(std::declval<V>()))> r;
        r.set_validity(t_valid_, x_valid_);
        for (int a = 0; a <= kT; ++a)
            for (int d = 0; d <= 4; ++d)
                if (present_[a][d]) r.set(a, d, f(coef_[a][d]));
        return r;
    }

    bool present(int a, int d) const { return present_[a][d]; }

    Jet& operator+=(const Jet& o) {
        for (int a = 0; a <= kT; ++a)
            for (int d = 0; d <= 4; ++d)
                if (o.present_[a][d]) set(a, d, coef_[a][d] + o.coef_[a][d]);
        t_valid_ = std::min(t_valid_, o.t_valid_);
        x_valid_ = std::min(x_valid_, o.x_valid_);
        return *this;
    }
    Jet operator-() const {
        return map([](const V& v) { return -v; });
    }
    Jet& operator-=(const Jet& o) { return *this += -o; }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        int tv = std::min(a.t_valid_, b.t_valid_);
        int xv = std::min(a.x_valid_, b.x_valid_);
        bool t_dropped = false, x_dropped = false;
        for (int ta = 0; ta <= kT; ++ta)
            for (int da = 0; da <= 4; ++da) {
                if (!a.present_[ta][da]) continue;
                for (int tb = 0; tb <= kT; ++tb)
                    for (int db = 0; db <= 4; ++db) {
                        if (!b.present_[tb][db]) continue;
                        if (ta + tb > kT) {
                            t_dropped = true;
                            continue;
                        }
                        if (da != 0 && db != 0) {
                            x_dropped = true;
                            continue;
                        }
                        // Coefficients outside the validity window are never read.
                        if (ta + tb > tv || ((da || db) && xv < 1)) continue;
                        int d = da ? da : db;
                        V p = a.coef_[ta][da] * b.coef_[tb][db];
                        if (r.present_[ta + tb][d]) r.set(ta + tb, d, r.coef_[ta + tb][d] + p);
                        else r.set(ta + tb, d, p);
                    }
            }
        if (tv == kExact && t_dropped) tv = kT;
        if (xv == kExact && x_dropped) xv = 1;
        r.t_valid_ = tv;
        r.x_valid_ = xv;
        return r;
    }

private:
    std::array<std::array<V, 5>, kT + 1> coef_{};
    std::array<std::array<bool, 5>, kT + 1> present_{};
    int t_valid_ = kExact;
    int x_valid_ = kExact;

    static bool coefficient_zero(const V& v) { return v.is_zero(); }
    static V scaled(const V& v, int k) { return v * GaussianRational(k); }
};

}  // namespace kkw
