#include "kkw/coefficient_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kkw {

std::string rational_str(const mpq_class& q) {
    return q.get_str();
}

mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') pos = 1;
    bool slash = false;
    if (pos >= s.size()) throw std::invalid_argument("malformed rational: " + s);
    for (std::size_t k = pos; k < s.size(); ++k) {
        if (s[k] == '/') {
            if (slash || k == pos || k + 1 == s.size()) throw std::invalid_argument("malformed rational: " + s);
            slash = true;
        } else if (s[k] < '0' || s[k] > '9') {
            throw std::invalid_argument("malformed rational: " + s);
        }
    }
    std::string body = s[0] == '+' ? s.substr(1) : s;
    mpq_class q;
    if (q.set_str(body, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::frac(long p, long q, long ip, long iq) {
    return {mpq_class(p, q), mpq_class(ip, iq)};
}

GaussianRational GaussianRational::parse(const std::string& re, const std::string& im) {
    return {parse_rational(re), parse_rational(im)};
}

GaussianRational GaussianRational::pow(int k) const {
    if (k < 0) return GaussianRational(1) / pow(-k);
    GaussianRational r(1), b = *this;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string GaussianRational::str() const {
    if (sgn(im_) == 0) return rational_str(re_);
    std::string ipart = (im_ == 1) ? "i" : (im_ == -1) ? "-i" : rational_str(im_) + "*i";
    if (sgn(re_) == 0) return ipart;
    if (ipart[0] == '-') return rational_str(re_) + ipart;
    return rational_str(re_) + "+" + ipart;
}

// ---------------------------------------------------------------------------

ParamSymbol ParamSymbol::make(ParamKind k, std::array<int, 4> idx) {
    std::uint32_t c = static_cast<std::uint32_t>(k) << 16;
    for (int s = 0; s < 4; ++s) {
        if (idx[s] < 0 || idx[s] > 5) throw std::invalid_argument("parameter index out of range");
        c |= static_cast<std::uint32_t>(idx[s]) << (12 - 4 * s);
    }
    return ParamSymbol{c};
}

std::string ParamSymbol::name() const {
    auto i = [&](int s) { return std::to_string(index(s)); };
    switch (kind()) {
        case ParamKind::H1: return "h1";
        case ParamKind::H2: return "h2";
        case ParamKind::AN: return "an";
        case ParamKind::DAN: return "dan";
        case ParamKind::X: return "X" + i(0);
        case ParamKind::DX: return "DX" + i(0) + i(1);
        case ParamKind::SB: return "sb";
        case ParamKind::RIEM: return "R" + i(0) + i(1) + i(2) + i(3);
        case ParamKind::RICCI: return "Ric" + i(0) + i(1);
        case ParamKind::NORM_XP2: return "xp2";
        case ParamKind::NORM_X2: return "x2";
        case ParamKind::DIVX: return "divx";
        case ParamKind::K: return "K";
        case ParamKind::SM: return "sM";
        case ParamKind::U: return "u";
    }
    return "?";
}

// ---------------------------------------------------------------------------

int Monomial::param_count() const {
    int n = 0;
    while (n < kSlots && sym[n] != 0) ++n;
    return n;
}

int Monomial::exponent_of(ParamSymbol s) const {
    for (int k = 0; k < kSlots && sym[k] != 0; ++k)
        if (sym[k] == s.code) return exp[k];
    return 0;
}

void Monomial::multiply_param(ParamSymbol s, int e) {
    if (e == 0) return;
    int n = param_count();
    for (int k = 0; k < n; ++k) {
        if (sym[k] == s.code) {
            exp[k] = static_cast<std::int16_t>(exp[k] + e);
            if (exp[k] == 0) {
                for (int j = k; j + 1 < n; ++j) {
                    sym[j] = sym[j + 1];
                    exp[j] = exp[j + 1];
                }
                sym[n - 1] = 0;
                exp[n - 1] = 0;
            }
            return;
        }
    }
    if (n == kSlots) throw InvariantError("monomial exceeds parameter slot capacity");
    int pos = n;
    while (pos > 0 && sym[pos - 1] > s.code) {
        sym[pos] = sym[pos - 1];
        exp[pos] = exp[pos - 1];
        --pos;
    }
    sym[pos] = s.code;
    exp[pos] = static_cast<std::int16_t>(e);
}

Monomial Monomial::without_param(ParamSymbol s) const {
    Monomial m = *this;
    int e = m.exponent_of(s);
    m.multiply_param(s, -e);
    return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (int k = 0; k < Monomial::kSlots && b.sym[k] != 0; ++k) r.multiply_param(ParamSymbol{b.sym[k]}, b.exp[k]);
    for (int j = 0; j < 4; ++j) r.xi[j] = static_cast<std::uint8_t>(r.xi[j] + b.xi[j]);
    r.pi = static_cast<std::int16_t>(r.pi + b.pi);
    return r;
}

std::string Monomial::str() const {
    std::vector<std::string> parts;
    auto pw = [](std::string base, int e) { return e == 1 ? base : base + "^" + std::to_string(e); };
    for (int k = 0; k < kSlots && sym[k] != 0; ++k) parts.push_back(pw(ParamSymbol{sym[k]}.name(), exp[k]));
    for (int j = 0; j < 4; ++j)
        if (xi[j]) parts.push_back(pw("xi" + std::to_string(j + 1), xi[j]));
    if (pi) parts.push_back(pw("pi", pi));
    std::string s;
    for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? "*" : "") + parts[k];
    return s;
}

// ---------------------------------------------------------------------------

Scalar::Scalar(const GaussianRational& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Scalar Scalar::symbol(ParamSymbol s, int e) {
    Monomial m;
    m.multiply_param(s, e);
    return monomial(m, 1);
}

Scalar Scalar::xi(int j, int e) {
    if (j < 1 || j > 4) throw std::invalid_argument("xi index must be in 1..4");
    Monomial m;
    m.xi[j - 1] = static_cast<std::uint8_t>(e);
    return monomial(m, 1);
}

Scalar Scalar::pi(int e) {
    Monomial m;
    m.pi = static_cast<std::int16_t>(e);
    return monomial(m, 1);
}

Scalar Scalar::monomial(const Monomial& m, const GaussianRational& c) {
    Scalar s;
    s.add_term(m, c);
    return s;
}

void Scalar::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar& Scalar::operator+=(const Scalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Scalar& Scalar::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

Scalar Scalar::d_xi(int j) const {
    const ParamSymbol u = ParamSymbol::make(ParamKind::U);
    Scalar r;
    for (const auto& [m, c] : terms_) {
        int e = m.xi[j - 1];
        if (e > 0) {
            Monomial d = m;
            d.xi[j - 1] = static_cast<std::uint8_t>(e - 1);
            r.add_term(d, c * GaussianRational(e));
        }
        int ue = m.exponent_of(u);
        if (ue != 0) {
            Monomial d = m;
            d.multiply_param(u, -1);
            d.xi[j - 1] = static_cast<std::uint8_t>(d.xi[j - 1] + 1);
            r.add_term(d, c * GaussianRational(2L * ue));
        }
    }
    return r;
}

Scalar Scalar::substitute(const std::map<ParamSymbol, Scalar>& subs) const {
    Scalar r;
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        Scalar factor(1);
        for (int k = 0; k < Monomial::kSlots && m.sym[k] != 0; ++k) {
            auto it = subs.find(ParamSymbol{m.sym[k]});
            if (it == subs.end()) continue;
            if (m.exp[k] < 0) throw InvariantError("substitution into a negative power");
            rest.multiply_param(it->first, -m.exp[k]);
            for (int e = 0; e < m.exp[k]; ++e) factor = factor * it->second;
        }
        r += factor * Scalar::monomial(rest, c);
    }
    return r;
}

Scalar Scalar::cosphere_normal() const {
    const ParamSymbol u = ParamSymbol::make(ParamKind::U);
    Scalar done;
    Scalar work = *this;
    while (!work.is_zero()) {
        Scalar next;
        for (const auto& [m, c] : work.terms_) {
            if (m.xi[3] < 2) {
                done.add_term(m, c);
                continue;
            }
            Monomial base = m;
            base.xi[3] = static_cast<std::uint8_t>(m.xi[3] - 2);
            Monomial mu = base;
            mu.multiply_param(u, 1);
            next.add_term(mu, c);
            for (int j = 0; j < 3; ++j) {
                Monomial mj = base;
                mj.xi[j] = static_cast<std::uint8_t>(mj.xi[j] + 2);
                next.add_term(mj, -c);
            }
        }
        work = std::move(next);
    }
    return done;
}

Scalar Scalar::restrict_unit() const {
    const ParamSymbol u = ParamSymbol::make(ParamKind::U);
    Scalar r;
    for (const auto& [m, c] : cosphere_normal().terms_) r.add_term(m.without_param(u), c);
    return r;
}

Scalar Scalar::map_coefficients(const std::function<GaussianRational(const GaussianRational&)>& f) const {
    Scalar r;
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
}

GaussianRational Scalar::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? GaussianRational(0) : it->second;
}

std::complex<double> Scalar::evaluate(const std::map<ParamSymbol, double>& params,
                                      const std::array<double, 4>& xi) const {
    std::complex<double> total = 0;
    for (const auto& [m, c] : terms_) {
        std::complex<double> v(c.re().get_d(), c.im().get_d());
        for (int k = 0; k < Monomial::kSlots && m.sym[k] != 0; ++k) {
            auto it = params.find(ParamSymbol{m.sym[k]});
            if (it == params.end()) throw std::invalid_argument("unassigned parameter " + ParamSymbol{m.sym[k]}.name());
            v *= std::pow(it->second, m.exp[k]);
        }
        for (int j = 0; j < 4; ++j) v *= std::pow(xi[j], m.xi[j]);
        v *= std::pow(M_PI, m.pi);
        total += v;
    }
    return total;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string coef = c.str();
        bool compound = !c.is_real() && sgn(c.re()) != 0;
        if (compound) coef = "(" + coef + ")";
        std::string mono = m.str();
        std::string term;
        if (mono.empty()) term = coef;
        else if (coef == "1") term = mono;
        else if (coef == "-1") term = "-" + mono;
        else term = coef + "*" + mono;
        if (!first) s += (term[0] == '-') ? " - " + term.substr(1) : " + " + term;
        else s += term;
        first = false;
    }
    return s;
}

}  // namespace kkw
