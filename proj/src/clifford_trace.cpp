#include "kkw/clifford_trace.hpp"

#include <bit>

namespace kkw {

std::pair<int, CliffordWord> word_product(CliffordWord a, CliffordWord b) {
    int swaps = 0;
    for (int bit = 0; bit < kDim; ++bit) {
        if (!(b >> bit & 1)) continue;
        swaps += std::popcount(static_cast<unsigned>(a >> (bit + 1)));
    }
    swaps += std::popcount(static_cast<unsigned>(a & b));
    return {(swaps & 1) ? -1 : 1, static_cast<CliffordWord>(a ^ b)};
}

CliffordElement::CliffordElement(const Scalar& s) {
    if (!s.is_zero()) terms_.emplace(0, s);
}

CliffordElement CliffordElement::generator(int j) {
    if (j < 1 || j > kDim) throw std::invalid_argument("generator index must be in 1..5");
    return word(static_cast<CliffordWord>(1u << (j - 1)));
}

CliffordElement CliffordElement::word(CliffordWord w, const Scalar& c) {
    CliffordElement e;
    e.add(w, c);
    return e;
}

Scalar CliffordElement::coefficient(CliffordWord w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
}

void CliffordElement::add(CliffordWord w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
    CliffordElement r;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) {
            auto [sign, w] = word_product(wa, wb);
            Scalar p = ca * cb;
            if (sign < 0) p = -p;
            r.add(w, p);
        }
    return r;
}

CliffordElement operator*(const CliffordElement& a, const Scalar& s) {
    CliffordElement r;
    for (const auto& [w, c] : a.terms_) r.add(w, c * s);
    return r;
}

CliffordElement operator*(const CliffordElement& a, const GaussianRational& c) {
    CliffordElement r;
    for (const auto& [w, v] : a.terms_) r.add(w, v * c);
    return r;
}

CliffordElement CliffordElement::operator-() const {
    CliffordElement r;
    for (const auto& [w, c] : terms_) r.add(w, -c);
    return r;
}

CliffordElement CliffordElement::map_scalars(const std::function<Scalar(const Scalar&)>& f) const {
    CliffordElement r;
    for (const auto& [w, c] : terms_) r.add(w, f(c));
    return r;
}

std::string CliffordElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        std::string name;
        for (int j = 0; j < kDim; ++j)
            if (w >> j & 1) name += "e" + std::to_string(j + 1);
        std::string term = "(" + c.str() + ")" + (name.empty() ? "" : "*" + name);
        s += (first ? "" : " + ") + term;
        first = false;
    }
    return s;
}

GaussianRational volume_trace() {
    // e_j = i*G_j with Hermitian G_j = s1(x)s1, s1(x)s2, s1(x)s3, s2(x)1,
    // s3(x)1; their product is -1, so e_1...e_5 = i^5 * (-1) = -i.
    return GaussianRational(0, -4);
}

Scalar trace(const CliffordElement& a) {
    return a.coefficient(0) * GaussianRational(4) + a.coefficient(kVolumeWord) * volume_trace();
}

Scalar volume_part(const CliffordElement& a) {
    return a.coefficient(kVolumeWord);
}

}  // namespace kkw
