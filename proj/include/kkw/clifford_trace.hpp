#pragma once

#include "kkw/coefficient_algebra.hpp"

#include <cstdint>
#include <map>

namespace kkw {

constexpr int kDim = 5;
constexpr std::uint8_t kVolumeWord = 0x1F;

// Canonically ordered product of distinct generators e_1..e_5, one bit each.
using CliffordWord = std::uint8_t;

// Sign and word of e_a * e_b under e_j^2 = -1.
std::pair<int, CliffordWord> word_product(CliffordWord a, CliffordWord b);

// Element of Cl(5) (orthonormal frame, e_j^2 = -1) over Scalar.
class CliffordElement {
public:
    using Terms = std::map<CliffordWord, Scalar>;

    CliffordElement() = default;
    CliffordElement(const Scalar& s);
    CliffordElement(long v) : CliffordElement(Scalar(v)) {}
    static CliffordElement generator(int j);  // e_j, j = 1..5
    static CliffordElement word(CliffordWord w, const Scalar& c = Scalar(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(CliffordWord w) const;
    void add(CliffordWord w, const Scalar& c);

    CliffordElement& operator+=(const CliffordElement& o);
    CliffordElement& operator-=(const CliffordElement& o);
    friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
    friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
    friend CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);
    friend CliffordElement operator*(const CliffordElement& a, const Scalar& s);
    friend CliffordElement operator*(const Scalar& s, const CliffordElement& a) { return a * s; }
    friend CliffordElement operator*(const CliffordElement& a, const GaussianRational& c);
    CliffordElement operator-() const;
    friend bool operator==(const CliffordElement& a, const CliffordElement& b) { return a.terms_ == b.terms_; }

    CliffordElement map_scalars(const std::function<Scalar(const Scalar&)>& f) const;
    std::string str() const;

private:
    Terms terms_;
};

// Trace over the 4-dimensional spinor module of the reference gamma
// representation: 4 * (scalar part) + tr(e_1...e_5) * (volume part). Every
// other nonempty word is traceless.
Scalar trace(const CliffordElement& a);
// The volume-word coefficient alone; its contribution must integrate to zero
// for a chirality-independent result.
Scalar volume_part(const CliffordElement& a);
// tr(e_1 e_2 e_3 e_4 e_5) in the reference representation.
GaussianRational volume_trace();

}  // namespace kkw
