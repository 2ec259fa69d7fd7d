#include "kkw/sphere_tensor.hpp"

#include <algorithm>

namespace kkw {

mpq_class sphere_moment(const std::array<int, 4>& exps) {
    // 2 pi^2 * prod (a_j - 1)!! / (4 * 6 * ... * (2 + |a|))
    int total = 0;
    mpq_class num = 2;
    for (int e : exps) {
        if (e % 2) return 0;
        for (int k = e - 1; k > 1; k -= 2) num *= k;
        total += e;
    }
    mpq_class den = 1;
    for (int m = 1; m <= total / 2; ++m) den *= 2 + 2 * m;
    mpq_class r = num / den;
    r.canonicalize();
    return r;
}

Scalar sphere_integrate(const Scalar& s) {
    const ParamSymbol u = ParamSymbol::make(ParamKind::U);
    Scalar r;
    for (const auto& [m, c] : s.terms()) {
        if (m.exponent_of(u) != 0) throw InvariantError("sphere integration of an unrestricted scalar");
        mpq_class mom = sphere_moment({m.xi[0], m.xi[1], m.xi[2], m.xi[3]});
        if (sgn(mom) == 0) continue;
        Monomial base = m;
        base.xi = {0, 0, 0, 0};
        base.pi = static_cast<std::int16_t>(base.pi + 2);
        r.add_term(base, c * GaussianRational(mom));
    }
    return r;
}

namespace {

// Canonical form of a single component as (sign, indices) or zero; the
// eliminated Bianchi component expands into two terms.
std::vector<std::pair<int, std::array<int, 4>>> canonical_component(std::array<int, 4> r) {
    auto [a, b, c, d] = r;
    if (a == b || c == d) return {};
    int sign = 1;
    if (a > b) {
        std::swap(a, b);
        sign = -sign;
    }
    if (c > d) {
        std::swap(c, d);
        sign = -sign;
    }
    if (std::pair(a, b) > std::pair(c, d)) {
        std::swap(a, c);
        std::swap(b, d);
    }
    std::array<int, 4> idx{a, b, c, d};
    bool distinct = a != c && a != d && b != c && b != d;
    if (distinct && a < c && b > c && b > d) {
        // Pattern R1423 with labels p<q<r<s as (p,s,q,r); first Bianchi gives
        // R_psqr = R_prqs - R_pqrs.
        int p = a, q = c, rr = d, s = b;
        return {{sign, {p, rr, q, s}}, {-sign, {p, q, rr, s}}};
    }
    return {{sign, idx}};
}

}  // namespace

Scalar canonicalize_riemann(const Scalar& s) {
    Scalar work = s;
    for (int pass = 0; pass < 8; ++pass) {
        Scalar next;
        bool changed = false;
        for (const auto& [m, c] : work.terms()) {
            int slot = -1;
            for (int k = 0; k < Monomial::kSlots && m.sym[k] != 0; ++k) {
                ParamSymbol p{m.sym[k]};
                if (p.kind() == ParamKind::RICCI) {
                    slot = k;
                    break;
                }
                if (p.kind() == ParamKind::RIEM) {
                    auto canon = canonical_component({p.index(0), p.index(1), p.index(2), p.index(3)});
                    if (canon.size() != 1 || canon[0].first != 1 || ParamSymbol::riem(canon[0].second[0], canon[0].second[1], canon[0].second[2], canon[0].second[3]) != p) {
                        slot = k;
                        break;
                    }
                }
            }
            if (slot < 0) {
                next.add_term(m, c);
                continue;
            }
            changed = true;
            ParamSymbol p{m.sym[slot]};
            Monomial rest = m;
            rest.multiply_param(p, -1);
            Scalar replacement;
            if (p.kind() == ParamKind::RICCI) {
                // Ric_{ij} = sum_a R_{i a j a}
                for (int a = 1; a <= 4; ++a)
                    replacement += Scalar::symbol(ParamSymbol::riem(p.index(0), a, p.index(1), a));
            } else {
                for (const auto& [sg, idx] : canonical_component({p.index(0), p.index(1), p.index(2), p.index(3)}))
                    replacement += Scalar::symbol(ParamSymbol::riem(idx[0], idx[1], idx[2], idx[3])) * GaussianRational(sg);
            }
            next += replacement * Scalar::monomial(rest, c);
        }
        work = std::move(next);
        if (!changed) return work;
    }
    throw InvariantError("Riemann canonicalization did not converge");
}

const char* tag(BoundaryMonomial m) {
    switch (m) {
        case BoundaryMonomial::H1SQ: return "H1SQ";
        case BoundaryMonomial::H2: return "H2";
        case BoundaryMonomial::SB: return "SB";
        case BoundaryMonomial::AN_H1: return "AN_H1";
        case BoundaryMonomial::DAN: return "DAN";
        case BoundaryMonomial::XP2: return "XP2";
        case BoundaryMonomial::XP2_H1: return "XP2_H1";
        case BoundaryMonomial::AN2: return "AN2";
        case BoundaryMonomial::DIVX: return "DIVX";
        case BoundaryMonomial::X2: return "X2";
    }
    return "?";
}

const char* tag(GeometricMonomial m) {
    switch (m) {
        case GeometricMonomial::K2: return "K2";
        case GeometricMonomial::SM: return "SM";
        case GeometricMonomial::SB: return "SB";
        case GeometricMonomial::AN_K: return "AN_K";
        case GeometricMonomial::XP2: return "XP2";
        case GeometricMonomial::XP2_K: return "XP2_K";
        case GeometricMonomial::AN2: return "AN2";
        case GeometricMonomial::DAN: return "DAN";
        case GeometricMonomial::DIVX: return "DIVX";
    }
    return "?";
}

BoundaryMonomial parse_boundary_tag(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(BoundaryMonomial::X2); ++k) {
        auto m = static_cast<BoundaryMonomial>(k);
        if (s == tag(m)) return m;
    }
    throw std::invalid_argument("unknown monomial tag: " + s);
}

Scalar boundary_scalar(BoundaryMonomial m) {
    auto sym = [](ParamSymbol p, int e = 1) { return Scalar::symbol(p, e); };
    switch (m) {
        case BoundaryMonomial::H1SQ: return sym(ParamSymbol::h1(), 2);
        case BoundaryMonomial::H2: return sym(ParamSymbol::h2());
        case BoundaryMonomial::SB: return sym(ParamSymbol::sb());
        case BoundaryMonomial::AN_H1: return sym(ParamSymbol::an()) * sym(ParamSymbol::h1());
        case BoundaryMonomial::DAN: return sym(ParamSymbol::dan());
        case BoundaryMonomial::XP2: return sym(ParamSymbol::norm_xp2());
        case BoundaryMonomial::XP2_H1: return sym(ParamSymbol::norm_xp2()) * sym(ParamSymbol::h1());
        case BoundaryMonomial::AN2: return sym(ParamSymbol::an(), 2);
        case BoundaryMonomial::DIVX: return sym(ParamSymbol::divx());
        case BoundaryMonomial::X2: return sym(ParamSymbol::norm_x2());
    }
    return {};
}

Scalar geometric_scalar(GeometricMonomial m) {
    auto sym = [](ParamSymbol p, int e = 1) { return Scalar::symbol(p, e); };
    switch (m) {
        case GeometricMonomial::K2: return sym(ParamSymbol::k(), 2);
        case GeometricMonomial::SM: return sym(ParamSymbol::sm());
        case GeometricMonomial::SB: return sym(ParamSymbol::sb());
        case GeometricMonomial::AN_K: return sym(ParamSymbol::an()) * sym(ParamSymbol::k());
        case GeometricMonomial::XP2: return sym(ParamSymbol::norm_xp2());
        case GeometricMonomial::XP2_K: return sym(ParamSymbol::norm_xp2()) * sym(ParamSymbol::k());
        case GeometricMonomial::AN2: return sym(ParamSymbol::an(), 2);
        case GeometricMonomial::DAN: return sym(ParamSymbol::dan());
        case GeometricMonomial::DIVX: return sym(ParamSymbol::divx());
    }
    return {};
}

Scalar to_scalar(const BoundaryVector& v) {
    Scalar s;
    for (const auto& [t, c] : v.coeffs) s += boundary_scalar(t) * c;
    return s * Scalar::pi(v.pi_power);
}

Scalar to_scalar(const GeometricVector& v) {
    Scalar s;
    for (const auto& [t, c] : v.coeffs) s += geometric_scalar(t) * c;
    return s * Scalar::pi(v.pi_power);
}

namespace {

// Component expansions of the index-carrying invariants.
Scalar expand_xp2() {
    Scalar s;
    for (int j = 1; j <= 4; ++j) s += Scalar::symbol(ParamSymbol::x(j), 2);
    return s;
}

Scalar expand_divx() {
    Scalar s;
    for (int j = 1; j <= 4; ++j) s += Scalar::symbol(ParamSymbol::dx(j, j));
    return s;
}

Scalar expand_sb() {
    Scalar s;
    for (int t = 1; t <= 4; ++t)
        for (int l = 1; l <= 4; ++l)
            if (t != l) s += Scalar::symbol(ParamSymbol::riem(t, l, t, l));
    return canonicalize_riemann(s);
}

}  // namespace

BoundaryVector contract(const Scalar& input) {
    Scalar s = canonicalize_riemann(input);
    // Rewrite the index-carrying invariants by reading a representative
    // component, then demand that nothing but invariants remains.
    const ParamSymbol x1 = ParamSymbol::x(1), dx11 = ParamSymbol::dx(1, 1), r1212 = ParamSymbol::riem(1, 2, 1, 2);
    Scalar invariant;
    Scalar expanded;
    for (const auto& [m, c] : s.terms()) {
        if (m.has_xi()) throw InvariantError("contract: residual xi dependence");
        if (m.exponent_of(x1) == 2) {
            Monomial rest = m.without_param(x1);
            invariant += Scalar::monomial(rest, c) * Scalar::symbol(ParamSymbol::norm_xp2());
            expanded += Scalar::monomial(rest, c) * expand_xp2();
        } else if (m.exponent_of(dx11) == 1) {
            Monomial rest = m.without_param(dx11);
            invariant += Scalar::monomial(rest, c) * Scalar::symbol(ParamSymbol::divx());
            expanded += Scalar::monomial(rest, c) * expand_divx();
        } else if (m.exponent_of(r1212) == 1) {
            Monomial rest = m.without_param(r1212);
            // sb = 2 * sum_{t<l} R_{tltl}
            GaussianRational half = c * GaussianRational::frac(1, 2);
            invariant += Scalar::monomial(rest, half) * Scalar::symbol(ParamSymbol::sb());
            expanded += Scalar::monomial(rest, half) * expand_sb();
        }
    }
    Scalar residual = s - expanded;
    BoundaryVector out;
    bool pi_set = false;
    auto absorb = [&](const Monomial& m, const GaussianRational& c) {
        if (!pi_set) {
            out.pi_power = m.pi;
            pi_set = true;
        } else if (m.pi != out.pi_power) {
            throw InvariantError("contract: mixed pi powers");
        }
        Monomial bare = m;
        bare.pi = 0;
        for (int k = 0; k <= static_cast<int>(BoundaryMonomial::X2); ++k) {
            auto t = static_cast<BoundaryMonomial>(k);
            const auto& ref = boundary_scalar(t).terms().begin()->first;
            if (ref == bare) {
                out.add(t, c);
                return;
            }
        }
        throw InvariantError("contract: non-invariant remainder " + Scalar::monomial(m, c).str());
    };
    for (const auto& [m, c] : residual.terms()) {
        // Whatever is left must be index-free.
        for (int k = 0; k < Monomial::kSlots && m.sym[k] != 0; ++k) {
            ParamKind kind = ParamSymbol{m.sym[k]}.kind();
            if (kind == ParamKind::X || kind == ParamKind::DX || kind == ParamKind::RIEM || kind == ParamKind::RICCI)
                throw InvariantError("contract: unresolved free index in " + Scalar::monomial(m, c).str());
        }
        absorb(m, c);
    }
    for (const auto& [m, c] : invariant.terms()) absorb(m, c);
    return out;
}

}  // namespace kkw
