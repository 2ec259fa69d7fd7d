#include "kkw/xin_residue.hpp"

namespace kkw {

long binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

GaussianRational negative_binomial(int b, int m) {
    // C(-b, m) = (-1)^m C(b + m - 1, m)
    if (b == 0) return m == 0 ? GaussianRational(1) : GaussianRational(0);
    long v = binomial(b + m - 1, m);
    return GaussianRational((m & 1) ? -v : v);
}

GaussPoly gauss_poly_mul(const GaussPoly& a, const GaussPoly& b) {
    GaussPoly r;
    for (const auto& [pa, ca] : a)
        for (const auto& [pb, cb] : b) r[pa + pb] += ca * cb;
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

GaussPoly post_denominator_poly(int a, int b) {
    GaussPoly r{{0, GaussianRational(1)}};
    const GaussPoly minus_i{{0, GaussianRational(0, -1)}, {1, GaussianRational(1)}};
    const GaussPoly plus_i{{0, GaussianRational(0, 1)}, {1, GaussianRational(1)}};
    for (int k = 0; k < a; ++k) r = gauss_poly_mul(r, minus_i);
    for (int k = 0; k < b; ++k) r = gauss_poly_mul(r, plus_i);
    return r;
}

}  // namespace kkw
