#ifndef PACESTATS_DISTRIBUTIONS_HPP
#define PACESTATS_DISTRIBUTIONS_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <unordered_map>

#include "errors.hpp"

namespace pacestats {

/// Standard normal density.
inline double normal_pdf(double z) {
    static const double inv_sqrt_2pi = 0.39894228040143267794;
    return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

/// Standard normal distribution function.
inline double normal_cdf(double z) {
    return 0.5 * std::erfc(-z * 0.70710678118654752440);
}

namespace detail {

inline double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// Nodes and weights of 20-point Gauss-Legendre quadrature on [-1, 1],
// computed once by Newton iteration on the Legendre recurrence.
struct GaussLegendre {
    std::array<double, 20> node{};
    std::array<double, 20> weight{};
};

inline const GaussLegendre& gauss_legendre_20() {
    static const GaussLegendre table = [] {
        GaussLegendre g{};
        const int n = 20;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-15) break;
            }
            g.node[i] = x;
            g.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return g;
    }();
    return table;
}

template <class F>
inline double panel_integral(F&& f, double lo, double hi, int panels) {
    const GaussLegendre& g = gauss_legendre_20();
    const double h = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        double acc = 0.0;
        for (int i = 0; i < 20; ++i) acc += g.weight[i] * f(mid + 0.5 * h * g.node[i]);
        total += acc * 0.5 * h;
    }
    return total;
}

// P(range of k iid standard normals <= u). `level` doubles the panel count
// per step of refinement.
inline double normal_range_probability(double u, int k, int level) {
    if (u <= 0.0) return 0.0;
    const double lo = -8.0;
    const double hi = u + 8.0;
    const int panels = std::max(4, static_cast<int>(std::ceil((hi - lo) / 4.0))) << level;
    return panel_integral(
        [u, k](double z) {
            const double base = std::max(0.0, normal_cdf(z) - normal_cdf(z - u));
            return k * normal_pdf(z) * ipow(base, k - 1);
        },
        lo, hi, panels);
}

// Continued fraction for the incomplete beta, modified Lentz iteration.
inline double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) return h;
    }
    throw ConvergenceError("incomplete beta continued fraction did not converge");
}

struct QuantileKey {
    std::uint64_t p_bits;
    std::uint64_t nu_bits;
    int k;
    bool operator==(const QuantileKey&) const = default;
};

struct QuantileKeyHash {
    std::size_t operator()(const QuantileKey& key) const noexcept {
        std::uint64_t h = key.p_bits;
        h ^= key.nu_bits + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(key.k) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

/// Regularized incomplete beta function I_x(a, b), evaluated by the
/// continued fraction with modified Lentz iteration.
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("incomplete beta requires a > 0 and b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete beta requires x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    // The continued fraction converges fastest for x below the mean of the
    // distribution; above it, evaluate the mirrored tail instead.
    const bool mirrored = x >= (a + 1.0) / (a + b + 2.0);
    const double aa = mirrored ? b : a;
    const double bb = mirrored ? a : b;
    const double xx = mirrored ? 1.0 - x : x;
    const double ln_front = std::lgamma(aa + bb) - std::lgamma(aa) - std::lgamma(bb) +
                            aa * std::log(xx) + bb * std::log1p(-xx);
    const double value = std::exp(ln_front) * detail::beta_cf(aa, bb, xx) / aa;
    return mirrored ? 1.0 - value : value;
}

/// Student t distribution function P(T <= t) with nu degrees of freedom.
inline double student_t_cdf(double t, double nu) {
    if (!(nu > 0.0)) throw DomainError("t distribution requires nu > 0");
    if (std::isnan(t)) throw DomainError("t distribution: t is NaN");
    if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
    const double x = nu / (t * t + nu);
    const double half_tail = 0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, x);
    return t <= 0.0 ? half_tail : 1.0 - half_tail;
}

/// F distribution survival function P(F > x) with (d1, d2) degrees of freedom.
inline double f_survival(double x, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw DomainError("F distribution requires d1 > 0 and d2 > 0");
    if (!(x >= 0.0)) throw DomainError("F survival requires x >= 0");
    if (std::isinf(x)) return 0.0;
    return regularized_incomplete_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * x));
}

/// Distribution function of the studentized range of k groups with nu
/// error degrees of freedom. The scale integral runs over the chi-scaled
/// pooled standard deviation, truncated where its density mass drops below
/// 1e-12; both integrals use fixed-order Gauss-Legendre panels whose count
/// doubles until successive estimates agree to 1e-8. Degrees of freedom
/// above 1e6 use the limiting normal range distribution.
inline double studentized_range_cdf(double q, int k, double nu) {
    if (k < 2) throw DomainError("studentized range requires k >= 2");
    if (!(nu > 0.0)) throw DomainError("studentized range requires nu > 0");
    if (!(q >= 0.0)) throw DomainError("studentized range requires q >= 0");
    if (q == 0.0) return 0.0;
    if (std::isinf(q)) return 1.0;

    const bool infinite_df = nu > 1e6;
    double s_lo = 0.0;
    double s_hi = 0.0;
    double ln_norm = 0.0;
    int base_panels = 0;
    if (!infinite_df) {
        const double r = 30.0 / nu;
        s_hi = std::sqrt(1.0 + 2.0 * std::sqrt(r) + 2.0 * r);
        s_lo = std::sqrt(std::max(0.0, 1.0 - 2.0 * std::sqrt(r)));
        ln_norm = (1.0 - 0.5 * nu) * std::log(2.0) + 0.5 * nu * std::log(nu) -
                  std::lgamma(0.5 * nu);
        base_panels = std::max(4, static_cast<int>(std::ceil((s_hi - s_lo) / 0.5)));
    }

    double prev = -1.0;
    for (int level = 0; level <= 6; ++level) {
        double est;
        if (infinite_df) {
            est = detail::normal_range_probability(q, k, level);
        } else {
            est = detail::panel_integral(
                [&](double s) {
                    const double ln_density =
                        ln_norm + (nu - 1.0) * std::log(s) - 0.5 * nu * s * s;
                    return std::exp(ln_density) *
                           detail::normal_range_probability(q * s, k, level);
                },
                s_lo, s_hi, base_panels << level);
        }
        if (level > 0 && std::fabs(est - prev) < 1e-8) return std::clamp(est, 0.0, 1.0);
        prev = est;
    }
    throw ConvergenceError("studentized range cdf did not converge");
}

/// Quantile of the studentized range: the q with cdf(q, k, nu) = p, found
/// by bisection on [0, 100] handing over to damped secant steps once the
/// bracket tightens. Results are cached; the cache is mutex guarded so
/// concurrent callers are safe.
inline double studentized_range_quantile(double p, int k, double nu) {
    if (k < 2) throw DomainError("studentized range requires k >= 2");
    if (!(nu > 0.0)) throw DomainError("studentized range requires nu > 0");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("studentized range quantile requires p in (0, 1)");

    static std::mutex cache_mutex;
    static std::unordered_map<detail::QuantileKey, double, detail::QuantileKeyHash> cache;
    const detail::QuantileKey key{std::bit_cast<std::uint64_t>(p),
                                  std::bit_cast<std::uint64_t>(nu), k};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    double a = 0.0;
    double fa = -p;
    double b = 100.0;
    double fb = studentized_range_cdf(b, k, nu) - p;
    if (fb < 0.0) throw ConvergenceError("studentized range quantile not bracketed by [0, 100]");

    double result = std::numeric_limits<double>::quiet_NaN();
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        double x;
        if (it < 2) {
            x = 0.5 * (a + b);
        } else {
            x = (b * fa - a * fb) / (fa - fb);
            if (!std::isfinite(x) || x <= a || x >= b) x = 0.5 * (a + b);
        }
        const double fx = studentized_range_cdf(x, k, nu) - p;
        if (std::fabs(fx) <= 1e-7) {
            result = x;
            break;
        }
        if (fx < 0.0) {
            if (side == -1) fb *= 0.5;
            a = x;
            fa = fx;
            side = -1;
        } else {
            if (side == 1) fa *= 0.5;
            b = x;
            fb = fx;
            side = 1;
        }
        if (b - a < 1e-10 * std::max(1.0, b)) {
            result = 0.5 * (a + b);
            break;
        }
    }
    if (std::isnan(result)) throw ConvergenceError("studentized range quantile did not converge");

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(key, result);
    return result;
}

} // namespace pacestats

#endif
