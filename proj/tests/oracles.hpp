// Independent oracles for the expected values asserted by the tests. These
// deliberately avoid the code paths they check: quadrature instead of the
// closed Riesz form, finite differences instead of analytic derivatives,
// brute-force counting instead of the sorted counting function.
#ifndef GHLAB_TESTS_ORACLES_HPP
#define GHLAB_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ghlab/config.hpp"
#include "ghlab/entire.hpp"
#include "ghlab/linalg.hpp"

namespace oracle {

using ghlab::Complex;
using ghlab::PunctureConfig;
using ghlab::Vec3;

/// sum_{j=1..n} q^j by plain accumulation.
inline double geometric_partial_sum(double q, int n) {
    double sum = 0.0, term = 1.0;
    for (int j = 1; j <= n; ++j) {
        term *= q;
        sum += term;
    }
    return sum;
}

template <typename F>
Vec3 fd_gradient(F f, const Vec3& x, double h) {
    Vec3 g;
    for (int a = 0; a < 3; ++a) {
        const Vec3 e = ghlab::axis_vector(a) * h;
        const double d = (f(x + e) - f(x - e)) / (2.0 * h);
        if (a == 0) g.x = d;
        if (a == 1) g.y = d;
        if (a == 2) g.z = d;
    }
    return g;
}

template <typename F>
double fd_laplacian(F f, const Vec3& x, double h) {
    double sum = -6.0 * f(x);
    for (int a = 0; a < 3; ++a) {
        const Vec3 e = ghlab::axis_vector(a) * h;
        sum += f(x + e) + f(x - e);
    }
    return sum / (h * h);
}

template <typename F>
Vec3 fd_curl(F f, const Vec3& x, double h) {
    const Vec3 ex = ghlab::axis_vector(0) * h, ey = ghlab::axis_vector(1) * h, ez = ghlab::axis_vector(2) * h;
    const Vec3 txp = f(x + ex), txm = f(x - ex);
    const Vec3 typ = f(x + ey), tym = f(x - ey);
    const Vec3 tzp = f(x + ez), tzm = f(x - ez);
    const double i2h = 1.0 / (2.0 * h);
    return {(typ.z - tym.z) * i2h - (tzp.y - tzm.y) * i2h,
            (tzp.x - tzm.x) * i2h - (txp.z - txm.z) * i2h,
            (txp.y - txm.y) * i2h - (typ.x - tym.x) * i2h};
}

/// n(t) by brute counting over closed balls.
inline double count_n(const PunctureConfig& cfg, double t) {
    double n = 0.0;
    for (int j = 0; j < cfg.count(); ++j)
        if (cfg.punctures[static_cast<std::size_t>(j)].norm() <= t)
            n += std::abs(cfg.weights[static_cast<std::size_t>(j)]);
    return n;
}

/// Quadrature of int_1^inf n(t)/t^2 dt: per-segment 5-point Gauss between
/// consecutive radii (16 panels each, nodes interior so jump points are
/// never sampled), plus the elementary horizon integral n(T)/T beyond the
/// largest radius.
inline double riesz_quadrature(const PunctureConfig& cfg) {
    static const double kNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                     0.5384693101056831, 0.9061798459386640};
    static const double kWeights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                       0.4786286704993665, 0.2369268850561891};

    std::vector<double> cuts{1.0};
    double rmax = 1.0;
    for (const Vec3& p : cfg.punctures) {
        const double r = p.norm();
        rmax = std::max(rmax, r);
        if (r > 1.0) cuts.push_back(r);
    }
    const double T = 2.0 * rmax;
    cuts.push_back(T);
    std::sort(cuts.begin(), cuts.end());

    double integral = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double a = cuts[s], b = cuts[s + 1];
        if (!(b > a)) continue;
        const int panels = 16;
        const double w = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double lo = a + p * w, mid = lo + 0.5 * w, half = 0.5 * w;
            for (int q = 0; q < 5; ++q) {
                const double t = mid + half * kNodes[q];
                integral += kWeights[q] * half * count_n(cfg, t) / (t * t);
            }
        }
    }
    return integral + count_n(cfg, T) / T;
}

/// Expected winding: total multiplicity of truncation zeros (and the origin
/// prefactor) strictly inside the circle.
inline int enclosed_multiplicity(const ghlab::EntireProduct& p, Complex center, double radius) {
    int total = 0;
    if (p.delta > 0 && std::abs(center) < radius) total += p.delta;
    for (int k = 0; k < p.truncation; ++k) {
        const ghlab::ZeroEntry& z = p.zeros[static_cast<std::size_t>(k)];
        if (std::abs(z.b - center) < radius) total += z.multiplicity;
    }
    return total;
}

} // namespace oracle

#endif
