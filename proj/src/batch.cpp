#include "ghlab/batch.hpp"

#include <algorithm>
#include <cmath>

#include "ghlab/error.hpp"
#include "ghlab/geometry.hpp"
#include "ghlab/potential.hpp"
#include "ghlab/rng.hpp"

namespace ghlab {

namespace {

struct Box {
    Vec3 lo, hi;
};

// box around the few centers nearest the origin, so huge configurations
// (geometric tails) are probed where the potential actually varies
Box sampling_box(const PunctureConfig& cfg) {
    std::vector<int> order(static_cast<std::size_t>(cfg.count()));
    for (int i = 0; i < cfg.count(); ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return cfg.punctures[static_cast<std::size_t>(a)].norm() < cfg.punctures[static_cast<std::size_t>(b)].norm();
    });
    const int take = std::min(3, cfg.count());
    Box box{cfg.punctures[static_cast<std::size_t>(order[0])], cfg.punctures[static_cast<std::size_t>(order[0])]};
    for (int i = 1; i < take; ++i) {
        const Vec3& p = cfg.punctures[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        box.lo = {std::min(box.lo.x, p.x), std::min(box.lo.y, p.y), std::min(box.lo.z, p.z)};
        box.hi = {std::max(box.hi.x, p.x), std::max(box.hi.y, p.y), std::max(box.hi.z, p.z)};
    }
    const Vec3 margin{3.0, 3.0, 3.0};
    box.lo = box.lo - margin;
    box.hi = box.hi + margin;
    return box;
}

double ray_distance(const Vec3& x, const Vec3& p, const Vec3& g) {
    const Vec3 d = x - p;
    const double t = std::max(0.0, dot(d, g));
    return (d - g * t).norm();
}

} // namespace

std::vector<Vec3> sample_verification_points(const PunctureConfig& cfg, int count, std::uint64_t seed,
                                             double h, const Vec3& gauge_axis) {
    const Box box = sampling_box(cfg);
    const Vec3 g = normalized(gauge_axis);
    const double clearance = std::max(10.5 * h, 0.6);

    std::vector<Vec3> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        bool found = false;
        for (int attempt = 0; attempt < 20000 && !found; ++attempt) {
            const Vec3 x{box.lo.x + (box.hi.x - box.lo.x) * rng.next_double(),
                         box.lo.y + (box.hi.y - box.lo.y) * rng.next_double(),
                         box.lo.z + (box.hi.z - box.lo.z) * rng.next_double()};
            bool ok = cfg.nearest_distance(x) > clearance;
            for (int j = 0; ok && j < cfg.count(); ++j)
                ok = ray_distance(x, cfg.punctures[static_cast<std::size_t>(j)], g) > clearance;
            if (ok) {
                pts[static_cast<std::size_t>(i)] = x;
                found = true;
            }
        }
        if (!found)
            throw Error(ErrCode::step_too_large,
                        "no sample point clears the punctures and strings; h too coarse for this box");
    }
    return pts;
}

namespace {

GeometryRow make_row(const PunctureConfig& cfg, const Vec3& x, double h, std::uint64_t seed,
                     std::size_t i, const Vec3& gauge_axis) {
    GeometryRow row;
    row.x = x;
    row.V = eval_potential(cfg, x);
    row.grad_norm = grad_potential(cfg, x).norm();
    row.lap_residual = laplacian_residual(cfg, x, h);
    row.curl_residual = curvature_residual(cfg, x, h, gauge_axis);
    CounterRng rng(seed ^ 0x9E3779B97F4A7C15ULL, static_cast<std::uint64_t>(i));
    const Vec3 v = rng.next_sphere();
    const Mat4 jv = complex_structure_value(v, row.V);
    row.quat_residual = std::max(quaternion_residual_value(row.V),
                                 (jv * jv + Mat4::identity()).max_abs());
    row.compat_residual = compatibility_residual_value(row.V);
    return row;
}

} // namespace

std::vector<GeometryRow> geometry_rows(const PunctureConfig& cfg, const std::vector<Vec3>& points,
                                       double h, std::uint64_t seed, Exec exec, const Vec3& gauge_axis) {
    std::vector<GeometryRow> rows(points.size());
    const long n = static_cast<long>(points.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i)
            rows[static_cast<std::size_t>(i)] =
                make_row(cfg, points[static_cast<std::size_t>(i)], h, seed, static_cast<std::size_t>(i), gauge_axis);
    } else {
        for (long i = 0; i < n; ++i)
            rows[static_cast<std::size_t>(i)] =
                make_row(cfg, points[static_cast<std::size_t>(i)], h, seed, static_cast<std::size_t>(i), gauge_axis);
    }
    return rows;
}

std::vector<double> batch_potential(const PunctureConfig& cfg, const std::vector<Vec3>& points, Exec exec) {
    std::vector<double> out(points.size());
    const long n = static_cast<long>(points.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = eval_potential(cfg, points[static_cast<std::size_t>(i)]);
    } else {
        for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = eval_potential(cfg, points[static_cast<std::size_t>(i)]);
    }
    return out;
}

} // namespace ghlab
