#include "ghlab/geometry.hpp"

#include <cmath>
#include <sstream>

#include "ghlab/error.hpp"

namespace ghlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kStringTol = 1e-8;

Vec3 require_unit(const Vec3& v) {
    const double n = v.norm();
    if (n == 0.0) throw Error(ErrCode::zero_vector, "zero gauge axis");
    return v / n;
}

/// Distance from x to the string ray {p + t*g, t >= 0}, g unit.
double ray_distance(const Vec3& x, const Vec3& p, const Vec3& g) {
    const Vec3 d = x - p;
    const double t = std::max(0.0, dot(d, g));
    return (d - g * t).norm();
}

void require_string_clearance(const PunctureConfig& cfg, const Vec3& x, const Vec3& g, double tol) {
    for (int j = 0; j < cfg.count(); ++j) {
        const double d = ray_distance(x, cfg.punctures[static_cast<std::size_t>(j)], g);
        if (d < tol) {
            std::ostringstream os;
            os << "point within " << d << " of the gauge string of center " << j;
            throw Error(ErrCode::string_proximity, os.str(), j, -1, d);
        }
    }
}

} // namespace

Vec3 monopole_theta(const PunctureConfig& cfg, const Vec3& x, const Vec3& gauge_axis) {
    const Vec3 g = require_unit(gauge_axis);
    require_string_clearance(cfg, x, g, kStringTol);
    const Vec3 w = -g; // polar axis opposite the string
    Vec3 theta;
    for (int j = 0; j < cfg.count(); ++j) {
        const Vec3 d = x - cfg.punctures[static_cast<std::size_t>(j)];
        const double r = d.norm();
        const double c = dot(d, w);
        const Vec3 wxd = cross(w, d);
        // (r - c)/(r rho^2) = 1/(r (r + c)); for c < 0 the sum r + c cancels
        // catastrophically, so rewrite it as rho^2/(r - c) there.
        const double rc = (c >= 0.0) ? (r + c) : wxd.norm2() / (r - c);
        const double wj = std::abs(cfg.weights[static_cast<std::size_t>(j)]);
        theta = theta + wxd * (wj / (4.0 * kPi * r * rc));
    }
    return theta;
}

double curvature_residual(const PunctureConfig& cfg, const Vec3& x, double h, const Vec3& gauge_axis) {
    const Vec3 g = require_unit(gauge_axis);
    int idx = -1;
    const double dp = cfg.nearest_distance(x, &idx);
    if (!(dp > 10.0 * h)) {
        std::ostringstream os;
        os << "step h = " << h << " too large: puncture " << idx << " at distance " << dp;
        throw Error(ErrCode::step_too_large, os.str(), idx, -1, dp);
    }
    require_string_clearance(cfg, x, g, 10.0 * h);

    auto theta = [&](const Vec3& q) { return monopole_theta(cfg, q, gauge_axis); };
    const double inv2h = 1.0 / (2.0 * h);
    const Vec3 ex = axis_vector(0) * h, ey = axis_vector(1) * h, ez = axis_vector(2) * h;
    const Vec3 txp = theta(x + ex), txm = theta(x - ex);
    const Vec3 typ = theta(x + ey), tym = theta(x - ey);
    const Vec3 tzp = theta(x + ez), tzm = theta(x - ez);
    const Vec3 curl{(typ.z - tym.z) * inv2h - (tzp.y - tzm.y) * inv2h,
                    (tzp.x - tzm.x) * inv2h - (txp.z - txm.z) * inv2h,
                    (txp.y - txm.y) * inv2h - (typ.x - tym.x) * inv2h};

    const Vec3 target = grad_potential(cfg, x) * kCurlSign;
    const Vec3 diff = curl - target;
    return std::max({std::abs(diff.x), std::abs(diff.y), std::abs(diff.z)});
}

Mat4 metric_matrix_value(double V) { return Mat4::diagonal(1.0 / V, V, V, V); }

Mat4 metric_matrix(const PunctureConfig& cfg, const Vec3& x) {
    return metric_matrix_value(eval_potential(cfg, x));
}

Vec3 axis_unit(Axis a) {
    switch (a) {
        case Axis::x: return {1.0, 0.0, 0.0};
        case Axis::y: return {0.0, 1.0, 0.0};
        case Axis::z: return {0.0, 0.0, 1.0};
    }
    return {};
}

namespace {

// Coframe images (column convention), e.g. for Jx:
//   omega -> -V dx,  dx -> V^{-1} omega,  dy -> dz,  dz -> -dy.
Mat4 jx_value(double V) {
    Mat4 m;
    m(1, 0) = -V;
    m(0, 1) = 1.0 / V;
    m(3, 2) = 1.0;
    m(2, 3) = -1.0;
    return m;
}

Mat4 jy_value(double V) {
    Mat4 m;
    m(2, 0) = -V;
    m(0, 2) = 1.0 / V;
    m(1, 3) = 1.0;
    m(3, 1) = -1.0;
    return m;
}

Mat4 jz_value(double V) {
    Mat4 m;
    m(3, 0) = -V;
    m(0, 3) = 1.0 / V;
    m(2, 1) = 1.0;
    m(1, 2) = -1.0;
    return m;
}

} // namespace

Mat4 complex_structure_value(const Vec3& v, double V) {
    if (std::abs(v.norm() - 1.0) > 1e-12)
        throw Error(ErrCode::non_unit_vector, "direction must be a unit vector", -1, -1, v.norm());
    return jx_value(V) * v.x + jy_value(V) * v.y + jz_value(V) * v.z;
}

Mat4 complex_structure_value(Axis a, double V) {
    switch (a) {
        case Axis::x: return jx_value(V);
        case Axis::y: return jy_value(V);
        case Axis::z: return jz_value(V);
    }
    return {};
}

Mat4 complex_structure(const PunctureConfig& cfg, const Vec3& v, const Vec3& x) {
    return complex_structure_value(v, eval_potential(cfg, x));
}

Mat4 complex_structure(const PunctureConfig& cfg, Axis a, const Vec3& x) {
    return complex_structure_value(a, eval_potential(cfg, x));
}

Mat4 kahler_form_value(Axis a, double V) {
    Mat4 m;
    switch (a) {
        case Axis::x: // dx ^ omega + V dy ^ dz
            m(1, 0) = 1.0;
            m(0, 1) = -1.0;
            m(2, 3) = V;
            m(3, 2) = -V;
            break;
        case Axis::y: // dy ^ omega + V dz ^ dx
            m(2, 0) = 1.0;
            m(0, 2) = -1.0;
            m(3, 1) = V;
            m(1, 3) = -V;
            break;
        case Axis::z: // dz ^ omega + V dx ^ dy
            m(3, 0) = 1.0;
            m(0, 3) = -1.0;
            m(1, 2) = V;
            m(2, 1) = -V;
            break;
    }
    return m;
}

Mat4 kahler_form_value(const Vec3& v, double V) {
    if (std::abs(v.norm() - 1.0) > 1e-12)
        throw Error(ErrCode::non_unit_vector, "direction must be a unit vector", -1, -1, v.norm());
    return kahler_form_value(Axis::x, V) * v.x + kahler_form_value(Axis::y, V) * v.y +
           kahler_form_value(Axis::z, V) * v.z;
}

Mat4 kahler_form(const PunctureConfig& cfg, Axis a, const Vec3& x) {
    return kahler_form_value(a, eval_potential(cfg, x));
}

Mat4 kahler_form(const PunctureConfig& cfg, const Vec3& v, const Vec3& x) {
    return kahler_form_value(v, eval_potential(cfg, x));
}

double quaternion_residual_value(double V) {
    const Mat4 jx = jx_value(V), jy = jy_value(V), jz = jz_value(V);
    const Mat4 id = Mat4::identity();
    double r = 0.0;
    r = std::max(r, (jx * jx + id).max_abs());
    r = std::max(r, (jy * jy + id).max_abs());
    r = std::max(r, (jz * jz + id).max_abs());
    r = std::max(r, (jx * jy - jz).max_abs());
    r = std::max(r, (jy * jx + jz).max_abs());
    return r;
}

double compatibility_residual_value(double V) {
    const Mat4 g = metric_matrix_value(V);
    double r = 0.0;
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
        const Mat4 j = complex_structure_value(a, V);
        r = std::max(r, (kahler_form_value(a, V) - g * j.transposed()).max_abs());
        r = std::max(r, (j * g * j.transposed() - g).max_abs());
    }
    return r;
}

} // namespace ghlab
