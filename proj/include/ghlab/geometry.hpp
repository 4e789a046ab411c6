#ifndef GHLAB_GEOMETRY_HPP
#define GHLAB_GEOMETRY_HPP

#include "ghlab/config.hpp"
#include "ghlab/linalg.hpp"
#include "ghlab/potential.hpp"

namespace ghlab {

/// Sign convention tying the monopole potential to the Gibbons-Hawking
/// potential: curl theta = kCurlSign * grad V (quarter_pi normalization).
/// Fixed once here; curvature_residual and the gauge tests depend on it.
inline constexpr double kCurlSign = -1.0;

/// Superposed Dirac-monopole potential theta(x) = sum_j |e_j| theta_mono(x - p_j)
/// with the string of every center along gauge_axis; the connection form is
/// omega = dt + theta_x dx + theta_y dy + theta_z dz. Throws string_proximity
/// if x is within tol 1e-8 of any string ray {p_j + t * gauge_axis, t >= 0}.
Vec3 monopole_theta(const PunctureConfig& cfg, const Vec3& x, const Vec3& gauge_axis = {0.0, 0.0, -1.0});

/// Max-norm of (finite-difference curl theta)(x) - kCurlSign * grad V(x).
/// Requires clearance 10h from punctures and strings; contract O(h^2).
double curvature_residual(const PunctureConfig& cfg, const Vec3& x, double h,
                          const Vec3& gauge_axis = {0.0, 0.0, -1.0});

/// Coframe basis order is (omega, dx, dy, dz) throughout.
/// g = diag(1/V, V, V, V).
Mat4 metric_matrix_value(double V);
Mat4 metric_matrix(const PunctureConfig& cfg, const Vec3& x);

enum class Axis { x, y, z };

Vec3 axis_unit(Axis a);

/// Matrix of J_v = v1 Jx + v2 Jy + v3 Jz acting on coframe components
/// (column convention: column i holds the image of basis covector i), at
/// potential value V. Satisfies J_v^2 = -Id and Jx Jy = Jz as matrix
/// products. Throws non_unit_vector unless ||v|| = 1 within 1e-12.
Mat4 complex_structure_value(const Vec3& v, double V);
Mat4 complex_structure_value(Axis a, double V);
Mat4 complex_structure(const PunctureConfig& cfg, const Vec3& v, const Vec3& x);
Mat4 complex_structure(const PunctureConfig& cfg, Axis a, const Vec3& x);

/// Antisymmetric matrix of the Kaehler 2-form, e.g.
/// Omega_x = dx ^ omega + V dy ^ dz. Satisfies Omega_a = g * J_a^T.
Mat4 kahler_form_value(Axis a, double V);
Mat4 kahler_form_value(const Vec3& v, double V);
Mat4 kahler_form(const PunctureConfig& cfg, Axis a, const Vec3& x);
Mat4 kahler_form(const PunctureConfig& cfg, const Vec3& v, const Vec3& x);

/// Max entrywise residual over the quaternion identities
/// J_a^2 + Id, Jx Jy - Jz, Jy Jx + Jz at potential value V.
double quaternion_residual_value(double V);

/// Max entrywise residual of Omega_a - g J_a^T and of J_a g J_a^T - g over
/// the three axes (Kaehler compatibility and metric invariance).
double compatibility_residual_value(double V);

} // namespace ghlab

#endif
