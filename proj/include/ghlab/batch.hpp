#ifndef GHLAB_BATCH_HPP
#define GHLAB_BATCH_HPP

#include <cstdint>
#include <vector>

#include "ghlab/config.hpp"
#include "ghlab/exec.hpp"
#include "ghlab/linalg.hpp"

namespace ghlab {

/// Per-point verification record. quat/compat are evaluated at the point's
/// potential value together with a J_v spot check along a random direction
/// drawn from the point's substream.
struct GeometryRow {
    Vec3 x;
    double V = 0.0;
    double grad_norm = 0.0;
    double lap_residual = 0.0;
    double curl_residual = 0.0;
    double quat_residual = 0.0;
    double compat_residual = 0.0;
};

/// Draws `count` points near the first few centers with clearance
/// max(10.5 h, 0.6) from every puncture and every gauge string, one rng
/// substream per point. Throws step_too_large when the clearance leaves no
/// room in the sampling box (h too coarse for the configuration).
std::vector<Vec3> sample_verification_points(const PunctureConfig& cfg, int count, std::uint64_t seed,
                                             double h, const Vec3& gauge_axis = {0.0, 0.0, -1.0});

/// Evaluates all residuals at the given points. The parallel path writes
/// row i independently, so it matches the serial reference bit for bit.
std::vector<GeometryRow> geometry_rows(const PunctureConfig& cfg, const std::vector<Vec3>& points,
                                       double h, std::uint64_t seed, Exec exec = Exec::parallel,
                                       const Vec3& gauge_axis = {0.0, 0.0, -1.0});

/// Potential values at many points (plain batch map; parallel == serial).
std::vector<double> batch_potential(const PunctureConfig& cfg, const std::vector<Vec3>& points,
                                    Exec exec = Exec::parallel);

} // namespace ghlab

#endif
