#ifndef GHLAB_DIRECTIONS_HPP
#define GHLAB_DIRECTIONS_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ghlab/config.hpp"
#include "ghlab/exec.hpp"
#include "ghlab/linalg.hpp"

namespace ghlab {

/// Right-handed orthonormal frame (f1, f2, v) identifying v-perp with C:
/// a = <p, f1> + i <p, f2>.
struct DirectionFrame {
    Vec3 v;
    Vec3 f1;
    Vec3 f2;
    std::string derivation = "least-aligned-axis-gs-v1";
};

/// Normalizes v, Gram-Schmidts the coordinate axis least aligned with it
/// (ties broken x < y < z) and closes with f2 = v x f1.
DirectionFrame make_frame(const Vec3& v);

struct Cluster {
    Complex b;                // representative value (mean of members)
    std::vector<int> members; // 0-based puncture indices
    int multiplicity = 0;
    bool contains_origin = false;
};

struct ProjectionReport {
    std::vector<Complex> a;        // a_j = projection of p_j
    std::vector<Cluster> clusters; // ordered by smallest member index
    int m0 = 0;                    // multiplicity of the cluster containing 0
    bool generic = false;          // all multiplicities 1
    bool accumulation_flag = false;
    double tolerance = 0.0;
};

/// Projects the punctures and groups eps-connected components (union-find
/// over pairwise distance < eps, with the origin participating as a site).
/// eps < 0 selects the default 1e-9 * diameter.
ProjectionReport project(const PunctureConfig& cfg, const DirectionFrame& frame, double eps = -1.0);

/// Index pairs (i, j), i < j, 0-based, whose difference p_i - p_j is aligned
/// with v within tol: ||(p_i - p_j) x v|| / ||p_i - p_j|| < tol.
std::vector<std::pair<int, int>> bad_set_membership(const PunctureConfig& cfg, const Vec3& v, double tol);

struct CapEstimate {
    int n = 0;
    std::vector<double> exact_measures;     // 2 pi (1 - cos s_j), s_j = n/|p_j| capped at pi
    std::vector<double> sin_exact_measures; // both polar caps of the sin-family: sin(theta) <= s_j
    double bound = 0.0;                     // sum pi s_j^2
    double mc_union_estimate = 0.0;
    double mc_stddev = 0.0;
    double sin_mc_union_estimate = 0.0;
    double sin_mc_stddev = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
};

/// Exact spherical-cap measures, the quadratic bound and a seeded Monte
/// Carlo estimate of the union measure. Both cap families (angle <= s and
/// sin(angle) <= s) are evaluated. Throws origin_puncture if some |p_j| = 0.
CapEstimate cap_estimate(const PunctureConfig& cfg, int n, long samples, std::uint64_t seed,
                         Exec exec = Exec::parallel);

struct SurveySummary {
    double fraction_generic = 0.0;
    double fraction_accumulating = 0.0;
    int num_directions = 0;
    std::uint64_t seed = 0;
};

/// Samples directions uniformly on the sphere (substream per direction) and
/// aggregates projection flags.
SurveySummary genericity_survey(const PunctureConfig& cfg, int num_directions, std::uint64_t seed,
                                Exec exec = Exec::parallel);

} // namespace ghlab

#endif
