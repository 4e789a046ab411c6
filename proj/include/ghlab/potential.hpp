#ifndef GHLAB_POTENTIAL_HPP
#define GHLAB_POTENTIAL_HPP

#include <optional>
#include <vector>

#include "ghlab/config.hpp"
#include "ghlab/linalg.hpp"

namespace ghlab {

/// quarter_pi: V(x) = sum |e_j| / (4 pi |x - p_j|)   (default everywhere)
/// half:       V(x) = sum |e_j| / (2 |x - p_j|)      (= 2 pi * quarter_pi)
enum class Normalization { quarter_pi, half };

/// Truncated potential sum. Throws eval_at_puncture when x coincides with a
/// center (distance 0).
double eval_potential(const PunctureConfig& cfg, const Vec3& x,
                      Normalization norm = Normalization::quarter_pi);

/// Analytic gradient sum -|e_j| (x - p_j) / (4 pi |x - p_j|^3).
Vec3 grad_potential(const PunctureConfig& cfg, const Vec3& x,
                    Normalization norm = Normalization::quarter_pi);

/// |7-point finite-difference Laplacian| of the potential at x.
/// Requires dist(x, nearest puncture) > 10 h; contract O(h^2).
double laplacian_residual(const PunctureConfig& cfg, const Vec3& x, double h,
                          Normalization norm = Normalization::quarter_pi);

/// Closed form of the Riesz integral over the truncation:
///   sum_{|p_j| <= 1} |e_j|  +  sum_{|p_j| > 1} |e_j| / |p_j|.
/// Radii exactly 1 land in the finite part (closed-ball counting).
double riesz_integral(const PunctureConfig& cfg);

/// Step counting function n(t) = sum of |e_j| over closed radius-t balls.
struct CountingFunction {
    std::vector<double> thresholds; // sorted radii |p_j|
    std::vector<double> cumulative; // running sum of |e_j| in radius order

    double value(double t) const; // n(t)
    static CountingFunction from(const PunctureConfig& cfg);
};

struct CriterionVerdict {
    enum class Reason { ok, positive_weight, tail_divergent, tail_unknown };

    bool accepted = false;
    Reason reason = Reason::tail_unknown;
    int offending_index = -1; // first j with e_j > 0 when reason is positive_weight
    double series_value = 0.0;
    std::optional<double> tail_bound;
};

const char* to_string(CriterionVerdict::Reason r);

/// Existence criterion: rejects on any positive weight or a tail model that
/// implies divergence of sum |e_j|/|p_j|. A config without a tail model is a
/// finite configuration (trivially summable); an explicit `none` tail
/// declares an unknown continuation and yields tail_unknown.
CriterionVerdict check_criterion(const PunctureConfig& cfg);

} // namespace ghlab

#endif
