#ifndef GHLAB_CONFIG_HPP
#define GHLAB_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ghlab/linalg.hpp"

namespace ghlab {

/// Analytic model for the part of the puncture sequence beyond the stored
/// truncation. A finite truncation cannot witness convergence of
/// sum |e_j|/|p_j| on its own; the tail model carries that information.
struct TailModel {
    enum class Kind { none, geometric, powerlaw, custom };

    Kind kind = Kind::none;
    double param = 0.0; // ratio (geometric), exponent (powerlaw) or series bound (custom)
    int anchor = 0;     // 0-based index of the last stored puncture the model anchors to

    static TailModel geometric(double ratio, int anchor);
    static TailModel powerlaw(double exponent, int anchor);
    static TailModel custom(double bound, int anchor);
};

/// Puncture centers p_j with integer weights e_j. Immutable after
/// construction; all operations on it are pure.
struct PunctureConfig {
    std::vector<Vec3> punctures;
    std::vector<int> weights;
    std::optional<TailModel> tail;
    std::string label;

    int count() const { return static_cast<int>(punctures.size()); }

    /// Max pairwise distance; 0 for a single puncture.
    double diameter() const;

    /// Distance from x to the nearest puncture; index reported via *idx.
    double nearest_distance(const Vec3& x, int* idx = nullptr) const;
};

/// Validates distinctness and weight arity. Throws Error on violation;
/// punctures closer than min_separation only append to `warnings`.
void validate_config(const PunctureConfig& cfg, std::vector<std::string>* warnings = nullptr,
                     double min_separation = 1e-9);

PunctureConfig load_config(std::istream& in, std::vector<std::string>* warnings = nullptr);
PunctureConfig load_config(const std::string& text, std::vector<std::string>* warnings = nullptr);
PunctureConfig load_config_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// JSON writer; load_config(emit_config(c)) reproduces c up to decimal
/// round-trip of the coordinates.
std::string emit_config(const PunctureConfig& cfg);

/// p_j = (0, 0, ratio^j), j = 1..count, weights -1, geometric tail attached.
PunctureConfig make_geometric_z(double ratio, int count);

/// p_j = ((j-1) * spacing, 0, 0), j = 1..count, weights -1.
/// make_collinear_x(1, 2) is the two-center fixture at (0,0,0), (1,0,0).
PunctureConfig make_collinear_x(double spacing, int count);

/// `count` points drawn uniformly from the ball of given radius,
/// deterministic for a fixed seed. Weights -1.
PunctureConfig make_random_ball(double radius, int count, std::uint64_t seed);

} // namespace ghlab

#endif
