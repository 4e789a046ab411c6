#ifndef GHLAB_REPORT_HPP
#define GHLAB_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ghlab/batch.hpp"
#include "ghlab/config.hpp"
#include "ghlab/directions.hpp"
#include "ghlab/entire.hpp"
#include "ghlab/potential.hpp"
#include "ghlab/surface.hpp"

namespace ghlab {

inline constexpr const char* kToolVersion = "0.1.0";

/// Reproducibility stamp embedded in every emitted report. Reports are
/// byte-identical for equal (command, config, seed, tolerances) up to the
/// timestamp field.
struct RunManifest {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    nlohmann::json tolerances = nlohmann::json::object();
    std::string tool_version = kToolVersion;
    std::string timestamp;

    static RunManifest make(std::string command, const PunctureConfig& cfg, std::uint64_t seed);
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string config_hash(const PunctureConfig& cfg);

nlohmann::json to_json(const RunManifest& m);
nlohmann::json to_json(const CriterionVerdict& v);
nlohmann::json to_json(const DirectionFrame& frame);
nlohmann::json to_json(const ProjectionReport& rep);
nlohmann::json to_json(const CapEstimate& cap);
nlohmann::json to_json(const SurveySummary& s);
nlohmann::json to_json(const EntireProduct& p);
nlohmann::json to_json(const SingularityReport& rep);
nlohmann::json atlas_json(const ChartAtlas& atlas);

nlohmann::json direction_report_json(const RunManifest& m, const DirectionFrame& frame,
                                     const ProjectionReport& rep,
                                     const std::optional<CapEstimate>& cap);

std::string geometry_rows_csv(const std::vector<GeometryRow>& rows, double h);

} // namespace ghlab

#endif
