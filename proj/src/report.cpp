#include "ghlab/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace ghlab {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string config_hash(const PunctureConfig& cfg) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(emit_config(cfg))));
    return buf;
}

RunManifest RunManifest::make(std::string command, const PunctureConfig& cfg, std::uint64_t seed) {
    RunManifest m;
    m.command = std::move(command);
    m.config_hash = ghlab::config_hash(cfg);
    m.seed = seed;
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    m.timestamp = buf;
    return m;
}

json to_json(const RunManifest& m) {
    return json{{"command", m.command},     {"config_hash", m.config_hash},
                {"seed", m.seed},           {"tolerances", m.tolerances},
                {"tool_version", m.tool_version}, {"timestamp", m.timestamp}};
}

json to_json(const CriterionVerdict& v) {
    json j{{"accepted", v.accepted},
           {"reason", to_string(v.reason)},
           {"series_value", v.series_value}};
    if (v.reason == CriterionVerdict::Reason::positive_weight) j["offending_index"] = v.offending_index;
    if (v.tail_bound) j["tail_bound"] = *v.tail_bound;
    return j;
}

json to_json(const DirectionFrame& frame) {
    return json{{"v", {frame.v.x, frame.v.y, frame.v.z}},
                {"f1", {frame.f1.x, frame.f1.y, frame.f1.z}},
                {"f2", {frame.f2.x, frame.f2.y, frame.f2.z}},
                {"frame_id", frame.derivation}};
}

json to_json(const ProjectionReport& rep) {
    json clusters = json::array();
    for (const Cluster& c : rep.clusters)
        clusters.push_back(json{{"b", {c.b.real(), c.b.imag()}},
                                {"m", c.multiplicity},
                                {"members", c.members},
                                {"contains_origin", c.contains_origin}});
    return json{{"clusters", clusters},
                {"m0", rep.m0},
                {"generic", rep.generic},
                {"accumulation_flag", rep.accumulation_flag},
                {"tolerance", rep.tolerance}};
}

json to_json(const CapEstimate& cap) {
    return json{{"n", cap.n},
                {"exact_measures", cap.exact_measures},
                {"sin_exact_measures", cap.sin_exact_measures},
                {"bound", cap.bound},
                {"mc", cap.mc_union_estimate},
                {"sigma", cap.mc_stddev},
                {"sin_mc", cap.sin_mc_union_estimate},
                {"sin_sigma", cap.sin_mc_stddev},
                {"samples", cap.samples},
                {"seed", cap.seed}};
}

json to_json(const SurveySummary& s) {
    return json{{"fraction_generic", s.fraction_generic},
                {"fraction_accumulating_heuristic", s.fraction_accumulating},
                {"num_directions", s.num_directions},
                {"seed", s.seed}};
}

json to_json(const EntireProduct& p) {
    json zeros = json::array();
    for (const ZeroEntry& z : p.zeros)
        zeros.push_back(json{{"b", {z.b.real(), z.b.imag()}}, {"m", z.multiplicity}, {"genus", z.genus}});
    return json{{"delta", p.delta},
                {"zeros", zeros},
                {"mode", p.mode == GenusMode::paper_index ? "paper_index" : "minimal_genus"},
                {"N", p.truncation},
                {"R", p.radius},
                {"tail_log_bound", p.tail_log_bound}};
}

json to_json(const SingularityReport& rep) {
    json singular = json::array();
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        const SingularPoint& sp = rep.points[i];
        singular.push_back(json{{"b", {sp.b.real(), sp.b.imag()}},
                                {"type", sp.type},
                                {"multiplicity", sp.multiplicity},
                                {"chain", rep.chains[i].curves},
                                {"self_intersection", rep.chains[i].self_intersection}});
    }
    return json{{"singular", singular}};
}

json atlas_json(const ChartAtlas& atlas) {
    json charts = json::array();
    json table = json::object();
    for (const ChartLabel& c : atlas.charts) {
        charts.push_back(c.name());
        json row = json::array();
        for (int r = 0; r < atlas.num_clusters(); ++r) row.push_back(atlas.j_index(r, c));
        table[c.name()] = row;
    }
    return json{{"charts", charts}, {"index_table", table}};
}

json direction_report_json(const RunManifest& m, const DirectionFrame& frame, const ProjectionReport& rep,
                           const std::optional<CapEstimate>& cap) {
    json j = to_json(rep);
    j["manifest"] = to_json(m);
    j["v"] = {frame.v.x, frame.v.y, frame.v.z};
    j["frame_id"] = frame.derivation;
    if (cap) j["cap"] = to_json(*cap);
    return j;
}

std::string geometry_rows_csv(const std::vector<GeometryRow>& rows, double h) {
    std::ostringstream os;
    os.precision(17);
    os << "x,y,z,V,grad_norm,lap_residual,curl_residual,quat_residual,compat_residual,h\n";
    for (const GeometryRow& r : rows)
        os << r.x.x << ',' << r.x.y << ',' << r.x.z << ',' << r.V << ',' << r.grad_norm << ','
           << r.lap_residual << ',' << r.curl_residual << ',' << r.quat_residual << ','
           << r.compat_residual << ',' << h << '\n';
    return os.str();
}

} // namespace ghlab
