#include "ghlab/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ghlab/error.hpp"
#include "ghlab/rng.hpp"

namespace ghlab {

using nlohmann::json;

TailModel TailModel::geometric(double ratio, int anchor) {
    if (!(ratio > 1.0)) throw Error(ErrCode::invalid_parameter, "geometric tail requires ratio > 1");
    return {Kind::geometric, ratio, anchor};
}

TailModel TailModel::powerlaw(double exponent, int anchor) {
    return {Kind::powerlaw, exponent, anchor};
}

TailModel TailModel::custom(double bound, int anchor) {
    if (!(bound >= 0.0)) throw Error(ErrCode::invalid_parameter, "custom tail bound must be >= 0");
    return {Kind::custom, bound, anchor};
}

double PunctureConfig::diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < punctures.size(); ++i)
        for (std::size_t j = i + 1; j < punctures.size(); ++j)
            d = std::max(d, (punctures[i] - punctures[j]).norm());
    return d;
}

double PunctureConfig::nearest_distance(const Vec3& x, int* idx) const {
    double best = std::numeric_limits<double>::infinity();
    int best_i = -1;
    for (int i = 0; i < count(); ++i) {
        const double d = (x - punctures[static_cast<std::size_t>(i)]).norm();
        if (d < best) {
            best = d;
            best_i = i;
        }
    }
    if (idx) *idx = best_i;
    return best;
}

void validate_config(const PunctureConfig& cfg, std::vector<std::string>* warnings, double min_separation) {
    if (cfg.punctures.size() != cfg.weights.size()) {
        std::ostringstream os;
        os << "length mismatch: " << cfg.punctures.size() << " punctures vs " << cfg.weights.size() << " weights";
        throw Error(ErrCode::length_mismatch, os.str());
    }
    for (std::size_t i = 0; i < cfg.punctures.size(); ++i) {
        if (!cfg.punctures[i].finite())
            throw Error(ErrCode::invalid_parameter, "non-finite puncture coordinate", static_cast<int>(i));
        for (std::size_t j = i + 1; j < cfg.punctures.size(); ++j) {
            if (cfg.punctures[i] == cfg.punctures[j]) {
                std::ostringstream os;
                os << "duplicate punctures at indices " << i << " and " << j;
                throw Error(ErrCode::duplicate_puncture, os.str(), static_cast<int>(i), static_cast<int>(j));
            }
            if (warnings) {
                const double d = (cfg.punctures[i] - cfg.punctures[j]).norm();
                if (d < min_separation) {
                    std::ostringstream os;
                    os << "punctures " << i << " and " << j << " are only " << d << " apart";
                    warnings->push_back(os.str());
                }
            }
        }
    }
}

namespace {

TailModel tail_from_json(const json& jt) {
    const std::string kind = jt.at("kind").get<std::string>();
    const int anchor = jt.contains("anchor") ? jt.at("anchor").get<int>() : 0;
    if (kind == "none") return {TailModel::Kind::none, 0.0, anchor};
    if (kind == "geometric") return TailModel::geometric(jt.at("ratio").get<double>(), anchor);
    if (kind == "powerlaw") return TailModel::powerlaw(jt.at("exponent").get<double>(), anchor);
    if (kind == "custom") return TailModel::custom(jt.at("value").get<double>(), anchor);
    throw Error(ErrCode::parse, "unknown tail kind: " + kind);
}

json tail_to_json(const TailModel& t) {
    json j;
    switch (t.kind) {
        case TailModel::Kind::none: j["kind"] = "none"; break;
        case TailModel::Kind::geometric:
            j["kind"] = "geometric";
            j["ratio"] = t.param;
            break;
        case TailModel::Kind::powerlaw:
            j["kind"] = "powerlaw";
            j["exponent"] = t.param;
            break;
        case TailModel::Kind::custom:
            j["kind"] = "custom";
            j["value"] = t.param;
            break;
    }
    j["anchor"] = t.anchor;
    return j;
}

PunctureConfig config_from_json(const json& j) {
    PunctureConfig cfg;
    if (j.contains("label")) cfg.label = j.at("label").get<std::string>();
    const json& pts = j.at("punctures");
    if (!pts.is_array()) throw Error(ErrCode::parse, "punctures must be an array");
    for (const json& p : pts) {
        if (!p.is_array() || p.size() != 3) throw Error(ErrCode::parse, "each puncture must be [x, y, z]");
        cfg.punctures.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    if (j.contains("weights")) {
        for (const json& w : j.at("weights")) cfg.weights.push_back(w.get<int>());
    } else {
        // smooth-completion convention: omitted weights default to -1
        cfg.weights.assign(cfg.punctures.size(), -1);
    }
    if (j.contains("tail") && !j.at("tail").is_null()) cfg.tail = tail_from_json(j.at("tail"));
    return cfg;
}

} // namespace

PunctureConfig load_config(std::istream& in, std::vector<std::string>* warnings) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrCode::parse, std::string("config parse error: ") + e.what());
    }
    PunctureConfig cfg;
    try {
        cfg = config_from_json(j);
    } catch (const json::exception& e) {
        throw Error(ErrCode::parse, std::string("config schema error: ") + e.what());
    }
    validate_config(cfg, warnings);
    return cfg;
}

PunctureConfig load_config(const std::string& text, std::vector<std::string>* warnings) {
    std::istringstream in(text);
    return load_config(in, warnings);
}

PunctureConfig load_config_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw Error(ErrCode::io, "cannot open config file: " + path);
    return load_config(in, warnings);
}

std::string emit_config(const PunctureConfig& cfg) {
    json j;
    if (!cfg.label.empty()) j["label"] = cfg.label;
    json pts = json::array();
    for (const Vec3& p : cfg.punctures) pts.push_back({p.x, p.y, p.z});
    j["punctures"] = pts;
    j["weights"] = cfg.weights;
    if (cfg.tail) j["tail"] = tail_to_json(*cfg.tail);
    return j.dump(2) + "\n";
}

PunctureConfig make_geometric_z(double ratio, int count) {
    if (count < 1) throw Error(ErrCode::invalid_parameter, "count must be >= 1");
    if (!(ratio > 1.0)) throw Error(ErrCode::invalid_parameter, "ratio must be > 1");
    PunctureConfig cfg;
    cfg.label = "geometric_z";
    double zj = 1.0;
    for (int j = 0; j < count; ++j) {
        zj *= ratio;
        cfg.punctures.push_back({0.0, 0.0, zj});
        cfg.weights.push_back(-1);
    }
    cfg.tail = TailModel::geometric(ratio, count - 1);
    return cfg;
}

PunctureConfig make_collinear_x(double spacing, int count) {
    if (count < 1) throw Error(ErrCode::invalid_parameter, "count must be >= 1");
    if (!(spacing > 0.0)) throw Error(ErrCode::invalid_parameter, "spacing must be > 0");
    PunctureConfig cfg;
    cfg.label = "collinear_x";
    for (int j = 0; j < count; ++j) {
        cfg.punctures.push_back({spacing * j, 0.0, 0.0});
        cfg.weights.push_back(-1);
    }
    return cfg;
}

PunctureConfig make_random_ball(double radius, int count, std::uint64_t seed) {
    if (count < 1) throw Error(ErrCode::invalid_parameter, "count must be >= 1");
    if (!(radius > 0.0)) throw Error(ErrCode::invalid_parameter, "radius must be > 0");
    PunctureConfig cfg;
    cfg.label = "random_ball";
    for (int j = 0; j < count; ++j) {
        CounterRng rng(seed, static_cast<std::uint64_t>(j));
        cfg.punctures.push_back(rng.next_ball(radius));
        cfg.weights.push_back(-1);
    }
    validate_config(cfg); // distinct with probability 1; fail loudly otherwise
    return cfg;
}

} // namespace ghlab
