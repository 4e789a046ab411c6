#include "ghlab/directions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ghlab/error.hpp"
#include "ghlab/rng.hpp"

namespace ghlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSphereArea = 4.0 * kPi;

// accumulation heuristic knobs (advisory verdicts, never proofs)
constexpr int kAccumulationMinClusters = 16;
constexpr double kAccumulationWindow = 1e-3; // relative modulus window
constexpr double kAccumulationShare = 0.25;  // cluster share inside one window

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

bool accumulation_heuristic(const std::vector<Cluster>& clusters) {
    const int k = static_cast<int>(clusters.size());
    if (k < kAccumulationMinClusters) return false;

    std::vector<double> moduli;
    moduli.reserve(clusters.size());
    double scale = 0.0;
    for (const Cluster& c : clusters) {
        moduli.push_back(std::abs(c.b));
        scale = std::max(scale, std::abs(c.b));
    }
    if (scale == 0.0) return false;
    std::sort(moduli.begin(), moduli.end());

    // a relatively 0.1%-wide radius window grabbing >= 25% of the clusters
    // means the cluster count inside radius R jumps instead of stabilizing
    bool concentrated = false;
    const int need = static_cast<int>(std::ceil(kAccumulationShare * k));
    for (std::size_t i = 0; i + static_cast<std::size_t>(need) <= moduli.size(); ++i) {
        const double lo = moduli[i];
        const double hi = moduli[i + static_cast<std::size_t>(need) - 1];
        if (hi - lo <= kAccumulationWindow * std::max(hi, kAccumulationWindow * scale)) {
            concentrated = true;
            break;
        }
    }
    if (!concentrated) return false;

    // require genuine pile-up in C, not just a ring of equal moduli
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < clusters.size(); ++i)
        for (std::size_t j = i + 1; j < clusters.size(); ++j)
            min_gap = std::min(min_gap, std::abs(clusters[i].b - clusters[j].b));
    return min_gap < kAccumulationWindow * scale;
}

} // namespace

DirectionFrame make_frame(const Vec3& v) {
    const double n = v.norm();
    if (n == 0.0) throw Error(ErrCode::zero_vector, "zero direction vector");
    DirectionFrame fr;
    fr.v = v / n;
    int best_axis = 0;
    double best = std::abs(fr.v.x);
    const double cands[3] = {std::abs(fr.v.x), std::abs(fr.v.y), std::abs(fr.v.z)};
    for (int a = 1; a < 3; ++a)
        if (cands[a] < best) {
            best = cands[a];
            best_axis = a;
        }
    const Vec3 e = axis_vector(best_axis);
    fr.f1 = normalized(e - fr.v * dot(e, fr.v));
    fr.f2 = cross(fr.v, fr.f1);
    return fr;
}

ProjectionReport project(const PunctureConfig& cfg, const DirectionFrame& frame, double eps) {
    ProjectionReport rep;
    if (eps < 0.0) {
        const double d = cfg.diameter();
        eps = (d > 0.0) ? 1e-9 * d : 1e-9;
    }
    rep.tolerance = eps;

    const int n = cfg.count();
    rep.a.reserve(static_cast<std::size_t>(n));
    for (const Vec3& p : cfg.punctures) rep.a.push_back({dot(p, frame.f1), dot(p, frame.f2)});

    // sites 0..n-1 are projections, site n is the origin of C
    UnionFind uf(n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j)
            if (std::abs(rep.a[static_cast<std::size_t>(i)] - rep.a[static_cast<std::size_t>(j)]) < eps)
                uf.unite(i, j);
        if (std::abs(rep.a[static_cast<std::size_t>(i)]) < eps) uf.unite(i, n);
    }

    std::vector<int> root_to_cluster(static_cast<std::size_t>(n + 1), -1);
    for (int i = 0; i < n; ++i) {
        const int r = uf.find(i);
        int& slot = root_to_cluster[static_cast<std::size_t>(r)];
        if (slot < 0) {
            slot = static_cast<int>(rep.clusters.size());
            rep.clusters.push_back({});
        }
        rep.clusters[static_cast<std::size_t>(slot)].members.push_back(i);
    }

    const int origin_root = uf.find(n);
    rep.generic = true;
    for (Cluster& c : rep.clusters) {
        Complex sum = 0.0;
        for (int i : c.members) sum += rep.a[static_cast<std::size_t>(i)];
        c.multiplicity = static_cast<int>(c.members.size());
        c.b = sum / static_cast<double>(c.multiplicity);
        c.contains_origin = (uf.find(c.members.front()) == origin_root);
        if (c.contains_origin) rep.m0 = c.multiplicity;
        if (c.multiplicity > 1) rep.generic = false;
    }

    rep.accumulation_flag = accumulation_heuristic(rep.clusters);
    return rep;
}

std::vector<std::pair<int, int>> bad_set_membership(const PunctureConfig& cfg, const Vec3& v, double tol) {
    const Vec3 u = normalized(v);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < cfg.count(); ++i)
        for (int j = i + 1; j < cfg.count(); ++j) {
            const Vec3 d = cfg.punctures[static_cast<std::size_t>(i)] - cfg.punctures[static_cast<std::size_t>(j)];
            if (cross(d, u).norm() / d.norm() < tol) pairs.emplace_back(i, j);
        }
    return pairs;
}

namespace {

struct CapSet {
    std::vector<Vec3> units;
    std::vector<double> cos_thresholds;     // angle family: v . u >= cos(min(s, pi))
    std::vector<double> abs_cos_thresholds; // sin family: |v . u| >= sqrt(1 - s^2), s < 1
    bool sin_whole_sphere = false;
};

CapSet make_caps(const PunctureConfig& cfg, int n) {
    CapSet caps;
    for (int j = 0; j < cfg.count(); ++j) {
        const Vec3& p = cfg.punctures[static_cast<std::size_t>(j)];
        const double r = p.norm();
        if (r == 0.0) throw Error(ErrCode::origin_puncture, "cap estimate requires |p_j| > 0", j);
        const double s = static_cast<double>(n) / r;
        caps.units.push_back(p / r);
        caps.cos_thresholds.push_back(std::cos(std::min(s, kPi)));
        if (s >= 1.0)
            caps.sin_whole_sphere = true;
        else
            caps.abs_cos_thresholds.push_back(std::sqrt(1.0 - s * s));
    }
    return caps;
}

struct HitCounts {
    long angle = 0;
    long sine = 0;
};

HitCounts sample_hit(const CapSet& caps, std::uint64_t seed, long i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const Vec3 v = rng.next_sphere();
    HitCounts h;
    std::size_t sin_idx = 0;
    bool hit_angle = false, hit_sine = caps.sin_whole_sphere;
    for (std::size_t j = 0; j < caps.units.size(); ++j) {
        const double c = dot(v, caps.units[j]);
        if (c >= caps.cos_thresholds[j]) hit_angle = true;
        if (sin_idx < caps.abs_cos_thresholds.size()) {
            if (std::abs(c) >= caps.abs_cos_thresholds[sin_idx]) hit_sine = true;
            ++sin_idx;
        }
    }
    h.angle = hit_angle ? 1 : 0;
    h.sine = hit_sine ? 1 : 0;
    return h;
}

} // namespace

CapEstimate cap_estimate(const PunctureConfig& cfg, int n, long samples, std::uint64_t seed, Exec exec) {
    if (n < 0) throw Error(ErrCode::invalid_parameter, "cap parameter n must be >= 0");
    if (samples < 1) throw Error(ErrCode::invalid_parameter, "need at least one sample");

    CapEstimate est;
    est.n = n;
    est.samples = samples;
    est.seed = seed;

    for (int j = 0; j < cfg.count(); ++j) {
        const double r = cfg.punctures[static_cast<std::size_t>(j)].norm();
        if (r == 0.0) throw Error(ErrCode::origin_puncture, "cap estimate requires |p_j| > 0", j);
        const double s = static_cast<double>(n) / r;
        est.exact_measures.push_back(2.0 * kPi * (1.0 - std::cos(std::min(s, kPi))));
        est.sin_exact_measures.push_back(s >= 1.0 ? kSphereArea
                                                  : 2.0 * 2.0 * kPi * (1.0 - std::sqrt(1.0 - s * s)));
        est.bound += kPi * s * s;
    }

    const CapSet caps = make_caps(cfg, n);
    long hits_angle = 0, hits_sine = 0;
    if (exec == Exec::parallel) {
#pragma omp parallel for reduction(+ : hits_angle, hits_sine) schedule(static)
        for (long i = 0; i < samples; ++i) {
            const HitCounts h = sample_hit(caps, seed, i);
            hits_angle += h.angle;
            hits_sine += h.sine;
        }
    } else {
        for (long i = 0; i < samples; ++i) {
            const HitCounts h = sample_hit(caps, seed, i);
            hits_angle += h.angle;
            hits_sine += h.sine;
        }
    }

    const auto estimate = [samples](long hits, double& value, double& stddev) {
        const double p = static_cast<double>(hits) / static_cast<double>(samples);
        value = kSphereArea * p;
        stddev = kSphereArea * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(samples)));
    };
    estimate(hits_angle, est.mc_union_estimate, est.mc_stddev);
    estimate(hits_sine, est.sin_mc_union_estimate, est.sin_mc_stddev);
    return est;
}

SurveySummary genericity_survey(const PunctureConfig& cfg, int num_directions, std::uint64_t seed, Exec exec) {
    if (num_directions < 1) throw Error(ErrCode::invalid_parameter, "need at least one direction");
    SurveySummary s;
    s.num_directions = num_directions;
    s.seed = seed;

    long generic = 0, accumulating = 0;
    const auto one = [&](int i, long& g, long& a) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        const ProjectionReport rep = project(cfg, make_frame(rng.next_sphere()));
        if (rep.generic) ++g;
        if (rep.accumulation_flag) ++a;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for reduction(+ : generic, accumulating) schedule(static)
        for (int i = 0; i < num_directions; ++i) one(i, generic, accumulating);
    } else {
        for (int i = 0; i < num_directions; ++i) one(i, generic, accumulating);
    }

    s.fraction_generic = static_cast<double>(generic) / num_directions;
    s.fraction_accumulating = static_cast<double>(accumulating) / num_directions;
    return s;
}

} // namespace ghlab
