#include "ghlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ghlab/error.hpp"

namespace ghlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double norm_factor(Normalization n) { return n == Normalization::quarter_pi ? 1.0 / (4.0 * kPi) : 0.5; }

void require_off_puncture(const PunctureConfig& cfg, const Vec3& x) {
    int idx = -1;
    const double d = cfg.nearest_distance(x, &idx);
    if (!(d > 0.0)) {
        std::ostringstream os;
        os << "evaluation at puncture " << idx << " (distance " << d << ")";
        throw Error(ErrCode::eval_at_puncture, os.str(), idx, -1, d);
    }
}

} // namespace

double eval_potential(const PunctureConfig& cfg, const Vec3& x, Normalization norm) {
    require_off_puncture(cfg, x);
    const double c = norm_factor(norm);
    double sum = 0.0;
    for (int j = 0; j < cfg.count(); ++j) {
        const double r = (x - cfg.punctures[static_cast<std::size_t>(j)]).norm();
        sum += std::abs(cfg.weights[static_cast<std::size_t>(j)]) / r;
    }
    return c * sum;
}

Vec3 grad_potential(const PunctureConfig& cfg, const Vec3& x, Normalization norm) {
    require_off_puncture(cfg, x);
    const double c = norm_factor(norm);
    Vec3 g;
    for (int j = 0; j < cfg.count(); ++j) {
        const Vec3 d = x - cfg.punctures[static_cast<std::size_t>(j)];
        const double r = d.norm();
        g = g - d * (std::abs(cfg.weights[static_cast<std::size_t>(j)]) / (r * r * r));
    }
    return g * c;
}

double laplacian_residual(const PunctureConfig& cfg, const Vec3& x, double h, Normalization norm) {
    int idx = -1;
    const double d = cfg.nearest_distance(x, &idx);
    if (!(d > 10.0 * h)) {
        std::ostringstream os;
        os << "step h = " << h << " too large: puncture " << idx << " at distance " << d;
        throw Error(ErrCode::step_too_large, os.str(), idx, -1, d);
    }
    const double c = eval_potential(cfg, x, norm);
    double sum = -6.0 * c;
    for (int a = 0; a < 3; ++a) {
        const Vec3 e = axis_vector(a) * h;
        sum += eval_potential(cfg, x + e, norm);
        sum += eval_potential(cfg, x - e, norm);
    }
    return std::abs(sum / (h * h));
}

double riesz_integral(const PunctureConfig& cfg) {
    double sum = 0.0;
    for (int j = 0; j < cfg.count(); ++j) {
        const double r = cfg.punctures[static_cast<std::size_t>(j)].norm();
        const double w = std::abs(cfg.weights[static_cast<std::size_t>(j)]);
        sum += (r <= 1.0) ? w : w / r;
    }
    return sum;
}

double CountingFunction::value(double t) const {
    // last threshold <= t (closed balls)
    const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), t);
    if (it == thresholds.begin()) return 0.0;
    return cumulative[static_cast<std::size_t>(it - thresholds.begin()) - 1];
}

CountingFunction CountingFunction::from(const PunctureConfig& cfg) {
    std::vector<std::size_t> order(static_cast<std::size_t>(cfg.count()));
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cfg.punctures[a].norm() < cfg.punctures[b].norm();
    });
    CountingFunction n;
    double running = 0.0;
    for (std::size_t idx : order) {
        running += std::abs(cfg.weights[idx]);
        n.thresholds.push_back(cfg.punctures[idx].norm());
        n.cumulative.push_back(running);
    }
    return n;
}

const char* to_string(CriterionVerdict::Reason r) {
    switch (r) {
        case CriterionVerdict::Reason::ok: return "ok";
        case CriterionVerdict::Reason::positive_weight: return "positive_weight";
        case CriterionVerdict::Reason::tail_divergent: return "tail_divergent";
        case CriterionVerdict::Reason::tail_unknown: return "tail_unknown";
    }
    return "?";
}

CriterionVerdict check_criterion(const PunctureConfig& cfg) {
    CriterionVerdict v;
    v.series_value = riesz_integral(cfg);

    for (int j = 0; j < cfg.count(); ++j) {
        if (cfg.weights[static_cast<std::size_t>(j)] > 0) {
            v.accepted = false;
            v.reason = CriterionVerdict::Reason::positive_weight;
            v.offending_index = j;
            return v;
        }
    }

    if (!cfg.tail) {
        v.accepted = true;
        v.reason = CriterionVerdict::Reason::ok;
        v.tail_bound = 0.0;
        return v;
    }

    const TailModel& t = *cfg.tail;
    const int a = std::clamp(t.anchor, 0, cfg.count() - 1);
    const double ra = cfg.punctures[static_cast<std::size_t>(a)].norm();
    const double wa = std::abs(cfg.weights[static_cast<std::size_t>(a)]);

    switch (t.kind) {
        case TailModel::Kind::none:
            // tail exists but is unspecified: the truncation cannot decide
            v.accepted = false;
            v.reason = CriterionVerdict::Reason::tail_unknown;
            return v;
        case TailModel::Kind::geometric:
            // |p_{a+k}| >= ratio^k |p_a|  =>  tail <= (w_a / |p_a|) / (ratio - 1)
            v.accepted = true;
            v.reason = CriterionVerdict::Reason::ok;
            v.tail_bound = (ra > 0.0) ? (wa / ra) / (t.param - 1.0) : 0.0;
            return v;
        case TailModel::Kind::powerlaw:
            if (t.param <= 1.0) {
                v.accepted = false;
                v.reason = CriterionVerdict::Reason::tail_divergent;
                return v;
            }
            // |p_j| ~ |p_a| (j/a)^q: integral comparison gives w_a a / (|p_a| (q-1))
            v.accepted = true;
            v.reason = CriterionVerdict::Reason::ok;
            v.tail_bound = (ra > 0.0) ? wa * static_cast<double>(a + 1) / (ra * (t.param - 1.0)) : 0.0;
            return v;
        case TailModel::Kind::custom:
            v.accepted = true;
            v.reason = CriterionVerdict::Reason::ok;
            v.tail_bound = t.param;
            return v;
    }
    return v;
}

} // namespace ghlab
