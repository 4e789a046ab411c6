#include "ghlab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ghlab/error.hpp"

namespace ghlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

std::string ChartLabel::name() const {
    switch (kind) {
        case Kind::minus: return "minus";
        case Kind::plus: return "plus";
        case Kind::mid: {
            std::ostringstream os;
            os << "M_" << k << "_" << l;
            return os.str();
        }
    }
    return "?";
}

int ChartAtlas::multiplicity(int r) const {
    if (r == 0) return product.delta;
    return product.zeros[static_cast<std::size_t>(r - 1)].multiplicity;
}

Complex ChartAtlas::cluster_point(int r) const {
    if (r == 0) return {0.0, 0.0};
    return product.zeros[static_cast<std::size_t>(r - 1)].b;
}

int ChartAtlas::j_index(int r, const ChartLabel& alpha) const {
    switch (alpha.kind) {
        case ChartLabel::Kind::minus: return 0;
        case ChartLabel::Kind::plus: return multiplicity(r);
        case ChartLabel::Kind::mid: return (r == alpha.k) ? alpha.l : 0;
    }
    return 0;
}

ScaledComplex ChartAtlas::section(const ChartLabel& alpha, Complex u) const {
    ScaledComplex w = ScaledComplex::one();
    const int j0 = j_index(0, alpha);
    if (j0 > 0) {
        w = ScaledComplex::from(u).pow(j0);
        if (w.is_zero) return w;
    }
    for (int r = 1; r < num_clusters(); ++r) {
        const int e = j_index(r, alpha);
        if (e == 0) continue;
        const ZeroEntry& z = product.zeros[static_cast<std::size_t>(r - 1)];
        const ScaledComplex f =
            (u == z.b) ? ScaledComplex::zero() : weierstrass_factor_scaled(z.genus, u / z.b);
        if (f.is_zero) return ScaledComplex::zero();
        w.mul(f.pow(e));
    }
    return w;
}

ChartAtlas make_atlas(const EntireProduct& product) {
    ChartAtlas atlas;
    atlas.product = product;
    atlas.charts.push_back(ChartLabel::minus());
    for (int r = 0; r < atlas.num_clusters(); ++r) {
        const int m = atlas.multiplicity(r);
        for (int l = 1; l <= m - 1; ++l) atlas.charts.push_back(ChartLabel::mid(r, l));
    }
    atlas.charts.push_back(ChartLabel::plus());
    return atlas;
}

std::vector<std::pair<ChartLabel, ChartLabel>> adjacent_chart_pairs(const ChartAtlas& atlas) {
    std::vector<std::pair<ChartLabel, ChartLabel>> pairs;
    pairs.emplace_back(ChartLabel::minus(), ChartLabel::plus());
    for (int r = 0; r < atlas.num_clusters(); ++r) {
        const int m = atlas.multiplicity(r);
        if (m < 2) continue;
        pairs.emplace_back(ChartLabel::minus(), ChartLabel::mid(r, 1));
        for (int l = 1; l < m - 1; ++l)
            pairs.emplace_back(ChartLabel::mid(r, l), ChartLabel::mid(r, l + 1));
        pairs.emplace_back(ChartLabel::mid(r, m - 1), ChartLabel::plus());
    }
    return pairs;
}

double surface_residual(const EntireProduct& p, Complex u1, Complex u2, Complex u3) {
    return std::abs(u1 * u2 - eval_product(p, u3).value);
}

SingularityReport singular_points(const EntireProduct& p) {
    SingularityReport rep;
    auto add = [&rep](int cluster, Complex b, int m) {
        if (m < 2) return;
        SingularPoint sp;
        sp.cluster = cluster;
        sp.b = b;
        sp.multiplicity = m;
        sp.type = "A" + std::to_string(m - 1);
        rep.points.push_back(sp);
        ExceptionalChain chain;
        chain.cluster = cluster;
        chain.b = b;
        for (int l = 1; l <= m - 1; ++l)
            chain.curves.push_back("E_" + std::to_string(cluster) + "_" + std::to_string(l));
        rep.chains.push_back(std::move(chain));
    };
    add(0, {0.0, 0.0}, p.delta);
    for (int k = 0; k < p.truncation; ++k) {
        const ZeroEntry& z = p.zeros[static_cast<std::size_t>(k)];
        add(k + 1, z.b, z.multiplicity);
    }
    return rep;
}

ScaledComplex transition_scaled(const ChartAtlas& atlas, const ChartLabel& alpha, const ChartLabel& beta,
                                Complex u) {
    ScaledComplex f = ScaledComplex::one();
    const int d0 = atlas.j_index(0, alpha) - atlas.j_index(0, beta);
    if (d0 != 0) {
        const ScaledComplex base = ScaledComplex::from(u);
        if (base.is_zero && d0 < 0)
            throw Error(ErrCode::pole_at_u, "transition has a pole at u = 0", 0);
        f = base.pow(d0);
    }
    for (int r = 1; r < atlas.num_clusters(); ++r) {
        const int d = atlas.j_index(r, alpha) - atlas.j_index(r, beta);
        if (d == 0) continue;
        const ZeroEntry& z = atlas.product.zeros[static_cast<std::size_t>(r - 1)];
        const ScaledComplex e =
            (u == z.b) ? ScaledComplex::zero() : weierstrass_factor_scaled(z.genus, u / z.b);
        if (e.is_zero) {
            if (d < 0) {
                std::ostringstream os;
                os << "transition has a pole at cluster " << r;
                throw Error(ErrCode::pole_at_u, os.str(), r);
            }
            return ScaledComplex::zero();
        }
        f.mul(e.pow(d));
    }
    return f;
}

Complex transition(const ChartAtlas& atlas, const ChartLabel& alpha, const ChartLabel& beta, Complex u) {
    return transition_scaled(atlas, alpha, beta, u).to_complex();
}

double cocycle_check(const ChartAtlas& atlas, const ChartLabel& alpha, const ChartLabel& beta,
                     const ChartLabel& gamma, Complex u) {
    const ScaledComplex fab = transition_scaled(atlas, alpha, beta, u);
    const ScaledComplex fbc = transition_scaled(atlas, beta, gamma, u);
    const ScaledComplex fac = transition_scaled(atlas, alpha, gamma, u);
    if (fab.is_zero || fbc.is_zero || fac.is_zero)
        throw Error(ErrCode::pole_at_u, "cocycle check at a zero of a transition");
    ScaledComplex q = fab;
    q.mul(fbc);
    q.mul(fac.inverse());
    return std::abs(q.to_complex() - Complex{1.0, 0.0});
}

int pole_order(const ChartAtlas& atlas, const ChartLabel& alpha, const ChartLabel& beta, int cluster) {
    if (cluster < 0 || cluster >= atlas.num_clusters())
        throw Error(ErrCode::invalid_parameter, "cluster index out of range");
    const Complex b = atlas.cluster_point(cluster);

    // contour must separate b from every other zero/pole of the transition;
    // also estimate |d log f| at b from the off-cluster factors, since the
    // exp-polynomial parts of high-genus factors can oscillate too fast for
    // any discrete winding to track (the swing scales with the radius)
    double sep = std::numeric_limits<double>::infinity();
    double scale = std::max(1.0, std::abs(b));
    double density = 0.0; // phase swing per unit contour length
    for (int r = 0; r < atlas.num_clusters(); ++r) {
        if (r == cluster) continue;
        const int d = atlas.j_index(r, alpha) - atlas.j_index(r, beta);
        if (d == 0) continue;
        const Complex c = atlas.cluster_point(r);
        sep = std::min(sep, std::abs(c - b));
        scale = std::max(scale, std::abs(c));
        if (r == 0) {
            density += std::abs(d) / std::abs(b); // u^{d0} term, b != 0 here
        } else {
            // d log E_l(z) = -z^l/(1-z) dz, z = u/b_r
            const ZeroEntry& z = atlas.product.zeros[static_cast<std::size_t>(r - 1)];
            const Complex zc = b / z.b;
            const double away = std::max(std::abs(Complex{1.0, 0.0} - zc), 1e-6);
            density += std::abs(d) * std::pow(std::abs(zc), z.genus) / (away * std::abs(z.b));
        }
    }
    if (sep < 1e-9 * scale) {
        throw Error(ErrCode::zero_separation_too_small,
                    "cluster points too close to isolate a contour", cluster, -1, sep);
    }
    double radius = std::isfinite(sep) ? 0.45 * sep : 0.5 * scale;
    constexpr double kSwingBudget = 2.0e4; // radians trackable within the sample cap
    if (density * radius > kSwingBudget) radius = kSwingBudget / density;
    if (!(radius > 1e-9 * std::max(1.0, std::abs(b)))) {
        throw Error(ErrCode::zero_separation_too_small,
                    "transition phase oscillates too fast for a trackable contour", cluster, -1,
                    radius);
    }
    return winding_number([&](Complex u) { return transition_scaled(atlas, alpha, beta, u); }, b, radius);
}

std::array<ScaledComplex, 3> chi_map_scaled(const ChartAtlas& atlas, const ChartLabel& alpha, Complex u,
                                            const ScaledComplex& v) {
    if (v.is_zero)
        throw Error(ErrCode::zero_fibre_coordinate, "fibre coordinate must be nonzero");
    const ScaledComplex w = atlas.section(alpha, u);
    if (w.is_zero)
        throw Error(ErrCode::pole_at_u, "chart section vanishes at u; chi has a pole here");
    ScaledComplex u2 = w;
    u2.mul(v);
    ScaledComplex u1 = eval_product_scaled(atlas.product, u);
    u1.mul(w.inverse());
    u1.mul(v.inverse());
    return {u1, u2, ScaledComplex::from(u)};
}

std::array<Complex, 3> chi_map(const ChartAtlas& atlas, const ChartLabel& alpha, Complex u, Complex v) {
    const auto q = chi_map_scaled(atlas, alpha, u, ScaledComplex::from(v));
    return {q[0].to_complex(), q[1].to_complex(), u};
}

double representable_radius(const EntireProduct& p) {
    constexpr double kLogBudget = 1e15; // |z|^{genus+1}/(genus+1) stays below this
    double radius = std::numeric_limits<double>::infinity();
    for (const ZeroEntry& z : p.zeros) {
        const double g1 = z.genus + 1;
        radius = std::min(radius, std::abs(z.b) * std::pow(kLogBudget * g1, 1.0 / g1));
    }
    return radius;
}

namespace {

using P3 = std::array<Complex, 3>; // projective triple

double proj_distance(const P3& a, const P3& b) {
    int im = 0;
    double best = 0.0;
    for (int i = 0; i < 3; ++i)
        if (std::abs(a[static_cast<std::size_t>(i)]) > best) {
            best = std::abs(a[static_cast<std::size_t>(i)]);
            im = i;
        }
    if (best == 0.0 || std::abs(b[static_cast<std::size_t>(im)]) == 0.0)
        return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (int i = 0; i < 3; ++i)
        d = std::max(d, std::abs(a[static_cast<std::size_t>(i)] / a[static_cast<std::size_t>(im)] -
                                 b[static_cast<std::size_t>(i)] / b[static_cast<std::size_t>(im)]));
    return d;
}

struct BlowupPoint {
    P3 affine;
    P3 proj;
};

// explicit two-center blow-up charts for u1 u2 = u3^2
BlowupPoint chi0(int chart, Complex u, Complex v) {
    switch (chart) {
        case 1: return {{u * u / v, v, u}, {(u / v) * (u / v), 1.0, u / v}};
        case 2: return {{u / v, u * v, u}, {1.0 / v, v, 1.0}};
        default: return {{1.0 / v, u * u * v, u}, {1.0, (u * v) * (u * v), u * v}};
    }
}

std::pair<Complex, Complex> theta0(int chart, const BlowupPoint& q) {
    switch (chart) {
        case 1: return {q.affine[2], q.affine[1]};            // (u3, u2)
        case 2: return {q.affine[2], q.proj[1] / q.proj[2]};  // (u3, U2/U3)
        default: return {q.affine[2], 1.0 / q.affine[0]};     // (u3, 1/u1)
    }
}

double rel(Complex a, Complex b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

BlowupCheckReport blowup_fixture_check() {
    BlowupCheckReport rep;

    std::vector<Complex> us, vs;
    for (int i = 0; i < 20; ++i) {
        us.push_back(std::polar(0.25 + 1.5 * i / 19.0, 2.0 * kPi * 0.37 * i));
        vs.push_back(std::polar(0.3 + 1.7 * i / 19.0, 2.0 * kPi * 0.61 * i));
    }

    auto eq_residual = [&](const BlowupPoint& q) {
        const auto& a = q.affine;
        const auto& p = q.proj;
        double r = rel(a[0] * a[1], a[2] * a[2]);
        rep.max_surface_eq = std::max(rep.max_surface_eq, r);
        double rb = 0.0;
        rb = std::max(rb, rel(a[0] * p[1], a[1] * p[0]));
        rb = std::max(rb, rel(a[0] * p[2], a[2] * p[0]));
        rb = std::max(rb, rel(a[1] * p[2], a[2] * p[1]));
        rb = std::max(rb, rel(p[0] * p[1], p[2] * p[2]));
        rep.max_blowup_eq = std::max(rep.max_blowup_eq, rb);
    };

    for (int chart = 1; chart <= 3; ++chart)
        for (Complex u : us)
            for (Complex v : vs) {
                const BlowupPoint q = chi0(chart, u, v);
                eq_residual(q);
                const auto [u_rt, v_rt] = theta0(chart, q);
                rep.max_roundtrip = std::max(rep.max_roundtrip, std::max(rel(u_rt, u), rel(v_rt, v)));
            }

    // overlaps: v2 = v1/u, v3 = v2/u = v1/u^2
    for (Complex u : us)
        for (Complex v : vs) {
            const BlowupPoint q1 = chi0(1, u, v);
            const BlowupPoint q2 = chi0(2, u, v / u);
            const BlowupPoint q3 = chi0(3, u, v / (u * u));
            for (const auto& [a, b] : {std::pair{q1, q2}, std::pair{q2, q3}, std::pair{q1, q3}}) {
                double d = 0.0;
                for (int i = 0; i < 3; ++i)
                    d = std::max(d, rel(a.affine[static_cast<std::size_t>(i)],
                                        b.affine[static_cast<std::size_t>(i)]));
                d = std::max(d, proj_distance(a.proj, b.proj));
                rep.max_overlap = std::max(rep.max_overlap, d);
            }
        }

    // exceptional fibre limits: chart 1 reaches ((0,0,0),[0:1:0]) as v -> 0,
    // chart 3 reaches ((0,0,0),[1:0:0]) as v -> inf; the projective part of
    // chart 1 at fixed u also tends to [0:1:0] as v -> inf
    {
        const BlowupPoint q1 = chi0(1, {0.0, 0.0}, {1e-9, 0.0});
        rep.limit_to_0_1_0 =
            proj_distance(q1.proj, {Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0}});
        for (int i = 0; i < 3; ++i)
            rep.limit_to_0_1_0 =
                std::max(rep.limit_to_0_1_0, std::abs(q1.affine[static_cast<std::size_t>(i)]));
        const BlowupPoint q1inf = chi0(1, {1.0, 0.0}, {1e9, 0.0});
        rep.limit_to_0_1_0 = std::max(
            rep.limit_to_0_1_0,
            proj_distance(q1inf.proj, {Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0}}));

        const BlowupPoint q3 = chi0(3, {0.0, 0.0}, {1e9, 0.0});
        rep.limit_to_1_0_0 =
            proj_distance(q3.proj, {Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}});
        for (int i = 0; i < 3; ++i)
            rep.limit_to_1_0_0 =
                std::max(rep.limit_to_1_0_0, std::abs(q3.affine[static_cast<std::size_t>(i)]));
    }

    // pinned anchor: chart 2 at (1, 1) maps to ((1,1,1), [1:1:1])
    {
        const BlowupPoint q = chi0(2, {1.0, 0.0}, {1.0, 0.0});
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            d = std::max(d, std::abs(q.affine[static_cast<std::size_t>(i)] - Complex{1.0, 0.0}));
        d = std::max(d, proj_distance(q.proj, {Complex{1, 0}, Complex{1, 0}, Complex{1, 0}}));
        rep.max_roundtrip = std::max(rep.max_roundtrip, d);
    }

    const double tol = 1e-10;
    auto check = [&rep](const char* what, double value, double bound) {
        if (!(value <= bound)) {
            std::ostringstream os;
            os << what << " residual " << value << " exceeds " << bound;
            rep.failures.push_back(os.str());
        }
    };
    check("surface equation", rep.max_surface_eq, tol);
    check("blow-up equations", rep.max_blowup_eq, tol);
    check("chart overlap", rep.max_overlap, tol);
    check("round trip", rep.max_roundtrip, tol);
    check("limit toward [0:1:0]", rep.limit_to_0_1_0, 1e-5);
    check("limit toward [1:0:0]", rep.limit_to_1_0_0, 1e-5);
    rep.passed = rep.failures.empty();
    return rep;
}

} // namespace ghlab
