#include <doctest.h>

#include <cmath>
#include <complex>

#include "ghlab/config.hpp"
#include "ghlab/directions.hpp"
#include "ghlab/entire.hpp"
#include "ghlab/error.hpp"
#include "ghlab/rng.hpp"
#include "ghlab/surface.hpp"

using namespace ghlab;

namespace {

ChartAtlas chen_chen_atlas() {
    const PunctureConfig cfg = make_collinear_x(1.0, 2);
    const ProjectionReport rep = project(cfg, make_frame({1, 0, 0}));
    return make_atlas(build_product(rep, GenusMode::paper_index));
}

ChartAtlas a2_atlas() {
    // one triple zero off the origin
    return make_atlas(build_product(ZeroList{{Complex{1.0, 1.0}, 3}}, GenusMode::paper_index));
}

ChartAtlas generic_atlas() {
    std::vector<std::pair<Complex, int>> zeros;
    for (int k = 1; k <= 6; ++k)
        zeros.emplace_back(std::polar(1.0 + k, 0.7 * k), 1);
    return make_atlas(build_product(zeros, GenusMode::paper_index));
}

Complex random_u(CounterRng& rng, const ChartAtlas& atlas, double scale) {
    while (true) {
        const Complex u = std::polar(scale * (0.05 + rng.next_double()),
                                     6.283185307179586 * rng.next_double());
        bool clear = true;
        for (int r = 0; r < atlas.num_clusters(); ++r)
            if (atlas.multiplicity(r) > 0 && std::abs(u - atlas.cluster_point(r)) < 0.02 * scale)
                clear = false;
        if (clear) return u;
    }
}

} // namespace

TEST_CASE("surface_residual basics") {
    const EntireProduct p = build_product(ZeroList{{Complex{0.0, 0.0}, 2}}, GenusMode::paper_index); // u^2
    // a section of the surface
    const Complex w{0.4, 1.1}, t{2.0, -1.0};
    const Complex pw = eval_product(p, w).value;
    CHECK(surface_residual(p, pw / t, t, w) <= 1e-12);
    CHECK(surface_residual(p, {1.0, 0.0}, {4.0, 0.0}, {2.0, 0.0}) <= 1e-12);
    // off-surface point over a zero of P
    CHECK(surface_residual(p, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("singular_points: generic products give a smooth surface") {
    const SingularityReport rep = singular_points(generic_atlas().product);
    CHECK(rep.points.empty());
    CHECK(rep.chains.empty());
}

TEST_CASE("singular_points: the two-center surface has one A1 point") {
    const SingularityReport rep = singular_points(chen_chen_atlas().product);
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0].b == Complex{0.0, 0.0});
    CHECK(rep.points[0].type == "A1");
    REQUIRE(rep.chains.size() == 1);
    CHECK(rep.chains[0].curves == std::vector<std::string>{"E_0_1"});
    CHECK(rep.chains[0].self_intersection == -2);
}

TEST_CASE("singular_points: a triple zero gives A2 with a two-curve chain") {
    const SingularityReport rep = singular_points(a2_atlas().product);
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0].type == "A2");
    CHECK(rep.chains[0].curves == std::vector<std::string>{"E_1_1", "E_1_2"});
}

TEST_CASE("smoothness dichotomy: singular points iff some winding exceeds 1") {
    for (const ChartAtlas& atlas : {generic_atlas(), chen_chen_atlas(), a2_atlas()}) {
        const EntireProduct& p = atlas.product;
        const bool smooth = singular_points(p).points.empty();
        bool all_simple = true;
        if (p.delta > 0) all_simple = all_simple && zero_audit(p, {0.0, 0.0}, 0.3) == 1;
        for (const ZeroEntry& z : p.zeros)
            all_simple = all_simple && zero_audit(p, z.b, 0.3) == 1;
        CHECK(smooth == all_simple);
    }
}

TEST_CASE("atlas index table matches the chart layout") {
    const ChartAtlas atlas = chen_chen_atlas();
    REQUIRE(atlas.charts.size() == 3);
    const ChartLabel minus = ChartLabel::minus(), plus = ChartLabel::plus(), mid = ChartLabel::mid(0, 1);
    CHECK(atlas.j_index(0, minus) == 0);
    CHECK(atlas.j_index(0, mid) == 1);
    CHECK(atlas.j_index(0, plus) == 2);

    const ChartAtlas a2 = a2_atlas();
    REQUIRE(a2.charts.size() == 4); // minus, (1,1), (1,2), plus
    CHECK(a2.j_index(1, ChartLabel::mid(1, 1)) == 1);
    CHECK(a2.j_index(1, ChartLabel::mid(1, 2)) == 2);
    CHECK(a2.j_index(1, ChartLabel::plus()) == 3);
    CHECK(a2.j_index(0, ChartLabel::mid(1, 2)) == 0);
}

TEST_CASE("transition: two-center multipliers 1/u and 1/u^2") {
    const ChartAtlas atlas = chen_chen_atlas();
    const ChartLabel m1 = ChartLabel::minus(), m2 = ChartLabel::mid(0, 1), m3 = ChartLabel::plus();
    CHECK(transition(atlas, m1, m2, {2.0, 0.0}) == Complex{0.5, 0.0});
    const Complex u{3.0, 0.0};
    CHECK(std::abs(transition(atlas, m1, m3, u) - 1.0 / (u * u)) <= 1e-15);
}

TEST_CASE("transition: identity cocycle on the diagonal") {
    const ChartAtlas atlas = a2_atlas();
    CounterRng rng(3, 0);
    for (const ChartLabel& alpha : atlas.charts)
        for (int i = 0; i < 10; ++i) {
            const Complex u = random_u(rng, atlas, 3.0);
            CHECK(transition(atlas, alpha, alpha, u) == Complex{1.0, 0.0});
        }
}

TEST_CASE("transition: generic atlas multiplier inverts P") {
    const ChartAtlas atlas = generic_atlas();
    CounterRng rng(4, 0);
    for (int i = 0; i < 50; ++i) {
        const Complex u = random_u(rng, atlas, 8.0);
        const Complex f = transition(atlas, ChartLabel::minus(), ChartLabel::plus(), u);
        CHECK(std::abs(f * eval_product(atlas.product, u).value - 1.0) <= 1e-10);
    }
}

TEST_CASE("transition pole errors at cluster points") {
    const ChartAtlas atlas = chen_chen_atlas();
    try {
        transition(atlas, ChartLabel::minus(), ChartLabel::plus(), {0.0, 0.0});
        FAIL("expected pole_at_u");
    } catch (const Error& e) {
        CHECK(e.code() == ErrCode::pole_at_u);
    }
}

TEST_CASE("cocycle: two-center triple composes to 1/u^2") {
    const ChartAtlas atlas = chen_chen_atlas();
    const ChartLabel m1 = ChartLabel::minus(), m2 = ChartLabel::mid(0, 1), m3 = ChartLabel::plus();
    const Complex u{3.0, 0.0};
    CHECK(cocycle_check(atlas, m1, m2, m3, u) <= 1e-12);
    const Complex f12 = transition(atlas, m1, m2, u);
    const Complex f23 = transition(atlas, m2, m3, u);
    CHECK(std::abs(f12 * f23 - 1.0 / (u * u)) <= 1e-15);
}

TEST_CASE("cocycle residual tiny over random triples and points") {
    for (const ChartAtlas& atlas : {chen_chen_atlas(), a2_atlas(), generic_atlas()}) {
        CounterRng rng(6, 0);
        const std::size_t nc = atlas.charts.size();
        for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                for (std::size_t k = 0; k < nc; ++k) {
                    if (i == j || j == k || i == k) continue;
                    for (int t = 0; t < 25; ++t) {
                        const Complex u = random_u(rng, atlas, 6.0);
                        CHECK(cocycle_check(atlas, atlas.charts[i], atlas.charts[j],
                                            atlas.charts[k], u) <= 1e-10);
                    }
                }
    }
}

TEST_CASE("pole_order: generic atlas has simple poles at every zero") {
    const ChartAtlas atlas = generic_atlas();
    for (int r = 1; r < atlas.num_clusters(); ++r)
        CHECK(pole_order(atlas, ChartLabel::minus(), ChartLabel::plus(), r) == -1);
}

TEST_CASE("pole_order: two-center minus-to-plus has a double pole at 0") {
    const ChartAtlas atlas = chen_chen_atlas();
    CHECK(pole_order(atlas, ChartLabel::minus(), ChartLabel::plus(), 0) == -2);
    CHECK(pole_order(atlas, ChartLabel::plus(), ChartLabel::minus(), 0) == 2);
}

TEST_CASE("pole_order: consecutive mid charts differ by one") {
    const ChartAtlas atlas = a2_atlas();
    CHECK(pole_order(atlas, ChartLabel::mid(1, 1), ChartLabel::mid(1, 2), 1) == -1);
}

TEST_CASE("pole orders add along chart triples") {
    const ChartAtlas atlases[] = {a2_atlas(), chen_chen_atlas()};
    for (const ChartAtlas& atlas : atlases) {
        const std::size_t nc = atlas.charts.size();
        for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                for (std::size_t k = 0; k < nc; ++k) {
                    if (i == j || j == k || i == k) continue;
                    for (int r = 0; r < atlas.num_clusters(); ++r) {
                        if (atlas.multiplicity(r) < 2) continue;
                        const auto ord = [&](std::size_t a, std::size_t b) {
                            const int d = atlas.j_index(r, atlas.charts[a]) -
                                          atlas.j_index(r, atlas.charts[b]);
                            return d == 0 ? 0 : pole_order(atlas, atlas.charts[a], atlas.charts[b], r);
                        };
                        CHECK(ord(i, k) == ord(i, j) + ord(j, k));
                    }
                }
    }
}

TEST_CASE("pole_order matches the index table on every adjacent pair") {
    for (const ChartAtlas& atlas : {chen_chen_atlas(), a2_atlas(), generic_atlas()}) {
        for (const auto& [alpha, beta] : adjacent_chart_pairs(atlas))
            for (int r = 0; r < atlas.num_clusters(); ++r) {
                if (atlas.multiplicity(r) == 0) continue;
                const int expected = atlas.j_index(r, alpha) - atlas.j_index(r, beta);
                if (expected == 0) continue;
                CHECK(pole_order(atlas, alpha, beta, r) == expected);
            }
    }
}

TEST_CASE("chi_map: minus chart realizes (P(u)/v, v, u)") {
    const ChartAtlas atlas = generic_atlas();
    const Complex u{0.3, 0.2}, v{1.5, -0.4};
    const auto q = chi_map(atlas, ChartLabel::minus(), u, v);
    const Complex pu = eval_product(atlas.product, u).value;
    CHECK(std::abs(q[0] - pu / v) <= 1e-12 * std::abs(pu / v));
    CHECK(q[1] == v);
    CHECK(q[2] == u);
}

TEST_CASE("chi_map: two-center mid chart is (u/v, u v, u)") {
    const ChartAtlas atlas = chen_chen_atlas();
    const Complex u{0.7, 0.1}, v{1.2, 0.5};
    const auto q = chi_map(atlas, ChartLabel::mid(0, 1), u, v);
    CHECK(std::abs(q[0] - u / v) <= 1e-14);
    CHECK(std::abs(q[1] - u * v) <= 1e-14);
    CHECK(q[2] == u);
    CHECK(surface_residual(atlas.product, q[0], q[1], q[2]) <= 1e-14);
}

TEST_CASE("chi_map rejects zero fibre coordinates and chart poles") {
    const ChartAtlas atlas = chen_chen_atlas();
    CHECK_THROWS_AS(chi_map(atlas, ChartLabel::minus(), {1.0, 0.0}, {0.0, 0.0}), Error);
    // mid chart section vanishes over the cluster point
    CHECK_THROWS_AS(chi_map(atlas, ChartLabel::mid(0, 1), {0.0, 0.0}, {1.0, 0.0}), Error);
}

TEST_CASE("chi_map images satisfy the surface equation and glue across charts") {
    for (const ChartAtlas& atlas : {generic_atlas(), a2_atlas(), chen_chen_atlas()}) {
        CounterRng rng(9, 0);
        for (const auto& [alpha, beta] : adjacent_chart_pairs(atlas)) {
            for (int i = 0; i < 100; ++i) {
                const Complex u = random_u(rng, atlas, 5.0);
                const Complex v = std::polar(0.5 + rng.next_double(),
                                             6.283185307179586 * rng.next_double());
                const auto qa = chi_map(atlas, alpha, u, v);
                const double scale =
                    std::max(1.0, std::abs(eval_product(atlas.product, u).value));
                CHECK(surface_residual(atlas.product, qa[0], qa[1], qa[2]) / scale <= 1e-10);
                const Complex f = transition(atlas, alpha, beta, u);
                const auto qb = chi_map(atlas, beta, u, f * v);
                for (int c = 0; c < 3; ++c) {
                    const double m = std::max({1.0, std::abs(qa[static_cast<std::size_t>(c)]),
                                               std::abs(qb[static_cast<std::size_t>(c)])});
                    CHECK(std::abs(qa[static_cast<std::size_t>(c)] - qb[static_cast<std::size_t>(c)]) / m <=
                          1e-10);
                }
            }
        }
    }
}

TEST_CASE("blowup fixture: explicit two-center resolution checks") {
    const BlowupCheckReport rep = blowup_fixture_check();
    for (const std::string& f : rep.failures) MESSAGE(f);
    CHECK(rep.passed);
    CHECK(rep.max_surface_eq <= 1e-10);
    CHECK(rep.max_blowup_eq <= 1e-10);
    CHECK(rep.max_overlap <= 1e-10);
    CHECK(rep.max_roundtrip <= 1e-12);
    CHECK(rep.limit_to_0_1_0 <= 1e-5);
    CHECK(rep.limit_to_1_0_0 <= 1e-5);
}

TEST_CASE("exceptional chains form paths of length m - 1") {
    const EntireProduct p = build_product(
        ZeroList{{Complex{0.0, 0.0}, 4}, {Complex{2.0, 1.0}, 3}, {Complex{-3.0, 0.0}, 1}},
        GenusMode::paper_index);
    const SingularityReport rep = singular_points(p);
    REQUIRE(rep.chains.size() == 2);
    CHECK(rep.chains[0].curves.size() == 3); // A3 chain over the origin
    CHECK(rep.chains[1].curves.size() == 2); // A2 chain over (2, 1)
    for (const ExceptionalChain& c : rep.chains) CHECK(c.self_intersection == -2);
}
