// End-to-end flows from a puncture configuration through projection,
// product construction and the chart atlas.

#include <doctest.h>

#include <cmath>
#include <complex>

#include "ghlab/config.hpp"
#include "ghlab/directions.hpp"
#include "ghlab/entire.hpp"
#include "ghlab/error.hpp"
#include "ghlab/potential.hpp"
#include "ghlab/rng.hpp"
#include "ghlab/surface.hpp"

using namespace ghlab;

TEST_CASE("geometric configuration reduces to the plain product of (1 - u/(i 2^j))") {
    // centers (0,0,2^j) project along x to i 2^j; minimal genus keeps every
    // factor at genus 0, so P agrees with the direct product on the disk
    const PunctureConfig cfg = make_geometric_z(2.0, 24);
    const ProjectionReport rep = project(cfg, make_frame({1, 0, 0}));
    REQUIRE(rep.generic);
    const double R = 3.0, tol = 1e-10;
    const EntireProduct p = build_product(rep, GenusMode::minimal_genus, R, tol);
    for (const ZeroEntry& z : p.zeros) CHECK(z.genus == 0);

    CounterRng rng(12, 0);
    for (int i = 0; i < 64; ++i) {
        const Complex u = std::polar(R * rng.next_double(), 6.283185307179586 * rng.next_double());
        Complex direct{1.0, 0.0};
        for (int j = 1; j <= 24; ++j)
            direct *= Complex{1.0, 0.0} - u / Complex{0.0, std::pow(2.0, j)};
        const ProductValue got = eval_product(p, u);
        // dropped factors are certified within the recorded bound
        const double budget = std::abs(direct) * (std::exp(got.log_abs_error_bound) - 1.0 + 1e-12);
        CHECK(std::abs(got.value - direct) <= budget + 1e-12);
    }
}

TEST_CASE("three collinear centers along their axis give an A2 resolution") {
    const PunctureConfig cfg = make_collinear_x(1.0, 3);
    const CriterionVerdict verdict = check_criterion(cfg);
    REQUIRE(verdict.accepted);
    const ProjectionReport rep = project(cfg, make_frame({1, 0, 0}));
    CHECK(rep.m0 == 3);
    CHECK_FALSE(rep.generic);

    const EntireProduct p = build_product(rep, GenusMode::paper_index);
    CHECK(p.delta == 3);
    const SingularityReport sing = singular_points(p);
    REQUIRE(sing.points.size() == 1);
    CHECK(sing.points[0].type == "A2");
    CHECK(sing.chains[0].curves.size() == 2);

    const ChartAtlas atlas = make_atlas(p);
    REQUIRE(atlas.charts.size() == 4); // minus, (0,1), (0,2), plus
    const Complex u{2.0, 0.0};
    // f(minus -> mid(0,l)) = u^{-l}, f(minus -> plus) = u^{-3}
    CHECK(std::abs(transition(atlas, ChartLabel::minus(), ChartLabel::mid(0, 1), u) - 0.5) <= 1e-15);
    CHECK(std::abs(transition(atlas, ChartLabel::minus(), ChartLabel::mid(0, 2), u) - 0.25) <= 1e-15);
    CHECK(std::abs(transition(atlas, ChartLabel::minus(), ChartLabel::plus(), u) - 0.125) <= 1e-15);
    CHECK(pole_order(atlas, ChartLabel::minus(), ChartLabel::plus(), 0) == -3);

    // chi images glue along the whole chain
    CounterRng rng(31, 0);
    for (std::size_t c = 0; c + 1 < atlas.charts.size(); ++c) {
        for (int i = 0; i < 25; ++i) {
            const Complex uu =
                std::polar(0.3 + 2.0 * rng.next_double(), 6.283185307179586 * rng.next_double());
            const Complex v =
                std::polar(0.5 + rng.next_double(), 6.283185307179586 * rng.next_double());
            const auto qa = chi_map(atlas, atlas.charts[c], uu, v);
            const Complex f = transition(atlas, atlas.charts[c], atlas.charts[c + 1], uu);
            const auto qb = chi_map(atlas, atlas.charts[c + 1], uu, f * v);
            for (int k = 0; k < 3; ++k)
                CHECK(std::abs(qa[static_cast<std::size_t>(k)] - qb[static_cast<std::size_t>(k)]) <=
                      1e-10 * std::max(1.0, std::abs(qa[static_cast<std::size_t>(k)])));
        }
    }
}

TEST_CASE("eval_product vanishes exactly on every truncated zero of random products") {
    CounterRng rng(64, 0);
    for (int trial = 0; trial < 25; ++trial) {
        ZeroList zeros;
        const int nz = 1 + static_cast<int>(rng.next_double() * 6);
        for (int k = 0; k < nz; ++k)
            zeros.emplace_back(
                Complex{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0} * 5.0,
                1 + static_cast<int>(rng.next_double() * 2));
        EntireProduct p;
        try {
            p = build_product(zeros, GenusMode::paper_index);
        } catch (const Error&) {
            continue;
        }
        for (const ZeroEntry& z : p.zeros) CHECK(eval_product(p, z.b).value == Complex{0.0, 0.0});
    }
}

TEST_CASE("oblique direction on a mixed configuration keeps the books consistent") {
    PunctureConfig cfg;
    cfg.punctures = {{0, 0, 0}, {2, 0, 0}, {1, 1, 0}, {0, 3, 1}, {-1, -2, 2}};
    cfg.weights = {-1, -1, -1, -1, -1};
    CounterRng rng(77, 0);
    for (int t = 0; t < 10; ++t) {
        const DirectionFrame frame = make_frame(rng.next_sphere());
        const ProjectionReport rep = project(cfg, frame);
        int total = 0;
        for (const Cluster& c : rep.clusters) total += c.multiplicity;
        REQUIRE(total == cfg.count());
        REQUIRE(rep.generic); // random directions miss the bad set a.s.
        const EntireProduct p = build_product(rep, GenusMode::minimal_genus, 4.0, 1e-9);
        CHECK(singular_points(p).points.empty());
        // every projected point is a zero of the product when inside the disk
        for (const Cluster& c : rep.clusters) {
            if (c.contains_origin || std::abs(c.b) > 4.0) continue;
            CHECK(std::abs(eval_product(p, c.b).value) <= 1e-9);
        }
    }
}
