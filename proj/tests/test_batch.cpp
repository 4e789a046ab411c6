#include <doctest.h>

#include "ghlab/batch.hpp"
#include "ghlab/config.hpp"
#include "ghlab/error.hpp"

using namespace ghlab;

TEST_CASE("parallel kernels match the serial reference bit for bit") {
    const PunctureConfig cfg = make_random_ball(2.0, 12, 19);
    const std::vector<Vec3> pts = sample_verification_points(cfg, 64, 5, 1e-3);
    const auto serial = geometry_rows(cfg, pts, 1e-3, 5, Exec::serial);
    const auto parallel = geometry_rows(cfg, pts, 1e-3, 5, Exec::parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].V == parallel[i].V);
        CHECK(serial[i].grad_norm == parallel[i].grad_norm);
        CHECK(serial[i].lap_residual == parallel[i].lap_residual);
        CHECK(serial[i].curl_residual == parallel[i].curl_residual);
        CHECK(serial[i].quat_residual == parallel[i].quat_residual);
        CHECK(serial[i].compat_residual == parallel[i].compat_residual);
    }
    CHECK(batch_potential(cfg, pts, Exec::serial) == batch_potential(cfg, pts, Exec::parallel));
}

TEST_CASE("sampled points respect the clearance contract") {
    const PunctureConfig cfg = make_collinear_x(1.0, 2);
    const double h = 1e-3;
    const std::vector<Vec3> pts = sample_verification_points(cfg, 128, 3, h);
    for (const Vec3& x : pts) CHECK(cfg.nearest_distance(x) > 10.0 * h);
}

TEST_CASE("sampling fails loudly when h leaves no clear points") {
    const PunctureConfig cfg = make_collinear_x(1.0, 2);
    CHECK_THROWS_AS(sample_verification_points(cfg, 10, 1, 0.5), Error);
}

TEST_CASE("sampling is deterministic per seed") {
    const PunctureConfig cfg = make_random_ball(1.0, 6, 2);
    CHECK(sample_verification_points(cfg, 32, 7, 1e-3) ==
          sample_verification_points(cfg, 32, 7, 1e-3));
}
