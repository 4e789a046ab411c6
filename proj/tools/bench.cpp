// Serial reference vs OpenMP kernels on the heavy loops: batch potential
// evaluation, geometry verification rows, Monte Carlo cap union, genericity
// survey. Results of both paths are compared before timing is reported.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ghlab/batch.hpp"
#include "ghlab/config.hpp"
#include "ghlab/directions.hpp"
#include "ghlab/rng.hpp"

using namespace ghlab;

namespace {

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s serial %9.2f ms   omp %9.2f ms   speedup %5.2fx   %s\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, equal ? "results equal" : "RESULTS DIFFER");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel path runs serially\n");
#endif

    const PunctureConfig geo = make_geometric_z(2.0, 200);
    const PunctureConfig cloud = make_random_ball(2.0, 48, 11);

    {
        std::vector<Vec3> pts;
        CounterRng rng(5, 0);
        for (int i = 0; i < 200000; ++i) pts.push_back(rng.next_ball(1.0) + Vec3{0.0, 0.0, -3.0});
        std::vector<double> a, b;
        const double ts = time_ms([&] { a = batch_potential(geo, pts, Exec::serial); });
        const double tp = time_ms([&] { b = batch_potential(geo, pts, Exec::parallel); });
        report("batch_potential 200k x 200", ts, tp, a == b);
    }
    {
        const std::vector<Vec3> pts = sample_verification_points(cloud, 2000, 3, 1e-3);
        std::vector<GeometryRow> a, b;
        const double ts = time_ms([&] { a = geometry_rows(cloud, pts, 1e-3, 3, Exec::serial); });
        const double tp = time_ms([&] { b = geometry_rows(cloud, pts, 1e-3, 3, Exec::parallel); });
        bool equal = a.size() == b.size();
        for (std::size_t i = 0; equal && i < a.size(); ++i)
            equal = a[i].V == b[i].V && a[i].lap_residual == b[i].lap_residual &&
                    a[i].curl_residual == b[i].curl_residual;
        report("geometry_rows 2000 pts", ts, tp, equal);
    }
    {
        CapEstimate a, b;
        const double ts = time_ms([&] { a = cap_estimate(geo, 1, 2000000, 42, Exec::serial); });
        const double tp = time_ms([&] { b = cap_estimate(geo, 1, 2000000, 42, Exec::parallel); });
        report("cap_estimate 2M samples", ts, tp,
               a.mc_union_estimate == b.mc_union_estimate &&
                   a.sin_mc_union_estimate == b.sin_mc_union_estimate);
    }
    {
        SurveySummary a, b;
        const double ts = time_ms([&] { a = genericity_survey(cloud, 20000, 7, Exec::serial); });
        const double tp = time_ms([&] { b = genericity_survey(cloud, 20000, 7, Exec::parallel); });
        report("genericity_survey 20k dirs", ts, tp,
               a.fraction_generic == b.fraction_generic &&
                   a.fraction_accumulating == b.fraction_accumulating);
    }
    return 0;
}
