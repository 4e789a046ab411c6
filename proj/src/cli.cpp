#include "ghlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ghlab/batch.hpp"
#include "ghlab/config.hpp"
#include "ghlab/directions.hpp"
#include "ghlab/entire.hpp"
#include "ghlab/error.hpp"
#include "ghlab/geometry.hpp"
#include "ghlab/potential.hpp"
#include "ghlab/report.hpp"
#include "ghlab/rng.hpp"
#include "ghlab/surface.hpp"

namespace ghlab {

namespace {

using nlohmann::json;

constexpr double kLapTol = 1e-4;
constexpr double kCurlTol = 1e-4;
constexpr double kAlgebraTol = 1e-10;
constexpr double kAuditTol = 1e-10;

Vec3 parse_vec3(const std::string& s) {
    Vec3 v;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',')
        throw Error(ErrCode::invalid_parameter, "expected X,Y,Z, got '" + s + "'");
    return v;
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrCode::io, "cannot write " + path);
    f << text;
}

int error_exit_code(const Error& e) {
    switch (e.code()) {
        case ErrCode::io:
        case ErrCode::parse:
        case ErrCode::invalid_parameter:
        case ErrCode::length_mismatch:
        case ErrCode::duplicate_puncture:
            return 2;
        default:
            return 1;
    }
}

PunctureConfig load_with_warnings(const std::string& path, std::ostream& err) {
    std::vector<std::string> warnings;
    PunctureConfig cfg = load_config_file(path, &warnings);
    for (const std::string& w : warnings) err << "warning: " << w << "\n";
    return cfg;
}

// ---- generate ----

struct GenerateArgs {
    std::string kind;
    double ratio = 2.0;
    double spacing = 1.0;
    double radius = 1.0;
    int count = 10;
    std::uint64_t seed = 0;
    std::string label;
    std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream&) {
    PunctureConfig cfg;
    if (a.kind == "geometric_z")
        cfg = make_geometric_z(a.ratio, a.count);
    else if (a.kind == "collinear_x")
        cfg = make_collinear_x(a.spacing, a.count);
    else if (a.kind == "random_ball")
        cfg = make_random_ball(a.radius, a.count, a.seed);
    else
        throw Error(ErrCode::invalid_parameter, "unknown kind: " + a.kind);
    if (!a.label.empty()) cfg.label = a.label;
    write_text(a.out, emit_config(cfg), out);
    return 0;
}

// ---- validate ----

struct ValidateArgs {
    std::string config;
    std::string out;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
    const PunctureConfig cfg = load_with_warnings(a.config, err);
    const CriterionVerdict verdict = check_criterion(cfg);
    json j = to_json(verdict);
    j["manifest"] = to_json(RunManifest::make("validate", cfg, 0));
    write_text(a.out, j.dump(2) + "\n", out);
    return verdict.accepted ? 0 : 1;
}

// ---- verify-geometry ----

struct VerifyArgs {
    std::string config;
    int points = 100;
    std::uint64_t seed = 1;
    double h = 1e-3;
    std::string out;
    bool serial = false;
};

int cmd_verify_geometry(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    const PunctureConfig cfg = load_with_warnings(a.config, err);
    const CriterionVerdict verdict = check_criterion(cfg);
    if (!verdict.accepted) {
        err << "config rejected by the existence criterion (" << to_string(verdict.reason) << ")\n";
        return 1;
    }
    const std::vector<Vec3> pts = sample_verification_points(cfg, a.points, a.seed, a.h);
    const std::vector<GeometryRow> rows =
        geometry_rows(cfg, pts, a.h, a.seed, a.serial ? Exec::serial : Exec::parallel);

    std::ostringstream csv;
    csv << "# command=verify-geometry config_hash=" << config_hash(cfg) << " seed=" << a.seed
        << " h=" << a.h << " tool_version=" << kToolVersion << "\n";
    csv << geometry_rows_csv(rows, a.h);
    write_text(a.out, csv.str(), out);

    double worst = 0.0;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const GeometryRow& r = rows[i];
        const double exceed = std::max({r.lap_residual / kLapTol, r.curl_residual / kCurlTol,
                                        r.quat_residual / kAlgebraTol, r.compat_residual / kAlgebraTol});
        if (exceed > worst) {
            worst = exceed;
            worst_i = i;
        }
    }
    if (worst > 1.0) {
        const GeometryRow& r = rows[worst_i];
        err << "threshold exceeded at " << r.x << ": lap=" << r.lap_residual << " curl=" << r.curl_residual
            << " quat=" << r.quat_residual << " compat=" << r.compat_residual << " (h=" << a.h << ")\n";
        return 1;
    }
    return 0;
}

// ---- direction ----

struct DirectionArgs {
    std::string config;
    std::string v;
    int survey = 0;
    std::uint64_t seed = 0;
    int cap_n = -1;
    long samples = 1000000;
    double eps = -1.0;
    std::string out;
    bool serial = false;
};

int cmd_direction(const DirectionArgs& a, std::ostream& out, std::ostream& err) {
    const PunctureConfig cfg = load_with_warnings(a.config, err);
    const CriterionVerdict verdict = check_criterion(cfg);
    if (!verdict.accepted) {
        err << "config rejected by the existence criterion (" << to_string(verdict.reason) << ")\n";
        return 1;
    }
    const Exec exec = a.serial ? Exec::serial : Exec::parallel;
    if (a.survey > 0) {
        const SurveySummary s = genericity_survey(cfg, a.survey, a.seed, exec);
        json j{{"survey", to_json(s)}};
        j["manifest"] = to_json(RunManifest::make("direction --survey", cfg, a.seed));
        write_text(a.out, j.dump(2) + "\n", out);
        return 0;
    }
    if (a.v.empty()) throw Error(ErrCode::invalid_parameter, "need --v X,Y,Z or --survey N");
    const DirectionFrame frame = make_frame(parse_vec3(a.v));
    const ProjectionReport rep = project(cfg, frame, a.eps);
    std::optional<CapEstimate> cap;
    if (a.cap_n >= 0) cap = cap_estimate(cfg, a.cap_n, a.samples, a.seed, exec);
    const json j =
        direction_report_json(RunManifest::make("direction", cfg, a.seed), frame, rep, cap);
    write_text(a.out, j.dump(2) + "\n", out);
    return 0;
}

// ---- surface ----

struct SurfaceArgs {
    std::string config;
    std::string v = "1,0,0";
    std::string mode = "minimal_genus";
    double radius = 4.0;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int grid = 0;
    std::string grid_out;
    std::string out;
};

struct AuditSummary {
    double max_cocycle = 0.0;
    double max_generic_identity = 0.0;
    double max_chi_residual = 0.0;
    double max_chi_mismatch = 0.0;
    bool pole_orders_ok = true;
    int triples_checked = 0;
    int pole_checks = 0;
    int pole_checks_skipped = 0; // contour infeasible (phase budget / separation)
    bool passed = false;
};

Complex sample_audit_u(const ChartAtlas& atlas, double scale, std::uint64_t seed, std::uint64_t i) {
    CounterRng rng(seed, i);
    for (int attempt = 0; attempt < 256; ++attempt) {
        const Complex u = std::polar(scale * (0.05 + 0.95 * rng.next_double()),
                                     2.0 * 3.14159265358979323846 * rng.next_double());
        bool clear = true;
        for (int r = 0; clear && r < atlas.num_clusters(); ++r)
            if (atlas.multiplicity(r) > 0 && std::abs(u - atlas.cluster_point(r)) < 0.02 * scale)
                clear = false;
        if (clear) return u;
    }
    throw Error(ErrCode::invalid_parameter, "could not sample audit points clear of cluster points");
}

AuditSummary run_surface_audits(const ChartAtlas& atlas, std::uint64_t seed) {
    AuditSummary s;
    const EntireProduct& p = atlas.product;
    double scale = 1.0;
    for (int r = 0; r < atlas.num_clusters(); ++r)
        scale = std::max(scale, std::abs(atlas.cluster_point(r)));
    scale *= 1.2;
    if (p.mode == GenusMode::minimal_genus) scale = std::min(scale, p.radius);
    // stay where every factor's log magnitude is representable in scaled form
    scale = std::max(2.0, std::min(scale, 0.5 * representable_radius(p)));

    // cocycle over chart triples
    const std::size_t nc = atlas.charts.size();
    std::uint64_t ctr = 0;
    std::vector<std::array<std::size_t, 3>> triples;
    if (nc <= 5) {
        for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                for (std::size_t k = 0; k < nc; ++k)
                    if (i != j && j != k && i != k) triples.push_back({i, j, k});
    } else {
        for (std::size_t i = 0; i + 2 < nc; ++i) triples.push_back({i, i + 1, i + 2});
    }
    for (const auto& t : triples) {
        for (int n = 0; n < 100; ++n) {
            const Complex u = sample_audit_u(atlas, scale, seed, ctr++);
            s.max_cocycle = std::max(
                s.max_cocycle, cocycle_check(atlas, atlas.charts[t[0]], atlas.charts[t[1]],
                                             atlas.charts[t[2]], u));
        }
        ++s.triples_checked;
    }

    // pole orders against the index table; clusters whose contours are
    // numerically infeasible (zero_separation_too_small) are skipped
    for (const auto& [alpha, beta] : adjacent_chart_pairs(atlas)) {
        for (int r = 0; r < atlas.num_clusters(); ++r) {
            if (atlas.multiplicity(r) == 0) continue;
            const int expected = atlas.j_index(r, alpha) - atlas.j_index(r, beta);
            if (expected == 0) continue;
            try {
                if (pole_order(atlas, alpha, beta, r) != expected) s.pole_orders_ok = false;
                ++s.pole_checks;
            } catch (const Error& e) {
                if (e.code() != ErrCode::zero_separation_too_small) throw;
                ++s.pole_checks_skipped;
            }
        }
    }

    // generic atlas: minus -> plus multiplier times P is identically 1
    bool generic = p.delta <= 1;
    for (const ZeroEntry& z : p.zeros) generic = generic && z.multiplicity == 1;
    if (generic) {
        for (int n = 0; n < 50; ++n) {
            const Complex u = sample_audit_u(atlas, scale, seed ^ 0x5bd1e995, ctr++);
            ScaledComplex q = eval_product_scaled(p, u);
            q.mul(transition_scaled(atlas, ChartLabel::minus(), ChartLabel::plus(), u));
            s.max_generic_identity =
                std::max(s.max_generic_identity, std::abs(q.to_complex() - Complex{1.0, 0.0}));
        }
    }

    // chi maps: surface membership and cross-chart agreement, as scaled
    // ratios so shared factors cancel even when |P| leaves the double range
    for (const auto& [alpha, beta] : adjacent_chart_pairs(atlas)) {
        for (int n = 0; n < 100; ++n) {
            const Complex u = sample_audit_u(atlas, scale, seed ^ 0xc2b2ae35, ctr++);
            CounterRng rng(seed ^ 0x165667b1, ctr);
            const ScaledComplex v = ScaledComplex::from(std::polar(
                0.5 + rng.next_double(), 2.0 * 3.14159265358979323846 * rng.next_double()));
            const auto qa = chi_map_scaled(atlas, alpha, u, v);
            ScaledComplex memb = qa[0];
            memb.mul(qa[1]);
            memb.mul(eval_product_scaled(p, u).inverse());
            s.max_chi_residual =
                std::max(s.max_chi_residual, std::abs(memb.to_complex() - Complex{1.0, 0.0}));
            ScaledComplex vb = transition_scaled(atlas, alpha, beta, u);
            vb.mul(v);
            const auto qb = chi_map_scaled(atlas, beta, u, vb);
            for (int i = 0; i < 3; ++i) {
                const auto& a = qa[static_cast<std::size_t>(i)];
                const auto& b = qb[static_cast<std::size_t>(i)];
                if (a.is_zero && b.is_zero) continue;
                ScaledComplex ratio = a;
                ratio.mul(b.inverse());
                s.max_chi_mismatch =
                    std::max(s.max_chi_mismatch, std::abs(ratio.to_complex() - Complex{1.0, 0.0}));
            }
        }
    }

    s.passed = s.max_cocycle <= kAuditTol && s.max_generic_identity <= kAuditTol &&
               s.max_chi_residual <= kAuditTol && s.max_chi_mismatch <= kAuditTol && s.pole_orders_ok;
    return s;
}

// largest grid radius keeping |log P| modest, so the emitted coordinates fit
// comfortably in doubles
double grid_radius(const EntireProduct& p) {
    const auto log_bound = [&](double r) {
        double t = p.delta * std::log1p(r);
        for (const ZeroEntry& z : p.zeros) {
            const double q = r / std::abs(z.b);
            t += z.multiplicity * (std::pow(q, z.genus + 1) / (z.genus + 1) + std::log1p(q));
        }
        return t;
    };
    double lo = 0.5, hi = 1.0;
    while (log_bound(hi) < 200.0 && hi < 1e12) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (log_bound(mid) < 200.0 ? lo : hi) = mid;
    }
    return lo;
}

std::string residual_grid_csv(const ChartAtlas& atlas, int grid) {
    std::ostringstream os;
    os.precision(17);
    os << "chart,u_re,u_im,v_re,v_im,u1_re,u1_im,u2_re,u2_im,u3_re,u3_im,residual_rel\n";
    double scale = 1.0;
    for (int r = 0; r < atlas.num_clusters(); ++r)
        scale = std::max(scale, std::abs(atlas.cluster_point(r)));
    scale = std::min(scale, grid_radius(atlas.product));
    for (const ChartLabel& chart : atlas.charts) {
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                const Complex u = std::polar(scale * (0.07 + 1.2 * i / std::max(1, grid - 1)),
                                             2.0 * 3.14159265358979323846 * (0.031 + j * 0.618));
                const Complex v = std::polar(0.4 + 1.2 * j / std::max(1, grid - 1),
                                             2.0 * 3.14159265358979323846 * (0.017 + i * 0.382));
                std::array<Complex, 3> q;
                double rel = 0.0;
                try {
                    q = chi_map(atlas, chart, u, v);
                    auto memb = chi_map_scaled(atlas, chart, u, ScaledComplex::from(v));
                    memb[0].mul(memb[1]);
                    memb[0].mul(eval_product_scaled(atlas.product, u).inverse());
                    rel = std::abs(memb[0].to_complex() - Complex{1.0, 0.0});
                } catch (const Error&) {
                    continue; // grid node hit a chart pole; skip the row
                }
                os << chart.name() << ',' << u.real() << ',' << u.imag() << ',' << v.real() << ','
                   << v.imag() << ',' << q[0].real() << ',' << q[0].imag() << ',' << q[1].real() << ','
                   << q[1].imag() << ',' << q[2].real() << ',' << q[2].imag() << ',' << rel << '\n';
            }
    }
    return os.str();
}

int cmd_surface(const SurfaceArgs& a, std::ostream& out, std::ostream& err) {
    const PunctureConfig cfg = load_with_warnings(a.config, err);
    const CriterionVerdict verdict = check_criterion(cfg);
    if (!verdict.accepted) {
        err << "config rejected by the existence criterion (" << to_string(verdict.reason) << ")\n";
        return 1;
    }
    const DirectionFrame frame = make_frame(parse_vec3(a.v));
    const ProjectionReport rep = project(cfg, frame);
    if (rep.accumulation_flag) {
        err << "projected clusters accumulate on truncation evidence; no convergent product\n";
        return 1;
    }
    GenusMode mode;
    if (a.mode == "paper_index")
        mode = GenusMode::paper_index;
    else if (a.mode == "minimal_genus")
        mode = GenusMode::minimal_genus;
    else
        throw Error(ErrCode::invalid_parameter, "unknown mode: " + a.mode);

    const EntireProduct product = build_product(rep, mode, a.radius, a.tol);
    const ChartAtlas atlas = make_atlas(product);
    const SingularityReport sing = singular_points(product);
    const AuditSummary audits = run_surface_audits(atlas, a.seed);

    RunManifest manifest = RunManifest::make("surface", cfg, a.seed);
    manifest.tolerances = json{{"audit", kAuditTol}, {"build_tol", a.tol}, {"radius", a.radius}};
    json sing_json = to_json(sing);
    sing_json["atlas"] = atlas_json(atlas);
    json j{{"manifest", to_json(manifest)},
           {"v", {frame.v.x, frame.v.y, frame.v.z}},
           {"product", to_json(product)},
           {"singularity", sing_json},
           {"audits",
            json{{"max_cocycle", audits.max_cocycle},
                 {"max_generic_identity", audits.max_generic_identity},
                 {"max_chi_residual", audits.max_chi_residual},
                 {"max_chi_mismatch", audits.max_chi_mismatch},
                 {"pole_orders_ok", audits.pole_orders_ok},
                 {"triples_checked", audits.triples_checked},
                 {"pole_checks", audits.pole_checks},
                 {"pole_checks_skipped", audits.pole_checks_skipped},
                 {"passed", audits.passed}}}};
    write_text(a.out, j.dump(2) + "\n", out);
    if (a.grid > 0 && !a.grid_out.empty()) write_text(a.grid_out, residual_grid_csv(atlas, a.grid), out);
    if (!audits.passed) {
        err << "surface audits failed (cocycle " << audits.max_cocycle << ", chi "
            << audits.max_chi_mismatch << ")\n";
        return 1;
    }
    return 0;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical laboratory for Gibbons-Hawking spaces with countably many centers"};
    app.require_subcommand(1);

    GenerateArgs ga;
    CLI::App* gen = app.add_subcommand("generate", "emit a puncture configuration");
    gen->add_option("--kind", ga.kind, "geometric_z | collinear_x | random_ball")->required();
    gen->add_option("--ratio", ga.ratio, "geometric_z ratio (> 1)");
    gen->add_option("--spacing", ga.spacing, "collinear_x spacing (> 0)");
    gen->add_option("--radius", ga.radius, "random_ball radius (> 0)");
    gen->add_option("--count", ga.count, "number of centers")->required();
    gen->add_option("--seed", ga.seed, "random_ball seed");
    gen->add_option("--label", ga.label, "config label");
    gen->add_option("--out", ga.out, "output path (default stdout)");

    ValidateArgs va;
    CLI::App* val = app.add_subcommand("validate", "existence criterion verdict");
    val->add_option("--config", va.config, "config JSON path")->required();
    val->add_option("--out", va.out, "output path (default stdout)");

    VerifyArgs ve;
    CLI::App* ver = app.add_subcommand("verify-geometry", "pointwise residual verification");
    ver->set_help_flag("--help", "print help"); // frees -h for the step option
    ver->add_option("--config", ve.config)->required();
    ver->add_option("--points", ve.points, "sample point count");
    ver->add_option("--seed", ve.seed);
    ver->add_option("--h", ve.h, "finite-difference step");
    ver->add_option("--out", ve.out, "CSV output path (default stdout)");
    ver->add_flag("--serial", ve.serial, "run the serial reference kernels");

    DirectionArgs da;
    CLI::App* dir = app.add_subcommand("direction", "projection report or genericity survey");
    dir->add_option("--config", da.config)->required();
    dir->add_option("--v", da.v, "direction X,Y,Z");
    dir->add_option("--survey", da.survey, "sample this many random directions");
    dir->add_option("--seed", da.seed);
    dir->add_option("--cap-n", da.cap_n, "cap parameter n (enables the cap estimate)");
    dir->add_option("--samples", da.samples, "Monte Carlo sample count");
    dir->add_option("--eps", da.eps, "clustering tolerance (default 1e-9 * diameter)");
    dir->add_option("--out", da.out, "output path (default stdout)");
    dir->add_flag("--serial", da.serial, "run the serial reference kernels");

    SurfaceArgs sa;
    CLI::App* sur = app.add_subcommand("surface", "hypersurface model, atlas and audits");
    sur->add_option("--config", sa.config)->required();
    sur->add_option("--v", sa.v, "direction X,Y,Z");
    sur->add_option("--mode", sa.mode, "paper_index | minimal_genus");
    sur->add_option("--radius", sa.radius, "working disk radius (minimal_genus)");
    sur->add_option("--tol", sa.tol, "tail tolerance (minimal_genus)");
    sur->add_option("--seed", sa.seed);
    sur->add_option("--grid", sa.grid, "residual grid resolution");
    sur->add_option("--grid-out", sa.grid_out, "residual grid CSV path");
    sur->add_option("--out", sa.out, "report path (default stdout)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(ga, out, err);
        if (val->parsed()) return cmd_validate(va, out, err);
        if (ver->parsed()) return cmd_verify_geometry(ve, out, err);
        if (dir->parsed()) return cmd_direction(da, out, err);
        if (sur->parsed()) return cmd_surface(sa, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return error_exit_code(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace ghlab
