#include "eventpovm/run_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "eventpovm/asymptotic_model.hpp"
#include "eventpovm/report_io.hpp"
#include "eventpovm/spacetime_density.hpp"
#include "eventpovm/variance_engine.hpp"

namespace eventpovm {

namespace {

bool has_format(const RunConfig& config, const std::string& name) {
    const auto& f = config.output.formats;
    return std::find(f.begin(), f.end(), name) != f.end();
}

MassWindow config_window(const PovmConfig& povm) {
    if (povm.window[0] == 0.0 && povm.window[1] == 0.0) return {};
    return {povm.window[0], povm.window[1]};
}

ProfileFunction config_model_profile(const WavefunctionConfig& w) {
    const PlanarProfile g = gaussian_planar_profile(w.g_center[0], w.g_center[1],
                                                    w.g_width[0], w.g_width[1]);
    return special_gaussian(g, 7.0 * (w.g_center[0] + 3.0 * w.g_width[0]));
}

// Lazily built state, POVM spec, and variance report shared across tasks.
struct RunContext {
    const RunConfig& config;
    int threads;
    std::optional<WaveFunction> psi;
    std::optional<PovmSpec> spec;
    std::optional<VarianceReport> report;

    RunContext(const RunConfig& c, int t) : config(c), threads(t) {}

    const WaveFunction& state() {
        if (psi) return *psi;
        const auto& w = config.wavefunction;
        if (w.family == "model_section3") {
            ModelGridOptions opts;
            opts.points_per_axis = config.grid.points_per_axis;
            opts.leak_tol = config.limit_study.leak_tol;
            opts.mass_floor = config.limit_study.mass_floor;
            opts.threads = threads;
            ModelState state = build_model_state(
                SpinLabel{static_cast<int>(std::lround(2.0 * w.j))},
                config_model_profile(w), opts);
            psi.emplace(std::move(state.psi));
        } else {
            std::array<AxisSpec, 4> axes;
            if (config.grid.auto_box) {
                const Real reach = 7.0 + w.poly_degree;
                for (int a = 0; a < 4; ++a) {
                    Real lo = w.center[a] - reach * w.width[a];
                    const Real hi = w.center[a] + reach * w.width[a];
                    if (a == 0) lo = std::max<Real>(lo, 0.0);
                    axes[a] = {lo, hi, config.grid.points_per_axis};
                }
            } else {
                for (int a = 0; a < 4; ++a)
                    axes[a] = {config.grid.kmin[a], config.grid.kmax[a],
                               config.grid.points_per_axis};
            }
            auto grid = std::make_shared<MomentumGrid>(axes, config.grid.leak_tol);
            if (w.family == "gaussian_scalar") {
                FourVector center(w.center[0], w.center[1], w.center[2], w.center[3]);
                FourVector width(w.width[0], w.width[1], w.width[2], w.width[3]);
                psi.emplace(gaussian_scalar(grid, center, width, threads));
            } else {
                PolynomialGaussian pg;
                pg.center =
                    FourVector(w.center[0], w.center[1], w.center[2], w.center[3]);
                pg.width = FourVector(w.width[0], w.width[1], w.width[2], w.width[3]);
                if (w.poly_degree > 0) {
                    std::vector<Complex> mono(w.poly_degree + 1, Complex(0.0, 0.0));
                    mono[w.poly_degree] = Complex(1.0, 0.0);
                    pg.poly[1] = mono;
                }
                const int two_j = static_cast<int>(std::lround(2.0 * w.j));
                const int two_m = static_cast<int>(std::lround(2.0 * w.m));
                psi.emplace(WaveFunction(
                    grid, {polynomial_gaussian_component(0, two_j, two_m, pg)},
                    threads));
            }
        }
        psi->normalize(threads);
        const Real clip = psi->cone_clip_fraction();
        const Real allowed = w.family == "model_section3" ? config.limit_study.leak_tol
                                                          : config.grid.leak_tol;
        if (clip > allowed) {
            std::ostringstream msg;
            msg << "cone clip fraction " << clip << " exceeds leak_tol " << allowed;
            throw std::runtime_error(msg.str());
        }
        return *psi;
    }

    const PovmSpec& povm_spec() {
        if (spec) return *spec;
        const WaveFunction& st = state();
        const MassWindow window = config_window(config.povm);
        if (config.povm.name == "identity_quasi_baricentric") {
            std::vector<std::pair<int, int>> pairs;
            for (const auto& comp : st.components()) {
                std::pair<int, int> p{comp.sigma, comp.two_j};
                if (std::find(pairs.begin(), pairs.end(), p) == pairs.end())
                    pairs.push_back(p);
            }
            spec.emplace(identity_quasi_baricentric(pairs, window));
        } else {
            const auto sigmas = st.sigma_list();
            if (sigmas.size() != 1)
                throw std::runtime_error(
                    "rotated_identity needs a single sigma sector");
            spec.emplace(
                rotated_identity(config.povm.alpha, sigmas[0], st.two_j_list(), window));
        }
        return *spec;
    }

    const VarianceReport& variance() {
        if (report) return *report;
        EngineOptions options;
        options.threads = threads;
        options.recenter = config.run.recenter;
        options.face_tol = config.tolerances.face_tol;
        options.norm_tol = config.tolerances.norm_tol;
        report = variance_report(povm_spec(), state(), options);
        return *report;
    }
};

void emit(const std::string& dir, TaskOutcome& outcome, const std::string& name,
          const std::string& text) {
    write_text_atomic(dir + "/" + name, text);
    outcome.outputs.push_back(name);
}

void run_variances(RunContext& ctx, const std::string& dir, TaskOutcome& outcome) {
    const VarianceReport& report = ctx.variance();
    if (has_format(ctx.config, "json"))
        emit(dir, outcome, "variance_report.json",
             json_to_text(variance_report_json(report)));
}

void run_inequalities(RunContext& ctx, const std::string& dir, TaskOutcome& outcome) {
    const VarianceReport& report = ctx.variance();
    if (has_format(ctx.config, "json"))
        emit(dir, outcome, "inequalities.json",
             json_to_text(inequalities_json(report)));
}

void run_density(RunContext& ctx, const std::string& dir, TaskOutcome& outcome) {
    const VarianceReport& report = ctx.variance();
    const SpacetimeGrid grid =
        centered_spacetime_grid(report.mean_x, report.second_moment_x,
                                ctx.config.density.points_per_axis,
                                ctx.config.density.span);
    const DensityField density = density_scalar(ctx.state(), grid, ctx.threads);
    const Real norm2 = ctx.state().norm_squared(ctx.threads);
    const bool binary = has_format(ctx.config, "binary");
    if (binary) {
        write_density_binary_atomic(dir + "/density.bin", density);
        outcome.outputs.push_back("density.bin");
    }
    if (binary || has_format(ctx.config, "json"))
        emit(dir, outcome, "density.json",
             json_to_text(density_sidecar_json(density, norm2, "density.bin")));
    if (has_format(ctx.config, "csv"))
        emit(dir, outcome, "density_slice.csv", density_slice_csv(density));
}

void run_limit_study(RunContext& ctx, const std::string& dir, TaskOutcome& outcome) {
    const auto& cfg = ctx.config.limit_study;
    ModelGridOptions opts;
    opts.points_per_axis = cfg.points_per_axis;
    opts.leak_tol = cfg.leak_tol;
    opts.mass_floor = cfg.mass_floor;
    opts.threads = ctx.threads;
    const ProfileFunction profile =
        ctx.config.wavefunction.family == "model_section3"
            ? config_model_profile(ctx.config.wavefunction)
            : default_model_profile();
    const LimitStudy study = limit_study(profile, cfg.j_list, opts);
    if (has_format(ctx.config, "csv"))
        emit(dir, outcome, "limit_study.csv", limit_study_csv(study));
    if (has_format(ctx.config, "json"))
        emit(dir, outcome, "limit_study.json",
             json_to_text(limit_study_json(study)));
}

void run_algebra_checks(RunContext& ctx, const std::string& dir, TaskOutcome& outcome) {
    const auto& cfg = ctx.config.algebra_checks;
    const AlgebraScanResult scan = algebra_scan(cfg.two_j_max, cfg.samples);
    if (has_format(ctx.config, "csv"))
        emit(dir, outcome, "algebra_checks.csv", algebra_scan_csv(scan));
    if (has_format(ctx.config, "json"))
        emit(dir, outcome, "algebra_checks.json",
             json_to_text(algebra_scan_json(scan)));
    if (!scan.passed()) {
        std::ostringstream msg;
        msg << "algebra residual " << scan.max_residual << " exceeds threshold "
            << scan.threshold;
        throw std::runtime_error(msg.str());
    }
}

}  // namespace

RunOutcome run_config(const RunConfig& config, const std::string& output_dir,
                      int threads_override) {
    int threads = threads_override >= 0 ? threads_override : config.run.threads;
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());

    std::filesystem::create_directories(output_dir);
    const auto start = std::chrono::steady_clock::now();

    RunContext ctx(config, threads);
    RunOutcome outcome;
    for (const auto& task : config.tasks) {
        TaskOutcome entry;
        entry.task = task;
        try {
            if (task == "variances") run_variances(ctx, output_dir, entry);
            else if (task == "inequalities") run_inequalities(ctx, output_dir, entry);
            else if (task == "density") run_density(ctx, output_dir, entry);
            else if (task == "limit_study") run_limit_study(ctx, output_dir, entry);
            else run_algebra_checks(ctx, output_dir, entry);
            entry.ok = true;
        } catch (const std::exception& e) {
            entry.ok = false;
            entry.error = e.what();
        }
        outcome.any_error = outcome.any_error || !entry.ok;
        outcome.tasks.push_back(std::move(entry));
    }

    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;

    OrderedJson doc;
    doc["schema_version"] = 1;
    doc["config_hash"] = config_hash(config);
    OrderedJson tasks = OrderedJson::array();
    for (const auto& t : outcome.tasks) {
        OrderedJson entry;
        entry["task"] = t.task;
        entry["ok"] = t.ok;
        entry["error"] = t.error;
        entry["outputs"] = t.outputs;
        tasks.push_back(entry);
    }
    doc["tasks"] = tasks;
    OrderedJson prov;
    if (ctx.psi) {
        OrderedJson grid;
        OrderedJson kmin = OrderedJson::array(), kmax = OrderedJson::array();
        for (int a = 0; a < 4; ++a) {
            kmin.push_back(ctx.psi->grid().axis(a).min);
            kmax.push_back(ctx.psi->grid().axis(a).max);
        }
        grid["kmin"] = kmin;
        grid["kmax"] = kmax;
        grid["points_per_axis"] = ctx.psi->grid().axis(0).n;
        grid["leak_tol"] = ctx.psi->grid().leak_tol();
        prov["grid"] = grid;
    }
    OrderedJson tol;
    tol["norm_tol"] = config.tolerances.norm_tol;
    tol["face_tol"] = config.tolerances.face_tol;
    prov["tolerances"] = tol;
    prov["threads"] = threads;
    prov["wall_time_seconds"] = elapsed.count();
    doc["provenance"] = prov;

    outcome.report_path = output_dir + "/run_report.json";
    write_text_atomic(outcome.report_path, json_to_text(doc));
    return outcome;
}

}  // namespace eventpovm
