#include "dslit/experiments.hpp"

#include <cmath>
#include <functional>
#include <iostream>

#include "json.hpp"

#include "dslit/cml.hpp"
#include "dslit/gridio.hpp"
#include "dslit/modular.hpp"
#include "dslit/textio.hpp"
#include "dslit/trajectories.hpp"
#include "dslit/validation.hpp"

namespace dslit {

namespace {

struct Runner {
    const ExperimentConfig& cfg;
    std::string hash;

    std::string path(const std::string& name) const { return cfg.output_dir + "/" + name; }

    bool wants_csv() const { return cfg.format != OutputFormat::pgm; }
    bool wants_pgm() const { return cfg.format != OutputFormat::csv; }

    void emit_grid(const std::string& stem, const std::string& field, const std::string& units,
                   const FieldGrid& grid, const std::function<double(const FieldSample&)>& pick,
                   bool log_map = false) const {
        FieldGridFile file;
        file.field = field;
        file.units = units;
        file.config = hash;
        file.spec = grid.spec;
        file.values.reserve(grid.cells.size());
        for (const FieldSample& cell : grid.cells) file.values.push_back(pick(cell));
        if (wants_csv()) write_binary_file(path(stem + ".csv"), serialize_grid_csv(file));
        if (wants_pgm()) {
            write_binary_file(path(stem + ".pgm"),
                              render_pgm(file.values, grid.spec.n_x, HeatmapScaling::linear));
            if (log_map)
                write_binary_file(path(stem + "_log.pgm"),
                                  render_pgm(file.values, grid.spec.n_x, HeatmapScaling::log));
        }
    }
};

int run_pattern(const Runner& run) {
    const FieldGrid grid = sample_grid(run.cfg.slits, run.cfg.grid);
    run.emit_grid("pattern_intensity", "P_tot", "1/length", grid,
                  [](const FieldSample& c) { return c.P_tot; }, true);
    return 0;
}

int run_currents(const Runner& run) {
    const FieldGrid grid = sample_grid(run.cfg.slits, run.cfg.grid);
    run.emit_grid("currents_J_x", "J_x", "1/time", grid,
                  [](const FieldSample& c) { return c.J_x; });
    run.emit_grid("currents_J_y", "J_y", "1/time", grid,
                  [](const FieldSample& c) { return c.J_y; });
    run.emit_grid("currents_v_x", "v_tot_x", "length/time", grid,
                  [](const FieldSample& c) { return c.v_tot_x; });
    FieldGridFile flags;
    flags.field = "flags";
    flags.units = "0=ok 1=tail 2=degenerate";
    flags.config = run.hash;
    flags.spec = grid.spec;
    flags.values.reserve(grid.flags.size());
    for (CellFlag f : grid.flags) flags.values.push_back(double(int(f)));
    if (run.wants_csv())
        write_binary_file(run.path("currents_flags.csv"), serialize_grid_csv(flags));
    return 0;
}

int run_entangling(const Runner& run) {
    const FieldGrid grid = sample_grid(run.cfg.slits, run.cfg.grid);
    run.emit_grid("entangling_J_e", "J_e", "1/time", grid,
                  [](const FieldSample& c) { return c.J_e; });
    return 0;
}

int run_phaseshift(const Runner& run) {
    const FieldGrid grid = sample_grid(run.cfg.slits, run.cfg.grid);
    run.emit_grid("phaseshift_intensity", "P_tot", "1/length", grid,
                  [](const FieldSample& c) { return c.P_tot; }, true);
    run.emit_grid("phaseshift_J_e", "J_e", "1/time", grid,
                  [](const FieldSample& c) { return c.J_e; });

    FieldGridFile phase;
    phase.field = "phi12";
    phase.units = "rad";
    phase.config = run.hash;
    phase.spec = run.cfg.grid;
    phase.values.reserve(size_t(run.cfg.grid.n_x) * run.cfg.grid.n_t);
    for (int it = 0; it < run.cfg.grid.n_t; ++it)
        for (int ix = 0; ix < run.cfg.grid.n_x; ++ix)
            phase.values.push_back(
                relative_phase(run.cfg.slits, run.cfg.grid.x_at(ix), run.cfg.grid.t_at(it)));
    if (run.wants_csv())
        write_binary_file(run.path("phaseshift_phase.csv"), serialize_grid_csv(phase));
    return 0;
}

int run_trajectories(const Runner& run) {
    const TrajectoryEnsemble ens = integrate_ensemble(run.cfg.slits, run.cfg.trajectories);
    CsvTable table;
    table.header = {{"file", "dslit-trajectories v1"}, {"config", run.hash}};
    table.columns = {"trajectory_id", "t", "x", "flag"};
    table.rows.reserve(size_t(ens.n_trajectories) * ens.times.size());
    for (int i = 0; i < ens.n_trajectories; ++i)
        for (int k = 0; k < ens.n_records(); ++k)
            table.rows.push_back({format_int(i), format_double(ens.times[size_t(k)]),
                                  format_double(ens.at(i, k)),
                                  format_int(ens.flags[size_t(i)])});
    write_binary_file(run.path("trajectories_paths.csv"), serialize_csv(table));
    return 0;
}

int run_modular(const Runner& run) {
    SlitConfig slits = run.cfg.slits;
    slits.ramp.reset();
    slits.v_x = 0.0;  // the split is defined for resting channels only
    CsvTable table;
    table.header = {{"file", "dslit-modular v1"},
                    {"config", run.hash},
                    {"convention", "halved"},
                    {"sign", "+1"}};
    table.columns = {"x",       "t",     "winding_n",  "X_n",
                     "delta_X", "shift", "shift_rate", "large_time_shift"};
    const double s0 = slits.sigma0;
    for (double x : {0.5 * s0, s0, 2.0 * s0}) {
        for (int it = 0; it < run.cfg.grid.n_t; ++it) {
            const double t = run.cfg.grid.t_at(it);
            if (t <= 0.0) continue;
            const ModularDecomposition d = decompose(slits, x, t);
            table.rows.push_back({format_double(x), format_double(t), format_int(d.n),
                                  format_double(d.X_n), format_double(d.delta_X),
                                  format_double(momentum_shift(slits, d, t).value),
                                  format_double(momentum_shift_rate(slits, d, t)),
                                  format_double(large_time_shift(slits, d, t))});
        }
    }
    write_binary_file(run.path("modular_sweep.csv"), serialize_csv(table));
    return 0;
}

int run_cml(const Runner& run) {
    PacketParams packet;
    packet.constants = run.cfg.slits.constants;
    packet.sigma0 = run.cfg.slits.sigma0;
    const auto series = run_dispersion(run.cfg.lattice, packet, run.cfg.lattice_t_end);
    CsvTable table;
    table.header = {{"file", "dslit-series v1"}, {"config", run.hash}};
    table.columns = {"t", "variance", "analytic_variance", "mass", "excess_kurtosis"};
    for (const DispersionPoint& p : series) {
        const double s = sigma_at(packet, p.t);
        table.rows.push_back({format_double(p.t), format_double(p.variance),
                              format_double(s * s), format_double(p.mass),
                              format_double(p.excess_kurtosis)});
    }
    write_binary_file(run.path("cml_series.csv"), serialize_csv(table));
    return 0;
}

int run_validate(const Runner& run) {
    const std::vector<CheckResult> checks = run_validation_suite(run.cfg);
    bool all_passed = true;

    nlohmann::ordered_json report;
    report["config"] = run.hash;
    report["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : checks) {
        all_passed = all_passed && c.passed;
        std::cout << "check " << c.name << ": " << (c.passed ? "pass" : "FAIL")
                  << " (observed " << format_double(c.observed) << ", threshold "
                  << format_double(c.threshold) << ")\n";
        nlohmann::ordered_json entry;
        entry["name"] = c.name;
        entry["passed"] = c.passed;
        entry["observed"] = c.observed;
        entry["threshold"] = c.threshold;
        entry["detail"] = c.detail;
        report["checks"].push_back(entry);
    }
    report["passed"] = all_passed;
    write_binary_file(run.path("validate_report.json"), report.dump(2) + "\n");
    return all_passed ? 0 : 3;
}

}  // namespace

int run_subcommand(const std::string& name, const ExperimentConfig& cfg) {
    cfg.validate();
    ensure_directory(cfg.output_dir);
    const Runner run{cfg, config_hash(cfg)};

    if (name == "pattern") return run_pattern(run);
    if (name == "currents") return run_currents(run);
    if (name == "entangling") return run_entangling(run);
    if (name == "phaseshift") return run_phaseshift(run);
    if (name == "trajectories") return run_trajectories(run);
    if (name == "modular") return run_modular(run);
    if (name == "cml") return run_cml(run);
    if (name == "validate") return run_validate(run);
    std::cerr << "unknown subcommand: " << name << "\n";
    return 2;
}

}  // namespace dslit
