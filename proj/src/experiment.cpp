#include "fintstab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "fintstab/csv.hpp"
#include "fintstab/plot.hpp"

namespace fintstab {

using nlohmann::json;

DerivedSetup derive_setup(const ExperimentConfig& config) {
    DerivedSetup d;
    if (config.plant.kind == PlantConfig::Kind::Nn) {
        const auto [a1, a2] = derive_alpha12(config.plant.net);
        d.plant = {a1, a2, config.plant.net.tau_bound};
    } else {
        d.plant = {config.plant.generic.alpha1, config.plant.generic.aggregate_alpha2(),
                   config.plant.generic.tau_bound};
    }
    if (config.schedule.declared) {
        d.stats = *config.schedule.declared;
    } else {
        const AicSchedule realized = build_schedule(config.schedule, config.sim.t_end);
        d.stats = compute_stats(realized, realized.complete_windows());
    }
    d.gamma_bar = gamma_bar(config.quantizer.spec);
    return d;
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw IoError("cannot create directory " + path + ": " + ec.message());
}

namespace {

ControlSelection make_selection(const ControlConfig& control, const LevelTable* table) {
    ControlSelection sel;
    switch (control.kind) {
        case ControlConfig::Kind::None:
            sel.kind = ControlSelection::Kind::None;
            break;
        case ControlConfig::Kind::Constant:
            sel.kind = ControlSelection::Kind::Constant;
            sel.gains = control.gains;
            sel.table = table;
            break;
        case ControlConfig::Kind::Adaptive:
            sel.kind = ControlSelection::Kind::Adaptive;
            sel.adaptive = control.adaptive;
            sel.table = table;
            break;
    }
    return sel;
}

DdeSystem assemble_system(const ExperimentConfig& config, const ControlSelection& sel) {
    if (config.plant.kind == PlantConfig::Kind::Nn) {
        if (config.plant.mode == PlantConfig::Mode::MasterOnly) {
            return make_master_only_system(config.plant.net, config.plant.x0);
        }
        return make_master_slave_system({config.plant.net, config.plant.x0, config.plant.y0}, sel);
    }
    return make_generic_system(config.plant.generic, sel);
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config, const std::string& out_dir_override,
                         Trajectory* trajectory_out) {
    config.validate();
    RunReport report;
    report.name = config.output.name;

    const DerivedSetup setup = derive_setup(config);

    std::optional<LevelTable> table;
    if (config.control.kind != ControlConfig::Kind::None) {
        table = build_levels_range(config.quantizer.spec, config.quantizer.cover_low,
                                   config.quantizer.cover_high);
    }

    const AicSchedule schedule = build_schedule(config.schedule, config.sim.t_end);
    for (auto& w : schedule.declared_mismatch()) report.warnings.push_back(w);

    // certificate side (constant gains only; the adaptive theorem has its
    // own hypothesis on eta)
    if (config.control.kind == ControlConfig::Kind::Constant) {
        report.bounds = lower_bounds(setup.plant, setup.stats, setup.gamma_bar);
        TwoPhaseMargins margins;
        try {
            margins = suggest_margins(setup.plant, config.control.gains, setup.stats);
        } catch (const Infeasible&) {
            // evaluate the conditions anyway, pinned at the boundary margins
            margins.varpi2 = setup.plant.alpha1 + setup.plant.alpha2 + 1e-6;
            margins.varpi1 = report.bounds->varpi1_low;
            margins.phi = 1e-12;
            report.warnings.push_back("no feasible two-phase margins for these gains");
        }
        report.margins = margins;
        report.certificate =
            check_theorem1(setup.plant, config.control.gains, margins, setup.stats, setup.gamma_bar);
    }
    if (config.control.kind == ControlConfig::Kind::Adaptive) {
        report.bounds = lower_bounds(setup.plant, setup.stats, setup.gamma_bar);
        report.eta_bound = theorem2_eta_bound(setup.plant, setup.stats, setup.gamma_bar);
        report.eta_hypothesis_met = config.control.adaptive.eta > *report.eta_bound;
        if (!report.eta_hypothesis_met) {
            report.warnings.push_back("adaptive eta below the required growth-rate bound");
        }
    }

    const ControlSelection sel = make_selection(config.control, table ? &*table : nullptr);
    const DdeSystem sys = assemble_system(config, sel);
    Trajectory traj = integrate(sys, schedule, config.sim);

    report.t_phase1 = detect_phase1_end(traj, sys.tau_bound);
    report.t_settle = detect_settling(traj, config.sim.settle_tol, setup.stats.theta_high);
    if (!traj.samples.empty()) {
        const auto& first = traj.samples.front();
        const auto& last = traj.samples.back();
        report.initial_norm2 = first.norm_2;
        report.final_norm2 = last.norm_2;
        report.final_report = last.state;
        report.final_gains = {last.alpha3, last.alpha4};
    }

    if (report.margins && report.t_phase1) {
        const std::size_t from = schedule.locate(std::min(*report.t_phase1,
                                                          schedule.last_boundary() * (1 - 1e-12)))
                                     .window;
        report.audit = window_decrease_audit(traj, schedule, report.margins->phi, from,
                                             config.sim.settle_tol);
    }

    // emission
    std::string dir = out_dir_override.empty() ? config.output.dir : out_dir_override;
    if (const char* env = std::getenv("FINTSTAB_OUT"); env && out_dir_override.empty()) dir = env;
    ensure_directory(dir);
    const std::string base = dir + "/" + config.output.name;

    const std::string traj_path = base + "_trajectory.csv";
    write_file(traj_path, trajectory_csv(traj));
    report.output_files.push_back(traj_path);

    if (report.certificate) {
        const std::string cert_path = base + "_certificate.csv";
        write_file(cert_path, certificate_csv(*report.certificate));
        report.output_files.push_back(cert_path);
    }

    for (const auto& column : config.plot_columns) {
        const std::string svg_path = base + "_" + column + ".svg";
        emit_plot(traj, {column}, svg_path);
        report.output_files.push_back(svg_path);
    }

    const std::string report_path = base + "_report.json";
    write_file(report_path, report_to_json(report).dump(2) + "\n");
    report.output_files.push_back(report_path);

    if (trajectory_out) *trajectory_out = std::move(traj);
    return report;
}

namespace {

json& descend(json& j, const std::string& dotted) {
    json* cur = &j;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dot = dotted.find('.', pos);
        const std::string key = dotted.substr(pos, dot - pos);
        if (!cur->contains(key)) {
            throw ConfigError("sweep: unknown config key '" + dotted + "'");
        }
        cur = &(*cur)[key];
        if (dot == std::string::npos) return *cur;
        pos = dot + 1;
    }
}

}  // namespace

SweepResult sweep(const ExperimentConfig& base, const std::string& parameter,
                  const std::vector<double>& values, const std::string& out_dir_override) {
    SweepResult result;
    result.reports.resize(values.size());

    std::vector<ExperimentConfig> configs;
    configs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        json j = config_to_json(base);
        json& leaf = descend(j, parameter);
        if (!leaf.is_number()) {
            throw ConfigError("sweep: key '" + parameter + "' is not numeric");
        }
        leaf = values[i];
        ExperimentConfig c = config_from_json(j);
        c.output.name = base.output.name + "_sweep" + std::to_string(i);
        configs.push_back(std::move(c));
    }

    std::vector<std::string> errors(values.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(configs.size()); ++i) {
        try {
            result.reports[static_cast<std::size_t>(i)] =
                run_experiment(configs[static_cast<std::size_t>(i)], out_dir_override);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) {
            result.reports[i].name = configs[i].output.name;
            result.reports[i].warnings.push_back("run failed: " + errors[i]);
        }
    }

    // Richardson-style observed order when the step is swept over a
    // geometric ladder
    if (parameter == "sim.step" && values.size() >= 3) {
        bool geometric = true;
        const double ratio = values[0] / values[1];
        for (std::size_t i = 1; i + 1 < values.size(); ++i) {
            if (std::fabs(values[i] / values[i + 1] - ratio) > 1e-9 * ratio) geometric = false;
        }
        if (geometric && ratio > 1.0) {
            const auto& r0 = result.reports[0].final_report;
            const auto& r1 = result.reports[1].final_report;
            const auto& r2 = result.reports[2].final_report;
            if (!r0.empty() && r0.size() == r1.size() && r1.size() == r2.size()) {
                double d01 = 0.0, d12 = 0.0;
                for (std::size_t i = 0; i < r0.size(); ++i) {
                    d01 = std::max(d01, std::fabs(r0[i] - r1[i]));
                    d12 = std::max(d12, std::fabs(r1[i] - r2[i]));
                }
                if (d01 > 0.0 && d12 > 0.0) {
                    result.order_estimate = std::log(d01 / d12) / std::log(ratio);
                }
            }
        }
    }
    return result;
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.quantizer.spec.pi0 = 2.0;
    c.quantizer.spec.gamma_pattern = {5.0 / 19.0, 1.0 / 19.0};
    c.quantizer.spec.max_levels = 512;
    c.quantizer.cover_low = 1e-30;
    c.quantizer.cover_high = 1e6;
    c.schedule.kind = ScheduleConfig::Kind::Paper;
    c.schedule.declared = SpanStats{0.7, 1.1};
    c.plant.kind = PlantConfig::Kind::Nn;
    c.plant.net = sample_nn();
    c.plant.x0 = {0.05, -0.1, 0.15};
    c.plant.y0 = {-1.5, 0.8, -0.1};
    c.sim.step = 1e-3;
    c.sim.record_stride = 10;
    c.sim.settle_tol = 1e-2;
    c.output.name = name;

    if (name == "fig1") {
        c.plant.mode = PlantConfig::Mode::MasterOnly;
        c.control.kind = ControlConfig::Kind::None;
        c.sim.t_end = 100.0;
        c.sim.record_stride = 20;
        c.plot_columns = {"norm_inf"};
        return c;
    }
    if (name == "fig2") {
        c.control.kind = ControlConfig::Kind::Constant;
        c.control.gains = {0.04, 0.08};
        c.sim.t_end = 50.0;
        c.plot_columns = {"norm_2"};
        return c;
    }
    if (name == "fig3" || name == "fig4" || name == "fig5") {
        c.control.kind = ControlConfig::Kind::Adaptive;
        c.control.adaptive = AdaptiveParams{0.01, 0.01, 0.01, 0.2, 0.0, 0.0, 1e-9};
        c.sim.t_end = 50.0;
        if (name == "fig3") c.plot_columns = {"norm_2"};
        if (name == "fig4") c.plot_columns = {"alpha3"};
        if (name == "fig5") c.plot_columns = {"alpha4"};
        return c;
    }
    throw ConfigError("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
    return {"fig1", "fig2", "fig3", "fig4", "fig5"};
}

json report_to_json(const RunReport& r) {
    json j;
    j["name"] = r.name;
    if (r.certificate) {
        json cert;
        cert["certified"] = r.certificate->certified;
        if (r.certificate->sigma_star) cert["sigma_star"] = *r.certificate->sigma_star;
        cert["window_count"] = r.certificate->window_count;
        cert["settling_window_bound"] = r.certificate->settling_window_bound;
        json conds = json::array();
        for (const auto& c : r.certificate->conditions) {
            conds.push_back({{"name", c.name}, {"satisfied", c.satisfied}, {"slack", c.slack}});
        }
        cert["conditions"] = conds;
        j["certificate"] = cert;
    }
    if (r.margins) {
        j["margins"] = {{"varpi1", r.margins->varpi1},
                        {"varpi2", r.margins->varpi2},
                        {"phi", r.margins->phi}};
    }
    if (r.bounds) {
        j["lower_bounds"] = {{"sigma_low", r.bounds->sigma_low},
                             {"alpha3_low", r.bounds->alpha3_low},
                             {"varpi1_low", r.bounds->varpi1_low},
                             {"alpha4_low", r.bounds->alpha4_low}};
    }
    if (r.t_phase1) j["t_phase1"] = *r.t_phase1;
    if (r.t_settle) j["t_settle"] = *r.t_settle;
    if (r.audit) {
        json a;
        a["passed"] = r.audit->passed;
        a["windows_audited"] = r.audit->entries.size();
        json entries = json::array();
        for (const auto& e : r.audit->entries) {
            entries.push_back({{"window", e.window}, {"decrease", e.decrease}});
        }
        a["entries"] = entries;
        j["window_decrease_audit"] = a;
    }
    j["final_gains"] = {r.final_gains[0], r.final_gains[1]};
    j["final_report"] = r.final_report;
    if (r.eta_bound) {
        j["eta_bound"] = *r.eta_bound;
        j["eta_hypothesis_met"] = r.eta_hypothesis_met;
    }
    j["initial_norm2"] = r.initial_norm2;
    j["final_norm2"] = r.final_norm2;
    j["output_files"] = r.output_files;
    j["warnings"] = r.warnings;
    return j;
}

}  // namespace fintstab
