#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fintstab/csv.hpp"
#include "fintstab/experiment.hpp"

namespace {

using namespace fintstab;

ExperimentConfig resolve_config(const std::string& config_path, const std::string& preset_name) {
    if (!config_path.empty() && !preset_name.empty()) {
        throw ConfigError("give either --config or --preset, not both");
    }
    if (!config_path.empty()) return load_config(config_path);
    if (!preset_name.empty()) return preset(preset_name);
    throw ConfigError("one of --config or --preset is required");
}

void print_report_summary(const RunReport& r) {
    std::printf("run %s\n", r.name.c_str());
    if (r.certificate) {
        std::printf("  certificate: %s\n", r.certificate->certified ? "CERTIFIED" : "FAILED");
        if (r.certificate->sigma_star) {
            std::printf("  sigma_star: %s\n", format_double(*r.certificate->sigma_star).c_str());
        }
        if (r.certificate->certified) {
            std::printf("  windows to settle (bound): %ld (%.6g time units)\n",
                        r.certificate->window_count, r.certificate->settling_window_bound);
        }
    }
    if (r.eta_bound) {
        std::printf("  eta bound: %.6g (%s)\n", *r.eta_bound,
                    r.eta_hypothesis_met ? "hypothesis met" : "theorem hypothesis unmet");
    }
    if (r.t_phase1) std::printf("  T1 (windowed sup <= 1 from): %.6g\n", *r.t_phase1);
    if (r.t_settle) std::printf("  T2 (settled from): %.6g\n", *r.t_settle);
    if (r.audit) {
        std::printf("  window-decrease audit: %s over %zu windows\n",
                    r.audit->passed ? "passed" : "failed", r.audit->entries.size());
    }
    std::printf("  E(0) = %.6g, E(end) = %.6g\n", r.initial_norm2, r.final_norm2);
    std::printf("  final gains: alpha3 = %.6g, alpha4 = %.6g\n", r.final_gains[0], r.final_gains[1]);
    for (const auto& f : r.output_files) std::printf("  wrote %s\n", f.c_str());
    for (const auto& w : r.warnings) std::printf("  warning: %s\n", w.c_str());
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-time stabilization toolkit for delayed systems under "
                 "intermittent quantized control"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir, param;
    std::string values_csv;
    double cover = 8.0;
    bool stats_only = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON experiment configuration");
        cmd->add_option("--preset", preset_name, "built-in preset (fig1..fig5)")
            ->check(CLI::IsMember(preset_names()));
        cmd->add_option("--out", out_dir, "output directory (overrides FINTSTAB_OUT)");
    };

    auto* levels_cmd = app.add_subcommand("levels", "print the quantizer level table as CSV");
    add_common(levels_cmd);
    levels_cmd->add_option("--cover", cover, "magnitude to cover (window [pi0^2/cover, cover])");

    auto* schedule_cmd = app.add_subcommand("schedule", "inspect the intermittent schedule");
    add_common(schedule_cmd);
    schedule_cmd->add_flag("--stats", stats_only, "print realized span statistics");

    auto* bounds_cmd = app.add_subcommand("bounds", "print the closed-form gain lower bounds");
    add_common(bounds_cmd);

    auto* certify_cmd = app.add_subcommand("certify", "evaluate the stability conditions");
    add_common(certify_cmd);

    auto* simulate_cmd = app.add_subcommand("simulate", "run the configured experiment");
    add_common(simulate_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "run the experiment over a parameter sweep");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--param", param, "dotted config key, e.g. control.alpha3")->required();
    sweep_cmd->add_option("--values", values_csv, "comma-separated values")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(levels_cmd)) {
            const ExperimentConfig c = resolve_config(config_path, preset_name);
            const LevelTable table = build_levels(c.quantizer.spec, cover);
            std::fputs(levels_csv(table).c_str(), stdout);
            return 0;
        }

        if (app.got_subcommand(schedule_cmd)) {
            const ExperimentConfig c = resolve_config(config_path, preset_name);
            const AicSchedule s = build_schedule(c.schedule, c.sim.t_end);
            const SpanStats realized = compute_stats(s, s.complete_windows());
            std::printf("windows: %zu\n", s.complete_windows());
            std::printf("theta_low (realized): %s\n", format_double(realized.theta_low).c_str());
            std::printf("theta_high (realized): %s\n", format_double(realized.theta_high).c_str());
            if (s.declared_stats()) {
                std::printf("theta_low (declared): %s\n",
                            format_double(s.declared_stats()->theta_low).c_str());
                std::printf("theta_high (declared): %s\n",
                            format_double(s.declared_stats()->theta_high).c_str());
            }
            for (const auto& w : s.declared_mismatch()) std::printf("warning: %s\n", w.c_str());
            if (!stats_only) {
                std::printf("boundaries:");
                for (double b : s.boundaries()) std::printf(" %s", format_double(b).c_str());
                std::printf("\n");
            }
            return 0;
        }

        if (app.got_subcommand(bounds_cmd)) {
            const ExperimentConfig c = resolve_config(config_path, preset_name);
            const DerivedSetup setup = derive_setup(c);
            const LowerBounds b = lower_bounds(setup.plant, setup.stats, setup.gamma_bar);
            const double eta = theorem2_eta_bound(setup.plant, setup.stats, setup.gamma_bar);
            std::printf("alpha1: %s\n", format_double(setup.plant.alpha1).c_str());
            std::printf("alpha2: %s\n", format_double(setup.plant.alpha2).c_str());
            std::printf("sigma_low: %s\n", format_double(b.sigma_low).c_str());
            std::printf("alpha3_low: %s\n", format_double(b.alpha3_low).c_str());
            std::printf("varpi1_low: %s\n", format_double(b.varpi1_low).c_str());
            std::printf("alpha4_low: %s\n", format_double(b.alpha4_low).c_str());
            std::printf("eta_bound: %s\n", format_double(eta).c_str());
            return 0;
        }

        if (app.got_subcommand(certify_cmd)) {
            const ExperimentConfig c = resolve_config(config_path, preset_name);
            if (c.control.kind != ControlConfig::Kind::Constant) {
                throw ConfigError("certify requires constant control gains");
            }
            const DerivedSetup setup = derive_setup(c);
            TwoPhaseMargins margins;
            bool feasible = true;
            try {
                margins = suggest_margins(setup.plant, c.control.gains, setup.stats);
            } catch (const Infeasible&) {
                feasible = false;
                const LowerBounds b = lower_bounds(setup.plant, setup.stats, setup.gamma_bar);
                margins = {b.varpi1_low, setup.plant.alpha1 + setup.plant.alpha2 + 1e-6, 1e-12};
            }
            const Certificate cert =
                check_theorem1(setup.plant, c.control.gains, margins, setup.stats, setup.gamma_bar);
            std::printf("%-10s %-10s %s\n", "condition", "satisfied", "slack");
            for (const auto& cond : cert.conditions) {
                std::printf("%-10s %-10s %s\n", cond.name.c_str(), cond.satisfied ? "yes" : "no",
                            format_double(cond.slack).c_str());
            }
            if (!feasible) std::printf("note: no feasible margins; boundary margins shown\n");
            if (cert.sigma_star) {
                std::printf("sigma_star: %s\n", format_double(*cert.sigma_star).c_str());
            }
            std::printf("margins: varpi1 = %s, varpi2 = %s, phi = %s\n",
                        format_double(margins.varpi1).c_str(), format_double(margins.varpi2).c_str(),
                        format_double(margins.phi).c_str());
            std::printf("certified: %s\n", cert.certified ? "yes" : "no");
            if (cert.certified) {
                std::printf("windows to settle (bound): %ld, time increment: %s\n",
                            cert.window_count, format_double(cert.settling_window_bound).c_str());
            }
            std::printf("\n%s", certificate_csv(cert).c_str());
            return cert.certified ? 0 : 1;
        }

        if (app.got_subcommand(simulate_cmd)) {
            const ExperimentConfig c = resolve_config(config_path, preset_name);
            const RunReport report = run_experiment(c, out_dir);
            print_report_summary(report);
            return 0;
        }

        if (app.got_subcommand(sweep_cmd)) {
            const ExperimentConfig c = resolve_config(config_path, preset_name);
            const SweepResult result = sweep(c, param, parse_values(values_csv), out_dir);
            for (const auto& r : result.reports) print_report_summary(r);
            if (result.order_estimate) {
                std::printf("observed convergence order: %.3f\n", *result.order_estimate);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
