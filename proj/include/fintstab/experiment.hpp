#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fintstab/certificate.hpp"
#include "fintstab/config.hpp"
#include "fintstab/trajectory.hpp"

namespace fintstab {

struct RunReport {
    std::string name;
    std::optional<Certificate> certificate;
    std::optional<TwoPhaseMargins> margins;
    std::optional<LowerBounds> bounds;
    std::optional<double> t_phase1;   // windowed sup-norm first stays <= 1
    std::optional<double> t_settle;   // inf-norm first stays <= settle_tol
    std::optional<WindowAudit> audit;
    std::array<double, 2> final_gains{0.0, 0.0};
    std::vector<double> final_report;
    std::optional<double> eta_bound;  // adaptive runs
    bool eta_hypothesis_met = false;
    double initial_norm2 = 0.0;
    double final_norm2 = 0.0;
    std::vector<std::string> output_files;
    std::vector<std::string> warnings;
};

/// Derived quantities every subcommand needs: comparison bounds of the
/// configured plant, schedule stats, sector bound.
struct DerivedSetup {
    PlantBounds plant;
    SpanStats stats;
    double gamma_bar = 0.0;
};
DerivedSetup derive_setup(const ExperimentConfig& config);

/// Full pipeline: certify (constant gains), simulate, diagnostics, emit
/// trajectory CSV / SVG plots / report JSON under config.output.dir. Pass an
/// empty out_dir override to use the configured one.
RunReport run_experiment(const ExperimentConfig& config, const std::string& out_dir_override = "",
                         Trajectory* trajectory_out = nullptr);

struct SweepResult {
    std::vector<RunReport> reports;
    std::optional<double> order_estimate;  // when sweeping sim.step over a geometric ladder
};

/// Independent runs with one numeric config key swept over the given
/// values; key paths are dotted JSON paths like "control.alpha3".
SweepResult sweep(const ExperimentConfig& base, const std::string& parameter,
                  const std::vector<double>& values, const std::string& out_dir_override = "");

/// Built-in experiment presets: fig1 (uncontrolled network), fig2 (fixed
/// sub-threshold gains), fig3/fig4/fig5 (adaptive run, different plotted
/// columns).
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

nlohmann::json report_to_json(const RunReport& report);

/// Directory handling for emitted files (mkdir -p behaviour).
void ensure_directory(const std::string& path);

}  // namespace fintstab
