#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fintstab/integrate.hpp"
#include "fintstab/plant.hpp"
#include "fintstab/quantizer.hpp"
#include "fintstab/schedule.hpp"

namespace fintstab {

struct QuantizerConfig {
    QuantizerSpec spec;
    double cover_low = 1e-30;  // simulation tables reach far below the base level
    double cover_high = 1e6;
};

struct ScheduleConfig {
    enum class Kind { Paper, Periodic, Explicit } kind = Kind::Paper;
    std::size_t k_max = 0;  // 0: derive from the simulation horizon
    double cts = 0.8;
    double window = 1.0;
    std::vector<double> boundaries;          // Explicit
    std::optional<SpanStats> declared;       // certificate-side stats
};

struct PlantConfig {
    enum class Kind { Nn, Generic } kind = Kind::Nn;
    enum class Mode { Pair, MasterOnly } mode = Mode::Pair;  // Nn only
    NeuralNet net;
    std::vector<double> x0;
    std::vector<double> y0;
    GenericDelayPlant generic;

    double tau_bound() const {
        return kind == Kind::Nn ? net.tau_bound : generic.tau_bound;
    }
};

struct ControlConfig {
    enum class Kind { None, Constant, Adaptive } kind = Kind::None;
    ControlGains gains;
    AdaptiveParams adaptive;
};

struct OutputConfig {
    std::string dir = "out";
    std::string name = "run";
};

struct ExperimentConfig {
    QuantizerConfig quantizer;
    ScheduleConfig schedule;
    PlantConfig plant;
    ControlConfig control;
    SimConfig sim;
    OutputConfig output;
    std::vector<std::string> plot_columns{"norm_2"};

    /// cross checks that need several sections at once (delay bound vs
    /// schedule stats, quantizer validity, gain signs)
    void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& config, const std::string& path);

/// Schedule realization for a simulation horizon; k_max = 0 picks enough
/// windows to cover t_end.
AicSchedule build_schedule(const ScheduleConfig& config, double t_end);

}  // namespace fintstab
