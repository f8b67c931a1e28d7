#include "fintstab/config.hpp"

#include <cmath>
#include <fstream>

#include "fintstab/certificate.hpp"
#include "fintstab/csv.hpp"

namespace fintstab {

using nlohmann::json;

namespace {

std::string activation_name(Activation a) {
    switch (a) {
        case Activation::Saturation: return "saturation";
        case Activation::Tanh: return "tanh";
        case Activation::Identity: return "identity";
    }
    return "saturation";
}

Activation activation_from(const std::string& s) {
    if (s == "saturation") return Activation::Saturation;
    if (s == "tanh") return Activation::Tanh;
    if (s == "identity") return Activation::Identity;
    throw ConfigError("unknown activation: " + s);
}

json delay_to_json(const DelayFunction& d) {
    json j;
    switch (d.kind()) {
        case DelayFunction::Kind::Constant:
            j["kind"] = "constant";
            j["value"] = d.constant_value();
            break;
        case DelayFunction::Kind::Sample:
            j["kind"] = "paper";
            break;
        case DelayFunction::Kind::Expression:
            j["kind"] = "custom-expression";
            j["expr"] = d.expression_text();
            break;
    }
    return j;
}

DelayFunction delay_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return DelayFunction::constant(j.at("value").get<double>());
    if (kind == "paper") return DelayFunction::sample();
    if (kind == "custom-expression") {
        return DelayFunction::expression(j.at("expr").get<std::string>());
    }
    throw ConfigError("unknown delay kind: " + kind);
}

}  // namespace

void ExperimentConfig::validate() const {
    quantizer.spec.validate();
    if (control.kind == ControlConfig::Kind::Constant) control.gains.validate();
    if (control.kind == ControlConfig::Kind::Adaptive) {
        const auto& a = control.adaptive;
        if (!(a.mu1 > 0.0 && a.mu2 > 0.0 && a.mu3 > 0.0 && a.eta > 0.0)) {
            throw ConfigError("adaptive control: mu1..mu3 and eta must be positive");
        }
        if (!(a.alpha3_0 >= 0.0 && a.alpha4_0 >= 0.0)) {
            throw ConfigError("adaptive control: initial gains must be nonnegative");
        }
    }
    if (plant.kind == PlantConfig::Kind::Nn) {
        plant.net.validate();
        const std::size_t n = static_cast<std::size_t>(plant.net.n);
        if (plant.x0.size() != n) throw ConfigError("plant: x0 size mismatch");
        if (plant.mode == PlantConfig::Mode::Pair && plant.y0.size() != n) {
            throw ConfigError("plant: y0 size mismatch");
        }
    } else {
        plant.generic.validate();
    }
    sim.validate(plant.tau_bound());

    // small-delay requirement against the schedule
    SpanStats stats;
    if (schedule.declared) {
        stats = *schedule.declared;
    } else {
        const AicSchedule realized = build_schedule(schedule, sim.t_end);
        stats = compute_stats(realized, realized.complete_windows());
    }
    if (!validate_delay(stats, plant.tau_bound())) {
        throw ConfigError("delay bound must be strictly below the minimum control span");
    }
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["quantizer"] = {{"pi0", c.quantizer.spec.pi0},
                      {"gamma_pattern", c.quantizer.spec.gamma_pattern},
                      {"max_levels", c.quantizer.spec.max_levels},
                      {"cover_low", c.quantizer.cover_low},
                      {"cover_high", c.quantizer.cover_high}};

    json s;
    switch (c.schedule.kind) {
        case ScheduleConfig::Kind::Paper:
            s["kind"] = "paper";
            break;
        case ScheduleConfig::Kind::Periodic:
            s["kind"] = "periodic";
            s["cts"] = c.schedule.cts;
            s["window"] = c.schedule.window;
            break;
        case ScheduleConfig::Kind::Explicit:
            s["kind"] = "explicit";
            s["boundaries"] = c.schedule.boundaries;
            break;
    }
    if (c.schedule.k_max) s["k_max"] = c.schedule.k_max;
    if (c.schedule.declared) {
        s["declared"] = {{"theta_low", c.schedule.declared->theta_low},
                         {"theta_high", c.schedule.declared->theta_high}};
    }
    j["schedule"] = s;

    json p;
    if (c.plant.kind == PlantConfig::Kind::Nn) {
        p["kind"] = "nn";
        p["mode"] = c.plant.mode == PlantConfig::Mode::Pair ? "pair" : "master-only";
        p["n"] = c.plant.net.n;
        p["d"] = c.plant.net.d;
        p["A"] = c.plant.net.A;
        p["B"] = c.plant.net.B;
        p["I"] = c.plant.net.I;
        p["activation"] = activation_name(c.plant.net.activation);
        p["Lf"] = c.plant.net.Lf;
        p["Lg"] = c.plant.net.Lg;
        p["delay"] = delay_to_json(c.plant.net.delay);
        p["tau_bound"] = c.plant.net.tau_bound;
        p["x0"] = c.plant.x0;
        if (c.plant.mode == PlantConfig::Mode::Pair) p["y0"] = c.plant.y0;
    } else {
        p["kind"] = "generic";
        p["dimension"] = c.plant.generic.dimension;
        p["alpha1"] = c.plant.generic.alpha1;
        json terms = json::array();
        for (const auto& term : c.plant.generic.delayed_terms) {
            terms.push_back({{"gain", term.gain}, {"delay", delay_to_json(term.delay)}});
        }
        p["delayed_terms"] = terms;
        p["tau_bound"] = c.plant.generic.tau_bound;
        p["init"] = c.plant.generic.init;
    }
    j["plant"] = p;

    json ctl;
    switch (c.control.kind) {
        case ControlConfig::Kind::None:
            ctl["kind"] = "none";
            break;
        case ControlConfig::Kind::Constant:
            ctl["kind"] = "constant";
            ctl["alpha3"] = c.control.gains.alpha3;
            ctl["alpha4"] = c.control.gains.alpha4;
            break;
        case ControlConfig::Kind::Adaptive:
            ctl["kind"] = "adaptive";
            ctl["mu1"] = c.control.adaptive.mu1;
            ctl["mu2"] = c.control.adaptive.mu2;
            ctl["mu3"] = c.control.adaptive.mu3;
            ctl["eta"] = c.control.adaptive.eta;
            ctl["alpha3_0"] = c.control.adaptive.alpha3_0;
            ctl["alpha4_0"] = c.control.adaptive.alpha4_0;
            ctl["zero_tol"] = c.control.adaptive.zero_tol;
            break;
    }
    j["control"] = ctl;

    j["sim"] = {{"step", c.sim.step},
                {"t_end", c.sim.t_end},
                {"settle_tol", c.sim.settle_tol},
                {"record_stride", c.sim.record_stride}};
    j["output"] = {{"dir", c.output.dir}, {"name", c.output.name}};
    j["plot_columns"] = c.plot_columns;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    try {
        const auto& q = j.at("quantizer");
        c.quantizer.spec.pi0 = q.at("pi0").get<double>();
        c.quantizer.spec.gamma_pattern = q.at("gamma_pattern").get<std::vector<double>>();
        c.quantizer.spec.max_levels = q.value("max_levels", 256);
        c.quantizer.cover_low = q.value("cover_low", 1e-30);
        c.quantizer.cover_high = q.value("cover_high", 1e6);

        const auto& s = j.at("schedule");
        const std::string skind = s.at("kind").get<std::string>();
        if (skind == "paper") {
            c.schedule.kind = ScheduleConfig::Kind::Paper;
        } else if (skind == "periodic") {
            c.schedule.kind = ScheduleConfig::Kind::Periodic;
            c.schedule.cts = s.at("cts").get<double>();
            c.schedule.window = s.at("window").get<double>();
        } else if (skind == "explicit") {
            c.schedule.kind = ScheduleConfig::Kind::Explicit;
            c.schedule.boundaries = s.at("boundaries").get<std::vector<double>>();
        } else {
            throw ConfigError("unknown schedule kind: " + skind);
        }
        c.schedule.k_max = s.value("k_max", std::size_t{0});
        if (s.contains("declared")) {
            c.schedule.declared = SpanStats{s["declared"].at("theta_low").get<double>(),
                                            s["declared"].at("theta_high").get<double>()};
        } else if (c.schedule.kind == ScheduleConfig::Kind::Paper) {
            c.schedule.declared = SpanStats{0.7, 1.1};
        } else if (c.schedule.kind == ScheduleConfig::Kind::Periodic) {
            c.schedule.declared = SpanStats{c.schedule.cts, c.schedule.window};
        }

        const auto& p = j.at("plant");
        const std::string pkind = p.at("kind").get<std::string>();
        if (pkind == "nn") {
            c.plant.kind = PlantConfig::Kind::Nn;
            const std::string mode = p.value("mode", std::string("pair"));
            if (mode == "pair") {
                c.plant.mode = PlantConfig::Mode::Pair;
            } else if (mode == "master-only") {
                c.plant.mode = PlantConfig::Mode::MasterOnly;
            } else {
                throw ConfigError("unknown plant mode: " + mode);
            }
            auto& net = c.plant.net;
            net.n = p.at("n").get<int>();
            net.d = p.at("d").get<std::vector<double>>();
            net.A = p.at("A").get<std::vector<double>>();
            net.B = p.at("B").get<std::vector<double>>();
            net.I = p.value("I", std::vector<double>(static_cast<std::size_t>(net.n), 0.0));
            net.activation = activation_from(p.value("activation", std::string("saturation")));
            net.Lf = p.value("Lf", 1.0);
            net.Lg = p.value("Lg", 1.0);
            net.delay = delay_from_json(p.at("delay"));
            net.tau_bound = p.at("tau_bound").get<double>();
            c.plant.x0 = p.at("x0").get<std::vector<double>>();
            if (c.plant.mode == PlantConfig::Mode::Pair) {
                c.plant.y0 = p.at("y0").get<std::vector<double>>();
            }
        } else if (pkind == "generic") {
            c.plant.kind = PlantConfig::Kind::Generic;
            auto& g = c.plant.generic;
            g.dimension = p.at("dimension").get<int>();
            g.alpha1 = p.at("alpha1").get<double>();
            for (const auto& term : p.value("delayed_terms", json::array())) {
                g.delayed_terms.push_back(
                    {term.at("gain").get<double>(), delay_from_json(term.at("delay"))});
            }
            g.tau_bound = p.at("tau_bound").get<double>();
            g.init = p.at("init").get<std::vector<double>>();
        } else {
            throw ConfigError("unknown plant kind: " + pkind);
        }

        const auto& ctl = j.at("control");
        const std::string ckind = ctl.at("kind").get<std::string>();
        if (ckind == "none") {
            c.control.kind = ControlConfig::Kind::None;
        } else if (ckind == "constant") {
            c.control.kind = ControlConfig::Kind::Constant;
            c.control.gains.alpha3 = ctl.at("alpha3").get<double>();
            c.control.gains.alpha4 = ctl.at("alpha4").get<double>();
        } else if (ckind == "adaptive") {
            c.control.kind = ControlConfig::Kind::Adaptive;
            auto& a = c.control.adaptive;
            a.mu1 = ctl.at("mu1").get<double>();
            a.mu2 = ctl.at("mu2").get<double>();
            a.mu3 = ctl.at("mu3").get<double>();
            a.eta = ctl.at("eta").get<double>();
            a.alpha3_0 = ctl.value("alpha3_0", 0.0);
            a.alpha4_0 = ctl.value("alpha4_0", 0.0);
            a.zero_tol = ctl.value("zero_tol", 1e-9);
        } else {
            throw ConfigError("unknown control kind: " + ckind);
        }

        if (j.contains("sim")) {
            const auto& sim = j["sim"];
            c.sim.step = sim.value("step", 1e-3);
            c.sim.t_end = sim.value("t_end", 50.0);
            c.sim.settle_tol = sim.value("settle_tol", 1e-3);
            c.sim.record_stride = sim.value("record_stride", 10);
        }
        if (j.contains("output")) {
            c.output.dir = j["output"].value("dir", std::string("out"));
            c.output.name = j["output"].value("name", std::string("run"));
        }
        c.plot_columns = j.value("plot_columns", std::vector<std::string>{"norm_2"});
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return config_from_json(j);
}

void save_config(const ExperimentConfig& config, const std::string& path) {
    write_file(path, config_to_json(config).dump(2) + "\n");
}

AicSchedule build_schedule(const ScheduleConfig& config, double t_end) {
    switch (config.kind) {
        case ScheduleConfig::Kind::Paper: {
            // window lengths are at least 0.9
            const std::size_t k = config.k_max
                                      ? config.k_max
                                      : static_cast<std::size_t>(std::ceil(t_end / 0.9)) + 2;
            AicSchedule s = sample_schedule(k);
            if (config.declared) return AicSchedule(s.boundaries(), config.declared);
            return s;
        }
        case ScheduleConfig::Kind::Periodic: {
            const std::size_t k = config.k_max
                                      ? config.k_max
                                      : static_cast<std::size_t>(std::ceil(t_end / config.window)) + 2;
            AicSchedule s = periodic_schedule(config.cts, config.window, k);
            if (config.declared) return AicSchedule(s.boundaries(), config.declared);
            return s;
        }
        case ScheduleConfig::Kind::Explicit:
            return AicSchedule(config.boundaries, config.declared);
    }
    throw ConfigError("bad schedule kind");
}

}  // namespace fintstab
