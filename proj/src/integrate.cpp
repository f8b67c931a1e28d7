#include "fintstab/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace fintstab {

void SimConfig::validate(double tau_bound) const {
    if (!(step > 0.0)) throw ConfigError("sim: step must be positive");
    if (!(t_end > 0.0)) throw ConfigError("sim: t_end must be positive");
    if (!(settle_tol > 0.0)) throw ConfigError("sim: settle_tol must be positive");
    if (record_stride < 1) throw ConfigError("sim: record_stride must be >= 1");
    if (tau_bound > 0.0 && step > tau_bound / 4.0 + 1e-15) {
        throw ConfigError("sim: step must not exceed tau_bound/4 (history resolution)");
    }
}

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace

Trajectory integrate(const DdeSystem& sys, const AicSchedule& schedule, const SimConfig& config) {
    config.validate(sys.tau_bound);
    if (sys.state_dim == 0 || sys.initial_state.size() != sys.state_dim) {
        throw ConfigError("integrate: bad system dimensions");
    }
    if (!all_finite(sys.initial_state)) throw NonFinite("integrate: initial state not finite");
    if (!(schedule.last_boundary() > config.t_end)) {
        throw OutOfSchedule("integrate: schedule prefix must extend past t_end");
    }

    const std::size_t n = sys.state_dim;
    const std::size_t m = sys.report_dim ? sys.report_dim : n;
    const auto report = [&](std::span<const double> y, std::span<double> e) {
        if (sys.report) {
            sys.report(y, e);
        } else {
            std::copy(y.begin(), y.end(), e.begin());
        }
    };

    std::vector<double> init_report(m);
    report(sys.initial_state, init_report);
    const double init_norm = inf_norm(init_report);

    HistoryBuffer history(sys.initial_state, sys.tau_bound + 4.0 * config.step);
    SlidingMax report_sup(sys.tau_bound, init_norm);
    DelayedState delayed(history, report_sup);

    Trajectory traj;
    traj.initial_report = init_report;
    traj.tau_bound = sys.tau_bound;

    const auto& boundaries = schedule.boundaries();

    std::vector<double> y = sys.initial_state;
    std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n);
    std::vector<double> e(m), u(m);

    const auto record = [&](double t, std::span<const double> state) {
        TrajectorySample s;
        s.t = t;
        s.state.resize(m);
        report(state, s.state);
        s.norm_inf = inf_norm(s.state);
        s.norm_2 = two_norm(s.state);
        s.in_cts = schedule.locate(t).in_cts;
        s.control.assign(m, 0.0);
        if (sys.control) {
            StepContext ctx{t, s.in_cts, &delayed};
            sys.control(ctx, state, s.control);
        }
        if (sys.gains) {
            const auto g = sys.gains(state);
            s.alpha3 = g[0];
            s.alpha4 = g[1];
        }
        traj.samples.push_back(std::move(s));
    };

    double t = 0.0;
    // first boundary strictly ahead of the running time
    std::size_t next_boundary = 1;
    record(0.0, y);

    long step_count = 0;
    while (t < config.t_end) {
        while (next_boundary < boundaries.size() && boundaries[next_boundary] <= t) {
            ++next_boundary;
        }
        const double stop = std::min(config.t_end,
                                     next_boundary < boundaries.size()
                                         ? boundaries[next_boundary]
                                         : config.t_end);
        double h = std::min(config.step, stop - t);
        const bool hits_stop = (t + h >= stop - 1e-12 * std::max(1.0, stop));
        if (hits_stop) h = stop - t;

        // the open interval (t, t+h) lies inside one segment; segment parity
        // decides the control regime for the whole step
        const bool in_cts = (next_boundary - 1) % 2 == 0;

        const auto eval = [&](double ts, std::span<const double> ys, std::span<double> dy) {
            StepContext ctx{ts, in_cts, &delayed};
            sys.rhs(ctx, ys, dy);
        };

        eval(t, y, k1);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + 0.5 * h * k1[i];
        eval(t + 0.5 * h, stage, k2);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + 0.5 * h * k2[i];
        eval(t + 0.5 * h, stage, k3);
        for (std::size_t i = 0; i < n; ++i) stage[i] = y[i] + h * k3[i];
        eval(t + h, stage, k4);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        t = hits_stop ? stop : t + h;
        ++step_count;

        if (!all_finite(y)) throw NonFinite("integrate: state diverged");

        history.push(t, y);
        report(y, e);
        report_sup.push(t, inf_norm(e));
        history.prune(t);

        const bool at_boundary = hits_stop && stop != config.t_end;
        const bool at_end = (t >= config.t_end);
        if (at_boundary || at_end || step_count % config.record_stride == 0) {
            record(t, y);
        }
    }

    return traj;
}

}  // namespace fintstab
