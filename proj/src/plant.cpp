#include "fintstab/plant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace fintstab {

DelayFunction::DelayFunction(Kind kind, double value, std::optional<Expr> expr)
    : kind_(kind), value_(value), expr_(std::move(expr)) {}

DelayFunction DelayFunction::constant(double value) {
    if (!(value >= 0.0)) throw ConfigError("delay: constant delay must be >= 0");
    return DelayFunction(Kind::Constant, value, std::nullopt);
}

DelayFunction DelayFunction::sample() {
    return DelayFunction(Kind::Sample, 0.0, std::nullopt);
}

DelayFunction DelayFunction::expression(const std::string& text) {
    return DelayFunction(Kind::Expression, 0.0, Expr::parse(text));
}

double DelayFunction::operator()(double t, int i, int j) const {
    switch (kind_) {
        case Kind::Constant:
            return value_;
        case Kind::Sample:
            return 0.4 + 0.1 * std::sin((i + 2.0 * j) * t);
        case Kind::Expression:
            return expr_->eval({{"t", t}, {"i", double(i)}, {"j", double(j)}});
    }
    return value_;
}

const std::string& DelayFunction::expression_text() const {
    static const std::string empty;
    return expr_ ? expr_->text() : empty;
}

void GenericDelayPlant::validate() const {
    if (dimension < 1) throw ConfigError("plant: dimension must be >= 1");
    if (init.size() != static_cast<std::size_t>(dimension)) {
        throw ConfigError("plant: initial state size mismatch");
    }
    if (!(tau_bound >= 0.0)) throw ConfigError("plant: tau_bound must be >= 0");
    for (const auto& term : delayed_terms) {
        if (!(term.gain >= 0.0)) throw ConfigError("plant: delayed gains must be >= 0");
    }
}

double GenericDelayPlant::aggregate_alpha2() const {
    double s = 0.0;
    for (const auto& term : delayed_terms) s += term.gain;
    return s;
}

double apply_activation(Activation a, double x) {
    switch (a) {
        case Activation::Saturation:
            return 0.5 * (std::fabs(x + 1.0) - std::fabs(x - 1.0));
        case Activation::Tanh:
            return std::tanh(x);
        case Activation::Identity:
            return x;
    }
    return x;
}

void NeuralNet::validate() const {
    const auto nn = static_cast<std::size_t>(n);
    if (n < 1) throw ConfigError("nn: dimension must be >= 1");
    if (d.size() != nn || I.size() != nn || A.size() != nn * nn || B.size() != nn * nn) {
        throw ConfigError("nn: field sizes inconsistent with n");
    }
    for (double di : d) {
        if (!(di > 0.0)) throw ConfigError("nn: self-decay d_i must be positive");
    }
    if (!(Lf > 0.0 && Lg > 0.0)) throw ConfigError("nn: Lipschitz constants must be positive");
    if (!(tau_bound >= 0.0)) throw ConfigError("nn: tau_bound must be >= 0");
}

std::pair<double, double> derive_alpha12(const NeuralNet& net) {
    net.validate();
    double alpha1 = -std::numeric_limits<double>::infinity();
    double max_brow = 0.0;
    for (int i = 0; i < net.n; ++i) {
        double arow = 0.0, brow = 0.0;
        for (int j = 0; j < net.n; ++j) {
            arow += std::fabs(net.a(i, j));
            brow += std::fabs(net.b(i, j));
        }
        alpha1 = std::max(alpha1, -net.d[i] + net.Lf * arow);
        max_brow = std::max(max_brow, brow);
    }
    return {alpha1, net.Lg * max_brow};
}

NeuralNet sample_nn() {
    NeuralNet net;
    net.n = 3;
    net.d = {1.0, 1.0, 1.0};
    net.A = {1.25, -3.2, -3.2,
             -3.2, 1.1, -4.4,
             -3.2, 4.4, 1.0};
    net.B = std::vector<double>(9, 0.02);
    net.I = {0.0, 0.0, 0.0};
    net.activation = Activation::Saturation;
    net.Lf = 1.0;
    net.Lg = 1.0;
    net.delay = DelayFunction::sample();
    net.tau_bound = 0.5;
    return net;
}

namespace {

double checked_delay(const DelayFunction& delay, double t, int i, int j, double tau_bound) {
    const double tau = delay(t, i, j);
    if (!(tau >= 0.0) || tau > tau_bound + 1e-12) {
        throw DelayBoundViolated("sampled delay outside [0, tau_bound]");
    }
    return tau;
}

/// per-system scratch so the right-hand side does not allocate per stage;
/// a system instance is owned by a single run
struct NnScratch {
    std::vector<double> past;  // (i*n + j) blocks of the full state
    std::vector<double> e;
    std::vector<double> u;
};

struct ControlEval {
    ControlSelection sel;

    bool adaptive() const { return sel.kind == ControlSelection::Kind::Adaptive; }
    std::size_t extra_dims() const { return adaptive() ? 2 : 0; }

    /// control force for error vector e given current gains
    void force(bool in_cts, std::span<const double> e, double a3, double a4,
               std::span<double> u) const {
        if (!in_cts || sel.kind == ControlSelection::Kind::None) {
            for (auto& x : u) x = 0.0;
            return;
        }
        quantized_force(*sel.table, a3, a4, e, u);
    }

    double q_inf_norm(std::span<const double> e) const {
        double m = 0.0;
        for (double x : e) m = std::max(m, std::fabs(sel.table->quantize(x)));
        return m;
    }
};

}  // namespace

DdeSystem make_generic_system(const GenericDelayPlant& plant, const ControlSelection& control) {
    plant.validate();
    if (control.kind != ControlSelection::Kind::None && control.table == nullptr) {
        throw ConfigError("make_generic_system: control requires a quantizer table");
    }
    const std::size_t n = static_cast<std::size_t>(plant.dimension);
    ControlEval ctl{control};

    DdeSystem sys;
    sys.state_dim = n + ctl.extra_dims();
    sys.report_dim = n;
    sys.initial_state = plant.init;
    if (ctl.adaptive()) {
        sys.initial_state.push_back(control.adaptive.alpha3_0);
        sys.initial_state.push_back(control.adaptive.alpha4_0);
    }
    sys.tau_bound = plant.tau_bound;

    sys.report = [n](std::span<const double> y, std::span<double> e) {
        std::copy(y.begin(), y.begin() + static_cast<long>(n), e.begin());
    };

    auto gains_of = [ctl, n](std::span<const double> y) -> std::array<double, 2> {
        if (ctl.adaptive()) return {y[n], y[n + 1]};
        if (ctl.sel.kind == ControlSelection::Kind::Constant) {
            return {ctl.sel.gains.alpha3, ctl.sel.gains.alpha4};
        }
        return {0.0, 0.0};
    };
    sys.gains = gains_of;

    auto scratch = std::make_shared<NnScratch>();
    scratch->past.resize(sys.state_dim);
    scratch->u.resize(n);
    sys.rhs = [plant, ctl, n, gains_of, scratch](const StepContext& ctx, std::span<const double> y,
                                                 std::span<double> dy) {
        auto& past = scratch->past;
        auto& u = scratch->u;
        const auto g = gains_of(y);
        ctl.force(ctx.in_cts, y.first(n), g[0], g[1], u);

        for (std::size_t i = 0; i < n; ++i) dy[i] = plant.alpha1 * y[i] + u[i];
        int term_index = 1;
        for (const auto& term : plant.delayed_terms) {
            for (std::size_t i = 0; i < n; ++i) {
                const double tau = checked_delay(term.delay, ctx.t, static_cast<int>(i) + 1,
                                                 term_index, plant.tau_bound);
                ctx.delayed->state_at(ctx.t - tau, past);
                dy[i] += term.gain * past[i];
            }
            ++term_index;
        }

        if (ctl.adaptive()) {
            if (ctx.in_cts) {
                double cur = 0.0;
                for (std::size_t i = 0; i < n; ++i) cur = std::max(cur, std::fabs(y[i]));
                const double sup = std::max(ctx.delayed->window_sup(ctx.t), cur);
                const GainRates r = gain_rates(ctl.sel.adaptive, ctx.t, sup, ctl.q_inf_norm(y.first(n)));
                dy[n] = r.alpha3_rate;
                dy[n + 1] = r.alpha4_rate;
            } else {
                dy[n] = 0.0;
                dy[n + 1] = 0.0;
            }
        }
    };

    sys.control = [ctl, n, gains_of](const StepContext& ctx, std::span<const double> y,
                                     std::span<double> u) {
        const auto g = gains_of(y);
        ctl.force(ctx.in_cts, y.first(n), g[0], g[1], u);
    };

    return sys;
}

namespace {

/// shared master/slave evaluation: node block at `offset` inside the full
/// state, delayed values read from the cached lookups
void nn_block_rhs(const NeuralNet& net, std::span<const double> y, std::size_t offset,
                  const std::vector<double>& past, std::size_t stride, std::span<double> dy) {
    const std::size_t n = static_cast<std::size_t>(net.n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = -net.d[i] * y[offset + i] + net.I[i];
        for (std::size_t j = 0; j < n; ++j) {
            v += net.a(static_cast<int>(i), static_cast<int>(j)) * net.f(y[offset + j]);
            v += net.b(static_cast<int>(i), static_cast<int>(j)) *
                 net.g(past[(i * n + j) * stride + offset + j]);
        }
        dy[offset + i] = v;
    }
}

}  // namespace

DdeSystem make_master_slave_system(const MasterSlavePair& pair, const ControlSelection& control) {
    pair.net.validate();
    const std::size_t n = static_cast<std::size_t>(pair.net.n);
    if (pair.x0.size() != n || pair.y0.size() != n) {
        throw ConfigError("make_master_slave_system: initial state size mismatch");
    }
    if (control.kind != ControlSelection::Kind::None && control.table == nullptr) {
        throw ConfigError("make_master_slave_system: control requires a quantizer table");
    }
    ControlEval ctl{control};

    DdeSystem sys;
    sys.state_dim = 2 * n + ctl.extra_dims();
    sys.report_dim = n;
    sys.initial_state = pair.x0;
    sys.initial_state.insert(sys.initial_state.end(), pair.y0.begin(), pair.y0.end());
    if (ctl.adaptive()) {
        sys.initial_state.push_back(control.adaptive.alpha3_0);
        sys.initial_state.push_back(control.adaptive.alpha4_0);
    }
    sys.tau_bound = pair.net.tau_bound;

    sys.report = [n](std::span<const double> y, std::span<double> e) {
        for (std::size_t i = 0; i < n; ++i) e[i] = y[n + i] - y[i];
    };

    auto gains_of = [ctl, n](std::span<const double> y) -> std::array<double, 2> {
        if (ctl.adaptive()) return {y[2 * n], y[2 * n + 1]};
        if (ctl.sel.kind == ControlSelection::Kind::Constant) {
            return {ctl.sel.gains.alpha3, ctl.sel.gains.alpha4};
        }
        return {0.0, 0.0};
    };
    sys.gains = gains_of;

    const NeuralNet net = pair.net;
    const std::size_t dim = sys.state_dim;
    auto scratch = std::make_shared<NnScratch>();
    scratch->past.resize(n * n * dim);
    scratch->e.resize(n);
    scratch->u.resize(n);

    sys.rhs = [net, ctl, n, dim, gains_of, scratch](const StepContext& ctx,
                                                    std::span<const double> y,
                                                    std::span<double> dy) {
        // one delayed-state lookup per (i, j); master and slave read the same
        // past vector
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double tau = checked_delay(net.delay, ctx.t, static_cast<int>(i) + 1,
                                                 static_cast<int>(j) + 1, net.tau_bound);
                ctx.delayed->state_at(ctx.t - tau,
                                      std::span<double>(scratch->past).subspan((i * n + j) * dim, dim));
            }
        }
        nn_block_rhs(net, y, 0, scratch->past, dim, dy);
        nn_block_rhs(net, y, n, scratch->past, dim, dy);

        auto& e = scratch->e;
        auto& u = scratch->u;
        for (std::size_t i = 0; i < n; ++i) e[i] = y[n + i] - y[i];
        const auto g = gains_of(y);
        ctl.force(ctx.in_cts, e, g[0], g[1], u);
        for (std::size_t i = 0; i < n; ++i) dy[n + i] += u[i];

        if (ctl.adaptive()) {
            if (ctx.in_cts) {
                const double sup = std::max(ctx.delayed->window_sup(ctx.t), inf_norm(e));
                const GainRates r = gain_rates(ctl.sel.adaptive, ctx.t, sup, ctl.q_inf_norm(e));
                dy[2 * n] = r.alpha3_rate;
                dy[2 * n + 1] = r.alpha4_rate;
            } else {
                dy[2 * n] = 0.0;
                dy[2 * n + 1] = 0.0;
            }
        }
    };

    sys.control = [ctl, n, gains_of](const StepContext& ctx, std::span<const double> y,
                                     std::span<double> u) {
        std::vector<double> e(n);
        for (std::size_t i = 0; i < n; ++i) e[i] = y[n + i] - y[i];
        const auto g = gains_of(y);
        ctl.force(ctx.in_cts, e, g[0], g[1], u);
    };

    return sys;
}

DdeSystem make_master_only_system(const NeuralNet& net, std::vector<double> x0) {
    net.validate();
    const std::size_t n = static_cast<std::size_t>(net.n);
    if (x0.size() != n) throw ConfigError("make_master_only_system: initial state size mismatch");

    DdeSystem sys;
    sys.state_dim = n;
    sys.report_dim = n;
    sys.initial_state = std::move(x0);
    sys.tau_bound = net.tau_bound;

    auto scratch = std::make_shared<NnScratch>();
    scratch->past.resize(n * n * n);
    sys.rhs = [net, n, scratch](const StepContext& ctx, std::span<const double> y,
                                std::span<double> dy) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double tau = checked_delay(net.delay, ctx.t, static_cast<int>(i) + 1,
                                                 static_cast<int>(j) + 1, net.tau_bound);
                ctx.delayed->state_at(ctx.t - tau,
                                      std::span<double>(scratch->past).subspan((i * n + j) * n, n));
            }
        }
        nn_block_rhs(net, y, 0, scratch->past, n, dy);
    };

    return sys;
}

}  // namespace fintstab
