#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fintstab/controller.hpp"
#include "fintstab/expr.hpp"
#include "fintstab/integrate.hpp"
#include "fintstab/quantizer.hpp"

namespace fintstab {

/// Time-varying delay as a function of time and (1-based) indices. The
/// sample kind is the sinusoidal family 0.4 + 0.1*sin((i + 2j)*t); custom
/// expressions may use the variables t, i, j.
class DelayFunction {
public:
    enum class Kind { Constant, Sample, Expression };

    static DelayFunction constant(double value);
    static DelayFunction sample();
    static DelayFunction expression(const std::string& text);

    double operator()(double t, int i, int j) const;

    Kind kind() const { return kind_; }
    double constant_value() const { return value_; }
    const std::string& expression_text() const;

private:
    DelayFunction(Kind kind, double value, std::optional<Expr> expr);

    Kind kind_;
    double value_;
    std::optional<Expr> expr_;
};

/// One delayed coupling term of the generic plant: gain alpha2_j applied to
/// e_i(t - tau_i^j(t)).
struct DelayTerm {
    double gain = 0.0;
    DelayFunction delay = DelayFunction::constant(0.0);
};

/// The scalar-per-component comparison plant
/// e_i' = alpha1*e_i + sum_j alpha2_j*e_i(t - tau_i^j(t)) + u_i.
struct GenericDelayPlant {
    int dimension = 1;
    double alpha1 = 0.0;
    std::vector<DelayTerm> delayed_terms;
    double tau_bound = 0.0;
    std::vector<double> init;

    void validate() const;
    /// aggregate delayed gain reported to the certificate
    double aggregate_alpha2() const;
};

enum class Activation { Saturation, Tanh, Identity };

double apply_activation(Activation a, double x);

/// Delayed Hopfield-type network
/// x_i' = -d_i*x_i + sum_j a_ij*f(x_j) + sum_j b_ij*g(x_j(t - tau_ij(t))) + I_i.
struct NeuralNet {
    int n = 0;
    std::vector<double> d;
    std::vector<double> A;  // row-major n*n
    std::vector<double> B;  // row-major n*n
    std::vector<double> I;
    Activation activation = Activation::Saturation;
    double Lf = 1.0;
    double Lg = 1.0;
    DelayFunction delay = DelayFunction::constant(0.0);
    double tau_bound = 0.0;

    void validate() const;
    double f(double x) const { return apply_activation(activation, x); }
    double g(double x) const { return apply_activation(activation, x); }
    double a(int i, int j) const { return A[static_cast<std::size_t>(i) * n + j]; }
    double b(int i, int j) const { return B[static_cast<std::size_t>(i) * n + j]; }
};

/// Comparison-system bounds of the network error dynamics:
/// alpha1 = max_i(-d_i + Lf*sum_j|a_ij|), alpha2 = Lg*max_i sum_j|b_ij|.
std::pair<double, double> derive_alpha12(const NeuralNet& net);

/// The worked three-neuron chaotic network with delay 0.4 + 0.1*sin((i+2j)t).
NeuralNet sample_nn();

/// Coupled master/slave pair; the slave carries the control input and the
/// reported vector is the synchronization error y - x.
struct MasterSlavePair {
    NeuralNet net;
    std::vector<double> x0;
    std::vector<double> y0;
};

/// Which control law closes the loop in an assembled system.
struct ControlSelection {
    enum class Kind { None, Constant, Adaptive } kind = Kind::None;
    ControlGains gains;        // Constant
    AdaptiveParams adaptive;   // Adaptive
    const LevelTable* table = nullptr;  // required unless None
};

DdeSystem make_generic_system(const GenericDelayPlant& plant, const ControlSelection& control);
DdeSystem make_master_slave_system(const MasterSlavePair& pair, const ControlSelection& control);
DdeSystem make_master_only_system(const NeuralNet& net, std::vector<double> x0);

}  // namespace fintstab
