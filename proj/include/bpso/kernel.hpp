#pragma once

#include <optional>
#include <string_view>

#include "bpso/gaussian.hpp"
#include "bpso/history.hpp"
#include "bpso/swarm.hpp"

namespace bpso {

enum class KernelId {
    /// sqrt(||x - y||^2 + mu), multiquadric.
    sqrt_shift,
    /// (mu / r) sin(r / mu), r = ||x - y||; 1 at r = 0.
    sinc,
    /// prod_k (1 - cos(d_k) / 2) / (5/4 - cos(d_k)), d = x - y.
    poisson,
    /// -cos(sin(s)) e^{cos(s)} / 2 with s = ||x - y||^2, whose gradient is
    /// sin(s + sin(s)) e^{cos(s)} (x - y).
    trig,
    /// <x, y>; reduces every kernel formula to its Gaussian counterpart.
    linear,
};

std::string_view to_string(KernelId id);
KernelId parse_kernel_id(std::string_view name);

struct Kernel {
    KernelId id = KernelId::trig;
    double mu = 1.0;

    bool shift_invariant() const { return id != KernelId::linear; }
    /// K(x, x) for shift-invariant kernels in dimension `dim`.
    double self_value(std::size_t dim) const;
    void validate() const;
};

double kernel_eval(const Kernel& kernel, const Vector& x, const Vector& y);

/// d/dx K(x, y). Zero at x == y for every shift-invariant kernel.
Vector kernel_grad(const Kernel& kernel, const Vector& x, const Vector& y);

/// d/dx K(x, x).
Vector kernel_self_grad(const Kernel& kernel, const Vector& x);

/// -beta/2 (K(x,x) + K(c,c) - 2 K(x,c)): squared feature-space distance as a
/// Gaussian log density with its constant dropped.
double kernel_component_log_density(const Kernel& kernel, double beta, const Vector& x, const Vector& center);

struct KernelParams {
    Kernel kernel{};
    double gamma = 0.8;
    double beta = 0.4;
    double tau = 0.5;
    Prior prior = Prior::uniform;
    Assumption assumption = Assumption::dependence;
    std::size_t window = 100;
    FitnessWeightSpec weights{};

    /// Attraction coefficients of the kernel-standard update.
    double beta_g = 2.0;
    double beta_b = 2.0;
    /// Test hook: replaces the uniform factor r of the kernel-standard update.
    std::optional<double> forced_draw;

    void validate() const;
};

/// The kernelized log posterior (constants dropped), same window semantics as
/// log_posterior.
double kernel_log_posterior(const Vector& x, const PosteriorHistory& history, const KernelParams& params);

Vector kernel_log_posterior_grad(const Vector& x, const PosteriorHistory& history, const KernelParams& params);

Vector kernel_move(const Vector& x, const PosteriorHistory& history, const KernelParams& params);

SwarmState step_kernel(SwarmState state, const Objective& objective, PosteriorHistory& history,
                       const KernelParams& params, RngStream& rng);

/// x + r (beta_g dK(x, x^g)/dx + beta_b dK(x, x^b)/dx), one uniform r per
/// particle, no momentum term.
Vector kernel_standard_move(const Vector& x, const Vector& gbest, const Vector& pbest, double r,
                            const KernelParams& params);

SwarmState step_kernel_standard(SwarmState state, const Objective& objective, const KernelParams& params,
                                RngStream& rng);

}  // namespace bpso
