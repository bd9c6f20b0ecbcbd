#pragma once

#include <span>
#include <vector>

#include "bpso/history.hpp"
#include "bpso/swarm.hpp"

namespace bpso {

enum class Prior {
    /// Flat prior: contributes nothing to the gradient.
    uniform,
    /// Standard normal centred at the origin: contributes -x.
    gaussian_unit,
};

enum class Assumption {
    /// Per iteration, a fitness-weighted mixture of component Gaussians.
    dependence,
    /// Per iteration, a fitness-weighted geometric mean of the components.
    independence,
};

struct GaussianParams {
    double gamma = 0.8;
    double beta = 0.1;
    Prior prior = Prior::uniform;
    Assumption assumption = Assumption::independence;
    std::size_t window = 100;
    double tau = 0.5;
    FitnessWeightSpec weights{};

    /// gamma 0.8; beta 0.4 under dependence, 0.1 under independence.
    static GaussianParams defaults(Assumption assumption);

    void validate() const;
};

/// log of the unit-mass Gaussian with covariance I / beta centred at `center`.
double gaussian_component_log_density(const Vector& x, const Vector& center, double beta);

/// log P_t(x) up to an additive constant. Throws UsageError for an empty
/// history.
double log_posterior(const Vector& x, const PosteriorHistory& history, const GaussianParams& params);

/// Analytic gradient of log_posterior.
Vector log_posterior_grad(const Vector& x, const PosteriorHistory& history, const GaussianParams& params);

/// x + gamma * grad log P(x).
Vector gaussian_move(const Vector& x, const PosteriorHistory& history, const GaussianParams& params);

/// Gradient-ascent step for every particle on the windowed posterior, then
/// clamp, evaluate, update bests and append the new group to `history`.
SwarmState step_gaussian(SwarmState state, const Objective& objective, PosteriorHistory& history,
                         const GaussianParams& params, RngStream& rng);

/// Update from the current iteration's evaluations only.
Vector current_only_move(std::size_t particle, const SwarmState& state, const GaussianParams& params);

SwarmState step_current_only(SwarmState state, const Objective& objective, const GaussianParams& params,
                             RngStream& rng);

/// Pull toward every past global best with weight tau^(t-j), evaluated
/// directly from the trace x^g(1..t).
Vector discounted_gbest_move(const Vector& x, std::span<const Vector> gbest_trace, const GaussianParams& params);

/// Running form of the discounted global-best sums:
/// weight_sum = sum_j tau^(t-j), weighted_sum = sum_j tau^(t-j) x^g(j).
class DiscountedGbestTrace {
public:
    explicit DiscountedGbestTrace(double tau) : tau_(tau) {}

    void push(const Vector& gbest);
    std::size_t length() const { return length_; }
    double weight_sum() const { return weight_sum_; }
    const Vector& weighted_sum() const { return weighted_sum_; }

    Vector move(const Vector& x, const GaussianParams& params) const;

private:
    double tau_;
    std::size_t length_ = 0;
    double weight_sum_ = 0.0;
    Vector weighted_sum_;
};

/// Moves every particle with the discounted global-best pull, then appends the
/// resulting global best to `trace`.
SwarmState step_discounted_gbest(SwarmState state, const Objective& objective, DiscountedGbestTrace& trace,
                                 const GaussianParams& params, RngStream& rng);

/// Decomposition of a best-vector update into the pull of the current global
/// and personal best and the accumulated, discounted older best records:
/// x' = x + gamma * (prior + beta_g (x^g - x) + beta_b (x^b - x) + tau * momentum).
struct BayesStandardTerms {
    double beta_g = 0.0;
    double beta_b = 0.0;
    Vector momentum;
    Vector prior_gradient;
};

/// Only records flagged as new personal bests of `particle` or as new global
/// bests contribute. Records that still are the current global best or the
/// particle's current personal best keep the full beta; every other record of
/// iteration j is flattened to beta * tau^(t - j).
BayesStandardTerms bayes_standard_terms(std::size_t particle, const SwarmState& state,
                                        const PosteriorHistory& history, const GaussianParams& params);

Vector bayes_standard_move(std::size_t particle, const SwarmState& state, const PosteriorHistory& history,
                           const GaussianParams& params);

SwarmState step_bayes_standard(SwarmState state, const Objective& objective, PosteriorHistory& history,
                               const GaussianParams& params, RngStream& rng);

}  // namespace bpso
