#include "bpso/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace bpso {

GaussianParams GaussianParams::defaults(Assumption assumption)
{
    GaussianParams p;
    p.assumption = assumption;
    p.beta = assumption == Assumption::dependence ? 0.4 : 0.1;
    return p;
}

void GaussianParams::validate() const
{
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw ConfigError("gamma must lie in (0, 1]");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ConfigError("beta must be positive");
    if (!(tau > 0.0 && tau < 1.0))
        throw ConfigError("tau must lie in (0, 1)");
    if (window == 0)
        throw ConfigError("window must be at least 1");
    if (!(weights.epsilon > 0.0))
        throw ConfigError("fitness weight epsilon must be positive");
}

namespace {

Vector prior_gradient(const Vector& x, Prior prior)
{
    return prior == Prior::gaussian_unit ? Vector(-x) : Vector(Vector::Zero(x.size()));
}

double prior_log_density(const Vector& x, Prior prior)
{
    return prior == Prior::gaussian_unit ? -0.5 * x.squaredNorm() : 0.0;
}

void require_history(const PosteriorHistory& history, const Vector& x)
{
    if (history.empty())
        throw UsageError("posterior history is empty");
    if (history.groups().front().weighted_mean.size() != x.size())
        throw UsageError("query point and history differ in dimension");
}

/// Softmax over log w_i - beta/2 ||x - x_i||^2 within one group, max-shifted.
/// Returns log sum exp and fills `probs` with the normalized weights.
double group_mixture(const Vector& x, const IterationGroup& group, double beta, std::vector<double>& probs)
{
    const std::size_t n = group.records.size();
    probs.resize(n);
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const EvalRecord& r = group.records[i];
        probs[i] = std::log(r.weight) - 0.5 * beta * (x - r.position).squaredNorm();
        peak = std::max(peak, probs[i]);
    }
    double sum = 0.0;
    for (double& a : probs) {
        a = std::exp(a - peak);
        sum += a;
    }
    for (double& a : probs)
        a /= sum;
    return peak + std::log(sum);
}

}  // namespace

double gaussian_component_log_density(const Vector& x, const Vector& center, double beta)
{
    const double m = static_cast<double>(x.size());
    return 0.5 * m * std::log(beta / (2.0 * std::numbers::pi)) - 0.5 * beta * (x - center).squaredNorm();
}

double log_posterior(const Vector& x, const PosteriorHistory& history, const GaussianParams& params)
{
    require_history(history, x);
    double value = prior_log_density(x, params.prior);
    std::vector<double> probs;
    for (const IterationGroup& group : history.groups()) {
        if (params.assumption == Assumption::dependence) {
            value += group_mixture(x, group, params.beta, probs) - std::log(group.total_weight);
        } else {
            double acc = 0.0;
            for (const EvalRecord& r : group.records)
                acc += r.weight * (x - r.position).squaredNorm();
            value += -0.5 * params.beta * acc / group.total_weight;
        }
    }
    return value;
}

Vector log_posterior_grad(const Vector& x, const PosteriorHistory& history, const GaussianParams& params)
{
    require_history(history, x);
    Vector grad = prior_gradient(x, params.prior);
    if (params.assumption == Assumption::independence) {
        // sum_j sum_i w_ij (x_ij - x) / W_j collapses onto the per-group means.
        grad += params.beta * (history.sum_of_means() - static_cast<double>(history.size()) * x);
        return grad;
    }
    std::vector<double> probs;
    Vector pull = Vector::Zero(x.size());
    for (const IterationGroup& group : history.groups()) {
        group_mixture(x, group, params.beta, probs);
        for (std::size_t i = 0; i < group.records.size(); ++i)
            pull += probs[i] * (group.records[i].position - x);
    }
    grad += params.beta * pull;
    return grad;
}

Vector gaussian_move(const Vector& x, const PosteriorHistory& history, const GaussianParams& params)
{
    return x + params.gamma * log_posterior_grad(x, history, params);
}

SwarmState step_gaussian(SwarmState state, const Objective& objective, PosteriorHistory& history,
                         const GaussianParams& params, RngStream& rng)
{
    params.validate();
    std::vector<Vector> next;
    next.reserve(state.size());
    for (const Particle& p : state.particles)
        next.push_back(gaussian_move(p.position, history, params));
    for (std::size_t i = 0; i < state.size(); ++i) {
        Particle& p = state.particles[i];
        p.velocity = next[i] - p.position;
        p.position = std::move(next[i]);
    }
    const BestChanges changes = finish_move(state, objective, rng);
    history.record(state, changes, params.weights);
    return state;
}

namespace {

Vector current_only_move_weighted(std::size_t r, const SwarmState& state, const std::vector<double>& log_weights,
                                  const GaussianParams& params)
{
    const Vector& x = state.particles[r].position;
    const std::size_t n = state.size();
    std::vector<double> a(n);
    if (params.assumption == Assumption::dependence) {
        for (std::size_t i = 0; i < n; ++i)
            a[i] = log_weights[i] - 0.5 * params.beta * (x - state.particles[i].position).squaredNorm();
    } else {
        a = log_weights;
    }
    const double peak = *std::max_element(a.begin(), a.end());
    double sum = 0.0;
    for (double& v : a) {
        v = std::exp(v - peak);
        sum += v;
    }
    Vector pull = Vector::Zero(x.size());
    for (std::size_t i = 0; i < n; ++i)
        pull += (a[i] / sum) * (state.particles[i].position - x);
    return x + params.gamma * (prior_gradient(x, params.prior) + params.beta * pull);
}

std::vector<double> current_log_weights(const SwarmState& state, const FitnessWeightSpec& spec)
{
    std::vector<double> out;
    out.reserve(state.size());
    for (const Particle& p : state.particles)
        out.push_back(std::log(fitness_weight(p.raw, spec)));
    return out;
}

}  // namespace

Vector current_only_move(std::size_t particle, const SwarmState& state, const GaussianParams& params)
{
    if (particle >= state.size())
        throw UsageError("particle index out of range");
    return current_only_move_weighted(particle, state, current_log_weights(state, params.weights), params);
}

SwarmState step_current_only(SwarmState state, const Objective& objective, const GaussianParams& params,
                             RngStream& rng)
{
    params.validate();
    const auto log_weights = current_log_weights(state, params.weights);
    std::vector<Vector> next;
    next.reserve(state.size());
    for (std::size_t i = 0; i < state.size(); ++i)
        next.push_back(current_only_move_weighted(i, state, log_weights, params));
    for (std::size_t i = 0; i < state.size(); ++i) {
        Particle& p = state.particles[i];
        p.velocity = next[i] - p.position;
        p.position = std::move(next[i]);
    }
    finish_move(state, objective, rng);
    return state;
}

Vector discounted_gbest_move(const Vector& x, std::span<const Vector> gbest_trace, const GaussianParams& params)
{
    const std::size_t t = gbest_trace.size();
    Vector pull = Vector::Zero(x.size());
    for (std::size_t idx = 0; idx < t; ++idx) {
        const double coefficient = std::pow(params.tau, static_cast<double>(t - 1 - idx));
        pull += coefficient * (gbest_trace[idx] - x);
    }
    return x + params.gamma * (prior_gradient(x, params.prior) + params.beta * pull);
}

void DiscountedGbestTrace::push(const Vector& gbest)
{
    if (length_ == 0) {
        weighted_sum_ = gbest;
        weight_sum_ = 1.0;
    } else {
        weighted_sum_ = tau_ * weighted_sum_ + gbest;
        weight_sum_ = tau_ * weight_sum_ + 1.0;
    }
    ++length_;
}

Vector DiscountedGbestTrace::move(const Vector& x, const GaussianParams& params) const
{
    Vector step = prior_gradient(x, params.prior);
    if (length_ > 0)
        step += params.beta * (weighted_sum_ - weight_sum_ * x);
    return x + params.gamma * step;
}

SwarmState step_discounted_gbest(SwarmState state, const Objective& objective, DiscountedGbestTrace& trace,
                                 const GaussianParams& params, RngStream& rng)
{
    params.validate();
    for (Particle& p : state.particles) {
        Vector next = trace.move(p.position, params);
        p.velocity = next - p.position;
        p.position = std::move(next);
    }
    finish_move(state, objective, rng);
    trace.push(state.global_best_position);
    return state;
}

namespace {

enum class Role { older, global_best, personal_best };

struct BestTerm {
    const Vector* position;
    double weight;
    /// Power of tau applied to beta.
    double discount_power;
    Role role;
};

}  // namespace

BayesStandardTerms bayes_standard_terms(std::size_t r, const SwarmState& state, const PosteriorHistory& history,
                                        const GaussianParams& params)
{
    if (r >= state.size())
        throw UsageError("particle index out of range");
    const Particle& particle = state.particles[r];
    const Vector& x = particle.position;
    const std::size_t t = state.iteration;

    auto role_of = [&](const EvalRecord& rec) {
        if (rec.particle == state.global_best_particle && rec.iteration == state.global_best_iteration)
            return Role::global_best;
        if (rec.particle == r && rec.iteration == particle.best_iteration)
            return Role::personal_best;
        return Role::older;
    };

    // Terms grouped by iteration so the independence form can normalize per group.
    std::map<std::size_t, std::vector<BestTerm>> groups;
    bool have_global = false;
    bool have_personal = false;
    auto add = [&](std::size_t iteration, const Vector& position, double weight, Role role) {
        const double power = role == Role::older ? static_cast<double>(t) - static_cast<double>(iteration) : 0.0;
        groups[iteration].push_back({&position, weight, power, role});
        have_global |= role == Role::global_best;
        have_personal |= role == Role::personal_best;
    };

    for (const IterationGroup& group : history.groups()) {
        long own = -1;
        if (r < group.records.size() && group.records[r].particle == r) {
            own = static_cast<long>(r);
        } else {
            for (std::size_t i = 0; i < group.records.size(); ++i)
                if (group.records[i].particle == r) {
                    own = static_cast<long>(i);
                    break;
                }
        }
        if (own >= 0) {
            const EvalRecord& rec = group.records[static_cast<std::size_t>(own)];
            if (rec.new_personal_best || rec.new_global_best)
                add(group.iteration, rec.position, rec.weight, role_of(rec));
        }
        if (group.global_best_record >= 0 && group.global_best_record != own) {
            const EvalRecord& rec = group.records[static_cast<std::size_t>(group.global_best_record)];
            add(group.iteration, rec.position, rec.weight, role_of(rec));
        }
    }
    // Current bests stay in play even after their iteration left the window.
    if (!have_global)
        add(state.global_best_iteration, state.global_best_position,
            fitness_weight(state.global_best_raw, params.weights), Role::global_best);
    const bool pbest_is_gbest =
        r == state.global_best_particle && particle.best_iteration == state.global_best_iteration;
    if (!have_personal && !pbest_is_gbest)
        add(particle.best_iteration, particle.best_position, fitness_weight(particle.best_raw, params.weights),
            Role::personal_best);

    BayesStandardTerms out;
    out.momentum = Vector::Zero(x.size());
    out.prior_gradient = prior_gradient(x, params.prior);

    // Coefficient of (x_k - x) in the full gradient, expressed as
    // tau^power * partial so that older terms can be reported as momentum
    // at tau^(power - 1) without dividing by tau.
    auto accumulate = [&](const BestTerm& term, double partial) {
        switch (term.role) {
        case Role::global_best: out.beta_g += partial; break;
        case Role::personal_best: out.beta_b += partial; break;
        case Role::older:
            out.momentum += partial * std::pow(params.tau, term.discount_power - 1.0) * (*term.position - x);
            break;
        }
    };

    if (params.assumption == Assumption::independence) {
        for (const auto& [iteration, terms] : groups) {
            double total = 0.0;
            for (const BestTerm& term : terms)
                total += term.weight;
            for (const BestTerm& term : terms)
                accumulate(term, params.beta * term.weight / total);
        }
    } else {
        std::vector<std::pair<const BestTerm*, double>> logits;
        double peak = -std::numeric_limits<double>::infinity();
        for (const auto& [iteration, terms] : groups)
            for (const BestTerm& term : terms) {
                const double beta_k = params.beta * std::pow(params.tau, term.discount_power);
                const double a = std::log(term.weight) - 0.5 * beta_k * (x - *term.position).squaredNorm();
                logits.emplace_back(&term, a);
                peak = std::max(peak, a);
            }
        double sum = 0.0;
        for (auto& [term, a] : logits) {
            a = std::exp(a - peak);
            sum += a;
        }
        for (const auto& [term, a] : logits)
            accumulate(*term, params.beta * a / sum);
    }
    return out;
}

Vector bayes_standard_move(std::size_t particle, const SwarmState& state, const PosteriorHistory& history,
                           const GaussianParams& params)
{
    const BayesStandardTerms terms = bayes_standard_terms(particle, state, history, params);
    const Vector& x = state.particles[particle].position;
    const Vector pull = terms.prior_gradient + terms.beta_g * (state.global_best_position - x) +
                        terms.beta_b * (state.particles[particle].best_position - x) +
                        params.tau * terms.momentum;
    return x + params.gamma * pull;
}

SwarmState step_bayes_standard(SwarmState state, const Objective& objective, PosteriorHistory& history,
                               const GaussianParams& params, RngStream& rng)
{
    params.validate();
    std::vector<Vector> next;
    next.reserve(state.size());
    for (std::size_t i = 0; i < state.size(); ++i)
        next.push_back(bayes_standard_move(i, state, history, params));
    for (std::size_t i = 0; i < state.size(); ++i) {
        Particle& p = state.particles[i];
        p.velocity = next[i] - p.position;
        p.position = std::move(next[i]);
    }
    const BestChanges changes = finish_move(state, objective, rng);
    history.record(state, changes, params.weights);
    return state;
}

}  // namespace bpso
