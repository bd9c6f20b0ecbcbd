#include "bpso/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bpso {

void Bounds::validate() const
{
    if (lower.size() == 0 || lower.size() != upper.size())
        throw ConfigError("bounds must have matching, non-zero lengths");
    for (Eigen::Index k = 0; k < lower.size(); ++k) {
        if (!std::isfinite(lower[k]) || !std::isfinite(upper[k]))
            throw ConfigError("bounds must be finite");
        if (lower[k] > upper[k])
            throw ConfigError("bounds lower > upper in dimension " + std::to_string(k));
    }
}

Vector clamp_to_bounds(const Vector& position, const Bounds& bounds)
{
    if (position.size() != bounds.lower.size())
        throw UsageError("clamp_to_bounds: dimension mismatch");
    return position.cwiseMax(bounds.lower).cwiseMin(bounds.upper);
}

bool SwarmState::operator==(const SwarmState& other) const
{
    if (particles.size() != other.particles.size() || iteration != other.iteration ||
        global_best_raw != other.global_best_raw || global_best_particle != other.global_best_particle ||
        global_best_iteration != other.global_best_iteration ||
        global_best_position != other.global_best_position)
        return false;
    for (std::size_t i = 0; i < particles.size(); ++i) {
        const Particle& a = particles[i];
        const Particle& b = other.particles[i];
        if (a.position != b.position || a.velocity != b.velocity || a.raw != b.raw ||
            a.best_position != b.best_position || a.best_raw != b.best_raw ||
            a.best_iteration != b.best_iteration)
            return false;
    }
    return true;
}

double fitness_weight(double raw, const FitnessWeightSpec& spec)
{
    if (std::isnan(raw))
        throw EvaluationError("fitness is NaN");
    if (!(spec.epsilon > 0.0))
        throw ConfigError("fitness weight epsilon must be positive");
    double value = raw;
    switch (spec.transform) {
    case FitnessTransform::identity: break;
    case FitnessTransform::sqrt: value = std::sqrt(std::max(raw, 0.0)); break;
    case FitnessTransform::log1p: value = std::log1p(std::max(raw, 0.0)); break;
    }
    const double floored = std::max(value, spec.epsilon);
    if (spec.direction == Direction::maximize)
        return std::isfinite(floored) ? floored : std::numeric_limits<double>::max();
    return 1.0 / floored;
}

SwarmState init_swarm(std::size_t n, const Objective& objective, RngStream& rng)
{
    if (n == 0)
        throw ConfigError("swarm needs at least one particle");
    objective.bounds.validate();
    if (objective.bounds.dim() != objective.dim)
        throw ConfigError("objective bounds do not match its dimension");

    const auto dim = static_cast<Eigen::Index>(objective.dim);
    SwarmState state;
    state.particles.resize(n);
    for (Particle& p : state.particles) {
        p.position.resize(dim);
        for (Eigen::Index k = 0; k < dim; ++k)
            p.position[k] = rng.uniform(objective.bounds.lower[k], objective.bounds.upper[k]);
        p.velocity = Vector::Zero(dim);
    }
    const auto evaluations = evaluate_swarm(state, objective, rng);
    for (std::size_t i = 0; i < n; ++i) {
        Particle& p = state.particles[i];
        p.best_position = p.position;
        p.best_raw = evaluations[i].raw;
        p.best_iteration = 0;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (state.particles[i].best_raw < state.particles[best].best_raw)
            best = i;
    state.global_best_particle = best;
    state.global_best_position = state.particles[best].best_position;
    state.global_best_raw = state.particles[best].best_raw;
    state.global_best_iteration = 0;
    state.iteration = 0;
    return state;
}

BestChanges apply_evaluations(SwarmState& state, std::span<const Evaluation> evaluations)
{
    BestChanges changes;
    changes.new_personal_best.assign(state.size(), false);
    for (const Evaluation& e : evaluations) {
        if (e.particle >= state.size())
            throw UsageError("evaluation refers to particle " + std::to_string(e.particle));
        if (std::isnan(e.raw))
            throw EvaluationError("fitness of particle " + std::to_string(e.particle) + " is NaN");
        Particle& p = state.particles[e.particle];
        p.raw = e.raw;
        if (e.raw < p.best_raw) {
            p.best_raw = e.raw;
            p.best_position = p.position;
            p.best_iteration = state.iteration;
            changes.new_personal_best[e.particle] = true;
        }
    }
    std::size_t best = state.size();
    double best_raw = state.global_best_raw;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state.particles[i].best_raw < best_raw) {
            best_raw = state.particles[i].best_raw;
            best = i;
        }
    }
    if (best < state.size()) {
        const Particle& p = state.particles[best];
        state.global_best_particle = best;
        state.global_best_position = p.best_position;
        state.global_best_raw = p.best_raw;
        state.global_best_iteration = p.best_iteration;
        changes.new_global_best = p.best_iteration == state.iteration;
    }
    return changes;
}

SwarmState update_bests(SwarmState state, std::span<const Evaluation> evaluations)
{
    apply_evaluations(state, evaluations);
    return state;
}

std::vector<Evaluation> evaluate_swarm(SwarmState& state, const Objective& objective, RngStream& rng)
{
    std::vector<Evaluation> out;
    out.reserve(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        Particle& p = state.particles[i];
        p.raw = noisy_eval(objective, p.position, rng);
        out.push_back({i, p.raw});
    }
    return out;
}

BestChanges finish_move(SwarmState& state, const Objective& objective, RngStream& rng)
{
    for (Particle& p : state.particles)
        p.position = clamp_to_bounds(p.position, objective.bounds);
    ++state.iteration;
    const auto evaluations = evaluate_swarm(state, objective, rng);
    return apply_evaluations(state, evaluations);
}

double swarm_spread(const SwarmState& state)
{
    if (state.size() == 0)
        throw UsageError("stop_check needs at least one particle");
    double sum = 0.0;
    for (const Particle& p : state.particles)
        sum += (p.position - state.global_best_position).squaredNorm();
    return sum / (static_cast<double>(state.dim()) * static_cast<double>(state.size()));
}

bool stop_check(const SwarmState& state, double threshold)
{
    return swarm_spread(state) < threshold;
}

}  // namespace bpso
