#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bpso/objectives.hpp"
#include "bpso/rng.hpp"
#include "bpso/types.hpp"

namespace bpso {

struct Particle {
    Vector position;
    Vector velocity;
    /// Fitness observed at `position` during the latest evaluation.
    double raw = 0.0;
    Vector best_position;
    double best_raw = 0.0;
    /// Iteration at which best_position was found.
    std::size_t best_iteration = 0;
};

/// Whole-swarm state for one run. Minimization convention throughout:
/// global_best_raw is the smallest best_raw over all particles.
struct SwarmState {
    std::vector<Particle> particles;
    Vector global_best_position;
    double global_best_raw = 0.0;
    std::size_t global_best_particle = 0;
    std::size_t global_best_iteration = 0;
    std::size_t iteration = 0;

    std::size_t size() const { return particles.size(); }
    std::size_t dim() const { return static_cast<std::size_t>(global_best_position.size()); }

    bool operator==(const SwarmState& other) const;
};

enum class Direction { minimize, maximize };

/// Optional monotone map applied to the raw fitness before weighting.
enum class FitnessTransform { identity, sqrt, log1p };

struct FitnessWeightSpec {
    Direction direction = Direction::minimize;
    double epsilon = 1e-12;
    FitnessTransform transform = FitnessTransform::identity;
};

/// Turns a raw fitness into the positive likelihood weight of a record:
/// max(mu(raw), eps) when maximizing, 1 / max(mu(raw), eps) when minimizing.
/// Throws EvaluationError for NaN input and ConfigError for eps <= 0.
double fitness_weight(double raw, const FitnessWeightSpec& spec = {});

struct Evaluation {
    std::size_t particle;
    double raw;
};

/// What changed during one round of best-vector bookkeeping.
struct BestChanges {
    std::vector<bool> new_personal_best;
    /// True when the global best moved to a record of this round.
    bool new_global_best = false;
};

/// Uniform random positions inside the objective's bounds, zero velocities,
/// evaluated and with bests set. Throws ConfigError for n == 0 or bad bounds.
SwarmState init_swarm(std::size_t n, const Objective& objective, RngStream& rng);

/// Applies one evaluation per particle. A personal best moves only on a
/// strictly smaller raw value; the global best moves only when some personal
/// best is strictly smaller than it, and among equal candidates the lowest
/// particle index wins.
BestChanges apply_evaluations(SwarmState& state, std::span<const Evaluation> evaluations);

SwarmState update_bests(SwarmState state, std::span<const Evaluation> evaluations);

/// Evaluates every particle at its current position (noisy when the
/// objective carries noise), records the raw value on the particle and returns
/// the evaluations in particle order.
std::vector<Evaluation> evaluate_swarm(SwarmState& state, const Objective& objective, RngStream& rng);

/// Clamps, re-evaluates and updates bests after positions were moved.
/// Increments the iteration counter first so records carry the new index.
BestChanges finish_move(SwarmState& state, const Objective& objective, RngStream& rng);

/// Mean squared distance to the global best, normalized by dim * n.
double swarm_spread(const SwarmState& state);

/// True when swarm_spread(state) < threshold.
bool stop_check(const SwarmState& state, double threshold = 1e-3);

}  // namespace bpso
