#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "bpso/swarm.hpp"

namespace bpso {

/// One evaluated position: the atom of the posterior.
struct EvalRecord {
    std::size_t iteration = 0;
    std::size_t particle = 0;
    Vector position;
    double raw = 0.0;
    /// fitness_weight(raw); strictly positive.
    double weight = 1.0;
    /// The record became its particle's new personal best.
    bool new_personal_best = false;
    /// The record became the new global best.
    bool new_global_best = false;
};

/// All records of one iteration plus cached per-group aggregates.
struct IterationGroup {
    std::size_t iteration = 0;
    std::vector<EvalRecord> records;
    double total_weight = 0.0;
    /// Weight-normalized mean of the record positions.
    Vector weighted_mean;
    /// Index into records of the new global best, or -1.
    long global_best_record = -1;
};

/// Sliding window over the last `window` iteration groups. Every particle
/// contributes one record per iteration, so the window is also the number of
/// positions retained per particle.
class PosteriorHistory {
public:
    explicit PosteriorHistory(std::size_t window = 100);

    std::size_t window() const { return window_; }
    bool empty() const { return groups_.empty(); }
    std::size_t size() const { return groups_.size(); }
    const std::deque<IterationGroup>& groups() const { return groups_; }

    /// Adds a group, evicting the oldest when the window is full. Throws
    /// UsageError for an empty group or non-positive total weight.
    void push(std::vector<EvalRecord> records);

    /// Snapshot of the swarm's current evaluations as a group.
    void record(const SwarmState& state, const BestChanges& changes, const FitnessWeightSpec& spec);

    /// Sum over groups of each group's weighted mean.
    const Vector& sum_of_means() const { return sum_of_means_; }

    /// Multiplies every weight by c > 0 (test support for scale invariance).
    void scale_weights(double c);
    /// Adds `offset` to every stored position.
    void translate(const Vector& offset);

private:
    void refresh_sum();

    std::size_t window_;
    std::deque<IterationGroup> groups_;
    Vector sum_of_means_;
};

/// Builds the first group from a freshly initialized swarm: every record
/// counts as a new personal best and the initial global best is flagged.
void record_initial(PosteriorHistory& history, const SwarmState& state, const FitnessWeightSpec& spec);

}  // namespace bpso
