#include "bpso/history.hpp"

#include <cmath>

namespace bpso {

namespace {

void refresh_group(IterationGroup& group)
{
    group.total_weight = 0.0;
    group.global_best_record = -1;
    group.weighted_mean = Vector::Zero(group.records.front().position.size());
    for (std::size_t i = 0; i < group.records.size(); ++i) {
        const EvalRecord& r = group.records[i];
        group.total_weight += r.weight;
        group.weighted_mean += r.weight * r.position;
        if (r.new_global_best)
            group.global_best_record = static_cast<long>(i);
    }
    if (!(group.total_weight > 0.0) || !std::isfinite(group.total_weight))
        throw UsageError("iteration group needs a positive, finite total weight");
    group.weighted_mean /= group.total_weight;
}

}  // namespace

PosteriorHistory::PosteriorHistory(std::size_t window) : window_(window)
{
    if (window == 0)
        throw ConfigError("history window must be at least 1");
}

void PosteriorHistory::push(std::vector<EvalRecord> records)
{
    if (records.empty())
        throw UsageError("cannot push an empty iteration group");
    for (const EvalRecord& r : records)
        if (!(r.weight > 0.0) || !std::isfinite(r.weight))
            throw UsageError("record weights must be positive and finite");
    IterationGroup group;
    group.iteration = records.front().iteration;
    group.records = std::move(records);
    refresh_group(group);
    groups_.push_back(std::move(group));
    while (groups_.size() > window_)
        groups_.pop_front();
    refresh_sum();
}

void PosteriorHistory::record(const SwarmState& state, const BestChanges& changes, const FitnessWeightSpec& spec)
{
    std::vector<EvalRecord> records;
    records.reserve(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        const Particle& p = state.particles[i];
        EvalRecord r;
        r.iteration = state.iteration;
        r.particle = i;
        r.position = p.position;
        r.raw = p.raw;
        r.weight = fitness_weight(p.raw, spec);
        r.new_personal_best = i < changes.new_personal_best.size() && changes.new_personal_best[i];
        r.new_global_best = changes.new_global_best && state.global_best_particle == i;
        records.push_back(std::move(r));
    }
    push(std::move(records));
}

void PosteriorHistory::scale_weights(double c)
{
    for (IterationGroup& g : groups_) {
        for (EvalRecord& r : g.records)
            r.weight *= c;
        refresh_group(g);
    }
    refresh_sum();
}

void PosteriorHistory::translate(const Vector& offset)
{
    for (IterationGroup& g : groups_) {
        for (EvalRecord& r : g.records)
            r.position += offset;
        refresh_group(g);
    }
    refresh_sum();
}

void PosteriorHistory::refresh_sum()
{
    sum_of_means_ = Vector::Zero(groups_.front().weighted_mean.size());
    for (const IterationGroup& g : groups_)
        sum_of_means_ += g.weighted_mean;
}

void record_initial(PosteriorHistory& history, const SwarmState& state, const FitnessWeightSpec& spec)
{
    BestChanges changes;
    changes.new_personal_best.assign(state.size(), true);
    changes.new_global_best = true;
    history.record(state, changes, spec);
}

}  // namespace bpso
