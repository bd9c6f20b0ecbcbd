#include "bpso/barebones.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bpso {

void BareBonesParams::validate() const
{
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw ConfigError("bare bones scale must be positive");
}

DiagonalGaussian barebones_distribution(const Particle& particle, const Vector& gbest,
                                        const BareBonesParams& params)
{
    const Vector diff = particle.best_position - gbest;
    DiagonalGaussian out;
    out.mean = 0.5 * (particle.best_position + gbest);
    switch (params.cov_mode) {
    case CovarianceMode::per_dimension:
        out.variance = params.scale * diff.cwiseAbs();
        break;
    case CovarianceMode::scalar:
        out.variance = Vector::Constant(diff.size(), params.scale * 0.5 * diff.norm());
        break;
    }
    return out;
}

Vector sample_diagonal(const DiagonalGaussian& dist, RngStream& rng)
{
    Vector x = dist.mean;
    for (Eigen::Index k = 0; k < x.size(); ++k)
        if (dist.variance[k] > 0.0)
            x[k] += std::sqrt(dist.variance[k]) * rng.normal();
    return x;
}

double barebones_log_density(const Vector& x, const DiagonalGaussian& dist)
{
    double log_density = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const double var = dist.variance[k];
        if (var == 0.0)
            return x[k] == dist.mean[k] ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity();
        const double d = x[k] - dist.mean[k];
        log_density += -0.5 * std::log(2.0 * std::numbers::pi * var) - 0.5 * d * d / var;
    }
    return log_density;
}

SwarmState step_barebones(SwarmState state, const Objective& objective, const BareBonesParams& params,
                          RngStream& rng)
{
    params.validate();
    for (Particle& p : state.particles) {
        const Vector previous = p.position;
        p.position = sample_diagonal(barebones_distribution(p, state.global_best_position, params), rng);
        p.velocity = p.position - previous;
    }
    finish_move(state, objective, rng);
    return state;
}

}  // namespace bpso
