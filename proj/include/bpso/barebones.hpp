#pragma once

#include "bpso/swarm.hpp"

namespace bpso {

enum class CovarianceMode {
    /// diag_j = |x^b_j - x^g_j|
    per_dimension,
    /// every diag entry = 0.5 * ||x^b - x^g||
    scalar,
};

struct BareBonesParams {
    CovarianceMode cov_mode = CovarianceMode::scalar;
    /// Multiplies the covariance; 0.2 samples the middle of the distribution.
    double scale = 1.0;

    void validate() const;
};

/// Mean and diagonal covariance (variances) of a particle's sampling
/// distribution.
struct DiagonalGaussian {
    Vector mean;
    Vector variance;
};

DiagonalGaussian barebones_distribution(const Particle& particle, const Vector& gbest,
                                        const BareBonesParams& params);

/// Draws one sample. Zero-variance coordinates are copied from the mean
/// without consuming a draw.
Vector sample_diagonal(const DiagonalGaussian& dist, RngStream& rng);

/// Log density of the scalar-covariance distribution with the given variance
/// (normalization included).
double barebones_log_density(const Vector& x, const DiagonalGaussian& dist);

/// Every particle jumps to an independent sample of its distribution.
SwarmState step_barebones(SwarmState state, const Objective& objective, const BareBonesParams& params,
                          RngStream& rng);

}  // namespace bpso
