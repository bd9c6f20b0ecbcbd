#pragma once

#include <utility>

#include "bpso/swarm.hpp"

namespace bpso {

/// Per-particle filter state: stacked (position, velocity) estimate and its
/// 2m x 2m covariance.
struct KalmanParticleState {
    Vector y_bar;
    Matrix W;

    /// y_bar = (x, 0), W = initial covariance.
    static KalmanParticleState from_position(const Vector& x, const Matrix& initial_covariance);
};

struct KalmanParams {
    /// Process noise, 2m x 2m.
    Matrix W_y;
    /// Observation noise on the position block (the non-zero block of W_z), m x m.
    Matrix V_gg;
    /// Balance between global best (Q_x) and personal best (I - Q_x), m x m.
    Matrix Q_x;
    /// Covariance of the initial estimate, 2m x 2m.
    Matrix W0;

    /// W_y = 0.1 I, V_gg = 0.1 I, Q_x = 0.5 I, W0 = I.
    static KalmanParams defaults(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(Q_x.rows()); }
    void validate() const;
};

/// F = [[I, I], [0, I]] for position/velocity stacking.
Matrix transition_matrix(std::size_t dim);
/// H = [I, 0].
Matrix observation_matrix(std::size_t dim);

/// Gain, estimate and covariance update for one particle. The observation is
/// the position block of (I - Q) q + Q z, i.e. (I - Q_x) pbest + Q_x gbest.
/// A singular innovation matrix is regularized with 1e-10 I (and a warning on
/// stderr); if that still fails NumericalError is thrown.
KalmanParticleState kalman_filter_update(const KalmanParticleState& state, const Vector& gbest,
                                         const Vector& pbest, const KalmanParams& params);

/// Samples (x, v) ~ N(F y_bar, W) and returns the position half.
Vector kalman_sample_position(const KalmanParticleState& state, RngStream& rng);

std::pair<KalmanParticleState, Vector> kalman_step(const KalmanParticleState& state, const Vector& gbest,
                                                   const Vector& pbest, const KalmanParams& params,
                                                   RngStream& rng);

/// Runs kalman_step for every particle; `filters` has one entry per particle.
SwarmState step_kalman(SwarmState state, const Objective& objective, std::vector<KalmanParticleState>& filters,
                       const KalmanParams& params, RngStream& rng);

struct GaussianEstimate {
    Vector mean;
    Matrix V;
};

/// Product of the previous estimate (power 1 - lg - lb) with the global and
/// personal best components:
///   V' = (1 - lg - lb) V + lg Vg + lb Vb
///   x' = V'^-1 ((1 - lg - lb) V x + lg Vg g + lb Vb b)
/// Throws NumericalError when V' is singular, ConfigError for bad lambdas.
GaussianEstimate product_gaussian_update(const Vector& x_bar, const Matrix& V_bar, const Vector& gbest,
                                         const Matrix& V_g, const Vector& pbest, const Matrix& V_b,
                                         double lambda_g, double lambda_b);

/// Closed form of the filter's position block:
///   V' = (V + Vxx) - (V + Vxx)(V + Vgg)^-1 (V + Vxx)
///   x' = (I - A) x + A Q_x g + A (I - Q_x) b,  A = (V + Vgg)^-1 (V + Vxx)
GaussianEstimate reduced_kalman_update(const Vector& x_bar, const Matrix& V_bar, const Vector& gbest,
                                       const Vector& pbest, const Matrix& V_xx, const Matrix& V_gg,
                                       const Matrix& Q_x);

/// Parameters of the product form that reproduce reduced_kalman_update.
/// V_prior replaces V_bar in the product form; it equals V_bar whenever
/// V'(I - A) = c V_bar with 0 < c < 1.
struct ProductMapping {
    double lambda_g;
    double lambda_b;
    Matrix V_prior;
    Matrix V_g;
    Matrix V_b;
};

ProductMapping map_reduced_to_product(const Matrix& V_bar, const Matrix& V_xx, const Matrix& V_gg,
                                      const Matrix& Q_x);

/// lambda_g, lambda_b proportional to the fitness weights of the global best,
/// personal best and current record.
std::pair<double, double> lambdas_from_weights(double weight_g, double weight_b, double weight_current);

}  // namespace bpso
