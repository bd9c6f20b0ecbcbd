#include "bpso/kalman.hpp"

#include <cmath>
#include <iostream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace bpso {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

void require_square(const Matrix& a, Eigen::Index n, const char* name)
{
    if (a.rows() != n || a.cols() != n)
        throw ConfigError(std::string(name) + " has the wrong shape");
}

}  // namespace

KalmanParticleState KalmanParticleState::from_position(const Vector& x, const Matrix& initial_covariance)
{
    KalmanParticleState s;
    s.y_bar = Vector::Zero(2 * x.size());
    s.y_bar.head(x.size()) = x;
    s.W = initial_covariance;
    return s;
}

KalmanParams KalmanParams::defaults(std::size_t dim)
{
    const Eigen::Index m = idx(dim);
    KalmanParams p;
    p.W_y = 0.1 * Matrix::Identity(2 * m, 2 * m);
    p.V_gg = 0.1 * Matrix::Identity(m, m);
    p.Q_x = 0.5 * Matrix::Identity(m, m);
    p.W0 = Matrix::Identity(2 * m, 2 * m);
    return p;
}

void KalmanParams::validate() const
{
    const Eigen::Index m = Q_x.rows();
    if (m == 0)
        throw ConfigError("Kalman parameters are empty");
    require_square(Q_x, m, "Q_x");
    require_square(V_gg, m, "V_gg");
    require_square(W_y, 2 * m, "W_y");
    require_square(W0, 2 * m, "W0");
    if ((Q_x.array() < 0.0).any() || (Q_x.array() > 1.0).any())
        throw ConfigError("Q_x entries must lie in [0, 1]");
}

Matrix transition_matrix(std::size_t dim)
{
    const Eigen::Index m = idx(dim);
    Matrix F = Matrix::Identity(2 * m, 2 * m);
    F.topRightCorner(m, m) = Matrix::Identity(m, m);
    return F;
}

Matrix observation_matrix(std::size_t dim)
{
    const Eigen::Index m = idx(dim);
    Matrix H = Matrix::Zero(m, 2 * m);
    H.leftCols(m) = Matrix::Identity(m, m);
    return H;
}

KalmanParticleState kalman_filter_update(const KalmanParticleState& state, const Vector& gbest,
                                         const Vector& pbest, const KalmanParams& params)
{
    const std::size_t dim = params.dim();
    const Eigen::Index m = idx(dim);
    if (state.y_bar.size() != 2 * m || gbest.size() != m || pbest.size() != m)
        throw UsageError("Kalman state and parameters differ in dimension");

    const Matrix F = transition_matrix(dim);
    const Matrix H = observation_matrix(dim);
    const Matrix predicted = F * state.W * F.transpose() + params.W_y;
    Matrix innovation = H * predicted * H.transpose() + params.V_gg;

    Eigen::LLT<Matrix> llt(innovation);
    if (llt.info() != Eigen::Success) {
        std::cerr << "warning: singular Kalman innovation matrix, regularizing\n";
        innovation += 1e-10 * Matrix::Identity(m, m);
        llt.compute(innovation);
        if (llt.info() != Eigen::Success)
            throw NumericalError("Kalman innovation matrix is not positive definite");
    }
    // K = P H^T S^-1, computed as (S^-1 H P)^T with S = S^T.
    const Matrix gain = llt.solve(H * predicted).transpose();

    const Vector observation = (Matrix::Identity(m, m) - params.Q_x) * pbest + params.Q_x * gbest;
    const Vector prior_mean = F * state.y_bar;

    KalmanParticleState out;
    out.y_bar = prior_mean + gain * (observation - H * prior_mean);
    out.W = symmetrize((Matrix::Identity(2 * m, 2 * m) - gain * H) * predicted);
    if (!out.y_bar.allFinite() || !out.W.allFinite())
        throw NumericalError("Kalman update produced non-finite values");
    return out;
}

Vector kalman_sample_position(const KalmanParticleState& state, RngStream& rng)
{
    const Eigen::Index n = state.y_bar.size();
    const Eigen::Index m = n / 2;
    const Matrix F = transition_matrix(static_cast<std::size_t>(m));
    const Vector mean = F * state.y_bar;

    Vector z(n);
    for (Eigen::Index k = 0; k < n; ++k)
        z[k] = rng.normal();

    Eigen::LLT<Matrix> llt(state.W);
    Vector sample;
    if (llt.info() == Eigen::Success) {
        sample = mean + llt.matrixL() * z;
    } else {
        // Semi-definite: factor through the eigen-decomposition instead.
        Eigen::SelfAdjointEigenSolver<Matrix> eig(state.W);
        const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        sample = mean + eig.eigenvectors() * root.cwiseProduct(z);
    }
    return sample.head(m);
}

std::pair<KalmanParticleState, Vector> kalman_step(const KalmanParticleState& state, const Vector& gbest,
                                                   const Vector& pbest, const KalmanParams& params,
                                                   RngStream& rng)
{
    KalmanParticleState next = kalman_filter_update(state, gbest, pbest, params);
    Vector position = kalman_sample_position(next, rng);
    return {std::move(next), std::move(position)};
}

SwarmState step_kalman(SwarmState state, const Objective& objective, std::vector<KalmanParticleState>& filters,
                       const KalmanParams& params, RngStream& rng)
{
    params.validate();
    if (filters.size() != state.size())
        throw UsageError("need one Kalman filter per particle");
    for (std::size_t i = 0; i < state.size(); ++i) {
        Particle& p = state.particles[i];
        auto [filter, position] = kalman_step(filters[i], state.global_best_position, p.best_position, params, rng);
        filters[i] = std::move(filter);
        p.velocity = position - p.position;
        p.position = std::move(position);
    }
    finish_move(state, objective, rng);
    return state;
}

GaussianEstimate product_gaussian_update(const Vector& x_bar, const Matrix& V_bar, const Vector& gbest,
                                         const Matrix& V_g, const Vector& pbest, const Matrix& V_b,
                                         double lambda_g, double lambda_b)
{
    if (!(lambda_g >= 0.0 && lambda_b >= 0.0 && lambda_g + lambda_b <= 1.0))
        throw ConfigError("lambda_g, lambda_b must be non-negative with sum at most 1");
    const double keep = 1.0 - lambda_g - lambda_b;
    GaussianEstimate out;
    out.V = keep * V_bar + lambda_g * V_g + lambda_b * V_b;
    Eigen::FullPivLU<Matrix> lu(out.V);
    if (!lu.isInvertible())
        throw NumericalError("combined precision matrix is singular");
    out.mean = lu.solve(keep * V_bar * x_bar + lambda_g * V_g * gbest + lambda_b * V_b * pbest);
    return out;
}

GaussianEstimate reduced_kalman_update(const Vector& x_bar, const Matrix& V_bar, const Vector& gbest,
                                       const Vector& pbest, const Matrix& V_xx, const Matrix& V_gg,
                                       const Matrix& Q_x)
{
    const Eigen::Index m = V_bar.rows();
    const Matrix innovation = V_bar + V_gg;
    const Matrix predicted = V_bar + V_xx;
    Eigen::FullPivLU<Matrix> lu(innovation);
    if (!lu.isInvertible())
        throw NumericalError("V + V_gg is singular");
    const Matrix A = lu.solve(predicted);
    const Matrix I = Matrix::Identity(m, m);
    GaussianEstimate out;
    out.V = predicted - predicted * A;
    out.mean = (I - A) * x_bar + A * Q_x * gbest + A * (I - Q_x) * pbest;
    return out;
}

ProductMapping map_reduced_to_product(const Matrix& V_bar, const Matrix& V_xx, const Matrix& V_gg,
                                      const Matrix& Q_x)
{
    const Eigen::Index m = V_bar.rows();
    const Matrix I = Matrix::Identity(m, m);
    Eigen::FullPivLU<Matrix> lu(V_bar + V_gg);
    if (!lu.isInvertible())
        throw NumericalError("V + V_gg is singular");
    const Matrix A = lu.solve(V_bar + V_xx);
    const Matrix V_next = (V_bar + V_xx) - (V_bar + V_xx) * A;

    const Matrix keep_term = V_next * (I - A);
    const Matrix global_term = V_next * A * Q_x;
    const Matrix personal_term = V_next * A * (I - Q_x);

    // The keep term fixes lambda_g + lambda_b when it is proportional to V_bar;
    // otherwise any split works and V_prior absorbs the difference.
    double lambda_sum = 0.5;
    const double trace_bar = V_bar.trace();
    if (trace_bar != 0.0) {
        const double ratio = keep_term.trace() / trace_bar;
        if (ratio > 0.0 && ratio < 1.0)
            lambda_sum = 1.0 - ratio;
    }
    double share = 0.5;
    const double tg = global_term.trace();
    const double tb = personal_term.trace();
    if (tg > 0.0 && tb > 0.0)
        share = tg / (tg + tb);

    ProductMapping out;
    out.lambda_g = lambda_sum * share;
    out.lambda_b = lambda_sum * (1.0 - share);
    out.V_prior = keep_term / (1.0 - lambda_sum);
    out.V_g = global_term / out.lambda_g;
    out.V_b = personal_term / out.lambda_b;
    return out;
}

std::pair<double, double> lambdas_from_weights(double weight_g, double weight_b, double weight_current)
{
    const double total = weight_g + weight_b + weight_current;
    if (!(total > 0.0) || !std::isfinite(total))
        throw ConfigError("weights must have a positive finite sum");
    return {weight_g / total, weight_b / total};
}

}  // namespace bpso
