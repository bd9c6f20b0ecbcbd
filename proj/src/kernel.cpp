#include "bpso/kernel.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace bpso {

namespace {

constexpr std::array<std::string_view, 5> kKernelNames = {"sqrt_shift", "sinc", "poisson", "trig", "linear"};

// Below this r / mu the sinc kernel switches to its Taylor series.
constexpr double kSincSeriesCutoff = 1e-2;

double poisson_1d(double d) { return (1.0 - 0.5 * std::cos(d)) / (1.25 - std::cos(d)); }

// out += scale * grad of prod_k poisson_1d(d_k), via prefix and suffix products.
void add_poisson_grad(const Vector& d, double scale, Vector& out)
{
    thread_local Vector factor, partial;
    const Eigen::Index m = d.size();
    factor.resize(m);
    partial.resize(m);
    double prefix = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double c = std::cos(d[i]);
        const double denom = 1.25 - c;
        factor[i] = (1.0 - 0.5 * c) / denom;
        partial[i] = prefix * (-0.375 * std::sin(d[i]) / (denom * denom));
        prefix *= factor[i];
    }
    double suffix = scale;
    for (Eigen::Index i = m - 1; i >= 0; --i) {
        out[i] += suffix * partial[i];
        suffix *= factor[i];
    }
}

}  // namespace

std::string_view to_string(KernelId id) { return kKernelNames[static_cast<std::size_t>(id)]; }

KernelId parse_kernel_id(std::string_view name)
{
    for (std::size_t i = 0; i < kKernelNames.size(); ++i)
        if (kKernelNames[i] == name)
            return static_cast<KernelId>(i);
    throw ConfigError("unknown kernel id '" + std::string(name) + "'");
}

void Kernel::validate() const
{
    if ((id == KernelId::sqrt_shift || id == KernelId::sinc) && !(mu > 0.0))
        throw ConfigError("kernel parameter mu must be positive");
}

double Kernel::self_value(std::size_t dim) const
{
    switch (id) {
    case KernelId::sqrt_shift: return std::sqrt(mu);
    case KernelId::sinc: return 1.0;
    case KernelId::poisson: return std::pow(2.0, static_cast<double>(dim));
    case KernelId::trig: return -0.5 * std::cos(0.0) * std::exp(1.0);
    case KernelId::linear: break;
    }
    throw UsageError("linear kernel has no constant self value");
}

double kernel_eval(const Kernel& kernel, const Vector& x, const Vector& y)
{
    if (x.size() != y.size())
        throw UsageError("kernel arguments differ in dimension");
    switch (kernel.id) {
    case KernelId::sqrt_shift:
        return std::sqrt((x - y).squaredNorm() + kernel.mu);
    case KernelId::sinc: {
        const double q = (x - y).norm() / kernel.mu;
        if (q < kSincSeriesCutoff)
            {
            const double q2 = q * q;
            return 1.0 - q2 / 6.0 * (1.0 - q2 / 20.0 * (1.0 - q2 / 42.0));
        }
        return std::sin(q) / q;
    }
    case KernelId::poisson: {
        double k = 1.0;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            k *= poisson_1d(x[i] - y[i]);
        return k;
    }
    case KernelId::trig: {
        const double s = (x - y).squaredNorm();
        return -0.5 * std::cos(std::sin(s)) * std::exp(std::cos(s));
    }
    case KernelId::linear:
        return x.dot(y);
    }
    throw ConfigError("unknown kernel id");
}

Vector kernel_grad(const Kernel& kernel, const Vector& x, const Vector& y)
{
    if (x.size() != y.size())
        throw UsageError("kernel arguments differ in dimension");
    const Vector d = x - y;
    switch (kernel.id) {
    case KernelId::sqrt_shift:
        return d / std::sqrt(d.squaredNorm() + kernel.mu);
    case KernelId::sinc: {
        // dK/dx = (dK/dr / r) d, dK/dr / r = (cos q - sin q / q) / r^2.
        const double mu = kernel.mu;
        const double r = d.norm();
        const double q = r / mu;
        double radial;
        if (q < kSincSeriesCutoff)
            radial = (-1.0 / 3.0 + q * q / 30.0 - q * q * q * q / 840.0) / (mu * mu);
        else
            radial = (std::cos(q) - std::sin(q) / q) / (r * r);
        return radial * d;
    }
    case KernelId::poisson: {
        Vector g = Vector::Zero(x.size());
        add_poisson_grad(d, 1.0, g);
        return g;
    }
    case KernelId::trig: {
        const double s = d.squaredNorm();
        return std::sin(s + std::sin(s)) * std::exp(std::cos(s)) * d;
    }
    case KernelId::linear:
        return y;
    }
    throw ConfigError("unknown kernel id");
}

Vector kernel_self_grad(const Kernel& kernel, const Vector& x)
{
    if (kernel.id == KernelId::linear)
        return 2.0 * x;
    return Vector::Zero(x.size());
}

double kernel_component_log_density(const Kernel& kernel, double beta, const Vector& x, const Vector& center)
{
    const double self = kernel.shift_invariant()
                            ? 2.0 * kernel.self_value(static_cast<std::size_t>(x.size()))
                            : kernel_eval(kernel, x, x) + kernel_eval(kernel, center, center);
    const double distance = self - 2.0 * kernel_eval(kernel, x, center);
    return -0.5 * beta * distance;
}

void KernelParams::validate() const
{
    kernel.validate();
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw ConfigError("gamma must lie in (0, 1]");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ConfigError("beta must be positive");
    if (!(tau > 0.0 && tau < 1.0))
        throw ConfigError("tau must lie in (0, 1)");
    if (window == 0)
        throw ConfigError("window must be at least 1");
    if (!(beta_g >= 0.0) || !(beta_b >= 0.0))
        throw ConfigError("beta_g and beta_b must be non-negative");
}

namespace {

double kernel_prior_log_density(const Vector& x, const KernelParams& params)
{
    if (params.prior == Prior::uniform)
        return 0.0;
    const Vector origin = Vector::Zero(x.size());
    return kernel_component_log_density(params.kernel, 1.0, x, origin);
}

// Gradient of -1/2 (K(x,x) + K(0,0) - 2 K(x,0)).
Vector kernel_prior_grad(const Vector& x, const KernelParams& params)
{
    if (params.prior == Prior::uniform)
        return Vector::Zero(x.size());
    const Vector origin = Vector::Zero(x.size());
    return kernel_grad(params.kernel, x, origin) - 0.5 * kernel_self_grad(params.kernel, x);
}

// out += scale * dK(x, y)/dx without allocating.
void add_kernel_grad(const Kernel& kernel, const Vector& x, const Vector& y, double scale, Vector& out)
{
    thread_local Vector d;
    d = x - y;
    switch (kernel.id) {
    case KernelId::poisson:
        add_poisson_grad(d, scale, out);
        return;
    case KernelId::linear:
        out += scale * y;
        return;
    case KernelId::sqrt_shift:
        out += (scale / std::sqrt(d.squaredNorm() + kernel.mu)) * d;
        return;
    case KernelId::trig: {
        const double s = d.squaredNorm();
        out += (scale * std::sin(s + std::sin(s)) * std::exp(std::cos(s))) * d;
        return;
    }
    case KernelId::sinc:
        out += scale * kernel_grad(kernel, x, y);
        return;
    }
}

}  // namespace

double kernel_log_posterior(const Vector& x, const PosteriorHistory& history, const KernelParams& params)
{
    if (history.empty())
        throw UsageError("posterior history is empty");
    double value = kernel_prior_log_density(x, params);
    std::vector<double> a;
    for (const IterationGroup& group : history.groups()) {
        if (params.assumption == Assumption::dependence) {
            a.clear();
            double peak = -std::numeric_limits<double>::infinity();
            for (const EvalRecord& r : group.records) {
                a.push_back(std::log(r.weight) + kernel_component_log_density(params.kernel, params.beta, x, r.position));
                peak = std::max(peak, a.back());
            }
            double sum = 0.0;
            for (double v : a)
                sum += std::exp(v - peak);
            value += peak + std::log(sum) - std::log(group.total_weight);
        } else {
            double acc = 0.0;
            for (const EvalRecord& r : group.records)
                acc += r.weight * kernel_component_log_density(params.kernel, params.beta, x, r.position);
            value += acc / group.total_weight;
        }
    }
    return value;
}

Vector kernel_log_posterior_grad(const Vector& x, const PosteriorHistory& history, const KernelParams& params)
{
    if (history.empty())
        throw UsageError("posterior history is empty");
    const Vector self_grad = kernel_self_grad(params.kernel, x);
    Vector grad = kernel_prior_grad(x, params);
    std::vector<double> a;
    for (const IterationGroup& group : history.groups()) {
        if (params.assumption == Assumption::dependence) {
            a.clear();
            double peak = -std::numeric_limits<double>::infinity();
            for (const EvalRecord& r : group.records) {
                a.push_back(std::log(r.weight) + kernel_component_log_density(params.kernel, params.beta, x, r.position));
                peak = std::max(peak, a.back());
            }
            double sum = 0.0;
            for (double& v : a) {
                v = std::exp(v - peak);
                sum += v;
            }
            for (std::size_t i = 0; i < group.records.size(); ++i)
                add_kernel_grad(params.kernel, x, group.records[i].position, params.beta * a[i] / sum, grad);
        } else {
            for (const EvalRecord& r : group.records)
                add_kernel_grad(params.kernel, x, r.position, params.beta * r.weight / group.total_weight, grad);
        }
        // The normalized weights of a group sum to one, so its self terms collapse.
        grad -= 0.5 * params.beta * self_grad;
    }
    return grad;
}

Vector kernel_move(const Vector& x, const PosteriorHistory& history, const KernelParams& params)
{
    return x + params.gamma * kernel_log_posterior_grad(x, history, params);
}

SwarmState step_kernel(SwarmState state, const Objective& objective, PosteriorHistory& history,
                       const KernelParams& params, RngStream& rng)
{
    params.validate();
    std::vector<Vector> next;
    next.reserve(state.size());
    for (const Particle& p : state.particles)
        next.push_back(kernel_move(p.position, history, params));
    for (std::size_t i = 0; i < state.size(); ++i) {
        Particle& p = state.particles[i];
        p.velocity = next[i] - p.position;
        p.position = std::move(next[i]);
    }
    const BestChanges changes = finish_move(state, objective, rng);
    history.record(state, changes, params.weights);
    return state;
}

Vector kernel_standard_move(const Vector& x, const Vector& gbest, const Vector& pbest, double r,
                            const KernelParams& params)
{
    return x + r * (params.beta_g * kernel_grad(params.kernel, x, gbest) +
                    params.beta_b * kernel_grad(params.kernel, x, pbest));
}

SwarmState step_kernel_standard(SwarmState state, const Objective& objective, const KernelParams& params,
                                RngStream& rng)
{
    params.validate();
    const Vector gbest = state.global_best_position;
    for (Particle& p : state.particles) {
        const double r = params.forced_draw ? *params.forced_draw : rng.uniform_open();
        Vector next = kernel_standard_move(p.position, gbest, p.best_position, r, params);
        p.velocity = next - p.position;
        p.position = std::move(next);
    }
    finish_move(state, objective, rng);
    return state;
}

}  // namespace bpso
