#include "bpso/algorithms.hpp"

#include <string>

namespace bpso {

namespace {

constexpr std::array<std::string_view, 14> kAlgorithmNames = {
    "standard",       "constricted",          "barebones",            "barebones-scalar",
    "gaussian-dep",   "gaussian-indep",       "gaussian-current-dep", "gaussian-current-indep",
    "gaussian-gbest-trace", "bayes-standard", "kalman",               "kernel-standard",
    "kernel-dep",     "kernel-indep",
};

template <typename T>
void apply(std::optional<T> const& source, T& target)
{
    if (source)
        target = *source;
}

class ClassicOptimizer final : public Optimizer {
public:
    explicit ClassicOptimizer(ClassicParams params) : params_(std::move(params)) { params_.validate(); }
    void start(const SwarmState&) override {}
    SwarmState step(SwarmState state, const Objective& objective, RngStream& rng) override
    {
        if (params_.use_constriction)
            return step_constricted(std::move(state), objective, params_, rng);
        return step_standard(std::move(state), objective, params_, rng);
    }

private:
    ClassicParams params_;
};

class BareBonesOptimizer final : public Optimizer {
public:
    explicit BareBonesOptimizer(BareBonesParams params) : params_(params) { params_.validate(); }
    void start(const SwarmState&) override {}
    SwarmState step(SwarmState state, const Objective& objective, RngStream& rng) override
    {
        return step_barebones(std::move(state), objective, params_, rng);
    }

private:
    BareBonesParams params_;
};

class GaussianOptimizer final : public Optimizer {
public:
    enum class Mode { windowed, current_only, gbest_trace, bayes_standard };

    GaussianOptimizer(Mode mode, GaussianParams params)
        : mode_(mode), params_(params), history_(params.window), trace_(params.tau)
    {
        params_.validate();
    }
    void start(const SwarmState& initial) override
    {
        history_ = PosteriorHistory(params_.window);
        trace_ = DiscountedGbestTrace(params_.tau);
        if (mode_ == Mode::windowed || mode_ == Mode::bayes_standard)
            record_initial(history_, initial, params_.weights);
        trace_.push(initial.global_best_position);
    }
    SwarmState step(SwarmState state, const Objective& objective, RngStream& rng) override
    {
        switch (mode_) {
        case Mode::windowed: return step_gaussian(std::move(state), objective, history_, params_, rng);
        case Mode::current_only: return step_current_only(std::move(state), objective, params_, rng);
        case Mode::gbest_trace: return step_discounted_gbest(std::move(state), objective, trace_, params_, rng);
        case Mode::bayes_standard:
            return step_bayes_standard(std::move(state), objective, history_, params_, rng);
        }
        return state;
    }

private:
    Mode mode_;
    GaussianParams params_;
    PosteriorHistory history_;
    DiscountedGbestTrace trace_;
};

class KalmanOptimizer final : public Optimizer {
public:
    explicit KalmanOptimizer(KalmanParams params) : params_(std::move(params)) { params_.validate(); }
    void start(const SwarmState& initial) override
    {
        filters_.clear();
        for (const Particle& p : initial.particles)
            filters_.push_back(KalmanParticleState::from_position(p.position, params_.W0));
    }
    SwarmState step(SwarmState state, const Objective& objective, RngStream& rng) override
    {
        return step_kalman(std::move(state), objective, filters_, params_, rng);
    }

private:
    KalmanParams params_;
    std::vector<KalmanParticleState> filters_;
};

class KernelOptimizer final : public Optimizer {
public:
    KernelOptimizer(bool standard, KernelParams params)
        : standard_(standard), params_(params), history_(params.window)
    {
        params_.validate();
    }
    void start(const SwarmState& initial) override
    {
        history_ = PosteriorHistory(params_.window);
        if (!standard_)
            record_initial(history_, initial, params_.weights);
    }
    SwarmState step(SwarmState state, const Objective& objective, RngStream& rng) override
    {
        if (standard_)
            return step_kernel_standard(std::move(state), objective, params_, rng);
        return step_kernel(std::move(state), objective, history_, params_, rng);
    }

private:
    bool standard_;
    KernelParams params_;
    PosteriorHistory history_;
};

}  // namespace

std::string_view to_string(AlgorithmId id) { return kAlgorithmNames[static_cast<std::size_t>(id)]; }

AlgorithmId parse_algorithm_id(std::string_view name)
{
    for (std::size_t i = 0; i < kAlgorithmNames.size(); ++i)
        if (kAlgorithmNames[i] == name)
            return static_cast<AlgorithmId>(i);
    throw ConfigError("unknown algorithm id '" + std::string(name) + "'");
}

Prior parse_prior(std::string_view name)
{
    if (name == "uniform")
        return Prior::uniform;
    if (name == "gaussian")
        return Prior::gaussian_unit;
    throw ConfigError("unknown prior '" + std::string(name) + "' (expected uniform or gaussian)");
}

std::string_view to_string(Prior prior) { return prior == Prior::uniform ? "uniform" : "gaussian"; }

CovarianceMode parse_cov_mode(std::string_view name)
{
    if (name == "per_dimension")
        return CovarianceMode::per_dimension;
    if (name == "scalar")
        return CovarianceMode::scalar;
    throw ConfigError("unknown covariance mode '" + std::string(name) + "' (expected per_dimension or scalar)");
}

std::string_view to_string(CovarianceMode mode)
{
    return mode == CovarianceMode::per_dimension ? "per_dimension" : "scalar";
}

Assumption parse_assumption(std::string_view name)
{
    if (name == "dependence")
        return Assumption::dependence;
    if (name == "independence")
        return Assumption::independence;
    throw ConfigError("unknown assumption '" + std::string(name) + "'");
}

std::string_view to_string(Assumption assumption)
{
    return assumption == Assumption::dependence ? "dependence" : "independence";
}

ClassicParams resolve_classic(AlgorithmId id, const AlgorithmOverrides& o)
{
    ClassicParams p = id == AlgorithmId::constricted ? ClassicParams::constricted_defaults()
                                                     : ClassicParams::standard_defaults();
    apply(o.w, p.w);
    apply(o.phi, p.phi);
    apply(o.eta, p.eta);
    return p;
}

BareBonesParams resolve_barebones(AlgorithmId id, const AlgorithmOverrides& o)
{
    BareBonesParams p;
    p.cov_mode = id == AlgorithmId::barebones ? CovarianceMode::per_dimension : CovarianceMode::scalar;
    p.scale = 0.2;
    apply(o.cov_mode, p.cov_mode);
    apply(o.bb_scale, p.scale);
    return p;
}

GaussianParams resolve_gaussian(AlgorithmId id, const AlgorithmOverrides& o)
{
    Assumption assumption = Assumption::independence;
    switch (id) {
    case AlgorithmId::gaussian_dep:
    case AlgorithmId::gaussian_current_dep:
        assumption = Assumption::dependence;
        break;
    case AlgorithmId::bayes_standard:
        assumption = o.assumption.value_or(Assumption::independence);
        break;
    default:
        break;
    }
    GaussianParams p = GaussianParams::defaults(assumption);
    apply(o.gamma, p.gamma);
    apply(o.beta, p.beta);
    apply(o.tau, p.tau);
    apply(o.window, p.window);
    apply(o.prior, p.prior);
    return p;
}

KernelParams resolve_kernel(AlgorithmId id, const AlgorithmOverrides& o)
{
    KernelParams p;
    p.assumption = id == AlgorithmId::kernel_indep ? Assumption::independence : Assumption::dependence;
    p.beta = id == AlgorithmId::kernel_indep ? 0.1 : 0.4;
    p.kernel.id = id == AlgorithmId::kernel_standard ? KernelId::trig : KernelId::poisson;
    apply(o.gamma, p.gamma);
    apply(o.beta, p.beta);
    apply(o.tau, p.tau);
    apply(o.window, p.window);
    apply(o.prior, p.prior);
    apply(o.kernel, p.kernel.id);
    apply(o.kernel_mu, p.kernel.mu);
    apply(o.beta_g, p.beta_g);
    apply(o.beta_b, p.beta_b);
    return p;
}

std::unique_ptr<Optimizer> make_optimizer(AlgorithmId id, const AlgorithmOverrides& overrides, std::size_t dim)
{
    using Mode = GaussianOptimizer::Mode;
    switch (id) {
    case AlgorithmId::standard:
    case AlgorithmId::constricted:
        return std::make_unique<ClassicOptimizer>(resolve_classic(id, overrides));
    case AlgorithmId::barebones:
    case AlgorithmId::barebones_scalar:
        return std::make_unique<BareBonesOptimizer>(resolve_barebones(id, overrides));
    case AlgorithmId::gaussian_dep:
    case AlgorithmId::gaussian_indep:
        return std::make_unique<GaussianOptimizer>(Mode::windowed, resolve_gaussian(id, overrides));
    case AlgorithmId::gaussian_current_dep:
    case AlgorithmId::gaussian_current_indep:
        return std::make_unique<GaussianOptimizer>(Mode::current_only, resolve_gaussian(id, overrides));
    case AlgorithmId::gaussian_gbest_trace:
        return std::make_unique<GaussianOptimizer>(Mode::gbest_trace, resolve_gaussian(id, overrides));
    case AlgorithmId::bayes_standard:
        return std::make_unique<GaussianOptimizer>(Mode::bayes_standard, resolve_gaussian(id, overrides));
    case AlgorithmId::kalman:
        return std::make_unique<KalmanOptimizer>(KalmanParams::defaults(dim));
    case AlgorithmId::kernel_standard:
        return std::make_unique<KernelOptimizer>(true, resolve_kernel(id, overrides));
    case AlgorithmId::kernel_dep:
    case AlgorithmId::kernel_indep:
        return std::make_unique<KernelOptimizer>(false, resolve_kernel(id, overrides));
    }
    throw ConfigError("unknown algorithm id");
}

}  // namespace bpso
