#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string_view>

#include "bpso/barebones.hpp"
#include "bpso/classic.hpp"
#include "bpso/gaussian.hpp"
#include "bpso/kalman.hpp"
#include "bpso/kernel.hpp"

namespace bpso {

enum class AlgorithmId {
    standard,
    constricted,
    barebones,
    barebones_scalar,
    gaussian_dep,
    gaussian_indep,
    gaussian_current_dep,
    gaussian_current_indep,
    gaussian_gbest_trace,
    bayes_standard,
    kalman,
    kernel_standard,
    kernel_dep,
    kernel_indep,
};

inline constexpr std::array<AlgorithmId, 14> kAllAlgorithms = {
    AlgorithmId::standard,         AlgorithmId::constricted,          AlgorithmId::barebones,
    AlgorithmId::barebones_scalar, AlgorithmId::gaussian_dep,         AlgorithmId::gaussian_indep,
    AlgorithmId::gaussian_current_dep, AlgorithmId::gaussian_current_indep, AlgorithmId::gaussian_gbest_trace,
    AlgorithmId::bayes_standard,   AlgorithmId::kalman,               AlgorithmId::kernel_standard,
    AlgorithmId::kernel_dep,       AlgorithmId::kernel_indep,
};

std::string_view to_string(AlgorithmId id);
AlgorithmId parse_algorithm_id(std::string_view name);

Prior parse_prior(std::string_view name);
std::string_view to_string(Prior prior);
CovarianceMode parse_cov_mode(std::string_view name);
std::string_view to_string(CovarianceMode mode);
Assumption parse_assumption(std::string_view name);
std::string_view to_string(Assumption assumption);

/// Optional per-run parameter overrides on top of each algorithm's defaults.
struct AlgorithmOverrides {
    std::optional<double> gamma;
    std::optional<double> beta;
    std::optional<double> tau;
    std::optional<double> w;
    std::optional<double> phi;
    std::optional<double> eta;
    std::optional<double> beta_g;
    std::optional<double> beta_b;
    std::optional<double> bb_scale;
    std::optional<double> kernel_mu;
    std::optional<std::size_t> window;
    std::optional<Prior> prior;
    std::optional<CovarianceMode> cov_mode;
    std::optional<Assumption> assumption;
    std::optional<KernelId> kernel;
};

/// Defaults after applying overrides, one block per algorithm family.
ClassicParams resolve_classic(AlgorithmId id, const AlgorithmOverrides& o);
BareBonesParams resolve_barebones(AlgorithmId id, const AlgorithmOverrides& o);
GaussianParams resolve_gaussian(AlgorithmId id, const AlgorithmOverrides& o);
KernelParams resolve_kernel(AlgorithmId id, const AlgorithmOverrides& o);

/// Owns whatever auxiliary state an algorithm carries across iterations
/// (posterior history, filters, global-best trace).
class Optimizer {
public:
    virtual ~Optimizer() = default;
    /// Called once with the freshly initialized swarm.
    virtual void start(const SwarmState& initial) = 0;
    virtual SwarmState step(SwarmState state, const Objective& objective, RngStream& rng) = 0;
};

/// Validates the resolved parameters and throws ConfigError on bad values.
std::unique_ptr<Optimizer> make_optimizer(AlgorithmId id, const AlgorithmOverrides& overrides, std::size_t dim);

}  // namespace bpso
