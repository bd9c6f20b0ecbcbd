#pragma once

#include <array>
#include <string>
#include <string_view>

#include "bpso/rng.hpp"
#include "bpso/types.hpp"

namespace bpso {

enum class ObjectiveId {
    hyper_ellipsoid,
    griewank,
    rastrigin,
    rosenbrock,
    salomon,
    schwefel,
    sphere,
    step,
    modulus_sum,
};

inline constexpr std::array<ObjectiveId, 9> kAllObjectives = {
    ObjectiveId::hyper_ellipsoid, ObjectiveId::griewank, ObjectiveId::rastrigin,
    ObjectiveId::rosenbrock,      ObjectiveId::salomon,  ObjectiveId::schwefel,
    ObjectiveId::sphere,          ObjectiveId::step,     ObjectiveId::modulus_sum,
};

std::string_view to_string(ObjectiveId id);
/// Throws ConfigError for anything but the exact lowercase ids.
ObjectiveId parse_objective_id(std::string_view name);

/// The standard search domain of each benchmark, replicated over `dim`
/// coordinates.
Bounds bounds_of(ObjectiveId id, std::size_t dim = 10);

/// A benchmark function together with its domain and optional additive
/// Gaussian evaluation noise. All benchmarks are minimized.
struct Objective {
    ObjectiveId id = ObjectiveId::sphere;
    std::size_t dim = 10;
    Bounds bounds = bounds_of(ObjectiveId::sphere, 10);
    double noise_sigma = 0.0;

    static Objective make(ObjectiveId id, std::size_t dim = 10, double noise_sigma = 0.0);
};

/// Exact noise-free value. Throws UsageError on dimension mismatch.
double eval(const Objective& objective, const Vector& u);

/// eval(u) + N(0, noise_sigma). Consumes no draws when noise_sigma == 0.
double noisy_eval(const Objective& objective, const Vector& u, RngStream& rng);

}  // namespace bpso
