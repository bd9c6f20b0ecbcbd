#include "bpso/objectives.hpp"

#include <cmath>
#include <numbers>

namespace bpso {

namespace {

constexpr std::array<std::string_view, 9> kNames = {
    "hyper_ellipsoid", "griewank", "rastrigin", "rosenbrock", "salomon",
    "schwefel",        "sphere",   "step",      "modulus_sum",
};

double hyper_ellipsoid(const Vector& u)
{
    double sum = 0.0;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        const double t = static_cast<double>(k + 1) * u[k];
        sum += t * t;
    }
    return sum;
}

double griewank(const Vector& u)
{
    double sum = 0.0;
    double prod = 1.0;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        sum += u[k] * u[k];
        prod *= std::cos(u[k] / std::sqrt(static_cast<double>(k + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

double rastrigin(const Vector& u)
{
    double sum = 0.0;
    for (Eigen::Index k = 0; k < u.size(); ++k)
        sum += u[k] * u[k] - 10.0 * std::cos(2.0 * std::numbers::pi * u[k]);
    return 10.0 * static_cast<double>(u.size()) + sum;
}

double rosenbrock(const Vector& u)
{
    double sum = 0.0;
    for (Eigen::Index k = 0; k + 1 < u.size(); ++k) {
        const double a = u[k + 1] - u[k] * u[k];
        const double b = u[k] - 1.0;
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

double salomon(const Vector& u)
{
    const double r = u.norm();
    return 1.0 - std::cos(2.0 * std::numbers::pi * r) + 0.1 * r;
}

double schwefel(const Vector& u)
{
    double sum = 0.0;
    for (Eigen::Index k = 0; k < u.size(); ++k)
        sum -= u[k] * std::sin(std::sqrt(std::abs(u[k])));
    return 500.0 * static_cast<double>(u.size()) + sum;
}

double step(const Vector& u)
{
    double sum = 0.0;
    for (Eigen::Index k = 0; k < u.size(); ++k)
        sum += std::floor(u[k]);
    return 6.0 * static_cast<double>(u.size()) + sum;
}

double modulus_sum(const Vector& u)
{
    return 6.0 * static_cast<double>(u.size()) + u.lpNorm<1>();
}

}  // namespace

std::string_view to_string(ObjectiveId id)
{
    return kNames[static_cast<std::size_t>(id)];
}

ObjectiveId parse_objective_id(std::string_view name)
{
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name)
            return static_cast<ObjectiveId>(i);
    throw ConfigError("unknown objective id '" + std::string(name) + "'");
}

Bounds bounds_of(ObjectiveId id, std::size_t dim)
{
    switch (id) {
    case ObjectiveId::griewank:
        return Bounds::cube(dim, -600.0, 600.0);
    case ObjectiveId::rastrigin:
    case ObjectiveId::step:
    case ObjectiveId::modulus_sum:
        return Bounds::cube(dim, -5.12, 5.12);
    case ObjectiveId::rosenbrock:
        return Bounds::cube(dim, -30.0, 30.0);
    case ObjectiveId::schwefel:
        return Bounds::cube(dim, -500.0, 500.0);
    case ObjectiveId::hyper_ellipsoid:
    case ObjectiveId::salomon:
    case ObjectiveId::sphere:
        return Bounds::cube(dim, -100.0, 100.0);
    }
    throw ConfigError("unknown objective id");
}

Objective Objective::make(ObjectiveId id, std::size_t dim, double noise_sigma)
{
    if (dim == 0)
        throw ConfigError("objective dimension must be positive");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        throw ConfigError("noise sigma must be finite and non-negative");
    return Objective{id, dim, bounds_of(id, dim), noise_sigma};
}

double eval(const Objective& objective, const Vector& u)
{
    if (static_cast<std::size_t>(u.size()) != objective.dim)
        throw UsageError("objective " + std::string(to_string(objective.id)) + " expects dimension " +
                         std::to_string(objective.dim) + ", got " + std::to_string(u.size()));
    switch (objective.id) {
    case ObjectiveId::hyper_ellipsoid: return hyper_ellipsoid(u);
    case ObjectiveId::griewank: return griewank(u);
    case ObjectiveId::rastrigin: return rastrigin(u);
    case ObjectiveId::rosenbrock: return rosenbrock(u);
    case ObjectiveId::salomon: return salomon(u);
    case ObjectiveId::schwefel: return schwefel(u);
    case ObjectiveId::sphere: return u.squaredNorm();
    case ObjectiveId::step: return step(u);
    case ObjectiveId::modulus_sum: return modulus_sum(u);
    }
    throw ConfigError("unknown objective id");
}

double noisy_eval(const Objective& objective, const Vector& u, RngStream& rng)
{
    const double value = eval(objective, u);
    if (objective.noise_sigma == 0.0)
        return value;
    return value + rng.normal(0.0, objective.noise_sigma);
}

}  // namespace bpso
