#include "bpso/classic.hpp"

#include <cmath>

namespace bpso {

void ClassicParams::validate() const
{
    if (!(w >= 0.0) || !(phi >= 0.0) || !(eta >= 0.0))
        throw ConfigError("w, phi and eta must be non-negative");
    if (use_constriction && !(phi + eta > 4.0) && !forced_chi)
        throw ConfigError("constriction requires phi + eta > 4");
}

double constriction_coefficient(double phi, double eta)
{
    const double s = phi + eta;
    if (!(s > 4.0))
        throw ConfigError("constriction coefficient requires phi + eta > 4, got " + std::to_string(s));
    return 2.0 / std::abs(2.0 - s - std::sqrt(s * s - 4.0 * s));
}

namespace {

SwarmState velocity_step(SwarmState state, const Objective& objective, const ClassicParams& params,
                         double chi, RngStream& rng)
{
    const Eigen::Index dim = static_cast<Eigen::Index>(state.dim());
    const Vector& gbest = state.global_best_position;
    const double inertia = params.chi_replaces_inertia ? chi : params.w;
    const double outer = params.chi_replaces_inertia ? 1.0 : chi;
    auto draw = [&]() { return params.forced_draw ? *params.forced_draw : rng.uniform_open(); };

    for (Particle& p : state.particles) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            const double r_phi = draw();
            const double r_eta = draw();
            p.velocity[k] = outer * (inertia * p.velocity[k] +
                                     params.phi * r_phi * (p.best_position[k] - p.position[k]) +
                                     params.eta * r_eta * (gbest[k] - p.position[k]));
        }
        p.position += p.velocity;
    }
    finish_move(state, objective, rng);
    return state;
}

}  // namespace

SwarmState step_standard(SwarmState state, const Objective& objective, const ClassicParams& params,
                         RngStream& rng)
{
    params.validate();
    return velocity_step(std::move(state), objective, params, 1.0, rng);
}

SwarmState step_constricted(SwarmState state, const Objective& objective, const ClassicParams& params,
                            RngStream& rng)
{
    params.validate();
    const double chi = params.forced_chi ? *params.forced_chi : constriction_coefficient(params.phi, params.eta);
    return velocity_step(std::move(state), objective, params, chi, rng);
}

}  // namespace bpso
