#pragma once

#include <optional>

#include "bpso/swarm.hpp"

namespace bpso {

/// Parameters of the velocity-driven PSO family.
struct ClassicParams {
    double w = 0.7298;
    double phi = 1.49618;
    double eta = 1.49618;
    bool use_constriction = false;
    /// Constricted variant only: use chi in place of w instead of scaling the
    /// whole velocity expression.
    bool chi_replaces_inertia = false;

    /// Test hooks. When set, every r_phi / r_eta draw takes this value and no
    /// random numbers are consumed; forced_chi overrides the coefficient.
    std::optional<double> forced_draw;
    std::optional<double> forced_chi;

    static ClassicParams standard_defaults() { return {}; }
    static ClassicParams constricted_defaults()
    {
        ClassicParams p;
        p.w = 1.0;
        p.phi = 2.05;
        p.eta = 2.05;
        p.use_constriction = true;
        return p;
    }

    void validate() const;
};

/// chi = 2 / |2 - s - sqrt(s^2 - 4 s)| with s = phi + eta. Throws ConfigError
/// unless s > 4.
double constriction_coefficient(double phi, double eta);

/// One step of v <- w v + phi r1 (x^b - x) + eta r2 (x^g - x), x <- x + v,
/// with per-dimension draws, followed by clamping, evaluation and bests.
SwarmState step_standard(SwarmState state, const Objective& objective, const ClassicParams& params,
                         RngStream& rng);

/// As step_standard with the velocity expression multiplied by chi.
SwarmState step_constricted(SwarmState state, const Objective& objective, const ClassicParams& params,
                            RngStream& rng);

}  // namespace bpso
