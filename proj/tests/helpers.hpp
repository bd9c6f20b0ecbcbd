#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "bpso/history.hpp"
#include "bpso/rng.hpp"
#include "bpso/swarm.hpp"

namespace testing {

using bpso::Matrix;
using bpso::Vector;

inline Vector vec(std::initializer_list<double> values)
{
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values)
        v[i++] = x;
    return v;
}

inline Vector random_vector(bpso::RngStream& rng, Eigen::Index m, double lo = -1.0, double hi = 1.0)
{
    Vector v(m);
    for (Eigen::Index i = 0; i < m; ++i)
        v[i] = rng.uniform(lo, hi);
    return v;
}

/// B B^T + ridge I with B uniform in [-1, 1).
inline Matrix random_spd(bpso::RngStream& rng, Eigen::Index m, double ridge = 0.1)
{
    Matrix b(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            b(i, j) = rng.uniform(-1.0, 1.0);
    return b * b.transpose() + ridge * Matrix::Identity(m, m);
}

inline bpso::EvalRecord record(std::size_t iteration, std::size_t particle, Vector position, double weight)
{
    bpso::EvalRecord r;
    r.iteration = iteration;
    r.particle = particle;
    r.position = std::move(position);
    r.raw = 1.0 / weight;
    r.weight = weight;
    return r;
}

/// `groups` iterations with `per_group` random records each.
inline bpso::PosteriorHistory random_history(bpso::RngStream& rng, Eigen::Index m, std::size_t groups,
                                             std::size_t per_group, double spread = 2.0)
{
    bpso::PosteriorHistory h(groups);
    for (std::size_t j = 0; j < groups; ++j) {
        std::vector<bpso::EvalRecord> recs;
        for (std::size_t i = 0; i < per_group; ++i)
            recs.push_back(record(j, i, random_vector(rng, m, -spread, spread), rng.uniform(0.1, 2.0)));
        h.push(std::move(recs));
    }
    return h;
}

/// Central finite-difference gradient.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double h = 1e-6)
{
    Vector g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Vector a = x, b = x;
        a[i] += h;
        b[i] -= h;
        g[i] = (f(a) - f(b)) / (2.0 * h);
    }
    return g;
}

/// ||a - b|| / max(||b||, floor): relative error that tolerates tiny gradients.
inline double rel_error(const Vector& a, const Vector& b, double floor = 1e-3)
{
    return (a - b).norm() / std::max(b.norm(), floor);
}

inline double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

/// A swarm built by hand: particle i at positions[i], evaluated on `objective`.
inline bpso::SwarmState swarm_at(const std::vector<Vector>& positions, const bpso::Objective& objective)
{
    bpso::SwarmState s;
    for (const Vector& x : positions) {
        bpso::Particle p;
        p.position = x;
        p.velocity = Vector::Zero(x.size());
        p.raw = bpso::eval(objective, x);
        p.best_position = x;
        p.best_raw = p.raw;
        s.particles.push_back(p);
    }
    s.global_best_particle = 0;
    for (std::size_t i = 1; i < s.particles.size(); ++i)
        if (s.particles[i].best_raw < s.particles[s.global_best_particle].best_raw)
            s.global_best_particle = i;
    s.global_best_position = s.particles[s.global_best_particle].best_position;
    s.global_best_raw = s.particles[s.global_best_particle].best_raw;
    return s;
}

}  // namespace testing
