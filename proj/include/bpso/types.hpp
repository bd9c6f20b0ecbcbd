#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace bpso {

/// A point in the m-dimensional solution space. Used for positions,
/// velocities and gradients alike.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Invalid configuration: bad bounds, unknown ids, out-of-range parameters.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Caller violated a precondition (dimension mismatch, empty history, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A fitness evaluation produced something unusable (NaN).
class EvaluationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Linear algebra broke down (singular system, non-finite result).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Axis-aligned search domain. lower[k] <= upper[k]; a zero-width
/// dimension pins that coordinate.
struct Bounds {
    Vector lower;
    Vector upper;

    static Bounds cube(std::size_t dim, double lo, double hi)
    {
        return {Vector::Constant(static_cast<Eigen::Index>(dim), lo),
                Vector::Constant(static_cast<Eigen::Index>(dim), hi)};
    }

    std::size_t dim() const { return static_cast<std::size_t>(lower.size()); }

    /// Throws ConfigError unless both vectors have the same non-zero length,
    /// are finite and lower <= upper componentwise.
    void validate() const;
};

/// Componentwise clip into [lower, upper]. In-bounds input comes back unchanged.
Vector clamp_to_bounds(const Vector& position, const Bounds& bounds);

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace bpso
