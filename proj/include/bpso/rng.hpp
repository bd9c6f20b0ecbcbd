#pragma once

#include <array>
#include <cstdint>

namespace bpso {

/// Seeded xoshiro256** stream. The state is expanded from the seed with
/// splitmix64, and every draw is computed with integer arithmetic plus
/// IEEE-exact operations (sqrt, division) and std::log, so identical seeds
/// give identical sequences on every conforming platform.
///
/// Streams are values: copy one to fork it, never share one between runs.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0);

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform();
    /// Uniform on the open interval (0, 1).
    double uniform_open();
    /// Uniform on [lo, hi); returns lo exactly when lo == hi.
    double uniform(double lo, double hi);
    /// Standard normal via the Marsaglia polar method.
    double normal();
    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    bool operator==(const RngStream&) const = default;

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Odd multiplier used to derive per-run seeds inside a suite:
/// seed(k) = base_seed ^ (k * kRunSeedStride).
inline constexpr std::uint64_t kRunSeedStride = 0x9E3779B97F4A7C15ull;

inline std::uint64_t derive_run_seed(std::uint64_t base_seed, std::uint64_t run_index)
{
    return base_seed ^ (run_index * kRunSeedStride);
}

}  // namespace bpso
