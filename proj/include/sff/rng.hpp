#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sff {

/// Philox-4x32-10 counter-based block cipher (Salmon et al.), the core of
/// all randomness in this library. Counter-based generation gives cheap,
/// statistically independent streams: every (key, counter) pair maps to an
/// independent 128-bit block, so parallel realizations never share state.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key);
};

/// One reproducible random stream, keyed by (master_seed, stream_index).
/// Streams with distinct indices are independent; the same pair replays the
/// identical sequence bit for bit. One stream per Monte Carlo realization.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01();
    /// Uniform on [a, b).
    double uniform(double a, double b);
    /// Standard normal via Box-Muller (pairs are cached, so the draw count
    /// is deterministic regardless of platform).
    double normal();

private:
    void refill();

    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buffer_{};
    int buffer_pos_ = 4;
    double normal_spare_ = 0.0;
    bool have_spare_ = false;
};

enum class PhaseKind { uniform_pi, cosine_of_uniform, gaussian };

/// Distribution of the coupling phases xi. All kinds have zero mean; sigma()
/// is the standard deviation of xi (pi/sqrt(3), 1/sqrt(2), or the Gaussian
/// sigma respectively).
class PhaseDistribution {
public:
    static PhaseDistribution uniform_pi();
    static PhaseDistribution cosine_of_uniform();
    static PhaseDistribution gaussian(double sigma);

    PhaseKind kind() const { return kind_; }
    double sigma() const { return sigma_; }

    double sample(RngStream& rng) const;

    std::string name() const;
    static PhaseDistribution parse(const std::string& name, double sigma = 1.0);

private:
    PhaseDistribution(PhaseKind kind, double sigma) : kind_(kind), sigma_(sigma) {}
    PhaseKind kind_;
    double sigma_;
};

/// count i.i.d. draws of xi from dist.
std::vector<double> sample_phases(std::int64_t count, const PhaseDistribution& dist,
                                  RngStream& rng);

} // namespace sff
