#include "sff/rng.hpp"

#include <cmath>
#include <numbers>

#include "sff/errors.hpp"

namespace sff {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> philox_round(const std::array<std::uint32_t, 4>& c,
                                                 const std::array<std::uint32_t, 2>& k) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c[0], hi0, lo0);
    mulhilo(kPhiloxM1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key) {
    counter = philox_round(counter, key);
    for (int round = 1; round < 10; ++round) {
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
        counter = philox_round(counter, key);
    }
    return counter;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      key_{static_cast<std::uint32_t>(master_seed),
           static_cast<std::uint32_t>(master_seed >> 32)},
      // Block counter in words 0-1, stream index in words 2-3: distinct
      // streams enumerate disjoint counter ranges under the same key.
      counter_{0u, 0u, static_cast<std::uint32_t>(stream_index),
               static_cast<std::uint32_t>(stream_index >> 32)} {}

void RngStream::refill() {
    buffer_ = Philox4x32::block(counter_, key_);
    buffer_pos_ = 0;
    if (++counter_[0] == 0u) {
        ++counter_[1];
    }
}

std::uint32_t RngStream::next_u32() {
    if (buffer_pos_ >= 4) {
        refill();
    }
    return buffer_[buffer_pos_++];
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double a, double b) {
    return a + (b - a) * uniform01();
}

double RngStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return normal_spare_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    normal_spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
}

PhaseDistribution PhaseDistribution::uniform_pi() {
    return {PhaseKind::uniform_pi, std::numbers::pi / std::sqrt(3.0)};
}

PhaseDistribution PhaseDistribution::cosine_of_uniform() {
    return {PhaseKind::cosine_of_uniform, 1.0 / std::sqrt(2.0)};
}

PhaseDistribution PhaseDistribution::gaussian(double sigma) {
    if (sigma < 0.0) {
        throw ConfigError("gaussian phase distribution requires sigma >= 0");
    }
    return {PhaseKind::gaussian, sigma};
}

double PhaseDistribution::sample(RngStream& rng) const {
    switch (kind_) {
    case PhaseKind::uniform_pi:
        return rng.uniform(-std::numbers::pi, std::numbers::pi);
    case PhaseKind::cosine_of_uniform:
        return std::cos(rng.uniform(-std::numbers::pi, std::numbers::pi));
    case PhaseKind::gaussian:
        return sigma_ * rng.normal();
    }
    throw ConfigError("unknown phase distribution kind");
}

std::string PhaseDistribution::name() const {
    switch (kind_) {
    case PhaseKind::uniform_pi:
        return "uniform_pi";
    case PhaseKind::cosine_of_uniform:
        return "cosine_of_uniform";
    case PhaseKind::gaussian:
        return "gaussian";
    }
    return "unknown";
}

PhaseDistribution PhaseDistribution::parse(const std::string& name, double sigma) {
    if (name == "uniform_pi") {
        return uniform_pi();
    }
    if (name == "cosine_of_uniform") {
        return cosine_of_uniform();
    }
    if (name == "gaussian") {
        return gaussian(sigma);
    }
    throw ConfigError("unknown phase distribution kind: " + name);
}

std::vector<double> sample_phases(std::int64_t count, const PhaseDistribution& dist,
                                  RngStream& rng) {
    if (count < 1) {
        throw ConfigError("sample_phases requires count >= 1");
    }
    std::vector<double> phases(static_cast<std::size_t>(count));
    for (double& xi : phases) {
        xi = dist.sample(rng);
    }
    return phases;
}

} // namespace sff
