#pragma once

#include <cstdint>
#include <vector>

#include "sff/ensemble.hpp"
#include "sff/exact_sum.hpp"

namespace sff {

/// Running sums of |tr U^t|^{2m} over realizations, one exact accumulator
/// per (t, m) for the sum and the sum of squares. Times start at t = 1, so
/// the t = 0 subtraction in the moment definition never enters. Because the
/// sums are exact, merging accumulators in any order reproduces the
/// single-pass result bit for bit.
class MomentAccumulator {
public:
    MomentAccumulator(int tmax, std::vector<int> orders);

    /// Fold in one realization; traces must reach at least tmax.
    void add(const TraceSequence& traces);

    /// Fold another accumulator of identical shape into this one.
    void merge(const MomentAccumulator& other);

    int tmax() const { return tmax_; }
    const std::vector<int>& orders() const { return orders_; }
    std::uint64_t realizations() const { return realizations_; }

    double sum(int order_index, int t) const;
    double sum_of_squares(int order_index, int t) const;

private:
    std::size_t cell(int order_index, int t) const;

    int tmax_;
    std::vector<int> orders_; // strictly increasing, each >= 1
    std::uint64_t realizations_ = 0;
    std::vector<ExactSum> sums_;
    std::vector<ExactSum> squares_;
};

/// Averaged moments K_m(t) with standard errors of the mean.
struct SffCurve {
    int tmax = 0;
    std::vector<int> orders;
    std::uint64_t realizations = 0;
    std::vector<std::vector<double>> mean; // [order_index][t-1]
    std::vector<std::vector<double>> sem;
};

/// Rescaled moments kappa_m(tau) = (K_m(t)/m!)^{1/m} / N^L on tau = t/N^L.
struct KappaCurve {
    std::vector<int> orders;
    std::uint64_t realizations = 0;
    std::vector<double> tau;                 // tau[t-1]
    std::vector<std::vector<double>> kappa;  // [order_index][t-1]
    std::vector<std::vector<double>> sem;
};

/// Means and standard errors; requires at least two realizations.
SffCurve finalize(const MomentAccumulator& acc);

/// Conversion to (kappa_m, tau) units. Standard errors propagate to first
/// order: sem_kappa = kappa * sem_K / (m K).
KappaCurve rescale(const SffCurve& curve, Eigen::Index subsystem_dim, int num_subsystems);

/// Centered moving average with the window clipped at the edges; window must
/// be odd, window = 1 is the identity. Standard errors combine as
/// sqrt(sum sem^2)/count.
KappaCurve smooth(const KappaCurve& curve, int window);

/// Time-adaptive smoothing, window(t) = min(2 floor(t/10) + 1, 101).
KappaCurve smooth_adaptive(const KappaCurve& curve);

int adaptive_window(int t);

/// Plain series helper used by the curve smoothing (and by tests).
std::vector<double> moving_average(const std::vector<double>& series, int window);

} // namespace sff
