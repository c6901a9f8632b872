#include "sff/moments.hpp"

#include <algorithm>
#include <cmath>

#include "sff/errors.hpp"

namespace sff {

namespace {

double factorial(int m) {
    double f = 1.0;
    for (int k = 2; k <= m; ++k) {
        f *= k;
    }
    return f;
}

} // namespace

MomentAccumulator::MomentAccumulator(int tmax, std::vector<int> orders)
    : tmax_(tmax), orders_(std::move(orders)) {
    if (tmax_ < 1) {
        throw DimensionError("MomentAccumulator requires tmax >= 1");
    }
    std::sort(orders_.begin(), orders_.end());
    orders_.erase(std::unique(orders_.begin(), orders_.end()), orders_.end());
    if (orders_.empty() || orders_.front() < 1) {
        throw ConfigError("moment orders must be a non-empty set of integers >= 1");
    }
    const std::size_t cells = orders_.size() * static_cast<std::size_t>(tmax_);
    sums_.resize(cells);
    squares_.resize(cells);
}

std::size_t MomentAccumulator::cell(int order_index, int t) const {
    return static_cast<std::size_t>(order_index) * static_cast<std::size_t>(tmax_) +
           static_cast<std::size_t>(t - 1);
}

void MomentAccumulator::add(const TraceSequence& traces) {
    if (traces.tmax() < tmax_) {
        throw DimensionError("trace sequence shorter than accumulator tmax");
    }
    for (int t = 1; t <= tmax_; ++t) {
        const double abs2 = std::norm(traces.values[static_cast<std::size_t>(t - 1)]);
        double power = 1.0;
        int reached = 0;
        for (std::size_t oi = 0; oi < orders_.size(); ++oi) {
            const int m = orders_[oi];
            for (; reached < m; ++reached) {
                power *= abs2;
            }
            sums_[cell(static_cast<int>(oi), t)].add(power);
            squares_[cell(static_cast<int>(oi), t)].add(power * power);
        }
    }
    ++realizations_;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.tmax_ != tmax_ || other.orders_ != orders_) {
        throw DimensionError("cannot merge accumulators of different shape");
    }
    for (std::size_t i = 0; i < sums_.size(); ++i) {
        sums_[i].merge(other.sums_[i]);
        squares_[i].merge(other.squares_[i]);
    }
    realizations_ += other.realizations_;
}

double MomentAccumulator::sum(int order_index, int t) const {
    return sums_[cell(order_index, t)].value();
}

double MomentAccumulator::sum_of_squares(int order_index, int t) const {
    return squares_[cell(order_index, t)].value();
}

SffCurve finalize(const MomentAccumulator& acc) {
    if (acc.realizations() < 2) {
        throw NumericError("standard errors require at least 2 realizations");
    }
    const double n = static_cast<double>(acc.realizations());
    SffCurve curve;
    curve.tmax = acc.tmax();
    curve.orders = acc.orders();
    curve.realizations = acc.realizations();
    curve.mean.assign(curve.orders.size(), std::vector<double>(acc.tmax()));
    curve.sem.assign(curve.orders.size(), std::vector<double>(acc.tmax()));
    for (std::size_t oi = 0; oi < curve.orders.size(); ++oi) {
        for (int t = 1; t <= acc.tmax(); ++t) {
            const double s1 = acc.sum(static_cast<int>(oi), t);
            const double s2 = acc.sum_of_squares(static_cast<int>(oi), t);
            const double mean = s1 / n;
            const double sample_var = std::max(0.0, (s2 - n * mean * mean) / (n - 1.0));
            curve.mean[oi][static_cast<std::size_t>(t - 1)] = mean;
            curve.sem[oi][static_cast<std::size_t>(t - 1)] = std::sqrt(sample_var / n);
        }
    }
    return curve;
}

KappaCurve rescale(const SffCurve& curve, Eigen::Index subsystem_dim, int num_subsystems) {
    const double heisenberg =
        std::pow(static_cast<double>(subsystem_dim), num_subsystems); // N^L
    KappaCurve out;
    out.orders = curve.orders;
    out.realizations = curve.realizations;
    out.tau.resize(static_cast<std::size_t>(curve.tmax));
    for (int t = 1; t <= curve.tmax; ++t) {
        out.tau[static_cast<std::size_t>(t - 1)] = static_cast<double>(t) / heisenberg;
    }
    out.kappa.assign(curve.orders.size(), std::vector<double>(curve.tmax));
    out.sem.assign(curve.orders.size(), std::vector<double>(curve.tmax));
    for (std::size_t oi = 0; oi < curve.orders.size(); ++oi) {
        const int m = curve.orders[oi];
        const double mfact = factorial(m);
        for (std::size_t i = 0; i < static_cast<std::size_t>(curve.tmax); ++i) {
            const double k_mean = curve.mean[oi][i];
            const double k_sem = curve.sem[oi][i];
            if (k_mean <= 0.0) {
                out.kappa[oi][i] = 0.0;
                out.sem[oi][i] = 0.0;
                continue;
            }
            const double kappa = std::pow(k_mean / mfact, 1.0 / m) / heisenberg;
            out.kappa[oi][i] = kappa;
            out.sem[oi][i] = kappa * k_sem / (m * k_mean);
        }
    }
    return out;
}

std::vector<double> moving_average(const std::vector<double>& series, int window) {
    if (window < 1 || window % 2 == 0) {
        throw ConfigError("smoothing window must be a positive odd integer");
    }
    const int n = static_cast<int>(series.size());
    const int half = window / 2;
    std::vector<double> out(series.size());
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - half);
        const int hi = std::min(n - 1, i + half);
        double acc = 0.0;
        for (int j = lo; j <= hi; ++j) {
            acc += series[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = acc / static_cast<double>(hi - lo + 1);
    }
    return out;
}

namespace {

KappaCurve smooth_with_window_fn(const KappaCurve& curve, int (*window_at)(int),
                                 int fixed_window) {
    const int n = static_cast<int>(curve.tau.size());
    KappaCurve out = curve;
    for (std::size_t oi = 0; oi < curve.orders.size(); ++oi) {
        for (int i = 0; i < n; ++i) {
            const int w = window_at ? window_at(i + 1) : fixed_window;
            const int half = w / 2;
            const int lo = std::max(0, i - half);
            const int hi = std::min(n - 1, i + half);
            double acc = 0.0;
            double var = 0.0;
            for (int j = lo; j <= hi; ++j) {
                acc += curve.kappa[oi][static_cast<std::size_t>(j)];
                const double s = curve.sem[oi][static_cast<std::size_t>(j)];
                var += s * s;
            }
            const double count = static_cast<double>(hi - lo + 1);
            out.kappa[oi][static_cast<std::size_t>(i)] = acc / count;
            out.sem[oi][static_cast<std::size_t>(i)] = std::sqrt(var) / count;
        }
    }
    return out;
}

} // namespace

KappaCurve smooth(const KappaCurve& curve, int window) {
    if (window < 1 || window % 2 == 0) {
        throw ConfigError("smoothing window must be a positive odd integer");
    }
    if (window > static_cast<int>(curve.tau.size())) {
        throw ConfigError("smoothing window exceeds the curve length");
    }
    return smooth_with_window_fn(curve, nullptr, window);
}

int adaptive_window(int t) {
    return std::min(2 * (t / 10) + 1, 101);
}

KappaCurve smooth_adaptive(const KappaCurve& curve) {
    return smooth_with_window_fn(curve, &adaptive_window, 1);
}

} // namespace sff
