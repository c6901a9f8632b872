#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace sff {

/// Error-free running sum of doubles (Shewchuk expansion, the scheme behind
/// Python's math.fsum). The exact value is carried as a list of
/// non-overlapping partials, so value() is the correctly rounded total and
/// is independent of the order in which terms were added or accumulators
/// merged. That order-independence is what makes Monte Carlo output
/// bit-identical across worker counts.
class ExactSum {
public:
    void add(double x) {
        std::size_t kept = 0;
        for (std::size_t j = 0; j < partials_.size(); ++j) {
            double y = partials_[j];
            if (std::fabs(x) < std::fabs(y)) {
                const double tmp = x;
                x = y;
                y = tmp;
            }
            const double hi = x + y;
            const double yr = hi - x;
            const double lo = y - yr;
            if (lo != 0.0) {
                partials_[kept++] = lo;
            }
            x = hi;
        }
        partials_.resize(kept);
        partials_.push_back(x);
    }

    void merge(const ExactSum& other) {
        for (const double p : other.partials_) {
            add(p);
        }
    }

    /// Correctly rounded sum, including the half-even tie correction.
    double value() const {
        std::size_t n = partials_.size();
        if (n == 0) {
            return 0.0;
        }
        double hi = partials_[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials_[--n];
            hi = x + y;
            const double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) {
                break;
            }
        }
        if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) ||
                      (lo > 0.0 && partials_[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            if (y == x - hi) {
                hi = x;
            }
        }
        return hi;
    }

    std::size_t partial_count() const { return partials_.size(); }

private:
    std::vector<double> partials_; // non-overlapping, increasing magnitude
};

} // namespace sff
