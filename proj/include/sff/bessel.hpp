#pragma once

namespace sff {

/// Bessel function of the first kind, order zero, to better than 1e-12
/// absolute accuracy on the whole real line. Maclaurin series in
/// double-double arithmetic for |x| <= 16 (the cancellation there exceeds
/// plain double), Hankel asymptotic expansion beyond.
double bessel_j0(double x);

} // namespace sff
