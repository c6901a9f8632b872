#pragma once

#include <complex>

#include <Eigen/Dense>

#include "sff/rng.hpp"

namespace sff {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Dense unitary matrix. Construction only checks squareness; the unitarity
/// contract (max-norm of U^dag U - 1 below 1e-10) is checkable on demand and
/// is asserted by the test suites for every construction path.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(ComplexMatrix m);

    Eigen::Index dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }

    /// max_ij |(U^dag U - 1)_ij|; O(dim^3).
    double unitarity_defect() const;

private:
    ComplexMatrix mat_;
};

/// Haar-random unitary on U(dim) (circular unitary ensemble): QR factor of a
/// complex Ginibre matrix, each column of Q corrected by the phase of the
/// matching diagonal of R. Without that correction the QR convention biases
/// the distribution; with it the law is exactly Haar.
UnitaryMatrix sample_cue(Eigen::Index dim, RngStream& rng);

/// Kronecker product with the first factor as the slowest-varying index.
ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace sff
