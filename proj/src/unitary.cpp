#include "sff/unitary.hpp"

#include <cmath>
#include <utility>

#include <unsupported/Eigen/KroneckerProduct>

#include "sff/errors.hpp"

namespace sff {

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
        throw DimensionError("UnitaryMatrix requires a non-empty square matrix");
    }
}

double UnitaryMatrix::unitarity_defect() const {
    const ComplexMatrix gram = mat_.adjoint() * mat_;
    const Eigen::Index d = mat_.rows();
    return (gram - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

UnitaryMatrix sample_cue(Eigen::Index dim, RngStream& rng) {
    if (dim < 1) {
        throw DimensionError("sample_cue requires dim >= 1");
    }
    // Complex Ginibre matrix: entries with i.i.d. standard normal real and
    // imaginary parts, filled column-major (the stream contract).
    ComplexMatrix ginibre(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            ginibre(i, j) = Complex(re, im);
        }
    }

    Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& packed = qr.matrixQR();
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Complex r_kk = packed(k, k);
        const double mag = std::abs(r_kk);
        if (mag > 0.0) {
            q.col(k) *= std::conj(r_kk) / mag;
        }
    }
    return UnitaryMatrix(std::move(q));
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b);
}

} // namespace sff
