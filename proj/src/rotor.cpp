#include "sff/rotor.hpp"

#include <cmath>
#include <numbers>

#include "sff/bessel.hpp"
#include "sff/errors.hpp"

namespace sff {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

UnitaryMatrix build_rotor_subsystem(Eigen::Index dim, double kick, double theta_q,
                                    double theta_p) {
    if (dim < 2) {
        throw DimensionError("rotor subsystem requires dim >= 2");
    }
    const double n = static_cast<double>(dim);

    ComplexVector kick_diag(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double q = (static_cast<double>(j) + theta_q) / n;
        kick_diag(j) = std::polar(1.0, -kick * n / kTwoPi * std::cos(kTwoPi * q));
    }
    ComplexVector kinetic_diag(dim);
    for (Eigen::Index m = 0; m < dim; ++m) {
        const double p = (static_cast<double>(m) + theta_p) / n;
        kinetic_diag(m) = std::polar(1.0, -std::numbers::pi * n * p * p);
    }

    // Twisted DFT <p_m|q_j> = exp(-2 pi i (m + theta_p)(j + theta_q)/N)/sqrt(N);
    // unitary for any boundary phases.
    ComplexMatrix dft(dim, dim);
    const double norm = 1.0 / std::sqrt(n);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index m = 0; m < dim; ++m) {
            const double angle = -kTwoPi * (static_cast<double>(m) + theta_p) *
                                 (static_cast<double>(j) + theta_q) / n;
            dft(m, j) = norm * std::polar(1.0, angle);
        }
    }

    ComplexMatrix kinetic_pos = dft.adjoint() * (kinetic_diag.asDiagonal() * dft);
    return UnitaryMatrix(kinetic_pos * kick_diag.asDiagonal());
}

UnitaryMatrix build_rotor_coupling(Eigen::Index dim, double gamma, double theta_q1,
                                   double theta_q2) {
    if (dim < 2) {
        throw DimensionError("rotor coupling requires dim >= 2");
    }
    const double n = static_cast<double>(dim);
    ComplexMatrix coupling = ComplexMatrix::Zero(dim * dim, dim * dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double q1 = (static_cast<double>(j) + theta_q1) / n;
        for (Eigen::Index m = 0; m < dim; ++m) {
            const double q2 = (static_cast<double>(m) + theta_q2) / n;
            const Eigen::Index idx = j * dim + m; // rotor 1 slowest
            coupling(idx, idx) =
                std::polar(1.0, -gamma * n / kTwoPi * std::cos(kTwoPi * (q1 + q2)));
        }
    }
    return UnitaryMatrix(std::move(coupling));
}

RotorScales rotor_effective_theory(const RotorParams& params) {
    const double epsilon = params.gamma * static_cast<double>(params.dim) / kTwoPi;
    RotorScales scales;
    scales.epsilon = epsilon;
    scales.chi_abs = std::fabs(bessel_j0(epsilon));
    scales.gamma_scaling =
        epsilon * static_cast<double>(params.dim) / std::sqrt(2.0); // sigma = 1/sqrt(2), L = 2
    return scales;
}

UnitaryMatrix build_coupled_rotors(const RotorParams& params) {
    const UnitaryMatrix u1 =
        build_rotor_subsystem(params.dim, params.kick1, params.theta_q1, params.theta_p1);
    const UnitaryMatrix u2 =
        build_rotor_subsystem(params.dim, params.kick2, params.theta_q2, params.theta_p2);
    ComplexMatrix product = kronecker(u1.matrix(), u2.matrix());

    const double n = static_cast<double>(params.dim);
    for (Eigen::Index j = 0; j < params.dim; ++j) {
        const double q1 = (static_cast<double>(j) + params.theta_q1) / n;
        for (Eigen::Index m = 0; m < params.dim; ++m) {
            const double q2 = (static_cast<double>(m) + params.theta_q2) / n;
            const Complex phase =
                std::polar(1.0, -params.gamma * n / kTwoPi * std::cos(kTwoPi * (q1 + q2)));
            product.row(j * params.dim + m) *= phase;
        }
    }
    return UnitaryMatrix(std::move(product));
}

RotorParams with_random_boundary_phases(RotorParams base, RngStream& rng) {
    base.theta_q1 = rng.uniform01();
    base.theta_p1 = rng.uniform01();
    base.theta_q2 = rng.uniform01();
    base.theta_p2 = rng.uniform01();
    return base;
}

} // namespace sff
