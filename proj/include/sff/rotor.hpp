#pragma once

#include "sff/rng.hpp"
#include "sff/unitary.hpp"

namespace sff {

/// Two coupled kicked rotors quantized on the torus, dimension N per rotor
/// (1/h = N). Bloch boundary phases theta_* in [0,1) twist the quantization
/// grid; generic values break time-reversal invariance and are averaged over
/// as the ensemble average.
struct RotorParams {
    Eigen::Index dim = 2;   // N
    double kick1 = 9.7;
    double kick2 = 10.5;
    double gamma = 0.0;     // coupling strength
    double theta_q1 = 0.0;
    double theta_p1 = 0.0;
    double theta_q2 = 0.0;
    double theta_p2 = 0.0;
};

struct RotorScales {
    double epsilon;        // gamma * N / (2 pi)
    double chi_abs;        // |J0(epsilon)|
    double gamma_scaling;  // sigma * epsilon * N^{L/2}, sigma = 1/sqrt(2), L = 2
};

/// Single-rotor Floquet operator U_kin * U_kick in the position basis:
/// kick diagonal at q_n = (n + theta_q)/N, kinetic diagonal at
/// p_m = (m + theta_p)/N conjugated in by the boundary-phase-twisted DFT.
UnitaryMatrix build_rotor_subsystem(Eigen::Index dim, double kick, double theta_q,
                                    double theta_p);

/// Diagonal coupling exp(-i gamma N/(2 pi) cos(2 pi [q1 + q2])) on the
/// product position grid, rotor 1 slowest. gamma = 0 gives the identity.
UnitaryMatrix build_rotor_coupling(Eigen::Index dim, double gamma, double theta_q1,
                                   double theta_q2);

/// Effective transition-ensemble parameters of the coupled pair. The phase
/// model is xi = cos(eta) with eta uniform, hence chi = J0 and
/// sigma = 1/sqrt(2).
RotorScales rotor_effective_theory(const RotorParams& params);

/// U = U_c (U_1 x U_2) for the boundary phases stored in params.
UnitaryMatrix build_coupled_rotors(const RotorParams& params);

/// Fresh uniform draw of all four boundary phases; one call per realization.
RotorParams with_random_boundary_phases(RotorParams base, RngStream& rng);

} // namespace sff
