#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "sff/rng.hpp"

namespace sff {

/// |<e^{i eps xi}>|, the modulus of the characteristic function of the
/// coupling-phase distribution: |sin(pi eps)/(pi eps)| for uniform_pi,
/// |J0(eps)| for cosine_of_uniform, exp(-sigma^2 eps^2 / 2) for gaussian.
double chi_abs(const PhaseDistribution& dist, double epsilon);

/// CUE(M) moment baseline m! (min{t, M})^m; m = 1 is the familiar
/// ramp-and-plateau min{t, M}.
double cue_sff_moment(double dim, int order, double t);

/// Convex-combination SFF with the plateau extension:
/// chi^{2t} (min{t,N})^L + (1 - chi^{2t}) min{t, N^L}.
double sff_prediction(double subsystem_dim, int num_subsystems, double epsilon,
                      const PhaseDistribution& dist, double t);

/// Scaling parameter Gamma = sigma * eps * N^{L/2}.
double scaling_gamma(double subsystem_dim, int num_subsystems, double epsilon,
                     const PhaseDistribution& dist);

/// Inverse of scaling_gamma in eps.
double epsilon_for_gamma(double gamma, double subsystem_dim, int num_subsystems,
                         const PhaseDistribution& dist);

/// Universal form of the prediction in rescaled units, depending on the
/// system only through (Gamma, L, tau_SH):
/// e^{-Gamma^2 tau} min(tau/tau_SH, 1)^L + (1 - e^{-Gamma^2 tau}) min(tau, 1).
double scaled_sff_prediction(double gamma, int num_subsystems, double subsystem_dim,
                             double tau);

struct ThoulessTime {
    double t_th;
    double tau_th;
};

/// t_Th = L ln(N) / (2 |ln chi|); undefined at chi = 0 (instantaneous) and
/// chi = 1 (never reached) - those throw NumericError.
ThoulessTime thouless_time(double subsystem_dim, int num_subsystems, double epsilon,
                           const PhaseDistribution& dist);

/// Second moment for the bipartite case (L = 2), with p = chi^{2t}:
/// (1-p)^2 K_{N^2,2} + p^2 [K_{N,2}]^2 + 4 p (1-p) K_{N^2} K_N^2.
/// literal_first_coefficient replaces (1-p)^2 by (1-chi)^2 for comparison;
/// that variant fails the strong-coupling limit and is kept only to let the
/// Monte Carlo discriminate.
double moment2_prediction(double subsystem_dim, double epsilon,
                          const PhaseDistribution& dist, double t,
                          bool literal_first_coefficient = false);

/// Weak-coupling result kappa(tau) = 1 - Gamma^2 tau e^{-(Gamma tau)^2},
/// valid for tau > tau_SH at small Gamma, arbitrary large tau.
double perturbative_sff(double gamma, double tau);

/// Ehrenfest estimate ln(N) / (2 ln(k1 k2 / 4)) for the coupled rotors;
/// requires k1 k2 > 4.
double ehrenfest_time(double dim, double kick1, double kick2);

enum class TheoryRegime { exact_extended, perturbative };

/// Sampled analytic prediction kappa_m(tau) on the integer-time grid.
struct TheoryCurve {
    TheoryRegime regime = TheoryRegime::exact_extended;
    int order = 1;
    std::vector<double> tau;
    std::vector<double> kappa;
    double gamma = 0.0;
    double tau_sh = 0.0; // N^{1-L}
    double tau_h = 1.0;
    std::optional<double> tau_th;
};

/// Extended prediction curve for order m (m = 1 any L; m = 2 requires L = 2).
TheoryCurve theory_curve_exact(Eigen::Index subsystem_dim, int num_subsystems,
                               double epsilon, const PhaseDistribution& dist, int tmax,
                               int order);

/// Perturbative curve (order 1 only).
TheoryCurve theory_curve_perturbative(Eigen::Index subsystem_dim, int num_subsystems,
                                      double epsilon, const PhaseDistribution& dist,
                                      int tmax);

} // namespace sff
