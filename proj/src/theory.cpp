#include "sff/theory.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sff/bessel.hpp"
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

double chi_abs(const PhaseDistribution& dist, double epsilon) {
    if (epsilon < 0.0) {
        throw ConfigError("chi_abs requires epsilon >= 0");
    }
    switch (dist.kind()) {
    case PhaseKind::uniform_pi: {
        if (epsilon == 0.0) {
            return 1.0;
        }
        const double x = std::numbers::pi * epsilon;
        return std::fabs(std::sin(x) / x);
    }
    case PhaseKind::cosine_of_uniform:
        return std::fabs(bessel_j0(epsilon));
    case PhaseKind::gaussian: {
        const double s = dist.sigma() * epsilon;
        return std::exp(-0.5 * s * s);
    }
    }
    throw ConfigError("unknown phase distribution kind");
}

double cue_sff_moment(double dim, int order, double t) {
    return factorial(order) * std::pow(std::min(t, dim), order);
}

double sff_prediction(double subsystem_dim, int num_subsystems, double epsilon,
                      const PhaseDistribution& dist, double t) {
    const double chi = chi_abs(dist, epsilon);
    const double weight = std::pow(chi, 2.0 * t);
    const double total_dim = std::pow(subsystem_dim, num_subsystems);
    const double factorized = std::pow(std::min(t, subsystem_dim), num_subsystems);
    const double full = std::min(t, total_dim);
    return weight * factorized + (1.0 - weight) * full;
}

double scaling_gamma(double subsystem_dim, int num_subsystems, double epsilon,
                     const PhaseDistribution& dist) {
    return dist.sigma() * epsilon * std::pow(subsystem_dim, 0.5 * num_subsystems);
}

double epsilon_for_gamma(double gamma, double subsystem_dim, int num_subsystems,
                         const PhaseDistribution& dist) {
    return gamma / (dist.sigma() * std::pow(subsystem_dim, 0.5 * num_subsystems));
}

double scaled_sff_prediction(double gamma, int num_subsystems, double subsystem_dim,
                             double tau) {
    const double tau_sh = std::pow(subsystem_dim, 1.0 - num_subsystems);
    const double weight = std::exp(-gamma * gamma * tau);
    const double factorized = std::pow(std::min(tau / tau_sh, 1.0), num_subsystems);
    return weight * factorized + (1.0 - weight) * std::min(tau, 1.0);
}

ThoulessTime thouless_time(double subsystem_dim, int num_subsystems, double epsilon,
                           const PhaseDistribution& dist) {
    const double chi = chi_abs(dist, epsilon);
    if (chi <= 0.0 || chi >= 1.0) {
        throw NumericError("Thouless time undefined at chi = " + std::to_string(chi) +
                           " (instantaneous at 0, never reached at 1)");
    }
    const double t_th =
        num_subsystems * std::log(subsystem_dim) / (2.0 * std::fabs(std::log(chi)));
    return {t_th, t_th / std::pow(subsystem_dim, num_subsystems)};
}

double moment2_prediction(double subsystem_dim, double epsilon,
                          const PhaseDistribution& dist, double t,
                          bool literal_first_coefficient) {
    const double chi = chi_abs(dist, epsilon);
    const double p = std::pow(chi, 2.0 * t);
    const double full = std::min(t, subsystem_dim * subsystem_dim);   // K_{N^2}
    const double sub = std::min(t, subsystem_dim);                    // K_N
    const double first_weight =
        literal_first_coefficient ? (1.0 - chi) * (1.0 - chi) : (1.0 - p) * (1.0 - p);
    return first_weight * 2.0 * full * full + p * p * 4.0 * sub * sub * sub * sub +
           4.0 * p * (1.0 - p) * full * sub * sub;
}

double perturbative_sff(double gamma, double tau) {
    if (tau <= 0.0) {
        throw ConfigError("perturbative_sff requires tau > 0");
    }
    const double g2t = gamma * gamma * tau;
    return 1.0 - g2t * std::exp(-gamma * tau * gamma * tau);
}

double ehrenfest_time(double dim, double kick1, double kick2) {
    if (kick1 * kick2 <= 4.0) {
        throw NumericError("Ehrenfest estimate requires k1*k2 > 4");
    }
    return std::log(dim) / (2.0 * std::log(kick1 * kick2 / 4.0));
}

namespace {

TheoryCurve make_curve(Eigen::Index subsystem_dim, int num_subsystems, double epsilon,
                       const PhaseDistribution& dist, int tmax) {
    TheoryCurve curve;
    const double n = static_cast<double>(subsystem_dim);
    const double heisenberg = std::pow(n, num_subsystems);
    curve.gamma = scaling_gamma(n, num_subsystems, epsilon, dist);
    curve.tau_sh = std::pow(n, 1.0 - num_subsystems);
    curve.tau.resize(static_cast<std::size_t>(tmax));
    curve.kappa.resize(static_cast<std::size_t>(tmax));
    for (int t = 1; t <= tmax; ++t) {
        curve.tau[static_cast<std::size_t>(t - 1)] = static_cast<double>(t) / heisenberg;
    }
    const double chi = chi_abs(dist, epsilon);
    if (chi > 0.0 && chi < 1.0) {
        curve.tau_th = thouless_time(n, num_subsystems, epsilon, dist).tau_th;
    }
    return curve;
}

} // namespace

TheoryCurve theory_curve_exact(Eigen::Index subsystem_dim, int num_subsystems,
                               double epsilon, const PhaseDistribution& dist, int tmax,
                               int order) {
    if (order != 1 && !(order == 2 && num_subsystems == 2)) {
        throw ConfigError("closed-form moment curves exist for m = 1 (any L) and "
                          "m = 2 (L = 2) only");
    }
    TheoryCurve curve = make_curve(subsystem_dim, num_subsystems, epsilon, dist, tmax);
    curve.regime = TheoryRegime::exact_extended;
    curve.order = order;
    const double n = static_cast<double>(subsystem_dim);
    const double heisenberg = std::pow(n, num_subsystems);
    for (int t = 1; t <= tmax; ++t) {
        double kappa;
        if (order == 1) {
            kappa = sff_prediction(n, num_subsystems, epsilon, dist, t) / heisenberg;
        } else {
            kappa = std::sqrt(moment2_prediction(n, epsilon, dist, t) / 2.0) / heisenberg;
        }
        curve.kappa[static_cast<std::size_t>(t - 1)] = kappa;
    }
    return curve;
}

TheoryCurve theory_curve_perturbative(Eigen::Index subsystem_dim, int num_subsystems,
                                      double epsilon, const PhaseDistribution& dist,
                                      int tmax) {
    TheoryCurve curve = make_curve(subsystem_dim, num_subsystems, epsilon, dist, tmax);
    curve.regime = TheoryRegime::perturbative;
    curve.order = 1;
    for (std::size_t i = 0; i < curve.tau.size(); ++i) {
        curve.kappa[i] = perturbative_sff(curve.gamma, curve.tau[i]);
    }
    return curve;
}

} // namespace sff
