#include "sff/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "sff/errors.hpp"

namespace sff {

std::int64_t EnsembleParams::total_dim() const {
    if (subsystem_dim < 1) {
        throw DimensionError("subsystem dimension must be >= 1");
    }
    if (num_subsystems < 1) {
        throw DimensionError("number of subsystems must be >= 1");
    }
    std::int64_t d = 1;
    for (int i = 0; i < num_subsystems; ++i) {
        if (d > dim_budget / subsystem_dim) {
            throw DimensionError("total dimension N^L exceeds the budget of " +
                                 std::to_string(dim_budget));
        }
        d *= subsystem_dim;
    }
    return d;
}

UnitaryMatrix build_rmte(const EnsembleParams& params, RngStream& rng) {
    const std::int64_t d = params.total_dim();

    ComplexMatrix product = sample_cue(params.subsystem_dim, rng).matrix();
    for (int i = 1; i < params.num_subsystems; ++i) {
        product = kronecker(product, sample_cue(params.subsystem_dim, rng).matrix()).eval();
    }

    const std::vector<double> xi = sample_phases(d, params.dist, rng);
    ComplexVector coupling(d);
    for (std::int64_t j = 0; j < d; ++j) {
        coupling(j) = std::polar(1.0, params.epsilon * xi[static_cast<std::size_t>(j)]);
    }
    return UnitaryMatrix(coupling.asDiagonal() * product);
}

EigenphaseSpectrum eigenphases(const UnitaryMatrix& u) {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(u.matrix(), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigenvalue solver failed to converge on a dim=" +
                           std::to_string(u.dim()) + " matrix");
    }
    EigenphaseSpectrum spectrum;
    spectrum.phases.resize(static_cast<std::size_t>(u.dim()));
    const auto& values = solver.eigenvalues();
    for (Eigen::Index j = 0; j < u.dim(); ++j) {
        double phi = std::arg(values(j)); // [-pi, pi]
        if (phi <= -std::numbers::pi) {
            phi += 2.0 * std::numbers::pi;
        }
        spectrum.phases[static_cast<std::size_t>(j)] = phi;
    }
    return spectrum;
}

TraceSequence trace_powers(const EigenphaseSpectrum& spectrum, int tmax) {
    if (tmax < 1) {
        throw DimensionError("trace_powers requires tmax >= 1");
    }
    const std::size_t d = spectrum.phases.size();
    std::vector<Complex> eigenvalue(d);
    std::vector<Complex> power(d, Complex(1.0, 0.0));
    for (std::size_t j = 0; j < d; ++j) {
        eigenvalue[j] = std::polar(1.0, spectrum.phases[j]);
    }

    TraceSequence traces;
    traces.values.resize(static_cast<std::size_t>(tmax));
    for (int t = 1; t <= tmax; ++t) {
        Complex sum(0.0, 0.0);
        for (std::size_t j = 0; j < d; ++j) {
            power[j] *= eigenvalue[j];
            sum += power[j];
        }
        traces.values[static_cast<std::size_t>(t - 1)] = sum;
    }
    return traces;
}

} // namespace sff
