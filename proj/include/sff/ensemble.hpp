#pragma once

#include <cstdint>
#include <vector>

#include "sff/rng.hpp"
#include "sff/unitary.hpp"

namespace sff {

/// One instance of the random-matrix transition ensemble: L independent
/// CUE(N) subsystems coupled by a random diagonal phase unitary of
/// strength epsilon.
struct EnsembleParams {
    Eigen::Index subsystem_dim = 2;                       // N
    int num_subsystems = 1;                               // L
    double epsilon = 0.0;
    PhaseDistribution dist = PhaseDistribution::uniform_pi();
    std::int64_t dim_budget = std::int64_t{1} << 16;

    /// N^L, overflow-checked against dim_budget.
    std::int64_t total_dim() const;
};

/// Quasi-energies phi_j of one realization, each in (-pi, pi].
struct EigenphaseSpectrum {
    std::vector<double> phases;

    Eigen::Index dim() const { return static_cast<Eigen::Index>(phases.size()); }
};

/// tr(U^t) for t = 1..tmax; values[t-1] holds time t.
struct TraceSequence {
    std::vector<Complex> values;

    int tmax() const { return static_cast<int>(values.size()); }
};

/// Floquet operator U = U_c(eps) (U_1 x ... x U_L): fresh CUE(N) factors
/// (subsystem 1 slowest index), then N^L fresh coupling phases applied as a
/// diagonal to the rows. Both are resampled per realization.
UnitaryMatrix build_rmte(const EnsembleParams& params, RngStream& rng);

/// Eigenphases of a dense unitary via a complex Schur reduction (the matrix
/// is treated as general non-Hermitian; unitarity is not assumed by the
/// solver). Sum of e^{i phi_j} reproduces tr U to 1e-8 * dim.
EigenphaseSpectrum eigenphases(const UnitaryMatrix& u);

/// Trace powers from the spectrum by running phase rotation, cost
/// O(dim * tmax); no matrix powers involved.
TraceSequence trace_powers(const EigenphaseSpectrum& spectrum, int tmax);

} // namespace sff
