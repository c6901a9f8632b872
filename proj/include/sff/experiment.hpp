#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sff/ensemble.hpp"
#include "sff/moments.hpp"
#include "sff/rotor.hpp"
#include "sff/theory.hpp"

namespace sff {

enum class ModelKind { rmte, rotors };
enum class OutputFormat { csv, json };

ModelKind parse_model(const std::string& name);
OutputFormat parse_format(const std::string& name);

struct ExperimentConfig {
    ModelKind model = ModelKind::rmte;
    Eigen::Index subsystem_dim = 8;  // N
    int num_subsystems = 2;          // L; the rotor model fixes L = 2
    std::optional<double> epsilon;   // rmte coupling
    std::optional<double> gamma;     // rotor coupling strength
    PhaseDistribution dist = PhaseDistribution::uniform_pi();
    double kick1 = 9.7;
    double kick2 = 10.5;
    std::uint64_t realizations = 1000;
    int tmax = 0;                    // 0 resolves to 3 N^L
    std::vector<int> moments = {1};
    std::uint64_t master_seed = 0;
    int smoothing_window = 0;        // 0 = adaptive default, 1 = none, odd = fixed
    int workers = 1;

    /// Throws ConfigError with a description before any compute.
    void validate() const;
    int resolved_tmax() const;
    /// The coupling strength entering the theory: epsilon for rmte,
    /// gamma N/(2 pi) for rotors.
    double effective_epsilon() const;
    /// Phase model entering chi: the configured dist for rmte,
    /// cosine_of_uniform for rotors.
    PhaseDistribution effective_dist() const;
};

struct DerivedScales {
    double epsilon = 0.0;
    double chi = 0.0;
    double gamma_scaling = 0.0;       // Gamma
    double tau_sh = 0.0;
    std::optional<double> t_th;       // absent when chi is 0 or 1
    std::optional<double> tau_th;
    std::optional<double> ehrenfest;  // rotors only
};

struct ResultBundle {
    ExperimentConfig config;
    DerivedScales scales;
    SffCurve raw;                 // K_m(t) with standard errors
    KappaCurve kappa;             // rescaled, unsmoothed
    KappaCurve kappa_smoothed;    // per the configured window
    std::vector<std::optional<TheoryCurve>> theory_exact;  // aligned with orders
    std::optional<TheoryCurve> theory_perturbative;        // order 1
};

DerivedScales derive_scales(const ExperimentConfig& cfg);

/// Runs cfg.realizations independent realizations (stream r for realization
/// r), merges the per-worker accumulators, finalizes, rescales, smooths and
/// attaches matching theory curves. Output is bit-identical for any worker
/// count. Numeric failures name the realization index and seed.
ResultBundle run_experiment(const ExperimentConfig& cfg);

/// csv: <dir>/results.csv plus <dir>/results.meta.json sidecar.
/// json: everything in <dir>/results.json.
/// Numeric fields round-trip at 17 significant digits.
void emit_results(const ResultBundle& bundle, OutputFormat format,
                  const std::filesystem::path& out_dir);

/// Worker-pool primitive used by run_experiment, exposed for the suites:
/// realization index r is always processed with RngStream(master_seed, r),
/// whatever the worker count.
MomentAccumulator accumulate_realizations(const ExperimentConfig& cfg);

} // namespace sff
