#include "sff/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <thread>
#include <utility>

#include <json.hpp>

#include "sff/errors.hpp"
#include "sff/version.hpp"

extern "C" void openblas_set_num_threads(int);

namespace sff {

namespace {

// The worker pool parallelizes over realizations; nested BLAS threading
// would only add scheduling noise.
void pin_blas_threads() {
    static std::once_flag flag;
    std::call_once(flag, [] { openblas_set_num_threads(1); });
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ModelKind parse_model(const std::string& name) {
    if (name == "rmte") {
        return ModelKind::rmte;
    }
    if (name == "rotors") {
        return ModelKind::rotors;
    }
    throw ConfigError("unknown model: " + name + " (expected rmte or rotors)");
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") {
        return OutputFormat::csv;
    }
    if (name == "json") {
        return OutputFormat::json;
    }
    throw ConfigError("unknown output format: " + name + " (expected csv or json)");
}

void ExperimentConfig::validate() const {
    if (realizations < 2) {
        throw ConfigError("realizations must be >= 2");
    }
    if (moments.empty()) {
        throw ConfigError("the moment set must not be empty");
    }
    for (const int m : moments) {
        if (m < 1) {
            throw ConfigError("moment orders must be >= 1");
        }
    }
    if (tmax < 0) {
        throw ConfigError("tmax must be positive (or 0 for the 3 N^L default)");
    }
    if (smoothing_window < 0 || (smoothing_window > 1 && smoothing_window % 2 == 0)) {
        throw ConfigError("smoothing window must be 0 (adaptive) or a positive odd integer");
    }
    if (workers < 1) {
        throw ConfigError("workers must be >= 1");
    }
    if (model == ModelKind::rmte) {
        if (!epsilon.has_value()) {
            throw ConfigError("model rmte requires epsilon");
        }
        if (gamma.has_value()) {
            throw ConfigError("gamma applies to the rotor model only");
        }
        if (*epsilon < 0.0) {
            throw ConfigError("epsilon must be >= 0");
        }
        EnsembleParams params;
        params.subsystem_dim = subsystem_dim;
        params.num_subsystems = num_subsystems;
        params.total_dim(); // budget check
    } else {
        if (!gamma.has_value()) {
            throw ConfigError("model rotors requires gamma");
        }
        if (epsilon.has_value()) {
            throw ConfigError("epsilon applies to the rmte model only; rotors take gamma");
        }
        if (*gamma < 0.0) {
            throw ConfigError("gamma must be >= 0");
        }
        if (subsystem_dim < 2) {
            throw ConfigError("rotor quantization requires N >= 2");
        }
        if (num_subsystems != 2) {
            throw ConfigError("the rotor model is a pair, L = 2");
        }
    }
}

int ExperimentConfig::resolved_tmax() const {
    if (tmax > 0) {
        return tmax;
    }
    const double heisenberg = std::pow(static_cast<double>(subsystem_dim), num_subsystems);
    return static_cast<int>(3.0 * heisenberg);
}

double ExperimentConfig::effective_epsilon() const {
    if (model == ModelKind::rmte) {
        return epsilon.value();
    }
    return gamma.value() * static_cast<double>(subsystem_dim) / (2.0 * std::numbers::pi);
}

PhaseDistribution ExperimentConfig::effective_dist() const {
    return model == ModelKind::rmte ? dist : PhaseDistribution::cosine_of_uniform();
}

DerivedScales derive_scales(const ExperimentConfig& cfg) {
    DerivedScales scales;
    const double n = static_cast<double>(cfg.subsystem_dim);
    const PhaseDistribution dist = cfg.effective_dist();
    scales.epsilon = cfg.effective_epsilon();
    scales.chi = chi_abs(dist, scales.epsilon);
    scales.gamma_scaling = scaling_gamma(n, cfg.num_subsystems, scales.epsilon, dist);
    scales.tau_sh = std::pow(n, 1.0 - cfg.num_subsystems);
    if (scales.chi > 0.0 && scales.chi < 1.0) {
        const ThoulessTime th = thouless_time(n, cfg.num_subsystems, scales.epsilon, dist);
        scales.t_th = th.t_th;
        scales.tau_th = th.tau_th;
    }
    if (cfg.model == ModelKind::rotors) {
        scales.ehrenfest = ehrenfest_time(n, cfg.kick1, cfg.kick2);
    }
    return scales;
}

MomentAccumulator accumulate_realizations(const ExperimentConfig& cfg) {
    cfg.validate();
    pin_blas_threads();
    const int tmax = cfg.resolved_tmax();

    MomentAccumulator total(tmax, cfg.moments);
    std::atomic<std::uint64_t> next{0};
    std::mutex merge_mutex;
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto run_one = [&](std::uint64_t r, MomentAccumulator& local) {
        RngStream rng(cfg.master_seed, r);
        UnitaryMatrix u = [&] {
            if (cfg.model == ModelKind::rmte) {
                EnsembleParams params;
                params.subsystem_dim = cfg.subsystem_dim;
                params.num_subsystems = cfg.num_subsystems;
                params.epsilon = *cfg.epsilon;
                params.dist = cfg.dist;
                return build_rmte(params, rng);
            }
            RotorParams base;
            base.dim = cfg.subsystem_dim;
            base.kick1 = cfg.kick1;
            base.kick2 = cfg.kick2;
            base.gamma = *cfg.gamma;
            return build_coupled_rotors(with_random_boundary_phases(base, rng));
        }();
        local.add(trace_powers(eigenphases(u), tmax));
    };

    const auto worker = [&] {
        MomentAccumulator local(tmax, cfg.moments);
        for (;;) {
            const std::uint64_t r = next.fetch_add(1);
            if (r >= cfg.realizations) {
                break;
            }
            try {
                run_one(r, local);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::make_exception_ptr(NumericError(
                        "realization " + std::to_string(r) + " (master_seed=" +
                        std::to_string(cfg.master_seed) + ", stream=" + std::to_string(r) +
                        ") failed: " + e.what()));
                }
                break;
            }
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        total.merge(local);
    };

    if (cfg.workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(cfg.workers));
        for (int w = 0; w < cfg.workers; ++w) {
            pool.emplace_back(worker);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return total;
}

ResultBundle run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ResultBundle bundle;
    bundle.config = cfg;
    bundle.scales = derive_scales(cfg);

    const MomentAccumulator acc = accumulate_realizations(cfg);
    bundle.raw = finalize(acc);
    bundle.kappa = rescale(bundle.raw, cfg.subsystem_dim, cfg.num_subsystems);
    bundle.kappa_smoothed = cfg.smoothing_window == 0
                                ? smooth_adaptive(bundle.kappa)
                                : smooth(bundle.kappa, cfg.smoothing_window);

    const int tmax = cfg.resolved_tmax();
    const double eps = cfg.effective_epsilon();
    const PhaseDistribution dist = cfg.effective_dist();
    bundle.theory_exact.resize(bundle.raw.orders.size());
    for (std::size_t oi = 0; oi < bundle.raw.orders.size(); ++oi) {
        const int m = bundle.raw.orders[oi];
        if (m == 1 || (m == 2 && cfg.num_subsystems == 2)) {
            bundle.theory_exact[oi] = theory_curve_exact(cfg.subsystem_dim,
                                                         cfg.num_subsystems, eps, dist,
                                                         tmax, m);
        }
    }
    bundle.theory_perturbative =
        theory_curve_perturbative(cfg.subsystem_dim, cfg.num_subsystems, eps, dist, tmax);
    return bundle;
}

namespace {

nlohmann::ordered_json metadata_json(const ResultBundle& bundle) {
    const ExperimentConfig& cfg = bundle.config;
    nlohmann::ordered_json config{
        {"model", cfg.model == ModelKind::rmte ? "rmte" : "rotors"},
        {"N", cfg.subsystem_dim},
        {"L", cfg.num_subsystems},
        {"dist", cfg.effective_dist().name()},
        {"sigma_xi", cfg.effective_dist().sigma()},
        {"realizations", cfg.realizations},
        {"tmax", cfg.resolved_tmax()},
        {"moments", cfg.moments},
        {"master_seed", cfg.master_seed},
        {"smoothing_window", cfg.smoothing_window},
        {"workers", cfg.workers},
    };
    if (cfg.model == ModelKind::rmte) {
        config["epsilon"] = *cfg.epsilon;
    } else {
        config["gamma"] = *cfg.gamma;
        config["kick1"] = cfg.kick1;
        config["kick2"] = cfg.kick2;
    }

    nlohmann::ordered_json scales{
        {"epsilon_effective", bundle.scales.epsilon},
        {"chi_abs", bundle.scales.chi},
        {"Gamma", bundle.scales.gamma_scaling},
        {"tau_sh", bundle.scales.tau_sh},
        {"tau_h", 1.0},
    };
    scales["t_th"] = bundle.scales.t_th ? nlohmann::ordered_json(*bundle.scales.t_th)
                                        : nlohmann::ordered_json(nullptr);
    scales["tau_th"] = bundle.scales.tau_th ? nlohmann::ordered_json(*bundle.scales.tau_th)
                                            : nlohmann::ordered_json(nullptr);
    if (bundle.scales.ehrenfest) {
        scales["t_ehrenfest"] = *bundle.scales.ehrenfest;
    }

    return nlohmann::ordered_json{
        {"config", config},
        {"scales", scales},
        {"library_version", kLibraryVersion},
    };
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        throw IoError("write failed on " + path.string());
    }
}

std::string results_csv(const ResultBundle& bundle) {
    std::string csv = "t,tau,m,kappa_mean,kappa_stderr,theory_exact,theory_perturbative,"
                      "n_realizations\n";
    const KappaCurve& curve = bundle.kappa_smoothed;
    for (std::size_t oi = 0; oi < curve.orders.size(); ++oi) {
        const int m = curve.orders[oi];
        const auto& exact = bundle.theory_exact[oi];
        const bool perturbative = m == 1 && bundle.theory_perturbative.has_value();
        for (std::size_t i = 0; i < curve.tau.size(); ++i) {
            csv += std::to_string(i + 1);
            csv += ',';
            csv += format_double(curve.tau[i]);
            csv += ',';
            csv += std::to_string(m);
            csv += ',';
            csv += format_double(curve.kappa[oi][i]);
            csv += ',';
            csv += format_double(curve.sem[oi][i]);
            csv += ',';
            if (exact) {
                csv += format_double(exact->kappa[i]);
            }
            csv += ',';
            if (perturbative) {
                csv += format_double(bundle.theory_perturbative->kappa[i]);
            }
            csv += ',';
            csv += std::to_string(curve.realizations);
            csv += '\n';
        }
    }
    return csv;
}

} // namespace

void emit_results(const ResultBundle& bundle, OutputFormat format,
                  const std::filesystem::path& out_dir) {
    if (bundle.raw.orders.empty()) {
        throw ConfigError("result bundle carries no moment orders");
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + out_dir.string() + ": " +
                      ec.message());
    }

    if (format == OutputFormat::csv) {
        write_file(out_dir / "results.csv", results_csv(bundle));
        write_file(out_dir / "results.meta.json", metadata_json(bundle).dump(2) + "\n");
        return;
    }

    nlohmann::ordered_json doc = metadata_json(bundle);
    nlohmann::ordered_json curves = nlohmann::ordered_json::array();
    for (std::size_t oi = 0; oi < bundle.kappa.orders.size(); ++oi) {
        nlohmann::ordered_json entry{
            {"m", bundle.kappa.orders[oi]},
            {"kappa", bundle.kappa_smoothed.kappa[oi]},
            {"kappa_stderr", bundle.kappa_smoothed.sem[oi]},
            {"kappa_raw", bundle.kappa.kappa[oi]},
            {"K_raw", bundle.raw.mean[oi]},
            {"K_stderr", bundle.raw.sem[oi]},
        };
        if (bundle.theory_exact[oi]) {
            entry["theory_exact"] = bundle.theory_exact[oi]->kappa;
        }
        if (bundle.kappa.orders[oi] == 1 && bundle.theory_perturbative) {
            entry["theory_perturbative"] = bundle.theory_perturbative->kappa;
        }
        curves.push_back(std::move(entry));
    }
    doc["data"] = nlohmann::ordered_json{{"tau", bundle.kappa.tau}, {"curves", curves}};
    write_file(out_dir / "results.json", doc.dump(2) + "\n");
}

} // namespace sff
