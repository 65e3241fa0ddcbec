#include "pointspec/experiments.hpp"

#include <cmath>
#include "json.hpp"
#include <random>

#include "pointspec/basis.hpp"
#include "pointspec/errors.hpp"
#include "pointspec/perturbation.hpp"
#include "pointspec/series.hpp"

namespace pointspec {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

std::string fmt(double v) { return format_cell(Cell(v)); }

void add_common_meta(ResultTable& t, const ExperimentConfig& cfg) {
    t.meta.emplace_back("command", cfg.command);
    t.meta.emplace_back("model", cfg.model == Model::delta ? "delta" : "epsilon");
    t.meta.emplace_back("L", fmt(cfg.L));
    if (cfg.coupling_c) t.meta.emplace_back("c", fmt(*cfg.coupling_c));
    if (cfg.coupling_v) t.meta.emplace_back("v", fmt(*cfg.coupling_v));
    if (cfg.a) t.meta.emplace_back("a", fmt(*cfg.a));
    if (cfg.sweep) {
        t.meta.emplace_back("a-sweep", fmt(cfg.sweep->start) + " * " + fmt(cfg.sweep->factor) +
                                           "^i, i < " + std::to_string(cfg.sweep->count));
    }
    t.meta.emplace_back("n", std::to_string(cfg.n));
    t.meta.emplace_back("n_max", std::to_string(cfg.n_max));
    t.meta.emplace_back("m_max", std::to_string(cfg.m_max));
    t.meta.emplace_back("count", std::to_string(cfg.count));
    t.meta.emplace_back("seed", std::to_string(cfg.seed));
}

// The n-th odd-sector level of the three-spike comb at half-width a.
double comb_odd_level(double c, double a, const RingConfig& ring, int n) {
    PiecewiseSystem sys = build_epsilon_finite(EpsilonCoupling{c}, Regularization{a}, ring);
    SpectrumResult sp = ring_spectrum(sys, ring, 2 * n + 6);
    int seen = 0;
    for (const auto& r : sp.roots) {
        if (r.sector == SectorTag::minus && ++seen == n) return r.energy;
    }
    throw ConvergenceError("comb spectrum did not reach the requested odd level");
}

int pick_n_max(const ExperimentConfig& cfg, double a, const RingConfig& ring) {
    int guide = suggested_n_max(Regularization{a}, ring);
    return cfg.n_max > 0 ? cfg.n_max : guide;
}

long pick_m_max(const ExperimentConfig& cfg, double a, const RingConfig& ring) {
    long floor_m = static_cast<long>(std::ceil(4.0 * ring.L / (kTwoPi * a)));
    return std::max(cfg.m_max, floor_m);
}

double uniform01(std::mt19937& gen) { return std::ldexp(static_cast<double>(gen()), -32); }

}  // namespace

const char* realization_name(Realization r) {
    switch (r) {
        case Realization::limit: return "limit";
        case Realization::local: return "local";
        default: return "separable";
    }
}

void ExperimentConfig::validate() const {
    if (command != "spectrum" && command != "converge" && command != "equivalence" &&
        command != "duality" && command != "perturb" && command != "sums") {
        throw ConfigError("unknown command: " + command);
    }
    if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("L must be positive and finite");
    if (coupling_c && coupling_v) throw ConfigError("set only one of c and v");
    if (model == Model::delta && coupling_c) throw ConfigError("the delta model takes v, not c");
    if (model == Model::epsilon && coupling_v) {
        throw ConfigError("the epsilon model takes c, not v");
    }
    if (command != "spectrum" && command != "sums" && model != Model::epsilon) {
        throw ConfigError(command + " is defined for the epsilon model only");
    }
    if (a && sweep) throw ConfigError("set only one of a and the sweep");
    RingConfig ring(L);
    if (a) Regularization{*a}.check_inside(ring);
    if (sweep) {
        if (!(sweep->start > 0.0) || !(sweep->factor > 0.0) || sweep->factor >= 1.0 ||
            sweep->count < 1) {
            throw ConfigError("sweep requires start > 0, factor in (0,1), count >= 1");
        }
        Regularization{sweep->start}.check_inside(ring);
    }
    if (n < 1) throw ConfigError("n must be at least 1");
    if (n_max < 0) throw ConfigError("n_max must be nonnegative");
    if (m_max < 1) throw ConfigError("m_max must be positive");
    if (count < 1) throw ConfigError("count must be positive");
    if (formats.empty()) throw ConfigError("at least one output format is required");
    for (const auto& f : formats) {
        if (f != "csv" && f != "json" && f != "svg") throw ConfigError("unknown format: " + f);
    }
}

double ExperimentConfig::coupling() const {
    if (coupling_c) return *coupling_c;
    if (coupling_v) return *coupling_v;
    throw ConfigError("no coupling set");
}

std::vector<double> ExperimentConfig::a_values() const {
    if (sweep) {
        std::vector<double> out;
        double v = sweep->start;
        for (int i = 0; i < sweep->count; ++i) {
            out.push_back(v);
            v *= sweep->factor;
        }
        return out;
    }
    if (a) return {*a};
    return {0.1, 0.05, 0.025};
}

std::string config_json(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["command"] = cfg.command;
    j["model"] = cfg.model == Model::delta ? "delta" : "epsilon";
    j["realization"] = realization_name(cfg.realization);
    j["L"] = cfg.L;
    if (cfg.coupling_c) j["c"] = *cfg.coupling_c;
    if (cfg.coupling_v) j["v"] = *cfg.coupling_v;
    if (cfg.a) j["a"] = *cfg.a;
    if (cfg.sweep) {
        j["sweep"] = {{"start", cfg.sweep->start},
                      {"factor", cfg.sweep->factor},
                      {"count", cfg.sweep->count}};
    }
    j["n"] = cfg.n;
    j["n_max"] = cfg.n_max;
    j["m_max"] = cfg.m_max;
    j["count"] = cfg.count;
    j["seed"] = cfg.seed;
    j["out_dir"] = cfg.out_dir;
    j["formats"] = cfg.formats;
    j["timestamp"] = cfg.timestamp;
    return j.dump(2) + "\n";
}

ResultTable run_spectrum(const ExperimentConfig& cfg) {
    RingConfig ring(cfg.L);
    ResultTable t;
    t.title = "spectrum";
    add_common_meta(t, cfg);
    t.meta.emplace_back("realization", realization_name(cfg.realization));
    t.columns = {"index", "sector", "k", "k2", "residual", "method", "quantity"};

    SpectrumResult sp;
    if (cfg.realization == Realization::limit) {
        sp = solve_limit_spectrum(cfg.model, cfg.coupling(), ring, cfg.count);
    } else if (cfg.realization == Realization::local) {
        if (!cfg.a) throw ConfigError("the local realization requires a");
        Regularization reg{*cfg.a};
        PiecewiseSystem sys =
            cfg.model == Model::delta
                ? build_delta_finite(DeltaCoupling{cfg.coupling()}, reg, ring)
                : build_epsilon_finite(EpsilonCoupling{cfg.coupling()}, reg, ring);
        sp = ring_spectrum(sys, ring, cfg.count);
    } else {
        if (cfg.model != Model::epsilon) {
            throw ConfigError("the separable realization applies to the epsilon model only");
        }
        if (!cfg.a) throw ConfigError("the separable realization requires a");
        int nm = pick_n_max(cfg, *cfg.a, ring);
        sp = separable_spectrum(EpsilonCoupling{cfg.coupling()}, Regularization{*cfg.a}, ring,
                                nm, cfg.count);
    }
    long long i = 0;
    for (const auto& r : sp.roots) {
        t.rows.push_back({i++, std::string(sector_name(r.sector)), r.k, r.energy, r.residual,
                          std::string(method_name(r.method)), std::string("ring-level")});
    }
    t.plot_x = "index";
    t.plot_y = {"k2"};
    return t;
}

ResultTable run_converge(const ExperimentConfig& cfg) {
    RingConfig ring(cfg.L);
    double c = cfg.coupling();
    ResultTable t;
    t.title = "converge";
    add_common_meta(t, cfg);
    t.columns = {"a",          "n_max",  "k2_limit", "k2_local", "k2_separable",
                 "err_local",  "err_separable", "status", "quantity"};
    double k_lim = limit_root_near(Model::epsilon, c, ring, cfg.n);
    double k2_lim = k_lim * k_lim;
    for (double av : cfg.a_values()) {
        double k2_loc = comb_odd_level(c, av, ring, cfg.n);
        int nm = pick_n_max(cfg, av, ring);
        bool resolved = nm >= suggested_n_max(Regularization{av}, ring);
        double k2_sep = separable_spectrum(EpsilonCoupling{c}, Regularization{av}, ring, nm,
                                           cfg.n)
                            .roots.back()
                            .energy;
        t.rows.push_back({av, static_cast<long long>(nm), k2_lim, k2_loc, k2_sep,
                          std::abs(k2_loc - k2_lim), std::abs(k2_sep - k2_lim),
                          std::string(resolved ? "ok" : "UNDERRESOLVED"),
                          std::string("finite-size-convergence")});
    }
    t.plot_x = "a";
    t.plot_y = {"err_local", "err_separable"};
    t.log_x = t.log_y = true;
    return t;
}

ResultTable run_equivalence(const ExperimentConfig& cfg) {
    RingConfig ring(cfg.L);
    double c = cfg.coupling();
    double av = cfg.a ? *cfg.a : 0.05;
    ResultTable t;
    t.title = "equivalence";
    add_common_meta(t, cfg);
    t.columns = {"method", "a",    "n_max",   "k2", "self_error",
                 "diff",   "bound", "verdict", "quantity"};

    double k2_loc = comb_odd_level(c, av, ring, cfg.n);
    double k2_loc_fine = comb_odd_level(c, av / 2.0, ring, cfg.n);
    int nm = pick_n_max(cfg, av, ring);
    auto sep_at = [&](int basis) {
        return separable_spectrum(EpsilonCoupling{c}, Regularization{av}, ring, basis, cfg.n)
            .roots.back()
            .energy;
    };
    double k2_sep = sep_at(nm);
    double k2_sep_fine = sep_at(2 * nm);

    double self_loc = std::abs(k2_loc_fine - k2_loc);
    double self_sep = std::abs(k2_sep_fine - k2_sep);
    double diff = std::abs(k2_sep - k2_loc);
    double bound = 2.0 * std::max(self_loc, self_sep);
    std::string verdict = diff <= bound ? "ok" : "MISMATCH";
    std::string quantity = "realization-agreement";
    t.rows.push_back({std::string("local"), av, static_cast<long long>(0), k2_loc, self_loc,
                      diff, bound, verdict, quantity});
    t.rows.push_back({std::string("separable"), av, static_cast<long long>(nm), k2_sep,
                      self_sep, diff, bound, verdict, quantity});
    return t;
}

ResultTable run_duality(const ExperimentConfig& cfg) {
    RingConfig ring(cfg.L);
    double c = cfg.coupling();
    ResultTable t;
    t.title = "duality";
    add_common_meta(t, cfg);
    t.columns = {"index", "k",  "k2", "v_dual", "delta_residual", "derivative_deviation",
                 "quantity"};
    SpectrumResult sp = solve_limit_spectrum(Model::epsilon, c, ring, 2 * cfg.count + 8);
    long long i = 0;
    for (const auto& r : sp.roots) {
        if (r.method != RootMethod::limit_condition) continue;
        if (i >= cfg.count) break;
        DualityReport rep = duality_check(EpsilonCoupling{c}, ring, r.k);
        t.rows.push_back({i++, rep.k, rep.k * rep.k, rep.v, rep.condition_residual,
                          rep.derivative_deviation, std::string("dual-coupling-root")});
    }
    if (i < cfg.count) throw ConvergenceError("duality: not enough condition roots found");
    t.plot_x = "k";
    t.plot_y = {"delta_residual", "derivative_deviation"};
    return t;
}

ResultTable run_perturb(const ExperimentConfig& cfg) {
    RingConfig ring(cfg.L);
    double c = cfg.coupling();
    ResultTable t;
    t.title = "perturb";
    add_common_meta(t, cfg);
    t.columns = {"a",          "m_max",      "c_a",        "first_order",
                 "second_order", "sum_value", "divergent_piece", "bare_total",
                 "renormalized_total", "exact", "bare_minus_exact", "renorm_minus_exact",
                 "status", "quantity"};
    std::vector<double> fit_a, fit_v;
    std::string quantity = "renormalized-series";
    for (double av : cfg.a_values()) {
        long mm = pick_m_max(cfg, av, ring);
        try {
            PerturbationReport rep =
                renormalized_series(EpsilonCoupling{c}, Regularization{av}, ring, cfg.n, mm);
            double second = rep.second_order_truncated + rep.tail_estimate;
            double sum_value = second / (rep.c_a * rep.c_a);
            t.rows.push_back({av, static_cast<long long>(mm), rep.c_a, rep.first_order, second,
                              sum_value, rep.divergent_piece, rep.bare_total,
                              rep.renormalized_total, rep.reference_exact,
                              rep.bare_total - rep.reference_exact,
                              rep.renormalized_total - rep.reference_exact, std::string("ok"),
                              quantity});
            fit_a.push_back(av);
            fit_v.push_back(sum_value);
        } catch (const RegimeError& e) {
            std::string blank;
            t.rows.push_back({av, static_cast<long long>(mm), blank, blank, blank, blank, blank,
                              blank, blank, blank, blank, blank, std::string(e.what()),
                              quantity});
        }
    }
    if (fit_a.size() >= 3) {
        DivergenceFit fit = fit_divergence(fit_a, fit_v);
        double kap = kappa(cfg.n, ring);
        t.meta.emplace_back("fit-constant", fmt(fit.constant_term));
        t.meta.emplace_back("fit-inverse-a", fmt(fit.inverse_a_coeff));
        t.meta.emplace_back("fit-inverse-a-expected", fmt(-kap * kap / ring.L));
        t.meta.emplace_back("fit-linear-a", fmt(fit.linear_a_coeff));
        t.meta.emplace_back("fit-max-residual", fmt(fit.max_residual));
    }
    t.plot_x = "a";
    t.plot_y = {"bare_minus_exact", "renorm_minus_exact"};
    return t;
}

ResultTable run_sums(const ExperimentConfig& cfg) {
    ResultTable t;
    t.title = "sums";
    add_common_meta(t, cfg);
    t.columns = {"quantity", "n", "beta", "m_max", "computed", "reference", "deviation"};
    constexpr double kPi = 3.14159265358979323846;

    auto add_row = [&](const std::string& q, long long n, double beta, long long mm,
                       double computed, double reference) {
        t.rows.push_back({q, n, beta, mm, computed, reference, computed - reference});
    };

    for (double beta : {0.01, 0.1, 1.0}) {
        double v = sine_squared_sum(beta, 1e-12);
        add_row("sine-squared-sum", 0, beta, 0, v, beta * (kPi - beta) / 2.0);
    }
    for (double beta : {0.04, 0.02, 0.01, 0.005}) {
        SumSpec spec;
        spec.n = cfg.n;
        spec.beta = beta;
        spec.m_max = std::max(cfg.m_max, static_cast<long>(std::ceil(4000.0 / beta)));
        double v = pair_sum(spec);
        add_row("pair-sum", cfg.n, beta, spec.m_max, v, kTwoPi / beta - 6.0);
        add_row("combined-residual", cfg.n, beta, spec.m_max,
                pair_sum_identity_residual(cfg.n, beta), 0.0);
    }
    for (int n = 1; n <= 10; ++n) {
        add_row("reciprocal-sum", n, 0.0, 0, sum_reciprocal(n, false), -0.75 / (n * n));
    }
    for (int n = 1; n <= 3; ++n) {
        add_row("reciprocal-sum-zero-mode", n, 0.0, 0, sum_reciprocal(n, true),
                -0.25 / (n * n));
    }

    std::mt19937 gen(static_cast<std::mt19937::result_type>(cfg.seed));
    for (int i = 0; i < 3; ++i) {
        double beta = 0.01 + 0.99 * uniform01(gen);
        add_row("sine-squared-sum-spot", 0, beta, 0, sine_squared_sum(beta, 1e-12),
                beta * (kPi - beta) / 2.0);
    }
    for (int i = 0; i < 3; ++i) {
        int n = 1 + static_cast<int>(gen() % 50u);
        add_row("reciprocal-sum-spot", n, 0.0, 0, sum_reciprocal(n, false), -0.75 / (n * n));
    }

    t.plot_x = "beta";
    t.plot_y = {"deviation"};
    return t;
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.command == "spectrum") return run_spectrum(cfg);
    if (cfg.command == "converge") return run_converge(cfg);
    if (cfg.command == "equivalence") return run_equivalence(cfg);
    if (cfg.command == "duality") return run_duality(cfg);
    if (cfg.command == "perturb") return run_perturb(cfg);
    return run_sums(cfg);
}

}  // namespace pointspec
