// End-to-end acceptance checks. Each check prints one PASS/FAIL line with the
// measured numbers; the process exit status is the number of failures.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pointspec/basis.hpp"
#include "pointspec/errors.hpp"
#include "pointspec/experiments.hpp"
#include "pointspec/perturbation.hpp"
#include "pointspec/ring.hpp"
#include "pointspec/series.hpp"
#include "pointspec/spectrum.hpp"
#include "pointspec/table.hpp"
#include "xml_lite.hpp"

namespace fs = std::filesystem;
using namespace pointspec;

namespace {

constexpr double kPi = 3.14159265358979323846;
const RingConfig kRing{2.0 * kPi};

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
    std::printf("%s %s  [%s]\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run_check(const char* name, bool (*fn)(std::string&)) {
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(ok, name, detail);
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

double comb_level(double c, double a, int n) {
    PiecewiseSystem sys = build_epsilon_finite(EpsilonCoupling{c}, Regularization{a}, kRing);
    SpectrumResult sp = ring_spectrum(sys, kRing, 2 * n + 6);
    int seen = 0;
    for (const auto& r : sp.roots) {
        if (r.sector == SectorTag::minus && ++seen == n) return r.energy;
    }
    throw ConvergenceError("comb level not found");
}

// --- the epsilon limit level and its quadratic-in-c expansion ---

bool epsilon_limit_level(std::string& detail) {
    SpectrumResult sp = solve_limit_spectrum(Model::epsilon, 0.1, kRing, 5);
    double e0 = sp.roots.front().energy;
    double expansion = epsilon_expansion(EpsilonCoupling{0.1}, kRing, 1);
    double diff_full = std::abs(e0 - expansion);

    double e0_half = limit_root_near(Model::epsilon, 0.05, kRing, 1);
    e0_half *= e0_half;
    double diff_half = std::abs(e0_half - epsilon_expansion(EpsilonCoupling{0.05}, kRing, 1));
    double ratio = diff_full / diff_half;

    bool ok = std::abs(e0 - 0.968941) <= 1e-5 && std::abs(expansion - 0.9689289) <= 5e-8 &&
              diff_full <= 2e-5 && ratio >= 6.0;
    detail = fmt("E0=%.12f expansion-gap=%.3e gap-ratio=%.2f", e0, diff_full, ratio);
    return ok;
}

// --- the delta limit level and its quadratic-in-v expansion ---

bool delta_limit_level(std::string& detail) {
    double k1 = limit_root_near(Model::delta, 0.1, kRing, 1);
    double e1 = k1 * k1;
    double expansion = delta_expansion(DeltaCoupling{0.1}, kRing, 1);
    double diff_full = std::abs(e1 - expansion);

    double k1_half = limit_root_near(Model::delta, 0.05, kRing, 1);
    double diff_half =
        std::abs(k1_half * k1_half - delta_expansion(DeltaCoupling{0.05}, kRing, 1));
    double ratio = diff_full / diff_half;

    bool ok = std::abs(e1 - 1.031559) <= 1e-5 && std::abs(expansion - 1.0315777) <= 5e-8 &&
              diff_full <= 3e-5 && ratio >= 6.0;
    detail = fmt("E1=%.12f expansion-gap=%.3e gap-ratio=%.2f", e1, diff_full, ratio);
    return ok;
}

// --- linear-in-a convergence of the three-spike comb to the epsilon level ---

bool comb_linear_convergence(std::string& detail) {
    double k_lim = limit_root_near(Model::epsilon, 0.1, kRing, 1);
    double e_lim = k_lim * k_lim;
    double errs[3];
    double as[3] = {1e-2, 5e-3, 2.5e-3};
    for (int i = 0; i < 3; ++i) errs[i] = std::abs(comb_level(0.1, as[i], 1) - e_lim);
    double r1 = errs[0] / errs[1];
    double r2 = errs[1] / errs[2];
    bool ok = r1 >= 1.6 && r1 <= 2.4 && r2 >= 1.6 && r2 <= 2.4;
    detail = fmt("halving ratios %.3f, %.3f (err at a=1e-2: %.3e)", r1, r2, errs[0]);
    return ok;
}

// --- local comb and separable realization agree within their own errors ---

bool realization_agreement(std::string& detail) {
    const double c = 0.1, a = 5e-3;
    auto sep = [&](int n_max) {
        return separable_spectrum(EpsilonCoupling{c}, Regularization{a}, kRing, n_max, 1)
            .roots.back()
            .energy;
    };
    double sep_coarse = sep(2000);
    double sep_fine = sep(4000);
    double loc = comb_level(c, a, 1);
    double loc_fine = comb_level(c, a / 2.0, 1);
    double diff = std::abs(sep_coarse - loc);
    double bound = 2.0 * std::max(std::abs(sep_fine - sep_coarse), std::abs(loc_fine - loc));
    bool ok = diff <= bound;
    detail = fmt("|sep-local|=%.3e vs bound %.3e", diff, bound);
    return ok;
}

// --- each epsilon root solves the delta condition at v = -c k^2 ---

bool per_root_duality(std::string& detail) {
    double worst_res = 0.0, worst_dev = 0.0;
    for (double c : {0.1, -0.2}) {
        SpectrumResult sp = solve_limit_spectrum(Model::epsilon, c, kRing, 14);
        int used = 0;
        for (const auto& r : sp.roots) {
            if (r.method != RootMethod::limit_condition) continue;
            if (used == 5) break;
            DualityReport rep = duality_check(EpsilonCoupling{c}, kRing, r.k);
            worst_res = std::max(worst_res, rep.condition_residual);
            worst_dev = std::max(worst_dev, rep.derivative_deviation);
            ++used;
        }
        if (used < 5) {
            detail = "fewer than 5 condition roots at c=" + std::to_string(c);
            return false;
        }
    }
    bool ok = worst_res <= 1e-10 && worst_dev <= 1e-9;
    detail = fmt("worst condition residual %.2e, worst derivative deviation %.2e", worst_res,
                 worst_dev);
    return ok;
}

// --- the coupling counterterm removes the 1/a divergence at second order ---

bool renormalized_second_order(std::string& detail) {
    const EpsilonCoupling c{0.001};
    const std::vector<double> as = {0.1, 0.05, 0.025};
    std::vector<double> sums, renorms;
    double bare_gap_mid = 0.0;
    for (double a : as) {
        SecondOrderEpsilon so = second_order_epsilon(1, Regularization{a}, kRing, 4000);
        sums.push_back(so.truncated_value + so.tail_estimate);
        PerturbationReport rep = renormalized_series(c, Regularization{a}, kRing, 1, 4000);
        renorms.push_back(rep.renormalized_total);
        if (a == 0.05) bare_gap_mid = std::abs(rep.bare_total - rep.renormalized_total);
    }
    DivergenceFit fit = fit_divergence(as, sums);
    double expect = -1.0 / (2.0 * kPi);
    bool fit_ok = std::abs(fit.inverse_a_coeff - expect) <= 0.02 * std::abs(expect);

    double lo = renorms[0], hi = renorms[0];
    bool level_ok = true;
    for (double r : renorms) {
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        level_ok = level_ok && std::abs(r - 0.99968177) <= 1e-7;
    }
    bool spread_ok = (hi - lo) <= 1e-7;
    bool bare_ok = bare_gap_mid <= 5e-8;
    detail = fmt("1/a coefficient %.6f (expected %.6f), renormalized spread %.2e",
                 fit.inverse_a_coeff, expect, hi - lo) +
             fmt(", bare-renorm gap %.2e", bare_gap_mid);
    return fit_ok && level_ok && spread_ok && bare_ok;
}

// --- closed-form matrix elements against direct quadrature ---

bool matrix_element_quadrature(std::string& detail) {
    std::mt19937 gen(424242u);
    auto uniform = [&gen](double lo, double hi) {
        return lo + (hi - lo) * std::ldexp(static_cast<double>(gen()), -32);
    };
    double worst_same = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Regularization a{uniform(1e-3, 0.3)};
        Parity sector = (gen() % 2 == 0) ? Parity::even : Parity::odd;
        MeKind kind = (gen() % 2 == 0) ? MeKind::delta : MeKind::epsilon_sep;
        int lowest = sector == Parity::odd ? 1 : 0;
        int m = lowest + static_cast<int>(gen() % 31u);
        int n = lowest + static_cast<int>(gen() % 31u);
        double closed = kind == MeKind::delta ? me_delta(m, n, sector, a, kRing)
                                              : me_epsilon_sep(m, n, sector, a, kRing);
        double quad = quadrature_me(kind, ModeIndex{m, sector}, ModeIndex{n, sector}, a, kRing);
        worst_same = std::max(worst_same, std::abs(closed - quad));
    }
    double worst_cross = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Regularization a{uniform(1e-3, 0.3)};
        MeKind kind = (gen() % 2 == 0) ? MeKind::delta : MeKind::epsilon_sep;
        ModeIndex even{static_cast<int>(gen() % 31u), Parity::even};
        ModeIndex odd{1 + static_cast<int>(gen() % 30u), Parity::odd};
        worst_cross = std::max(worst_cross, std::abs(quadrature_me(kind, even, odd, a, kRing)));
    }
    bool ok = worst_same <= 1e-10 && worst_cross <= 1e-12;
    detail = fmt("worst closed-quadrature gap %.2e, worst cross-sector leak %.2e", worst_same,
                 worst_cross);
    return ok;
}

// --- mode-sum machinery against closed forms and the expected tail order ---

bool mode_sum_checks(std::string& detail) {
    double worst_sine = 0.0;
    for (double beta : {0.01, 0.1, 1.0}) {
        worst_sine = std::max(
            std::abs(sine_squared_sum(beta, 1e-10) - beta * (kPi - beta) / 2.0), worst_sine);
    }

    std::vector<double> lx, ly;
    for (double beta : {0.04, 0.02, 0.01, 0.005}) {
        SumSpec spec;
        spec.n = 1;
        spec.beta = beta;
        spec.m_max = static_cast<long>(std::ceil(4000.0 / beta));
        double dev = std::abs(pair_sum(spec) - (2.0 * kPi / beta - 6.0));
        lx.push_back(std::log(beta));
        ly.push_back(std::log(dev));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(ly.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    double slope = num / den;

    double worst_rec = 0.0;
    for (int n = 1; n <= 10; ++n) {
        worst_rec = std::max(worst_rec, std::abs(sum_reciprocal(n) + 0.75 / (n * n)));
    }

    bool ok = worst_sine <= 1e-10 && slope >= 0.7 && slope <= 1.3 && worst_rec <= 1e-12;
    detail = fmt("sine-sum gap %.2e, pair-sum tail slope %.3f, reciprocal gap %.2e", worst_sine,
                 slope, worst_rec);
    return ok;
}

// --- the installed binary emits byte-stable, readable tables ---

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    if (!f.good() && !f.eof()) throw IoError("cannot read " + p.string());
    return ss.str();
}

bool cli_round_trip(std::string& detail) {
    const std::string bin = POINTSPEC_BIN;
    fs::path dir1 = fs::temp_directory_path() / "pointspec-acc-1";
    fs::path dir2 = fs::temp_directory_path() / "pointspec-acc-2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    auto invoke = [&](const fs::path& dir) {
        std::string cmd = "\"" + bin + "\" sums --seed 7 --no-timestamp --out \"" +
                          dir.string() + "\" --format csv --format json --format svg";
        return std::system(cmd.c_str());
    };
    if (invoke(dir1) != 0 || invoke(dir2) != 0) {
        detail = "binary exited nonzero";
        return false;
    }

    bool stable = true;
    for (const char* ext : {"csv", "json", "svg"}) {
        stable = stable && slurp(dir1 / (std::string("sums.") + ext)) ==
                               slurp(dir2 / (std::string("sums.") + ext));
    }

    std::string xml_err;
    bool svg_ok = xml_well_formed(slurp(dir1 / "sums.svg"), &xml_err);

    ExperimentConfig cfg;
    cfg.command = "sums";
    cfg.coupling_c = 0.001;
    cfg.seed = 7;
    cfg.timestamp = false;
    ResultTable expected = run_experiment(cfg);
    ResultTable back = read_csv_table((dir1 / "sums.csv").string());
    bool cells_ok = back.columns == expected.columns && back.rows.size() == expected.rows.size();
    if (cells_ok) {
        for (std::size_t i = 0; i < expected.rows.size(); ++i) {
            if (back.rows[i].size() != expected.rows[i].size()) {
                cells_ok = false;
                break;
            }
            for (std::size_t j = 0; j < expected.rows[i].size(); ++j) {
                cells_ok = cells_ok && back.rows[i][j].index() == expected.rows[i][j].index() &&
                           format_cell(back.rows[i][j]) == format_cell(expected.rows[i][j]);
            }
        }
    }

    fs::remove_all(dir1);
    fs::remove_all(dir2);
    bool ok = stable && svg_ok && cells_ok;
    detail = std::string("byte-stable=") + (stable ? "yes" : "no") +
             ", svg-well-formed=" + (svg_ok ? "yes" : "no") +
             ", csv-cells-match=" + (cells_ok ? "yes" : "no") +
             (xml_err.empty() ? "" : ", xml: " + xml_err);
    return ok;
}

}  // namespace

int main() {
    run_check("epsilon-limit-level-and-expansion", epsilon_limit_level);
    run_check("delta-limit-level-and-expansion", delta_limit_level);
    run_check("comb-linear-convergence", comb_linear_convergence);
    run_check("local-vs-separable-agreement", realization_agreement);
    run_check("per-root-duality", per_root_duality);
    run_check("renormalized-second-order", renormalized_second_order);
    run_check("matrix-elements-vs-quadrature", matrix_element_quadrature);
    run_check("mode-sum-closed-forms", mode_sum_checks);
    run_check("cli-byte-stable-round-trip", cli_round_trip);
    std::printf("%d failure(s)\n", failures);
    return failures;
}
