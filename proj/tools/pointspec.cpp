#include <chrono>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pointspec/errors.hpp"
#include "pointspec/experiments.hpp"
#include "pointspec/table.hpp"

namespace {

std::string utc_now() {
    std::time_t tt = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"point-interaction spectra on a ring"};
    app.require_subcommand(1);

    pointspec::ExperimentConfig cfg;
    std::string model_str = "epsilon";
    std::string realization_str = "limit";
    std::optional<double> sweep_start;
    double sweep_factor = 0.5;
    int sweep_count = 3;
    bool no_timestamp = false;
    bool print_config = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--L", cfg.L, "ring circumference");
        sub->add_option("--model", model_str, "delta or epsilon")
            ->check(CLI::IsMember({"delta", "epsilon"}));
        sub->add_option("--realization", realization_str, "limit, local or separable")
            ->check(CLI::IsMember({"limit", "local", "separable"}));
        sub->add_option("--c", cfg.coupling_c, "epsilon coupling, a length");
        sub->add_option("--v", cfg.coupling_v, "delta coupling, an inverse length");
        sub->add_option("--a", cfg.a, "half-width of the smeared interaction");
        sub->add_option("--sweep-start", sweep_start, "first half-width of a geometric sweep");
        sub->add_option("--sweep-factor", sweep_factor, "sweep ratio, in (0,1)");
        sub->add_option("--sweep-count", sweep_count, "number of sweep points");
        sub->add_option("--n", cfg.n, "level index within the perturbed sector");
        sub->add_option("--n-max", cfg.n_max, "basis cutoff; 0 picks the guideline value");
        sub->add_option("--m-max", cfg.m_max, "mode-sum cutoff");
        sub->add_option("--count", cfg.count, "number of levels or roots to report");
        sub->add_option("--seed", cfg.seed, "seed for the randomized spot checks");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--format", cfg.formats, "output formats (csv, json, svg)")
            ->check(CLI::IsMember({"csv", "json", "svg"}));
        sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp for bytewise-stable output");
        sub->add_flag("--print-config", print_config, "print the resolved configuration and exit");
    };

    add_common(app.add_subcommand("spectrum", "list the lowest ring levels"));
    add_common(app.add_subcommand("converge", "finite-size roots against the limit over a sweep"));
    add_common(app.add_subcommand("equivalence", "local comb against the separable realization"));
    add_common(app.add_subcommand("duality", "map epsilon roots to energy-dependent delta couplings"));
    add_common(app.add_subcommand("perturb", "bare and renormalized second-order series"));
    add_common(app.add_subcommand("sums", "mode-sum kernels against their closed forms"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.model = (model_str == "delta") ? pointspec::Model::delta : pointspec::Model::epsilon;
        if (realization_str == "limit") {
            cfg.realization = pointspec::Realization::limit;
        } else if (realization_str == "local") {
            cfg.realization = pointspec::Realization::local;
        } else {
            cfg.realization = pointspec::Realization::separable;
        }
        if (sweep_start) {
            cfg.sweep = pointspec::SweepSpec{*sweep_start, sweep_factor, sweep_count};
        }
        if (!cfg.coupling_c && !cfg.coupling_v) {
            if (cfg.model == pointspec::Model::epsilon) {
                cfg.coupling_c = 0.001;
            } else {
                cfg.coupling_v = 0.1;
            }
        }
        cfg.timestamp = !no_timestamp;
        cfg.validate();

        if (print_config) {
            std::cout << pointspec::config_json(cfg);
            return 0;
        }

        pointspec::ResultTable table = pointspec::run_experiment(cfg);
        if (cfg.timestamp) table.meta.emplace_back("generated-at", utc_now());
        pointspec::write_table(table, cfg.formats, cfg.out_dir);
        for (const auto& fmt : cfg.formats) {
            std::cout << "wrote " << cfg.out_dir << "/" << table.title << "." << fmt << "\n";
        }
        std::cout << "rows: " << table.rows.size() << "\n";
        return 0;
    } catch (const pointspec::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const pointspec::CutoffError& e) {
        std::cerr << "cutoff error: " << e.what() << "\n";
        return 3;
    } catch (const pointspec::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const pointspec::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const pointspec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
