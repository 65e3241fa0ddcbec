#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pointspec/ring.hpp"
#include "pointspec/spectrum.hpp"
#include "pointspec/table.hpp"

namespace pointspec {

// How a requested spectrum is produced.
enum class Realization { limit, local, separable };

const char* realization_name(Realization r);

// Geometric half-width sweep: start, start*factor, ...
struct SweepSpec {
    double start = 0.1;
    double factor = 0.5;
    int count = 3;
};

struct ExperimentConfig {
    std::string command;
    Model model = Model::epsilon;
    Realization realization = Realization::limit;
    double L = 2.0 * 3.14159265358979323846;
    std::optional<double> coupling_c;
    std::optional<double> coupling_v;
    std::optional<double> a;
    std::optional<SweepSpec> sweep;
    int n = 1;
    int n_max = 0;  // 0 picks the resolution guideline value
    long m_max = 4000;
    int count = 5;
    unsigned long seed = 0;
    std::string out_dir = "out";
    std::vector<std::string> formats = {"csv", "json", "svg"};
    bool timestamp = true;

    void validate() const;
    double coupling() const;
    std::vector<double> a_values() const;
};

std::string config_json(const ExperimentConfig& cfg);

ResultTable run_spectrum(const ExperimentConfig& cfg);
ResultTable run_converge(const ExperimentConfig& cfg);
ResultTable run_equivalence(const ExperimentConfig& cfg);
ResultTable run_duality(const ExperimentConfig& cfg);
ResultTable run_perturb(const ExperimentConfig& cfg);
ResultTable run_sums(const ExperimentConfig& cfg);

ResultTable run_experiment(const ExperimentConfig& cfg);

}  // namespace pointspec
