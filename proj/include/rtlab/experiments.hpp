#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rtlab/report.hpp"

namespace rtlab {

struct Experiment {
    std::string name;
    std::string summary;
    // throws std::invalid_argument with a descriptive message on bad params
    std::function<void(const nlohmann::json&)> validate;
    std::function<ExperimentReport(const ExperimentSpec&)> run;
};

const std::vector<Experiment>& experiment_registry();
const Experiment* find_experiment(const std::string& name);

/// Validates, runs, stamps the wall clock, writes report.json/cells.csv under
/// spec.out_dir when set.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Deterministic parallel map: results land in index order regardless of the
/// scheduling, so tables are byte-stable under any thread count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace rtlab
