#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rtlab/experiments.hpp"

using namespace rtlab;

namespace {

nlohmann::json load_config(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return nlohmann::json::parse(ss.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rtlab: numerical laboratory for time-frequency and ergodic averaging operators"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "print the experiment registry");

    std::string v_config;
    auto* validate_cmd = app.add_subcommand("validate", "check a config file against the schemas");
    validate_cmd->add_option("--config", v_config, "JSON config: {\"experiment\": ..., params}")
        ->required();

    struct RunArgs {
        std::string config;
        std::uint64_t seed = 1;
        std::string out;
        std::string kernel = "inverse_y";
        int threads = 0;
    } ra;
    std::vector<CLI::App*> run_cmds;
    for (const auto& e : experiment_registry()) {
        auto* c = app.add_subcommand(e.name, e.summary);
        c->add_option("--config", ra.config, "JSON parameter file");
        c->add_option("--seed", ra.seed, "64-bit experiment seed");
        c->add_option("--out", ra.out, "output directory for report.json and cells.csv");
        c->add_option("--kernel", ra.kernel, "kernel catalog entry: inverse_y, bump, poisson");
        c->add_option("--threads", ra.threads, "worker threads (0 = auto); RTLAB_THREADS overrides");
        run_cmds.push_back(c);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            for (const auto& e : experiment_registry())
                std::printf("%-20s %s\n", e.name.c_str(), e.summary.c_str());
            return 0;
        }
        if (validate_cmd->parsed()) {
            auto j = load_config(v_config);
            std::string name = j.at("experiment").get<std::string>();
            const Experiment* e = find_experiment(name);
            if (!e) {
                std::fprintf(stderr, "unknown experiment: %s\n", name.c_str());
                return 2;
            }
            e->validate(j.value("params", nlohmann::json::object()));
            std::printf("ok: %s\n", name.c_str());
            return 0;
        }
        for (std::size_t k = 0; k < run_cmds.size(); ++k) {
            if (!run_cmds[k]->parsed()) continue;
            ExperimentSpec spec;
            spec.name = experiment_registry()[k].name;
            spec.params = load_config(ra.config);
            spec.seed = ra.seed;
            spec.out_dir = ra.out;
            spec.kernel = ra.kernel;
            spec.threads = ra.threads;
            if (const char* env = std::getenv("RTLAB_THREADS")) spec.threads = std::atoi(env);
            auto rep = run_experiment(spec);
            for (const auto& c : rep.checks)
                std::printf("[%-11s] %-40s %.6g%s%s\n", verdict_name(c.verdict), c.name.c_str(),
                            c.measured, c.detail.empty() ? "" : "  -- ", c.detail.c_str());
            std::printf("cells: %zu  wall: %.2fs%s\n", rep.cells.size(), rep.wall_clock_sec,
                        ra.out.empty() ? "" : ("  -> " + ra.out).c_str());
            return rep.failed() ? 1 : 0;
        }
    } catch (const std::invalid_argument& ex) {
        std::fprintf(stderr, "config error: %s\n", ex.what());
        return 2;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 3;
    }
    return 0;
}
