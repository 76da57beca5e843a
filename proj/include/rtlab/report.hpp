#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace rtlab {

enum class Verdict { pass, fail, informative };
const char* verdict_name(Verdict v);

/// One measurement row; values keep insertion order for stable CSV bodies.
struct Cell {
    std::vector<std::pair<std::string, std::string>> fields;

    void put(const std::string& key, double value);
    void put(const std::string& key, long value);
    void put(const std::string& key, const std::string& value);
};

struct Check {
    std::string name;
    Verdict verdict = Verdict::informative;
    double measured = 0;
    std::string detail;
};

struct ExperimentSpec {
    std::string name;
    nlohmann::json params;
    std::uint64_t seed = 0;
    std::string out_dir;
    int threads = 1;
    std::string kernel = "inverse_y";
};

struct ExperimentReport {
    ExperimentSpec spec;
    std::vector<Cell> cells;
    std::vector<Check> checks;
    double wall_clock_sec = 0;
    std::string version = "rtlab 0.1.0";

    bool failed() const;
    std::string cells_csv() const;   // deterministic body, no timestamps
    std::string json() const;        // includes wall clock (excluded from determinism)
};

/// Format a double with enough digits to round-trip, locale independent.
std::string format_double(double v);

void write_file(const std::string& path, const std::string& content);

}  // namespace rtlab
