#include "rtlab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rtlab {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::informative: return "informative";
    }
    return "?";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Cell::put(const std::string& key, double value) { fields.emplace_back(key, format_double(value)); }
void Cell::put(const std::string& key, long value) { fields.emplace_back(key, std::to_string(value)); }
void Cell::put(const std::string& key, const std::string& value) { fields.emplace_back(key, value); }

bool ExperimentReport::failed() const {
    for (const auto& c : checks)
        if (c.verdict == Verdict::fail) return true;
    return false;
}

std::string ExperimentReport::cells_csv() const {
    // union of keys in first-seen order
    std::vector<std::string> keys;
    std::set<std::string> seen;
    for (const auto& c : cells)
        for (const auto& [k, v] : c.fields)
            if (seen.insert(k).second) keys.push_back(k);
    std::ostringstream os;
    for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
    os << "\n";
    for (const auto& c : cells) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (i) os << ",";
            for (const auto& [k, v] : c.fields)
                if (k == keys[i]) {
                    os << v;
                    break;
                }
        }
        os << "\n";
    }
    return os.str();
}

std::string ExperimentReport::json() const {
    nlohmann::json j;
    j["experiment"] = spec.name;
    j["params"] = spec.params;
    j["seed"] = spec.seed;
    j["kernel"] = spec.kernel;
    j["version"] = version;
    j["wall_clock_sec"] = wall_clock_sec;
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e;
        e["name"] = c.name;
        e["verdict"] = verdict_name(c.verdict);
        e["measured"] = c.measured;
        if (!c.detail.empty()) e["detail"] = c.detail;
        cs.push_back(e);
    }
    j["checks"] = cs;
    j["cells"] = cells.size();
    return j.dump(2);
}

void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << content;
}

}  // namespace rtlab
