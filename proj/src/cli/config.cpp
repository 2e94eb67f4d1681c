#include "corridor/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace corridor::cli {

namespace {

[[noreturn]] void fail_at(const std::string& source, int line_no, const std::string& line,
                          const std::string& what) {
    std::ostringstream msg;
    msg << source << ":" << line_no << ": " << what << " in line \"" << line << "\"";
    throw validation_error(msg.str());
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& source, int line_no,
                    const std::string& line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail_at(source, line_no, line, "malformed number '" + text + "'");
    }
}

std::vector<double> parse_list(const std::string& text, const std::string& source, int line_no,
                               const std::string& line) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) fail_at(source, line_no, line, "empty list element");
        out.push_back(parse_double(item, source, line_no, line));
    }
    if (out.empty()) fail_at(source, line_no, line, "empty list");
    return out;
}

const std::vector<std::string> kKnownKeys = {
    "capacities", "areas",        "free_flow",    "beta",     "gamma", "theta_office",
    "theta_remote", "t_single",   "t_pair",       "horizon",  "mode",  "dt"};

}  // namespace

RunConfig parse_config(std::istream& text, const std::string& source_name) {
    RunConfig cfg;
    std::map<std::string, std::pair<int, std::string>> seen;  // key -> (line_no, value)
    std::string raw;
    int line_no = 0;
    while (std::getline(text, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail_at(source_name, line_no, raw, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            fail_at(source_name, line_no, raw, "unknown key '" + key + "'");
        if (seen.count(key)) {
            std::ostringstream what;
            what << "duplicate key '" << key << "' (first set on line " << seen[key].first << ")";
            fail_at(source_name, line_no, raw, what.str());
        }
        if (value.empty()) fail_at(source_name, line_no, raw, "missing value");
        seen[key] = {line_no, value};
    }

    std::vector<std::string> missing;
    for (const std::string& key : kKnownKeys) {
        if (key == "mode" || key == "dt") continue;  // optional
        if (!seen.count(key)) missing.push_back(key);
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << source_name << ": missing required key";
        if (missing.size() > 1) msg << "s";
        for (std::size_t i = 0; i < missing.size(); ++i)
            msg << (i == 0 ? " " : ", ") << "'" << missing[i] << "'";
        throw validation_error(msg.str());
    }

    const auto scalar = [&](const std::string& key) {
        const auto& [ln, value] = seen.at(key);
        return parse_double(value, source_name, ln, key + " = " + value);
    };
    const auto list = [&](const std::string& key) {
        const auto& [ln, value] = seen.at(key);
        return parse_list(value, source_name, ln, key + " = " + value);
    };
    const auto fixed_pair = [&](const std::string& key) {
        const auto& [ln, value] = seen.at(key);
        const std::vector<double> v = parse_list(value, source_name, ln, key + " = " + value);
        if (v.size() != 2)
            fail_at(source_name, ln, key + " = " + value, "expected exactly two values");
        return std::pair<double, double>{v[0], v[1]};
    };

    ScenarioInputs& in = cfg.inputs;
    in.corridor.capacities = list("capacities");
    in.corridor.areas = list("areas");
    in.corridor.free_flow = list("free_flow");
    in.early_slope = scalar("beta");
    in.late_slope = scalar("gamma");
    in.wages.office_wage = scalar("theta_office");
    in.wages.remote_wage = scalar("theta_remote");
    in.t_single = scalar("t_single");
    std::tie(in.t_pair_lo, in.t_pair_hi) = fixed_pair("t_pair");
    std::tie(in.horizon_lo, in.horizon_hi) = fixed_pair("horizon");

    if (seen.count("mode")) {
        const auto& [ln, value] = seen.at("mode");
        if (value == "exact")
            cfg.mode = CbarMode::exact;
        else if (value == "merged" || value == "merged_formula")
            cfg.mode = CbarMode::merged_formula;
        else
            fail_at(source_name, ln, "mode = " + value,
                    "mode must be 'exact' or 'merged' ('merged_formula')");
    }
    if (seen.count("dt")) {
        cfg.dt = scalar("dt");
        if (!(cfg.dt > 0.0)) {
            const auto& [ln, value] = seen.at("dt");
            fail_at(source_name, ln, "dt = " + value, "dt must be positive");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config file: " + path);
    return parse_config(in, path);
}

}  // namespace corridor::cli
