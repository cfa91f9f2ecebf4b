#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wg {

// Raised for malformed or out-of-range configuration input; the message
// carries file:line plus the offending field and its constraint.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// One validated render job. Model parameters are stored by kind after schema
// validation, with defaults already filled in.
struct RenderJob {
    std::string model;
    std::string output;
    double sample_rate = 44100.0;
    double duration = 1.0;
    std::uint32_t seed = 0;
    int line = 0;  // declaration line for diagnostics

    std::map<std::string, double> numbers;
    std::map<std::string, std::string> strings;
    std::map<std::string, std::vector<double>> lists;

    double num(const std::string& key) const { return numbers.at(key); }
    const std::string& str(const std::string& key) const { return strings.at(key); }
    const std::vector<double>& list(const std::string& key) const { return lists.at(key); }
};

std::vector<std::string> known_models();

// Parses and validates a job file: '#' comments, one [job] section per job,
// key = value lines. Every job is checked against its model schema before
// anything renders.
std::vector<RenderJob> parse_config(const std::string& path);
std::vector<RenderJob> parse_config_text(const std::string& text,
                                         const std::string& source_name);

// Serializes jobs back to config text (used by the calibrators).
std::string format_config(const std::vector<RenderJob>& jobs);

}  // namespace wg
