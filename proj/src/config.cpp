#include "wg/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace wg {

namespace {

enum class FieldType { number, integer, text, choice, number_list };

struct FieldSpec {
    FieldType type = FieldType::number;
    bool required = false;
    std::string default_value;  // empty string means no default
    double min = -std::numeric_limits<double>::infinity();
    double max = std::numeric_limits<double>::infinity();
    std::vector<std::string> choices;
    std::string constraint;  // phrasing used in diagnostics
};

using Schema = std::map<std::string, FieldSpec>;

FieldSpec number(double min, double max, const std::string& def,
                 const std::string& constraint) {
    FieldSpec f;
    f.type = FieldType::number;
    f.required = def.empty();
    f.default_value = def;
    f.min = min;
    f.max = max;
    f.constraint = constraint;
    return f;
}

FieldSpec integer(double min, double max, const std::string& def,
                  const std::string& constraint) {
    FieldSpec f = number(min, max, def, constraint);
    f.type = FieldType::integer;
    return f;
}

FieldSpec choice(std::vector<std::string> options, const std::string& def) {
    FieldSpec f;
    f.type = FieldType::choice;
    f.required = def.empty();
    f.default_value = def;
    f.choices = std::move(options);
    std::string c = "must be one of {";
    for (std::size_t i = 0; i < f.choices.size(); ++i)
        c += (i ? ", " : "") + f.choices[i];
    c += "}";
    f.constraint = c;
    return f;
}

FieldSpec text(const std::string& def, bool required = false) {
    FieldSpec f;
    f.type = FieldType::text;
    f.required = required;
    f.default_value = def;
    f.constraint = "must be a string";
    return f;
}

FieldSpec number_list(const std::string& def, bool required, double min,
                      const std::string& constraint) {
    FieldSpec f;
    f.type = FieldType::number_list;
    f.required = required;
    f.default_value = def;
    f.min = min;
    f.constraint = constraint;
    return f;
}

Schema excitation_fields(const std::string& default_kind) {
    return {
        {"excitation", choice({"noise", "pluck", "impulse"}, default_kind)},
        {"excitation_length", integer(0, 1e9, "0", "must be a nonnegative sample count")},
        {"amplitude", number(0.0, 1e6, "0.5", "must be nonnegative")},
    };
}

void merge(Schema& into, const Schema& from) {
    for (const auto& [k, v] : from) into.emplace(k, v);
}

const std::map<std::string, Schema>& model_schemas() {
    static const std::map<std::string, Schema> schemas = [] {
        std::map<std::string, Schema> m;

        Schema fdl = {
            {"f0", number(0.0, 22050.0, "", "must be positive and below fs/2")},
            {"loop_gain", number(0.0, 1.0, "0.995", "must lie in (0, 1]")},
            {"loss", choice({"averager", "identity", "one_pole"}, "averager")},
            {"pole", number(0.0, 0.999, "0.5", "must lie in [0, 0.999]")},
            {"interp", choice({"lagrange", "allpass", "none"}, "lagrange")},
            {"interp_order", integer(1, 5, "3", "must lie in 1..5")},
        };
        merge(fdl, excitation_fields("noise"));
        m["fdl"] = fdl;

        Schema commuted = fdl;
        merge(commuted, Schema{
            {"order", choice({"e_string_body", "ebody_string"}, "ebody_string")},
            {"body", choice({"impulse", "noise"}, "noise")},
            {"body_length", integer(1, 1e7, "64", "must be a positive sample count")},
            {"body_seed", integer(0, 4294967295.0, "7", "must be a 32-bit seed")},
            {"body_decay", number(0.0, 1e6, "40", "must be nonnegative (1/s)")},
        });
        m["commuted"] = commuted;

        Schema ideal = {
            {"length", integer(2, 1e6, "", "must be an integer >= 2")},
            {"inject", integer(0, 1e6, "-1", "must be a valid position")},
            {"pickup", integer(0, 1e6, "-1", "must be a valid position")},
        };
        merge(ideal, excitation_fields("impulse"));
        m["ideal_string"] = ideal;

        Schema terminated = {
            {"length", integer(2, 1e6, "", "must be an integer >= 2")},
            {"inject", integer(0, 1e6, "-1", "must be a valid position")},
            {"pickup", integer(0, 1e6, "-1", "must be a valid position")},
            {"bridge", choice({"averager", "identity", "one_pole"}, "averager")},
            {"bridge_gain", number(0.0, 1.0, "0.995", "must lie in [0, 1]")},
            {"bridge_pole", number(0.0, 0.999, "0.3", "must lie in [0, 0.999]")},
            {"nut", choice({"averager", "identity", "one_pole"}, "identity")},
            {"nut_gain", number(0.0, 1.0, "1.0", "must lie in [0, 1]")},
            {"nut_pole", number(0.0, 0.999, "0.3", "must lie in [0, 0.999]")},
        };
        merge(terminated, excitation_fields("pluck"));
        m["terminated_string"] = terminated;

        m["bowed_string"] = Schema{
            {"length", integer(4, 1e6, "", "must be an integer >= 4")},
            {"bow_velocity", number(-10.0, 10.0, "0.2", "must lie in [-10, 10]")},
            {"bow_force", number(0.0, 100.0, "1.0", "must be nonnegative")},
            {"bow_position", number(1e-6, 1.0 - 1e-6, "0.25", "must lie strictly in (0, 1)")},
            {"friction_slope", number(1e-9, 1e9, "5.0", "must be positive")},
        };

        Schema kl = {
            {"areas", number_list("", true, 1e-12, "must be a comma list of positive areas")},
            {"glottal_reflection", number(-1.0, 1.0, "0.7", "must lie in [-1, 1]")},
            {"lip_reflection", number(-1.0, 1.0, "-0.85", "must lie in [-1, 1]")},
        };
        merge(kl, excitation_fields("noise"));
        m["kelly_lochbaum"] = kl;

        m["clarinet"] = Schema{
            {"bore_delay", integer(2, 1e6, "", "must be an integer >= 2")},
            {"mouth_pressure", number(0.0, 10.0, "1.0", "must lie in [0, 10]")},
            {"attack", number(0.0, 10.0, "0.02", "must be a nonnegative time in s")},
            {"embouchure", number(-1.0, 1.0, "0.2", "must lie in [-1, 1]")},
            {"reed_slope", number(0.0, 100.0, "4.0", "must be nonnegative")},
            {"bell_pole", number(0.0, 0.999, "0.6", "must lie in [0, 0.999]")},
            {"bell_gain", number(0.0, 1.0, "0.98", "must lie in [0, 1]")},
            {"reed_table", text("")},
        };

        m["mesh2d"] = Schema{
            {"width", integer(2, 4096, "", "must be an integer >= 2")},
            {"height", integer(2, 4096, "", "must be an integer >= 2")},
            {"boundary_reflection", number(-1.0, 1.0, "0.95", "must lie in [-1, 1]")},
            {"excite_x", integer(0, 4096, "-1", "must be a valid junction index")},
            {"excite_y", integer(0, 4096, "-1", "must be a valid junction index")},
            {"read_x", integer(0, 4096, "-1", "must be a valid junction index")},
            {"read_y", integer(0, 4096, "-1", "must be a valid junction index")},
            {"amplitude", number(0.0, 1e6, "1.0", "must be nonnegative")},
            {"dump_field", text("")},
            {"dump_every", integer(0, 1e9, "0", "must be a nonnegative step count")},
        };

        m["sdn"] = Schema{
            {"room", number_list("", true, 1e-6, "must be 2 or 3 positive dimensions in m")},
            {"source", number_list("", true, -1e9, "must be 2 or 3 coordinates in m")},
            {"receiver", number_list("", true, -1e9, "must be 2 or 3 coordinates in m")},
            {"wall_gains", number_list("1.0", false, 0.0, "must be gains in [0, 1]")},
            {"sound_speed", number(1.0, 10000.0, "343.0", "must lie in [1, 10000] m/s")},
        };

        m["modal"] = Schema{
            {"modes", text("", true)},  // A:f:alpha:phi, ...
        };

        return m;
    }();
    return schemas;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    std::ostringstream out;
    out << source << ":" << line << ": " << msg;
    throw config_error(out.str());
}

double parse_number(const std::string& source, int line, const std::string& key,
                    const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(source, line, "field '" + key + "' has non-numeric value '" + value + "'");
    }
}

std::vector<double> parse_list(const std::string& source, int line, const std::string& key,
                               const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_number(source, line, key, item));
    }
    if (out.empty()) fail(source, line, "field '" + key + "' needs at least one number");
    return out;
}

void apply_field(RenderJob& job, const std::string& source, int line,
                 const std::string& model, const std::string& key,
                 const std::string& value, const FieldSpec& spec) {
    switch (spec.type) {
        case FieldType::number:
        case FieldType::integer: {
            const double v = parse_number(source, line, key, value);
            if (!(v >= spec.min && v <= spec.max))
                fail(source, line, "field '" + key + "' for model '" + model + "' " +
                                       spec.constraint + " (got " + value + ")");
            if (spec.type == FieldType::integer && v != std::floor(v))
                fail(source, line, "field '" + key + "' must be an integer (got " + value + ")");
            job.numbers[key] = v;
            break;
        }
        case FieldType::choice: {
            if (std::find(spec.choices.begin(), spec.choices.end(), value) ==
                spec.choices.end())
                fail(source, line,
                     "field '" + key + "' for model '" + model + "' " + spec.constraint +
                         " (got '" + value + "')");
            job.strings[key] = value;
            break;
        }
        case FieldType::text:
            job.strings[key] = value;
            break;
        case FieldType::number_list: {
            const std::vector<double> v = parse_list(source, line, key, value);
            for (double x : v)
                if (!(x >= spec.min))
                    fail(source, line, "field '" + key + "' for model '" + model + "' " +
                                           spec.constraint);
            job.lists[key] = v;
            break;
        }
    }
}

// cross-field checks that need more than one value
void validate_job(RenderJob& job, const std::string& source) {
    const int line = job.line;
    if (job.model == "fdl" || job.model == "commuted") {
        const double f0 = job.num("f0");
        if (!(f0 > 0.0 && f0 < job.sample_rate / 2.0))
            fail(source, line, "field 'f0' must be positive and below fs/2");
        if (!(job.num("loop_gain") > 0.0))
            fail(source, line, "field 'loop_gain' must lie in (0, 1]");
    }
    if (job.model == "ideal_string" || job.model == "terminated_string") {
        const auto len = static_cast<long>(job.num("length"));
        for (const char* key : {"inject", "pickup"}) {
            double& v = job.numbers.at(key);
            if (v < 0) v = key[0] == 'i' ? static_cast<double>(len / 2)
                                         : static_cast<double>(len - 2);
            if (v >= static_cast<double>(len))
                fail(source, line, std::string("field '") + key +
                                       "' must be below the string length");
        }
    }
    if (job.model == "mesh2d") {
        const auto w = static_cast<long>(job.num("width"));
        const auto h = static_cast<long>(job.num("height"));
        const std::pair<const char*, long> axes[] = {
            {"excite_x", w}, {"read_x", w}, {"excite_y", h}, {"read_y", h}};
        for (const auto& [key, limit] : axes) {
            double& v = job.numbers.at(key);
            if (v < 0) v = static_cast<double>(key[0] == 'e' ? limit / 2 : limit / 2 + 1);
            if (v >= static_cast<double>(limit))
                fail(source, line,
                     std::string("field '") + key + "' must be inside the grid");
        }
    }
    if (job.model == "sdn") {
        const auto dims = job.list("room").size();
        if (dims != 2 && dims != 3)
            fail(source, line, "field 'room' must have 2 or 3 dimensions");
        if (job.list("source").size() != dims || job.list("receiver").size() != dims)
            fail(source, line, "fields 'source' and 'receiver' must match the room dimensions");
        for (double g : job.list("wall_gains"))
            if (!(g >= 0.0 && g <= 1.0))
                fail(source, line, "field 'wall_gains' must be gains in [0, 1]");
    }
}

RenderJob finalize_job(RenderJob job, const std::string& source) {
    const auto& schemas = model_schemas();
    const auto it = schemas.find(job.model);
    if (it == schemas.end()) {
        std::string names;
        for (const auto& [name, schema] : schemas) names += (names.empty() ? "" : ", ") + name;
        fail(source, job.line, "unknown model '" + job.model + "' (known: " + names + ")");
    }
    // defaults for everything not given
    for (const auto& [key, spec] : it->second) {
        const bool have = job.numbers.count(key) || job.strings.count(key) ||
                          job.lists.count(key);
        if (have) continue;
        if (spec.required)
            fail(source, job.line,
                 "model '" + job.model + "' is missing required field '" + key + "'");
        if (spec.default_value.empty() && spec.type == FieldType::text) {
            job.strings[key] = "";
            continue;
        }
        apply_field(job, source, job.line, job.model, key, spec.default_value, spec);
    }
    validate_job(job, source);
    return job;
}

}  // namespace

std::vector<std::string> known_models() {
    std::vector<std::string> names;
    for (const auto& [name, schema] : model_schemas()) names.push_back(name);
    return names;
}

std::vector<RenderJob> parse_config_text(const std::string& text,
                                         const std::string& source_name) {
    std::vector<RenderJob> jobs;
    bool in_job = false;
    RenderJob current;
    std::map<std::string, std::pair<std::string, int>> pending;  // key -> (value, line)

    auto flush = [&]() {
        if (!in_job) return;
        if (current.model.empty())
            fail(source_name, current.line, "job is missing required field 'model'");
        const auto& schemas = model_schemas();
        const auto schema_it = schemas.find(current.model);
        for (const auto& [key, entry] : pending) {
            if (schema_it == schemas.end()) break;  // unknown model reported below
            const auto field_it = schema_it->second.find(key);
            if (field_it == schema_it->second.end())
                fail(source_name, entry.second,
                     "unknown field '" + key + "' for model '" + current.model + "'");
            apply_field(current, source_name, entry.second, current.model, key,
                        entry.first, field_it->second);
        }
        jobs.push_back(finalize_job(std::move(current), source_name));
        current = RenderJob{};
        pending.clear();
    };

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail(source_name, line_no, "unterminated section header");
            const std::string section = trim(line.substr(1, line.size() - 2));
            if (section != "job")
                fail(source_name, line_no, "unknown section '[" + section + "]' (expected [job])");
            flush();
            in_job = true;
            current.line = line_no;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(source_name, line_no, "expected 'key = value' or a [job] header");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail(source_name, line_no, "empty key or value");
        if (!in_job)
            fail(source_name, line_no, "field outside of a [job] section");

        if (key == "model") {
            current.model = value;
        } else if (key == "output") {
            current.output = value;
        } else if (key == "sample_rate") {
            const double v = parse_number(source_name, line_no, key, value);
            if (!(v > 0.0) || v != std::floor(v))
                fail(source_name, line_no, "field 'sample_rate' must be a positive integer Hz");
            current.sample_rate = v;
        } else if (key == "duration") {
            const double v = parse_number(source_name, line_no, key, value);
            if (!(v > 0.0))
                fail(source_name, line_no, "field 'duration' must be positive seconds");
            current.duration = v;
        } else if (key == "seed") {
            const double v = parse_number(source_name, line_no, key, value);
            if (!(v >= 0.0) || v != std::floor(v) || v > 4294967295.0)
                fail(source_name, line_no, "field 'seed' must be a 32-bit unsigned integer");
            current.seed = static_cast<std::uint32_t>(v);
        } else {
            if (pending.count(key))
                fail(source_name, line_no, "duplicate field '" + key + "'");
            pending[key] = {value, line_no};
        }
    }
    flush();
    if (jobs.empty()) fail(source_name, line_no == 0 ? 1 : line_no, "config defines no [job]");
    return jobs;
}

std::vector<RenderJob> parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

std::string format_config(const std::vector<RenderJob>& jobs) {
    std::ostringstream out;
    out.precision(17);
    for (const RenderJob& job : jobs) {
        out << "[job]\n";
        out << "model = " << job.model << "\n";
        if (!job.output.empty()) out << "output = " << job.output << "\n";
        out << "sample_rate = " << job.sample_rate << "\n";
        out << "duration = " << job.duration << "\n";
        out << "seed = " << job.seed << "\n";
        for (const auto& [k, v] : job.numbers) out << k << " = " << v << "\n";
        for (const auto& [k, v] : job.strings)
            if (!v.empty()) out << k << " = " << v << "\n";
        for (const auto& [k, v] : job.lists) {
            out << k << " = ";
            for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
            out << "\n";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace wg
