#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "spinlab/errors.hpp"
#include "spinlab/experiment.hpp"

namespace spinlab {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Entry {
    std::string value;
    std::size_t line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& grammar() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"system", {"omega1", "omega2", "j"}},
        {"initial", {"theta1", "phi1", "theta2", "phi2"}},
        {"pulse", {"target", "carrier", "rabi1", "rabi2", "duration"}},
        {"integrator", {"step", "samples"}},
        {"output", {"prefix", "engines", "padding"}},
    };
    return keys;
}

// factor := number | "pi";  expr := [+|-] factor { (*|/) factor }
double parse_expression(std::string_view text, std::size_t line, const std::string& key) {
    auto fail = [&]() -> double { throw ConfigError("expected a number, got '" + std::string(text) + "'", line, key); };
    std::string_view rest = trim(text);
    if (rest.empty()) return fail();

    double sign = 1.0;
    if (rest.front() == '-' || rest.front() == '+') {
        if (rest.front() == '-') sign = -1.0;
        rest = trim(rest.substr(1));
    }

    auto factor = [&]() -> double {
        rest = trim(rest);
        if (rest.substr(0, 2) == "pi") {
            rest.remove_prefix(2);
            return std::numbers::pi;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
        if (ec != std::errc() || ptr == rest.data()) return fail();
        rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
        return value;
    };

    double value = factor();
    while (!(rest = trim(rest)).empty()) {
        const char op = rest.front();
        if (op != '*' && op != '/') return fail();
        rest.remove_prefix(1);
        const double rhs = factor();
        value = op == '*' ? value * rhs : value / rhs;
    }
    value *= sign;
    if (!std::isfinite(value)) throw ConfigError("value must be finite", line, key);
    return value;
}

class SectionReader {
public:
    SectionReader(const Section* section, std::string name) : section_(section), name_(std::move(name)) {}

    bool has(const std::string& key) const { return section_ != nullptr && section_->contains(key); }

    std::optional<double> number(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        const auto& e = section_->at(key);
        return parse_expression(e.value, e.line, qualified(key));
    }

    double number_or(const std::string& key, double fallback) const { return number(key).value_or(fallback); }

    std::optional<std::string> text(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return section_->at(key).value;
    }

    std::size_t line(const std::string& key) const { return has(key) ? section_->at(key).line : 0; }
    std::string qualified(const std::string& key) const { return name_ + "." + key; }

    ConfigError error(const std::string& key, const std::string& message) const {
        return ConfigError(message, line(key), qualified(key));
    }

private:
    const Section* section_;
    std::string name_;
};

std::map<std::string, Section> tokenize(std::string_view text) {
    std::map<std::string, Section> sections;
    Section* current = nullptr;
    std::string current_name;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            current_name = std::string(trim(line.substr(1, line.size() - 2)));
            if (!grammar().contains(current_name))
                throw ConfigError("unknown section [" + current_name + "]", line_no);
            if (sections.contains(current_name))
                throw ConfigError("duplicate section [" + current_name + "]", line_no);
            current = &sections[current_name];
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (current == nullptr) throw ConfigError("key outside of any section", line_no, key);
        const std::string qualified = current_name + "." + key;
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (!grammar().at(current_name).contains(key)) throw ConfigError("unknown key", line_no, qualified);
        if (current->contains(key)) throw ConfigError("duplicate key", line_no, qualified);
        if (value.empty()) throw ConfigError("missing value", line_no, qualified);
        (*current)[key] = Entry{value, line_no};
    }
    return sections;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
    const auto sections = tokenize(text);
    for (const char* required : {"system", "pulse"}) {
        if (!sections.contains(required)) throw ConfigError(std::string("missing section [") + required + "]");
    }
    auto reader = [&](const std::string& name) {
        const auto it = sections.find(name);
        return SectionReader(it == sections.end() ? nullptr : &it->second, name);
    };

    ExperimentConfig cfg;

    const auto system = reader("system");
    cfg.system.omega1 = system.number_or("omega1", cfg.system.omega1);
    cfg.system.omega2 = system.number_or("omega2", cfg.system.omega2);
    cfg.system.j_coupling = system.number_or("j", cfg.system.j_coupling);

    const auto initial = reader("initial");
    cfg.initial1.theta = initial.number_or("theta1", cfg.initial1.theta);
    cfg.initial1.phi = initial.number_or("phi1", cfg.initial1.phi);
    cfg.initial2.theta = initial.number_or("theta2", cfg.initial2.theta);
    cfg.initial2.phi = initial.number_or("phi2", cfg.initial2.phi);

    const auto pulse = reader("pulse");
    if (pulse.has("target") == pulse.has("carrier"))
        throw ConfigError("exactly one of 'target' and 'carrier' is required", 0, "pulse");
    if (const auto target = pulse.text("target")) {
        cfg.pulse.target = parse_transition(*target);
        if (!cfg.pulse.target)
            throw pulse.error("target", "unknown transition '" + *target +
                                            "' (expected b-given-a0, b-given-a1, a-given-b0 or a-given-b1)");
    }
    cfg.pulse.carrier = pulse.number("carrier");
    cfg.pulse.rabi1 = pulse.number_or("rabi1", cfg.pulse.rabi1);
    cfg.pulse.rabi2 = pulse.number_or("rabi2", cfg.pulse.rabi2);
    cfg.pulse.duration = pulse.number("duration");
    if (cfg.pulse.rabi1 < 0.0) throw pulse.error("rabi1", "must be >= 0");
    if (cfg.pulse.rabi2 < 0.0) throw pulse.error("rabi2", "must be >= 0");
    if (cfg.pulse.duration && *cfg.pulse.duration < 0.0) throw pulse.error("duration", "must be >= 0");
    if (cfg.pulse.carrier && !cfg.pulse.duration)
        throw ConfigError("required with 'carrier'", 0, "pulse.duration");

    const auto integrator = reader("integrator");
    cfg.step = integrator.number("step");
    if (cfg.step && !(*cfg.step > 0.0)) throw integrator.error("step", "must be > 0");
    if (const auto samples = integrator.number("samples")) {
        if (*samples < 2.0 || *samples != std::floor(*samples) || *samples > 1e9)
            throw integrator.error("samples", "must be an integer >= 2");
        cfg.samples = static_cast<std::size_t>(*samples);
    }

    const auto output = reader("output");
    if (const auto prefix = output.text("prefix")) cfg.prefix = *prefix;
    if (const auto engines = output.text("engines")) {
        cfg.run_quantum = cfg.run_classical = false;
        std::stringstream list(*engines);
        std::string item;
        while (std::getline(list, item, ',')) {
            const auto name = trim(item);
            if (name == "quantum") {
                cfg.run_quantum = true;
            } else if (name == "classical") {
                cfg.run_classical = true;
            } else if (name == "both") {
                cfg.run_quantum = cfg.run_classical = true;
            } else {
                throw output.error("engines", "unknown engine '" + std::string(name) + "'");
            }
        }
    }
    cfg.padding = output.number_or("padding", cfg.padding);
    if (cfg.padding < 0.0) throw output.error("padding", "must be >= 0");

    // Cross-key validation that needs the resolved pulse.
    try {
        cfg.resolved_pulse();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what(), 0, "pulse");
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

QuantumState ExperimentConfig::quantum_initial() const { return product_state(initial1, initial2); }

ClassicalState ExperimentConfig::classical_initial() const { return classical_from_product(initial1, initial2); }

PulseSpec ExperimentConfig::resolved_pulse() const {
    PulseSpec spec;
    if (pulse.target) {
        spec = pi_pulse(system, *pulse.target, pulse.rabi1, pulse.rabi2);
        if (pulse.duration) spec.duration = *pulse.duration;
    } else {
        spec = PulseSpec{pulse.carrier.value_or(0.0), pulse.rabi1, pulse.rabi2, pulse.duration.value_or(0.0)};
    }
    spec.validate();
    return spec;
}

double ExperimentConfig::sample_spacing() const {
    const double duration = resolved_pulse().duration;
    if (!(duration > 0.0)) throw InvalidArgument("pulse duration must be > 0 to define a sampling grid");
    return duration / static_cast<double>(samples);
}

std::size_t ExperimentConfig::padding_intervals() const {
    return static_cast<std::size_t>(std::llround(padding * static_cast<double>(samples)));
}

PulseSequence ExperimentConfig::sequence() const {
    const double pad = static_cast<double>(padding_intervals()) * sample_spacing();
    return PulseSequence{pad, {SequenceEntry{resolved_pulse(), pad}}};
}

IntegratorSettings ExperimentConfig::integrator() const { return IntegratorSettings{step, sample_spacing()}; }

}  // namespace spinlab
