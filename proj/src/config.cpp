#include "dephase/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "dephase/error.hpp"

namespace dephase {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

bool parse_plain(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) {
        return false;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

// a, pi, a*pi, api, with an optional /b or *b.
bool parse_factor(std::string_view s, double& out) {
    s = trim(s);
    const std::string l = lower(s);
    const auto pos = l.find("pi");
    if (pos == std::string::npos) {
        return parse_plain(s, out);
    }
    if (pos + 2 != l.size()) {
        return false;
    }
    std::string_view coeff = trim(s.substr(0, pos));
    if (!coeff.empty() && coeff.back() == '*') {
        coeff.remove_suffix(1);
        coeff = trim(coeff);
        if (coeff.empty()) {
            return false;
        }
    }
    double c = 1.0;
    if (coeff == "-") {
        c = -1.0;
    } else if (!coeff.empty() && !parse_plain(coeff, c)) {
        return false;
    }
    out = c * M_PI;
    return true;
}

struct BathDraft {
    SpectralFamily family = SpectralFamily::SingleMode;
    double lambda = 1.0;
    double omega_c = 1.0;
    double s = 1.0;
    double q = 0.5;
    int n = 2;

    explicit BathDraft(const SpectralDensity& j) : family(j.family()), lambda(j.lambda()), omega_c(j.omega_c()) {
        if (const auto* o = std::get_if<Ohmic>(&j.params())) {
            s = o->s;
        } else if (const auto* l = std::get_if<Lorentzian>(&j.params())) {
            q = l->q;
            n = l->n;
        }
    }

    SpectralDensity build() const {
        switch (family) {
            case SpectralFamily::SingleMode:
                return SpectralDensity::single_mode(lambda, omega_c);
            case SpectralFamily::Ohmic:
                return SpectralDensity::ohmic(lambda, s, omega_c);
            case SpectralFamily::Lorentzian:
                return SpectralDensity::lorentzian(lambda, q, omega_c, n);
        }
        throw ConfigError("bath.family is invalid");
    }
};

bool key_applies(std::string_view key, SpectralFamily family) {
    if (key == "bath.s") {
        return family == SpectralFamily::Ohmic;
    }
    if (key == "bath.q" || key == "bath.n") {
        return family == SpectralFamily::Lorentzian;
    }
    return true;
}

std::int64_t parse_integer(std::string_view text, std::string_view key) {
    const double v = parse_number(text, key);
    if (v != std::floor(v) || std::abs(v) > 9e15) {
        throw ConfigError(std::string(key) + " must be an integer");
    }
    return static_cast<std::int64_t>(v);
}

using Assignments = std::vector<std::pair<std::string, std::string>>;

void apply_all(ScenarioConfig& cfg, const Assignments& items) {
    ScenarioConfig next = cfg;
    BathDraft bath(next.bath);
    std::vector<std::string> bath_keys;
    for (const auto& [key, value] : items) {
        if (key == "bath.family") {
            bath.family = family_from_tag(trim(value));
        }
    }
    for (const auto& [key, value] : items) {
        if (key == "bath.family") {
            continue;
        }
        if (key.rfind("bath.", 0) == 0) {
            bath_keys.push_back(key);
        }
        if (key == "bath.lambda") {
            bath.lambda = parse_number(value, key);
        } else if (key == "bath.omega_c") {
            bath.omega_c = parse_number(value, key);
        } else if (key == "bath.s") {
            bath.s = parse_number(value, key);
        } else if (key == "bath.q") {
            bath.q = parse_number(value, key);
        } else if (key == "bath.n") {
            bath.n = static_cast<int>(parse_integer(value, key));
        } else if (key == "beta") {
            next.beta = parse_number(value, key);
        } else if (key == "h") {
            next.h = parse_number(value, key);
        } else if (key == "init.theta1") {
            next.init.theta1 = parse_number(value, key);
        } else if (key == "init.theta2") {
            next.init.theta2 = parse_number(value, key);
        } else if (key == "init.theta") {
            next.init.theta1 = next.init.theta2 = parse_number(value, key);
        } else if (key == "init.phi1") {
            next.init.phi1 = parse_number(value, key);
        } else if (key == "init.phi2") {
            next.init.phi2 = parse_number(value, key);
        } else if (key == "init.phi") {
            next.init.phi1 = next.init.phi2 = parse_number(value, key);
        } else if (key == "time.start") {
            next.time.t_start = parse_number(value, key);
        } else if (key == "time.end") {
            next.time.t_end = parse_number(value, key);
        } else if (key == "time.points") {
            next.time.n_points = parse_integer(value, key);
        } else if (key == "time.spacing") {
            if (lower(trim(value)) != "linear") {
                throw ConfigError("time.spacing: only 'linear' is supported");
            }
        } else if (key == "outputs") {
            std::set<OutputField> outs;
            std::string_view rest = value;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                const auto item = trim(rest.substr(0, comma));
                if (!item.empty()) {
                    outs.insert(output_from_tag(item));
                }
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            }
            if (outs.empty()) {
                throw ConfigError("outputs: at least one field is required");
            }
            next.outputs = std::move(outs);
        } else if (key == "quad.rel_tol") {
            next.quad.rel_tol = parse_number(value, key);
        } else if (key == "quad.abs_tol") {
            next.quad.abs_tol = parse_number(value, key);
        } else if (key == "quad.max_evals") {
            next.quad.max_evals = parse_integer(value, key);
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    for (const auto& key : bath_keys) {
        if (!key_applies(key, bath.family)) {
            throw ConfigError(key + " does not apply to bath.family = " + std::string(family_tag(bath.family)));
        }
    }
    next.bath = bath.build();
    next.validate();
    cfg = std::move(next);
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double parse_number(std::string_view text, std::string_view key) {
    const std::string_view s = trim(text);
    double out = 0.0;
    bool ok = false;
    const auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        double num = 0.0;
        double den = 0.0;
        ok = parse_factor(s.substr(0, slash), num) && parse_factor(s.substr(slash + 1), den) && den != 0.0;
        out = num / den;
    } else {
        ok = parse_factor(s, out);
    }
    if (!ok || !std::isfinite(out)) {
        throw ConfigError(std::string(key) + ": cannot parse '" + std::string(s) + "' as a number");
    }
    return out;
}

ScenarioConfig parse_config(std::string_view text, const ScenarioConfig& base) {
    Assignments items;
    std::map<std::string, int> seen;
    std::string section;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(trim(line.substr(0, eq)));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        }
        if (!section.empty()) {
            key = section + "." + key;
        }
        if (seen.count(key)) {
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        seen[key] = line_no;
        items.emplace_back(std::move(key), std::string(trim(line.substr(eq + 1))));
    }
    ScenarioConfig cfg = base;
    apply_all(cfg, items);
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path, const ScenarioConfig& base) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read config file '" + path + "'");
    }
    return parse_config(ss.str(), base);
}

std::string to_config_text(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "bath.family = " << family_tag(cfg.bath.family()) << "\n";
    out << "bath.lambda = " << format_number(cfg.bath.lambda()) << "\n";
    out << "bath.omega_c = " << format_number(cfg.bath.omega_c()) << "\n";
    if (const auto* o = std::get_if<Ohmic>(&cfg.bath.params())) {
        out << "bath.s = " << format_number(o->s) << "\n";
    } else if (const auto* l = std::get_if<Lorentzian>(&cfg.bath.params())) {
        out << "bath.q = " << format_number(l->q) << "\n";
        out << "bath.n = " << l->n << "\n";
    }
    out << "beta = " << format_number(cfg.beta) << "\n";
    out << "h = " << format_number(cfg.h) << "\n";
    out << "init.theta1 = " << format_number(cfg.init.theta1) << "\n";
    out << "init.theta2 = " << format_number(cfg.init.theta2) << "\n";
    out << "init.phi1 = " << format_number(cfg.init.phi1) << "\n";
    out << "init.phi2 = " << format_number(cfg.init.phi2) << "\n";
    out << "time.start = " << format_number(cfg.time.t_start) << "\n";
    out << "time.end = " << format_number(cfg.time.t_end) << "\n";
    out << "time.points = " << cfg.time.n_points << "\n";
    out << "time.spacing = linear\n";
    out << "outputs = ";
    bool first = true;
    for (auto f : cfg.outputs) {
        out << (first ? "" : ",") << output_tag(f);
        first = false;
    }
    out << "\n";
    out << "quad.rel_tol = " << format_number(cfg.quad.rel_tol) << "\n";
    out << "quad.abs_tol = " << format_number(cfg.quad.abs_tol) << "\n";
    out << "quad.max_evals = " << cfg.quad.max_evals << "\n";
    return out.str();
}

void set_field(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
    apply_all(cfg, {{std::string(trim(key)), std::string(trim(value))}});
}

void apply_override(ScenarioConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(assignment) + "' must have the form key=value");
    }
    const auto key = trim(assignment.substr(0, eq));
    if (key.empty()) {
        throw ConfigError("override '" + std::string(assignment) + "' has an empty key");
    }
    set_field(cfg, key, assignment.substr(eq + 1));
}

void set_numeric_field(ScenarioConfig& cfg, std::string_view key, double value) {
    if (trim(key) == "bath.family" || trim(key) == "outputs" || trim(key) == "time.spacing") {
        throw ConfigError(std::string(key) + " is not a numeric field");
    }
    set_field(cfg, key, format_number(value));
}

}  // namespace dephase
