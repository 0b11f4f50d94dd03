#include "dephase/record_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dephase/error.hpp"

namespace dephase {

namespace {

using nlohmann::ordered_json;

constexpr OutputField kColumnOrder[] = {OutputField::Gamma, OutputField::Delta, OutputField::Negativity,
                                        OutputField::NegativityIdeal, OutputField::Purity};

double column_value(const RunPoint& p, OutputField f) {
    switch (f) {
        case OutputField::Gamma:
            return p.gamma_divergent ? std::numeric_limits<double>::infinity() : p.gamma;
        case OutputField::Delta:
            return p.delta;
        case OutputField::Negativity:
            return p.negativity;
        case OutputField::NegativityIdeal:
            return p.negativity_ideal;
        case OutputField::Purity:
            return p.purity;
        case OutputField::StateDump:
            break;
    }
    return 0.0;
}

void write_rows(std::ostream& out, const RunRecord& rec, const std::string& prefix) {
    for (const auto& p : rec.points) {
        out << prefix << format_double(p.t);
        for (auto f : kColumnOrder) {
            if (rec.config.outputs.count(f)) {
                out << ',' << format_double(column_value(p, f));
            }
        }
        out << '\n';
    }
}

void write_header(std::ostream& out, const std::set<OutputField>& outputs, bool sweep) {
    if (sweep) {
        out << "sweep_value,";
    }
    const auto cols = csv_columns(outputs);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
}

ordered_json number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

ordered_json config_json(const ScenarioConfig& cfg) {
    ordered_json bath;
    bath["family"] = family_tag(cfg.bath.family());
    bath["lambda"] = cfg.bath.lambda();
    bath["omega_c"] = cfg.bath.omega_c();
    if (const auto* o = std::get_if<Ohmic>(&cfg.bath.params())) {
        bath["s"] = o->s;
    } else if (const auto* l = std::get_if<Lorentzian>(&cfg.bath.params())) {
        bath["q"] = l->q;
        bath["n"] = l->n;
    }
    ordered_json outputs = ordered_json::array();
    for (auto f : cfg.outputs) {
        outputs.push_back(output_tag(f));
    }
    ordered_json j;
    j["bath"] = bath;
    j["beta"] = cfg.beta;
    j["h"] = cfg.h;
    j["init"] = {{"theta1", cfg.init.theta1}, {"theta2", cfg.init.theta2},
                 {"phi1", cfg.init.phi1},     {"phi2", cfg.init.phi2}};
    j["time"] = {{"start", cfg.time.t_start}, {"end", cfg.time.t_end},
                 {"points", cfg.time.n_points}, {"spacing", "linear"}};
    j["outputs"] = outputs;
    return j;
}

ordered_json state_json(const Eigen::Matrix4cd& rho) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < 4; ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < 4; ++k) {
            row.push_back(ordered_json::array({rho(i, k).real(), rho(i, k).imag()}));
        }
        rows.push_back(row);
    }
    return rows;
}

ordered_json record_json(const RunRecord& rec) {
    ordered_json j;
    j["version"] = rec.version;
    j["config"] = config_json(rec.config);
    j["tolerances"] = {{"rel_tol", rec.config.quad.rel_tol},
                       {"abs_tol", rec.config.quad.abs_tol},
                       {"max_evals", rec.config.quad.max_evals},
                       {"cross_check", kCrossCheckTol}};
    j["factor_method"] = method_name(rec.factor_method);
    j["cross_check_max_deviation"] = rec.cross_check_max_deviation;
    j["columns"] = csv_columns(rec.config.outputs);
    ordered_json points = ordered_json::array();
    for (const auto& p : rec.points) {
        ordered_json pj;
        pj["t"] = p.t;
        for (auto f : kColumnOrder) {
            if (rec.config.outputs.count(f)) {
                pj[std::string(output_tag(f))] = number(column_value(p, f));
            }
        }
        pj["gamma_divergent"] = p.gamma_divergent;
        if (p.state) {
            pj["state"] = state_json(*p.state);
        }
        points.push_back(std::move(pj));
    }
    j["points"] = std::move(points);
    return j;
}

void emit(std::ostream& out, const ordered_json& j) {
    out << j.dump(2) << '\n';
    if (!out) {
        throw IoError("failed to write output");
    }
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> csv_columns(const std::set<OutputField>& outputs) {
    std::vector<std::string> cols{"t"};
    for (auto f : kColumnOrder) {
        if (outputs.count(f)) {
            cols.emplace_back(output_tag(f));
        }
    }
    return cols;
}

void write_csv(std::ostream& out, const RunRecord& rec) {
    write_header(out, rec.config.outputs, false);
    write_rows(out, rec, "");
    if (!out) {
        throw IoError("failed to write output");
    }
}

void write_sweep_csv(std::ostream& out, const SweepRecord& rec) {
    write_header(out, rec.runs.empty() ? default_outputs() : rec.runs.front().config.outputs, true);
    for (std::size_t i = 0; i < rec.runs.size(); ++i) {
        write_rows(out, rec.runs[i], format_double(rec.spec.values[i]) + ",");
    }
    if (!out) {
        throw IoError("failed to write output");
    }
}

void write_json(std::ostream& out, const RunRecord& rec) {
    emit(out, record_json(rec));
}

void write_sweep_json(std::ostream& out, const SweepRecord& rec) {
    ordered_json j;
    j["version"] = std::string(kVersion);
    j["sweep"] = {{"field", rec.spec.field}, {"values", rec.spec.values}};
    ordered_json runs = ordered_json::array();
    for (const auto& r : rec.runs) {
        runs.push_back(record_json(r));
    }
    j["runs"] = std::move(runs);
    emit(out, j);
}

void write_spectrum_csv(std::ostream& out, const std::vector<std::pair<double, double>>& rows) {
    out << "omega,J\n";
    for (const auto& [w, jw] : rows) {
        out << format_double(w) << ',' << format_double(jw) << '\n';
    }
    if (!out) {
        throw IoError("failed to write output");
    }
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("CSV input is empty");
    }
    table.columns = split_commas(line);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto cells = split_commas(line);
        if (cells.size() != table.columns.size()) {
            throw IoError("CSV line " + std::to_string(line_no) + " has the wrong number of fields");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            if (c == "inf") {
                row.push_back(std::numeric_limits<double>::infinity());
            } else if (c == "-inf") {
                row.push_back(-std::numeric_limits<double>::infinity());
            } else {
                char* end = nullptr;
                const double v = std::strtod(c.c_str(), &end);
                if (c.empty() || end != c.c_str() + c.size()) {
                    throw IoError("CSV line " + std::to_string(line_no) + ": bad number '" + c + "'");
                }
                row.push_back(v);
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace dephase
