#include "dephase/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "dephase/config.hpp"
#include "dephase/error.hpp"
#include "parallel.hpp"

namespace dephase {

namespace {

constexpr double kAngleMatch = 1e-15;

struct PointResult {
    RunPoint point;
    FactorMethod method = FactorMethod::Quadrature;
    double deviation = 0.0;
};

}  // namespace

std::string_view output_tag(OutputField f) {
    switch (f) {
        case OutputField::Gamma:
            return "gamma";
        case OutputField::Delta:
            return "delta";
        case OutputField::Negativity:
            return "negativity";
        case OutputField::NegativityIdeal:
            return "negativity_ideal";
        case OutputField::Purity:
            return "purity";
        case OutputField::StateDump:
            return "state_dump";
    }
    return "unknown";
}

OutputField output_from_tag(std::string_view tag) {
    for (auto f : {OutputField::Gamma, OutputField::Delta, OutputField::Negativity,
                   OutputField::NegativityIdeal, OutputField::Purity, OutputField::StateDump}) {
        if (output_tag(f) == tag) {
            return f;
        }
    }
    throw ConfigError("outputs: unknown field '" + std::string(tag) + "'");
}

std::set<OutputField> default_outputs() {
    return {OutputField::Gamma, OutputField::Delta, OutputField::Negativity,
            OutputField::NegativityIdeal, OutputField::Purity};
}

void TimeGrid::validate() const {
    if (!std::isfinite(t_start) || t_start < 0.0) {
        throw ConfigError("time.start must be finite and >= 0");
    }
    if (!std::isfinite(t_end) || !(t_end > t_start)) {
        throw ConfigError("time.end must be finite and greater than time.start");
    }
    if (n_points < 2 || n_points > kMaxGridPoints) {
        throw ConfigError("time.points must be between 2 and " + std::to_string(kMaxGridPoints));
    }
    const double step = (t_end - t_start) / static_cast<double>(n_points - 1);
    if (!(step > 4.0 * std::numeric_limits<double>::epsilon() * t_end)) {
        throw ConfigError("time.points is too large for the time window");
    }
}

std::vector<double> TimeGrid::points() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(n_points));
    const double span = t_end - t_start;
    const double last = static_cast<double>(n_points - 1);
    for (std::int64_t k = 0; k < n_points; ++k) {
        out[static_cast<std::size_t>(k)] = t_start + span * (static_cast<double>(k) / last);
    }
    out.back() = t_end;
    return out;
}

void ScenarioConfig::validate() const {
    BathConditions{beta}.validate();
    init.validate();
    if (!std::isfinite(h)) {
        throw ConfigError("h must be finite");
    }
    time.validate();
    quad.validate();
}

bool ScenarioConfig::is_x_state() const {
    return std::abs(init.theta1 - M_PI / 2) <= kAngleMatch && std::abs(init.theta2 - M_PI / 2) <= kAngleMatch &&
           init.phi1 == 0.0 && init.phi2 == 0.0;
}

unsigned threads_from_environment() {
    const char* env = std::getenv("DEPHASE_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    const std::string_view text(env);
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("DEPHASE_THREADS must be a non-negative integer");
    }
    return value;
}

RunRecord run(const ScenarioConfig& cfg, unsigned threads) {
    cfg.validate();
    const auto times = cfg.time.points();
    const bool x_state = cfg.is_x_state();
    const GeneralInitialState init = x_state ? x_projected_state() : bloch_product_to_general(cfg.init);
    const BathConditions bc{cfg.beta};
    const FieldConfig field{cfg.h};
    const bool keep_state = cfg.outputs.count(OutputField::StateDump) > 0;

    std::vector<PointResult> results(times.size());
    detail::parallel_for(times.size(), threads, [&](std::size_t i) {
        const double t = times[i];
        const DecoherenceFactors df = factors(cfg.bath, bc, t, cfg.quad);
        const TwoSpinState state = evolve(init, df, field, t);
        const NegativityResult numeric = negativity(state);
        PointResult& r = results[i];
        r.method = df.method;
        r.point.t = t;
        r.point.gamma = df.gamma;
        r.point.delta = df.delta;
        r.point.gamma_divergent = df.gamma_divergent;
        r.point.negativity = numeric.value;
        if (x_state) {
            const NegativityResult closed = x_state_negativity(df);
            r.deviation = std::abs(closed.value - numeric.value);
            r.point.negativity = closed.value;
        }
        r.point.negativity_ideal = negativity(evolve_ideal(init, df.delta)).value;
        r.point.purity = purity(state);
        if (keep_state) {
            r.point.state = state.rho;
        }
    });

    RunRecord rec;
    rec.config = cfg;
    rec.points.reserve(results.size());
    rec.factor_method = results.front().method;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].deviation > kCrossCheckTol) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "closed-form and numeric negativity differ by %.3g at t=%.17g",
                          results[i].deviation, times[i]);
            throw ComputeError(buf);
        }
        rec.cross_check_max_deviation = std::max(rec.cross_check_max_deviation, results[i].deviation);
        rec.points.push_back(std::move(results[i].point));
    }
    return rec;
}

IdealComparison compare_ideal(const ScenarioConfig& cfg, unsigned threads) {
    if (gamma_diverges(cfg.bath)) {
        throw ConfigError("bath: gamma diverges for this spectral density, so there is no finite comparison");
    }
    const RunRecord rec = run(cfg, threads);
    IdealComparison out;
    for (const auto& p : rec.points) {
        out.t.push_back(p.t);
        out.full.push_back(p.negativity);
        out.ideal.push_back(p.negativity_ideal);
        out.max_deviation = std::max(out.max_deviation, std::abs(p.negativity - p.negativity_ideal));
    }
    return out;
}

IdealComparison compare_ideal(const GeneralInitialState& init, const std::vector<double>& times,
                              const std::vector<DecoherenceFactors>& factors) {
    if (times.size() != factors.size()) {
        throw ConfigError("times and factors must have the same length");
    }
    IdealComparison out;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (factors[i].gamma_divergent) {
            throw ConfigError("bath: gamma diverges, so there is no finite comparison");
        }
        const double full = negativity(evolve(init, factors[i], FieldConfig{}, times[i])).value;
        const double ideal = negativity(evolve_ideal(init, factors[i].delta)).value;
        out.t.push_back(times[i]);
        out.full.push_back(full);
        out.ideal.push_back(ideal);
        out.max_deviation = std::max(out.max_deviation, std::abs(full - ideal));
    }
    return out;
}

void SweepSpec::validate() const {
    if (field.empty()) {
        throw ConfigError("sweep: no field given");
    }
    if (values.empty()) {
        throw ConfigError("sweep: empty value list");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ConfigError("sweep: values must be finite");
        }
    }
}

SweepRecord sweep(const ScenarioConfig& base, const SweepSpec& spec, unsigned threads) {
    spec.validate();
    std::vector<ScenarioConfig> cfgs;
    for (double v : spec.values) {
        ScenarioConfig cfg = base;
        set_numeric_field(cfg, spec.field, v);
        cfgs.push_back(std::move(cfg));
    }
    SweepRecord out{spec, {}};
    for (const auto& cfg : cfgs) {
        out.runs.push_back(run(cfg, threads));
    }
    return out;
}

}  // namespace dephase
