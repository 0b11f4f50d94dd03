#pragma once

// Scenario runs: a bath, an initial product state and a time grid produce
// per-point decoherence factors, negativities and purities.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dephase/decoherence.hpp"
#include "dephase/dynamics.hpp"
#include "dephase/entanglement.hpp"
#include "dephase/spectral.hpp"

namespace dephase {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr std::int64_t kMaxGridPoints = 10'000'000;
/// Allowed gap between closed-form and numeric negativity for the x-state.
inline constexpr double kCrossCheckTol = 1e-10;

enum class OutputField { Gamma, Delta, Negativity, NegativityIdeal, Purity, StateDump };

std::string_view output_tag(OutputField f);
OutputField output_from_tag(std::string_view tag);
/// Every field except StateDump.
std::set<OutputField> default_outputs();

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    std::int64_t n_points = 2;

    void validate() const;
    /// t_start + k (t_end - t_start) / (n_points - 1); the last point is t_end exactly.
    std::vector<double> points() const;
};

struct ScenarioConfig {
    SpectralDensity bath = SpectralDensity::single_mode(1.0, 20.0);
    double beta = 1.0;
    InitialProductState init = InitialProductState::x_state();
    double h = 0.0;
    TimeGrid time{0.0, 40.0, 2001};
    std::set<OutputField> outputs = default_outputs();
    QuadratureSettings quad;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    /// Both spins along +x, where the closed-form negativity applies.
    bool is_x_state() const;
};

struct RunPoint {
    double t = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    bool gamma_divergent = false;
    double negativity = 0.0;
    double negativity_ideal = 0.0;
    double purity = 1.0;
    std::optional<Eigen::Matrix4cd> state;  ///< only with OutputField::StateDump
};

struct RunRecord {
    ScenarioConfig config;
    std::vector<RunPoint> points;
    FactorMethod factor_method = FactorMethod::Quadrature;
    /// max |closed form - numeric| over the grid; 0 unless the init is the x-state.
    double cross_check_max_deviation = 0.0;
    std::string version{kVersion};
};

/// DEPHASE_THREADS from the environment (0 or unset = hardware concurrency).
unsigned threads_from_environment();

/// Deterministic: the record does not depend on `threads`. Throws
/// QuadratureFailure naming t, or ComputeError if the closed-form and
/// numeric negativities of an x-state disagree by more than kCrossCheckTol.
RunRecord run(const ScenarioConfig& cfg, unsigned threads = threads_from_environment());

struct IdealComparison {
    std::vector<double> t;
    std::vector<double> full;
    std::vector<double> ideal;
    double max_deviation = 0.0;
};

/// Negativity with and without dephasing on the configured grid. Rejects
/// baths whose gamma diverges.
IdealComparison compare_ideal(const ScenarioConfig& cfg, unsigned threads = threads_from_environment());

/// Same comparison on precomputed decoherence factors.
IdealComparison compare_ideal(const GeneralInitialState& init, const std::vector<double>& times,
                              const std::vector<DecoherenceFactors>& factors);

struct SweepSpec {
    std::string field;  ///< a numeric config key, e.g. "bath.s" or "init.theta"
    std::vector<double> values;

    void validate() const;
};

struct SweepRecord {
    SweepSpec spec;
    std::vector<RunRecord> runs;  ///< one per value, in order
};

SweepRecord sweep(const ScenarioConfig& base, const SweepSpec& spec,
                  unsigned threads = threads_from_environment());

struct Preset {
    std::string name;
    std::string description;
    ScenarioConfig config;
    std::optional<SweepSpec> sweep;  ///< set for multi-curve panels
};

const std::vector<Preset>& builtin_presets();
/// Throws ConfigError for an unknown name.
const Preset& find_preset(std::string_view name);

}  // namespace dephase
