#pragma once

// JSON job configs, the orchestration driver (validate, resonance check,
// monodromy per j0, optional non-degeneracy and oracle verification),
// canonical JSON/text rendering and the exit-code contract (0 success,
// 2 validation failure, 3 verification mismatch).

#include "ahg/monodromy_engine.hpp"
#include "ahg/ode_oracle.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ahg {

inline constexpr const char* kVersion = "0.1.0";

/// Schema violation with a JSON-pointer path to the offending node.
struct ConfigError : std::runtime_error {
    std::string pointer;
    ConfigError(std::string ptr, const std::string& msg)
        : std::runtime_error(msg + " (at " + (ptr.empty() ? "/" : ptr) + ")"),
          pointer(std::move(ptr)) {}
};

struct JobConfig {
    PointConfiguration A;
    ParameterVector c;
    bool j0_all = false;
    std::vector<std::size_t> j0;  // 1-based, resolved from the config
    LoopOrientation orientation = LoopOrientation::Ccw;
    std::optional<CoefficientVector> z;
    std::optional<std::string> verify_catalog;
};

/// Parses and validates a job config; throws ConfigError on schema errors.
/// Rational entries are strings "p/q"; complex floats are {re, im}; mode is
/// inferred (all-rational => exact). j0 is an int, a list, or "all"
/// (default). "verify" is a catalog id, {"catalog": id}, or true (catalog
/// inferred from A).
JobConfig parse_config(const nlohmann::json& j);

struct VerifyReport {
    std::string catalog;
    std::size_t j0 = 0;
    LoopOrientation orientation = LoopOrientation::Ccw;
    double radius = 0.0;
    std::size_t steps = 0;
    SpectrumMultiset engine_spectrum;
    SpectrumMultiset oracle_spectrum;
    SpectrumMatch match;
    bool pass = false;
};

struct JobResult {
    nlohmann::ordered_json input_echo;
    ValidationReport validation;
    std::vector<MonodromyReport> reports;
    std::optional<NondegeneracyReport> nondegeneracy;
    std::optional<VerifyReport> verify;
    std::string version = kVersion;
};

/// Runs the full job. Validation failure yields a result with empty reports
/// (see exit_code_for); config-level impossibilities throw ConfigError.
JobResult run(const JobConfig& config);

/// 0 success, 2 validation failure, 3 verification mismatch.
int exit_code_for(const JobResult& r);

/// Canonical JSON: fixed key order, canonical factor order, byte-stable for
/// fixed input and version.
nlohmann::ordered_json render_json(const JobResult& r);

/// Deterministic human-readable report.
std::string render_text(const JobResult& r);

/// Rebuilds a JobResult from render_json output (schema-complete round trip).
JobResult parse_result(const nlohmann::ordered_json& j);

/// Semantic equality of results (the round-trip invariant).
bool results_equal(const JobResult& a, const JobResult& b);

}  // namespace ahg
