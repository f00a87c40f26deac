#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lpmult/serialization.hpp"

namespace lpmult {

inline constexpr int kConfigSchemaVersion = 1;

/// Invalid experiment configuration. `field()` is a dotted path such as
/// "p_list[2]" or "model.poles[0]".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class ExperimentKind { theorem_probe, verbitskii_probe, mikhlin_verify, lp_constants, norm_table };

std::string to_string(ExperimentKind kind);

/// Either a named generator or explicit angles.
struct SetSpec {
  std::string generator;  // "dyadic_gap", "superlacunary" or "explicit"
  int K = 0;
  std::vector<double> angles;
  std::vector<double> accumulation;
};

/// Poles at (1 + delta) e^{is} with weight delta, for every flagged point s of
/// the set (every point when none is flagged).
struct AutoPoles {
  std::vector<double> deltas{0.05, 0.02, 0.01};
};

using ModelSpec = std::variant<AutoPoles, AnalyticModel>;

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  ExperimentKind kind = ExperimentKind::norm_table;
  std::optional<SetSpec> set;
  std::optional<double> theta0;
  std::optional<ModelSpec> model;
  std::vector<double> p_list;
  std::vector<std::size_t> N_list;
  std::size_t mikhlin_grid = 20000;
  std::size_t sup_grid = kDefaultSupGrid;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  double boyd_tol = 1e-8;
  int boyd_max_iter = 20000;
  int boyd_restarts = 8;
  double norm2_tol = 1e-10;
};

/// Parses and validates; every problem is reported as a ConfigError before
/// any expensive computation.
ExperimentConfig config_from_json(const json& j);
ExperimentConfig load_config(const std::string& path);
/// Normalised echo with all defaults filled in.
json config_to_json(const ExperimentConfig& cfg);

ClosedCircleSet resolve_set(const SetSpec& spec);
AnalyticModel auto_pole_model(const ClosedCircleSet& set, const AutoPoles& spec);

using CellResult = std::variant<NormEstimate, MikhlinReport, LPConstantsReport>;

std::string cell_kind(const CellResult& cell);

struct Report {
  json config;
  std::vector<CellResult> cells;
  json summary = json::object();
  std::string version;
  std::string platform;
};

struct CellTiming {
  std::string kind;
  double p = 0.0;
  std::size_t N = 0;
  double seconds = 0.0;
};

struct RunHooks {
  /// Called once per finished group of cells, possibly from worker threads.
  std::function<void(const CellTiming&)> on_cell;
  /// Upper bound on concurrent workers; 0 picks hardware_concurrency.
  unsigned workers = 0;
};

/// Throws UnboundedModelError when a theorem_probe model is not bounded on
/// the domain; the message names the offending singularity.
Report run(const ExperimentConfig& cfg, const RunHooks& hooks = {});

std::string artifact_version();
std::string platform_note();

}  // namespace lpmult
