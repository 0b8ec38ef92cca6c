#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/linalg.hpp"
#include "core/period.hpp"
#include "discriminant/discriminant.hpp"

namespace ews {

// Gaussian class samples for oracle tests. Everything is a pure function of
// the config: the generator is counter-based, so sample i never depends on
// how many samples were drawn before it.
struct GaussianConfig {
  std::uint64_t seed = 0;
  std::size_t n_healthy = 0;
  std::size_t n_distressed = 0;
  std::vector<double> mean_healthy;
  std::vector<double> mean_distressed;
  Matrix covariance;  // shared between classes, symmetric positive definite
};

// Raw draws from N(mean, covariance); `stream` separates independent series
// under one seed. InvalidConfig on shape/symmetry problems,
// NonPositiveDefinite when the covariance has no Cholesky factor.
std::vector<std::vector<double>> gaussian_draws(std::uint64_t seed, std::uint64_t stream,
                                                std::size_t n, const std::vector<double>& mean,
                                                const Matrix& covariance);

// Ten-feature labeled samples: healthy ids H0001..., distressed D0001...,
// all dated 2000-H1 (the label is what matters downstream).
std::vector<LabeledVector> gaussian_classes(const GaussianConfig& c);

// One bank whose score trajectory is scripted: base_score everywhere except
// breach_period, where it jumps to breach_score (>= the intervention
// threshold). The bank is marked intervened in the period after the breach.
struct ScriptedBank {
  std::string bank_id = "CAPITAL";
  Period breach_period{2000, Half::H1};
  double breach_score = -150;
  double base_score = -294;
};

struct PanelConfig {
  std::uint64_t seed = 0;
  std::size_t n_banks = 1;
  std::size_t n_periods = 2;
  Period start{1996, Half::H1};
  std::array<double, 10> weights = paper_weights();
  double intervention_threshold = paper_threshold();
  std::optional<ScriptedBank> scripted;
  // Background banks target score = level - 5 - spread*uniform, where level
  // comes from yearly_levels for that calendar year, else healthy_level.
  double healthy_level = -350;
  double healthy_spread = 40;
  std::map<int, double> yearly_levels;
};

struct PanelFiles {
  std::string banks_csv;
  std::string macro_csv;
};

// Emits loadable banks/macro CSV content whose implied indicator vectors hit
// the configured target scores. Balance sheets are derived backward from the
// ratios (total_assets fixed at 100 and so on); the financial-inflows field
// absorbs whatever the target score still needs.
PanelFiles generate_panel(const PanelConfig& c);

// banks.csv and macro.csv under `dir`.
void write_panel(const PanelConfig& c, const std::string& dir);

}  // namespace ews
