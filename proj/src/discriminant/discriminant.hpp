#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/linalg.hpp"
#include "core/period.hpp"
#include "indicators/indicators.hpp"

namespace ews {

enum class BankClass { Healthy, Distressed };

inline const char* bank_class_name(BankClass c) {
  return c == BankClass::Healthy ? "Healthy" : "Distressed";
}

struct LabeledVector {
  IndicatorVector x;
  BankClass label = BankClass::Healthy;
  std::string bank_id;
  Period period;

  friend bool operator==(const LabeledVector&, const LabeledVector&) = default;
};

struct FitOptions {
  // When the pooled scatter is near-singular the fit adds λI and retries,
  // escalating λ a few times before giving up. Turn off to get
  // SingularScatter instead.
  bool allow_regularization = true;
};

// Dimension-generic Fisher discriminant; DiscriminantModel wraps the 10-feature case.
struct LinearDiscriminant {
  std::vector<double> weights;
  double threshold = 0;
  double regularization = 0;  // λ actually added to the scatter diagonal
  std::vector<double> mean_healthy;
  std::vector<double> mean_distressed;
};

// Fisher's rule: pooled within-class covariance S (n−2 divisor), solve
// S·w = μ_D − μ_H, orient so w·μ_D ≥ w·μ_H, midpoint threshold.
// Throws TooFewSamples (< 2 per class), DegenerateClasses (equal means),
// SingularScatter (regularization disabled or exhausted).
LinearDiscriminant fit_linear_discriminant(const std::vector<std::vector<double>>& healthy,
                                           const std::vector<std::vector<double>>& distressed,
                                           const FitOptions& options = {});

struct DiscriminantModel {
  std::array<double, 10> weights{};
  double threshold = 0;
  double regularization = 0;
  std::optional<PeriodRange> fit_window;
  // Present on fitted models; absent when loaded from a model file.
  std::optional<std::array<double, 10>> mean_healthy;
  std::optional<std::array<double, 10>> mean_distressed;
};

DiscriminantModel fit(std::span<const LabeledVector> data, const FitOptions& options = {});

double score(const DiscriminantModel& m, const IndicatorVector& x);

// Distressed iff score >= threshold; the boundary counts as distressed.
BankClass classify_score(const DiscriminantModel& m, double score_value);
BankClass classify(const DiscriminantModel& m, const IndicatorVector& x);

// Picks the threshold minimizing total misclassifications over the validation
// set. Candidates are midpoints of consecutive distinct sorted scores plus
// ±infinity sentinels. With typeI_below_typeII set, only candidates whose
// Type I rate (missed distressed) is <= the Type II rate (false alarms)
// qualify. Ties: fewer Type I errors, then the lower threshold.
double tune_threshold(const DiscriminantModel& m, std::span<const LabeledVector> validation,
                      bool typeI_below_typeII);
double tune_threshold_on_scores(const std::vector<double>& healthy_scores,
                                const std::vector<double>& distressed_scores,
                                bool typeI_below_typeII);

// Plain-text model file: weight_f1= .. weight_m5=, threshold=,
// regularization=, fit_window=FROM..TO (value may be empty), 13 lines total.
std::string model_to_string(const DiscriminantModel& m);
DiscriminantModel model_from_string(const std::string& text);
void save_model(const DiscriminantModel& m, const std::string& path);
DiscriminantModel load_model(const std::string& path);

// Published reference coefficients and bankruptcy threshold.
std::array<double, 10> paper_weights();
double paper_threshold();

}  // namespace ews
