#include "discriminant/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace ews {

namespace {

constexpr double kConditionLimit = 1e12;

std::vector<double> class_mean(const std::vector<std::vector<double>>& samples, std::size_t d) {
  std::vector<double> mu(d, 0.0);
  for (const auto& x : samples) {
    for (std::size_t j = 0; j < d; ++j) mu[j] += x[j];
  }
  for (double& v : mu) v /= static_cast<double>(samples.size());
  return mu;
}

void accumulate_scatter(Matrix& s, const std::vector<std::vector<double>>& samples,
                        const std::vector<double>& mu) {
  const std::size_t d = mu.size();
  std::vector<double> c(d);
  for (const auto& x : samples) {
    for (std::size_t j = 0; j < d; ++j) c[j] = x[j] - mu[j];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) s(i, j) += c[i] * c[j];
    }
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

LinearDiscriminant fit_linear_discriminant(const std::vector<std::vector<double>>& healthy,
                                           const std::vector<std::vector<double>>& distressed,
                                           const FitOptions& options) {
  if (healthy.size() < 2 || distressed.size() < 2) {
    throw Error(ErrorCode::TooFewSamples,
                "need at least 2 samples per class, got " + std::to_string(healthy.size()) +
                    " healthy and " + std::to_string(distressed.size()) + " distressed");
  }
  const std::size_t d = healthy[0].size();
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero-dimensional samples");
  for (const auto* cls : {&healthy, &distressed}) {
    for (const auto& x : *cls) {
      if (x.size() != d) {
        throw Error(ErrorCode::InvalidArgument, "inconsistent sample dimensions");
      }
      for (double v : x) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite sample value");
      }
    }
  }

  const std::vector<double> mu_h = class_mean(healthy, d);
  const std::vector<double> mu_d = class_mean(distressed, d);

  std::vector<double> diff(d);
  for (std::size_t j = 0; j < d; ++j) diff[j] = mu_d[j] - mu_h[j];
  const double scale = std::max({1.0, max_abs(mu_h), max_abs(mu_d)});
  if (max_abs(diff) <= 1e-12 * scale) {
    throw Error(ErrorCode::DegenerateClasses, "class means coincide");
  }

  // Pooled within-class covariance, n-2 divisor.
  Matrix s(d, d);
  accumulate_scatter(s, healthy, mu_h);
  accumulate_scatter(s, distressed, mu_d);
  const double divisor = static_cast<double>(healthy.size() + distressed.size() - 2);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      s(i, j) /= divisor;
      s(j, i) = s(i, j);
    }
  }

  // Near-singular scatter gets a ridge: lambda = 1e-8*trace/d, escalated x10
  // up to three times.
  const double lambda_base = 1e-8 * trace(s) / static_cast<double>(d);
  std::vector<double> ladder = {0.0};
  if (options.allow_regularization && lambda_base > 0) {
    for (double f : {1.0, 10.0, 100.0, 1000.0}) ladder.push_back(lambda_base * f);
  }

  std::optional<Cholesky> chol;
  double lambda_used = 0;
  for (double lambda : ladder) {
    Matrix s_l = s;
    if (lambda > 0) add_diagonal(s_l, lambda);
    auto f = Cholesky::factor(s_l);
    if (!f) continue;
    if (spd_condition_estimate(s_l) > kConditionLimit) continue;
    chol = std::move(f);
    lambda_used = lambda;
    break;
  }
  if (!chol) {
    throw Error(ErrorCode::SingularScatter,
                options.allow_regularization
                    ? "pooled scatter singular even after regularization"
                    : "pooled scatter singular and regularization is disabled");
  }

  LinearDiscriminant out;
  out.weights = chol->solve(diff);
  // w.(mu_D - mu_H) = diff' S^-1 diff > 0 for SPD S, so this never fires in
  // exact arithmetic; kept as a guard for the orientation invariant.
  if (dot(out.weights, mu_d) < dot(out.weights, mu_h)) {
    for (double& w : out.weights) w = -w;
  }
  std::vector<double> mid(d);
  for (std::size_t j = 0; j < d; ++j) mid[j] = 0.5 * (mu_h[j] + mu_d[j]);
  out.threshold = dot(out.weights, mid);
  out.regularization = lambda_used;
  out.mean_healthy = mu_h;
  out.mean_distressed = mu_d;
  return out;
}

DiscriminantModel fit(std::span<const LabeledVector> data, const FitOptions& options) {
  std::vector<std::vector<double>> healthy, distressed;
  for (const auto& lv : data) {
    const auto a = lv.x.to_array();
    auto& bucket = lv.label == BankClass::Healthy ? healthy : distressed;
    bucket.emplace_back(a.begin(), a.end());
  }
  const LinearDiscriminant ld = fit_linear_discriminant(healthy, distressed, options);

  DiscriminantModel m;
  std::copy(ld.weights.begin(), ld.weights.end(), m.weights.begin());
  m.threshold = ld.threshold;
  m.regularization = ld.regularization;
  std::array<double, 10> mh{}, md{};
  std::copy(ld.mean_healthy.begin(), ld.mean_healthy.end(), mh.begin());
  std::copy(ld.mean_distressed.begin(), ld.mean_distressed.end(), md.begin());
  m.mean_healthy = mh;
  m.mean_distressed = md;
  return m;
}

double score(const DiscriminantModel& m, const IndicatorVector& x) {
  const auto a = x.to_array();
  double s = 0;
  for (std::size_t j = 0; j < 10; ++j) s += m.weights[j] * a[j];
  return s;
}

BankClass classify_score(const DiscriminantModel& m, double score_value) {
  return score_value >= m.threshold ? BankClass::Distressed : BankClass::Healthy;
}

BankClass classify(const DiscriminantModel& m, const IndicatorVector& x) {
  return classify_score(m, score(m, x));
}

double tune_threshold_on_scores(const std::vector<double>& healthy_scores,
                                const std::vector<double>& distressed_scores,
                                bool typeI_below_typeII) {
  if (healthy_scores.empty() || distressed_scores.empty()) {
    throw Error(ErrorCode::InvalidArgument, "tune_threshold needs scores from both classes");
  }
  std::vector<double> h = healthy_scores;
  std::vector<double> ds = distressed_scores;
  std::sort(h.begin(), h.end());
  std::sort(ds.begin(), ds.end());

  std::vector<double> all;
  all.reserve(h.size() + ds.size());
  all.insert(all.end(), h.begin(), h.end());
  all.insert(all.end(), ds.begin(), ds.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> candidates = {-inf};
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    candidates.push_back(all[i] + (all[i + 1] - all[i]) / 2.0);
  }
  candidates.push_back(inf);

  const long n_h = static_cast<long>(h.size());
  const long n_d = static_cast<long>(ds.size());
  bool have_best = false;
  double best_theta = 0;
  long best_errors = 0, best_fn = 0;
  for (double theta : candidates) {  // ascending, so first winner is the lowest
    // classify: score >= theta -> Distressed
    const long fn = std::lower_bound(ds.begin(), ds.end(), theta) - ds.begin();  // Type I
    const long fp = n_h - (std::lower_bound(h.begin(), h.end(), theta) - h.begin());  // Type II
    if (typeI_below_typeII && fn * n_h > fp * n_d) continue;  // fn/n_d > fp/n_h
    const long errors = fn + fp;
    if (!have_best || errors < best_errors || (errors == best_errors && fn < best_fn)) {
      have_best = true;
      best_theta = theta;
      best_errors = errors;
      best_fn = fn;
    }
  }
  if (!have_best) {
    // Unreachable for valid inputs: theta = -inf has zero Type I errors.
    throw Error(ErrorCode::NoFeasibleThreshold, "no candidate satisfies TypeI <= TypeII");
  }
  return best_theta;
}

double tune_threshold(const DiscriminantModel& m, std::span<const LabeledVector> validation,
                      bool typeI_below_typeII) {
  std::vector<double> h, d;
  for (const auto& lv : validation) {
    (lv.label == BankClass::Healthy ? h : d).push_back(score(m, lv.x));
  }
  return tune_threshold_on_scores(h, d, typeI_below_typeII);
}

namespace {

const char* const kWeightKeys[10] = {"weight_f1", "weight_f2", "weight_f3", "weight_f4",
                                     "weight_f5", "weight_m1", "weight_m2", "weight_m3",
                                     "weight_m4", "weight_m5"};

}  // namespace

std::string model_to_string(const DiscriminantModel& m) {
  std::string out;
  for (std::size_t j = 0; j < 10; ++j) {
    out += kWeightKeys[j];
    out += '=';
    out += format_double(m.weights[j]);
    out += '\n';
  }
  out += "threshold=" + format_double(m.threshold) + '\n';
  out += "regularization=" + format_double(m.regularization) + '\n';
  out += "fit_window=" + (m.fit_window ? m.fit_window->str() : std::string()) + '\n';
  return out;
}

DiscriminantModel model_from_string(const std::string& text) {
  auto lines = split_lines(text);
  while (!lines.empty() && (lines.back().empty() || lines.back() == "\r")) lines.pop_back();
  if (lines.size() != 13) {
    throw Error(ErrorCode::SchemaError,
                "model file: expected 13 lines, got " + std::to_string(lines.size()));
  }
  auto value_of = [&](std::size_t i, const std::string& key) -> std::string {
    std::string line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string prefix = key + "=";
    if (line.rfind(prefix, 0) != 0) {
      throw Error(ErrorCode::SchemaError, "model file line " + std::to_string(i + 1) +
                                              ": expected '" + key + "=...'");
    }
    return line.substr(prefix.size());
  };

  DiscriminantModel m;
  bool any_nonzero = false;
  for (std::size_t j = 0; j < 10; ++j) {
    m.weights[j] = parse_double(value_of(j, kWeightKeys[j]));
    if (!std::isfinite(m.weights[j])) {
      throw Error(ErrorCode::SchemaError, std::string("model file: ") + kWeightKeys[j] +
                                              " is not finite");
    }
    if (m.weights[j] != 0) any_nonzero = true;
  }
  if (!any_nonzero) throw Error(ErrorCode::SchemaError, "model file: all weights are zero");
  m.threshold = parse_double(value_of(10, "threshold"));
  if (!std::isfinite(m.threshold)) {
    throw Error(ErrorCode::SchemaError, "model file: threshold is not finite");
  }
  m.regularization = parse_double(value_of(11, "regularization"));
  if (!(m.regularization >= 0) || !std::isfinite(m.regularization)) {
    throw Error(ErrorCode::SchemaError, "model file: regularization must be >= 0");
  }
  const std::string window = value_of(12, "fit_window");
  if (!window.empty()) m.fit_window = PeriodRange::parse(window);
  return m;
}

void save_model(const DiscriminantModel& m, const std::string& path) {
  write_file_atomic(path, model_to_string(m));
}

DiscriminantModel load_model(const std::string& path) {
  return model_from_string(read_file(path));
}

std::array<double, 10> paper_weights() {
  return {-0.32, 0.20, -0.18, -0.32, -0.99, 0.38, -0.95, -0.5, -0.26, 0.01};
}

double paper_threshold() { return -190.395; }

}  // namespace ews
