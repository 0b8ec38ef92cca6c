// Acceptance gate: eight end-to-end criteria, one PASS/FAIL line each.
// argv[1] is the command-line binary, used by the determinism criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "core/rng.hpp"
#include "data/dataset.hpp"
#include "discriminant/discriminant.hpp"
#include "evaluation/evaluation.hpp"
#include "oracles.hpp"
#include "synth/synth.hpp"

using namespace ews;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int n, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
  if (!ok) ++g_failures;
}

template <typename Body>
void criterion(int n, const std::string& what, Body&& body) {
  try {
    report(n, body(), what);
  } catch (const std::exception& e) {
    report(n, false, what + " (exception: " + e.what() + ")");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Matrix identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::string slurp(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    ok = false;
    return "";
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// ---- criterion 1: published precision ratios ---------------------------

bool published_ratios() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Row {
    ConfusionMatrix cm;
    double accuracy;
    long distressed_pct;
    long healthy_pct;
  };
  const std::vector<Row> rows = {
      {{58, 12, 22, 48}, 75.71, 83, 69},
      {{47, 6, 18, 35}, 77.36, 89, 66},
      {{34, 1, 12, 23}, 81.43, 97, 66},
      {{16, 1, 7, 10}, 76.47, 94, 59},
  };
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && std::abs(r.cm.accuracy() - r.accuracy) <= 0.01;
    ok = ok && std::llabs(std::llround(r.cm.distressed_recall()) - r.distressed_pct) <= 1;
    ok = ok && std::llabs(std::llround(r.cm.healthy_recall()) - r.healthy_pct) <= 1;
  }
  return ok && seconds_since(t0) < 1.0;
}

// ---- criterion 2: fixture classification -------------------------------

bool fixture_classification() {
  const DiscriminantModel m = load_model(std::string(EWS_FIXTURE_DIR) + "/paper_weights.txt");
  bool ok = m.threshold == -190.395;
  ok = ok && classify_score(m, -150) == BankClass::Distressed;
  ok = ok && classify_score(m, -272) == BankClass::Healthy;
  ok = ok && classify_score(m, -270) == BankClass::Healthy;
  ok = ok && classify_score(m, -289) == BankClass::Healthy;
  ok = ok && classify_score(m, m.threshold) == BankClass::Distressed;  // boundary inclusive
  // the published 1996 score sits below the cut yet was reported as a breach;
  // under the stated rule it must classify Healthy
  ok = ok && classify_score(m, -199) == BankClass::Healthy;
  return ok;
}

// ---- criterion 3: fit versus the dense-solve oracle --------------------

bool fit_matches_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  int instances = 0;
  for (std::uint64_t seed = 1; seed <= 34; ++seed) {
    for (std::size_t dim : {std::size_t{2}, std::size_t{5}, std::size_t{10}}) {
      Matrix cov(dim, dim);
      std::vector<double> mu_h(dim, 0.0), mu_d(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        cov(j, j) = 0.5 + 0.15 * static_cast<double>(j);  // condition below 4
        mu_d[j] = (j % 2 == 0) ? 1.0 : -0.8;
      }
      const auto healthy = gaussian_draws(seed, 0, 20, mu_h, cov);
      const auto distressed = gaussian_draws(seed, 1, 20, mu_d, cov);
      const LinearDiscriminant ld = fit_linear_discriminant(healthy, distressed);

      std::vector<std::vector<double>> s;
      std::vector<double> diff;
      oracle::pooled_system(healthy, distressed, s, diff);
      const std::vector<double> w = oracle::solve_dense(s, diff);
      if (oracle::cosine(ld.weights, w) < 1.0 - 1e-9) return false;
      ++instances;
    }
  }
  return instances >= 100 && seconds_since(t0) < 5.0;
}

// ---- criterion 4: affine invariance of the decisions --------------------

bool affine_invariance() {
  const std::size_t dim = 10, n = 30;
  const Matrix cov = identity(dim);
  const std::vector<double> mu_h(dim, 0.0);
  std::vector<double> mu_d(dim, 0.0);
  mu_d[0] = 4.0;

  // pick a base instance whose points keep a real margin from the cut, so
  // floating-point noise under the transforms cannot flip a decision
  std::vector<std::vector<double>> healthy, distressed;
  std::uint64_t base_seed = 0;
  std::vector<int> baseline;
  for (std::uint64_t s = 1; s <= 10 && base_seed == 0; ++s) {
    healthy = gaussian_draws(s, 0, n, mu_h, cov);
    distressed = gaussian_draws(s, 1, n, mu_d, cov);
    const LinearDiscriminant ld = fit_linear_discriminant(healthy, distressed);
    std::vector<double> scores;
    baseline.clear();
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto* cls : {&healthy, &distressed}) {
      for (const auto& x : *cls) {
        double sc = 0;
        for (std::size_t j = 0; j < dim; ++j) sc += ld.weights[j] * x[j];
        scores.push_back(sc);
        baseline.push_back(sc >= ld.threshold ? 1 : 0);
        min_margin = std::min(min_margin, std::abs(sc - ld.threshold));
      }
    }
    if (min_margin >= 0.05 * oracle::sample_stdev(scores)) base_seed = s;
  }
  if (base_seed == 0) return false;

  const CounterRng rng(base_seed, 4242);
  std::uint64_t k = 0;
  for (int t = 0; t < 20; ++t) {
    // invertible by construction: lower triangular, diagonal in [0.8, 1.4]
    std::vector<std::vector<double>> a(dim, std::vector<double>(dim, 0.0));
    std::vector<double> b(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < i; ++j) a[i][j] = (rng.uniform(k++) - 0.5) * 0.6;
      a[i][i] = 0.8 + 0.6 * rng.uniform(k++);
      b[i] = (rng.uniform(k++) - 0.5) * 20.0;
    }
    auto transform = [&](const std::vector<std::vector<double>>& pts) {
      std::vector<std::vector<double>> out(pts.size(), std::vector<double>(dim));
      for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t r = 0; r < dim; ++r) {
          double v = b[r];
          for (std::size_t c = 0; c <= r; ++c) v += a[r][c] * pts[i][c];
          out[i][r] = v;
        }
      }
      return out;
    };
    const auto th = transform(healthy);
    const auto td = transform(distressed);
    const LinearDiscriminant ld = fit_linear_discriminant(th, td);
    std::size_t idx = 0;
    for (const auto* cls : {&th, &td}) {
      for (const auto& x : *cls) {
        double sc = 0;
        for (std::size_t j = 0; j < dim; ++j) sc += ld.weights[j] * x[j];
        if ((sc >= ld.threshold ? 1 : 0) != baseline[idx++]) return false;
      }
    }
  }
  return true;
}

// ---- criterion 5: threshold tuner versus the exhaustive sweep ----------

bool tuner_matches_sweep() {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 55; ++seed) {
    const CounterRng rng(seed, 500);
    const std::size_t n_h = 2 + static_cast<std::size_t>(rng.bits(0) % 15);
    const std::size_t n_d = 2 + static_cast<std::size_t>(rng.bits(1) % 15);
    std::vector<double> h(n_h), d(n_d);
    std::uint64_t k = 2;
    // half-integer grid: plenty of exact ties between and within classes
    for (auto& v : h) v = std::floor(rng.normal(k++) * 6.0) / 2.0;
    for (auto& v : d) v = std::floor(rng.normal(k++) * 6.0) / 2.0 + 1.0;

    for (bool constrain : {false, true}) {
      const oracle::SweepResult sweep = oracle::sweep_threshold(h, d, constrain);
      if (!sweep.feasible) return false;  // -inf is always feasible on valid input
      const double t = tune_threshold_on_scores(h, d, constrain);
      if (t != sweep.threshold) return false;
      long fn = 0, fp = 0;
      for (double s : d) fn += (s >= t) ? 0 : 1;
      for (double s : h) fp += (s >= t) ? 1 : 0;
      if (fn + fp != sweep.errors) return false;
      if (constrain && fn * static_cast<long>(n_h) > fp * static_cast<long>(n_d)) return false;
      ++checked;
    }
  }
  return checked >= 100;
}

// ---- criterion 6: scripted breach scenario ------------------------------

bool scripted_breach() {
  PanelConfig c;
  c.seed = 7;
  c.n_banks = 68;
  c.n_periods = 9;  // 1996-H1 .. 2000-H1
  c.scripted = ScriptedBank{};
  c.yearly_levels = {{1996, -327}, {1997, -445}, {1998, -347}, {1999, -404}, {2000, -294}};
  const PanelFiles files = generate_panel(c);
  const Dataset ds = parse_dataset(files.banks_csv, files.macro_csv);

  DiscriminantModel m;
  m.weights = paper_weights();
  m.threshold = paper_threshold();
  const ProbeReport r = probe(m, ds, {1996, Half::H1}, {2000, Half::H1});

  bool ok = r.entries.size() == 68 * 9 && r.exceptions.empty();
  long flagged = 0;
  for (const auto& e : r.entries) {
    if (e.flagged) {
      ++flagged;
      ok = ok && e.bank_id == "CAPITAL" && e.period == Period{2000, Half::H1};
    }
  }
  ok = ok && flagged == 1;  // zero false alarms
  ok = ok && r.alerts.size() == 1;
  if (ok) {
    const ProbeAlert& a = r.alerts[0];
    ok = a.bank_id == "CAPITAL" && a.first_flag_period == Period{2000, Half::H1} &&
         a.intervention_period && *a.intervention_period == Period{2000, Half::H2} &&
         a.lead_periods && *a.lead_periods == 1;
  }
  return ok;
}

// ---- criterion 7: recovery of well-separated classes --------------------

bool gaussian_recovery() {
  GaussianConfig train;
  train.seed = 211;
  train.n_healthy = 200;
  train.n_distressed = 200;
  train.mean_healthy.assign(10, 0.0);
  train.mean_distressed.assign(10, 0.0);
  train.mean_distressed[0] = 4.0;  // four pooled standard deviations
  train.covariance = identity(10);
  const DiscriminantModel m = fit(gaussian_classes(train));

  GaussianConfig holdout = train;
  holdout.seed = 212;
  holdout.n_healthy = 500;
  holdout.n_distressed = 500;
  const ConfusionMatrix cm = evaluate(m, gaussian_classes(holdout));
  return cm.total() == 1000 && cm.accuracy() >= 95.0;
}

// ---- criterion 8: byte-identical pipeline reruns -------------------------

bool pipeline_determinism(const std::string& cli) {
  if (cli.empty()) return false;
  const std::string q = "\"" + cli + "\"";

  auto run = [&](const std::string& dir) -> bool {
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string panel = dir + "/panel";
    const std::vector<std::string> cmds = {
        q + " synth --seed 11 --banks 12 --periods 10 --out " + panel + " 2>/dev/null",
        q + " fit --banks " + panel + "/banks.csv --macro " + panel +
            "/macro.csv --label-intervened-by 2000-H2 --tune-threshold --typeI-below-typeII"
            " --out " + dir + "/model.txt 2>/dev/null",
        q + " probe --model " + dir + "/model.txt --banks " + panel + "/banks.csv --macro " +
            panel + "/macro.csv --from 1996-H1 --to 2000-H2 --report " + dir + "/report > " + dir +
            "/probe.csv 2>/dev/null",
        q + " score --model " + dir + "/model.txt --banks " + panel + "/banks.csv --macro " +
            panel + "/macro.csv --period 1999-H1 > " + dir + "/scores.csv 2>/dev/null",
        q + " classify --model " + dir + "/model.txt --banks " + panel + "/banks.csv --macro " +
            panel + "/macro.csv --period 1999-H1 > " + dir + "/classify.csv 2>/dev/null",
        q + " horizon --banks " + panel + "/banks.csv --macro " + panel +
            "/macro.csv --crisis 2000-H1 --out " + dir + "/horizon.txt >/dev/null 2>&1",
        q + " pair --banks " + panel + "/banks.csv --out " + dir + "/pairs.csv >/dev/null 2>&1",
        q + " report --probe " + dir + "/report/entries.csv --format text > " + dir +
            "/report.txt 2>/dev/null",
    };
    for (const auto& cmd : cmds) {
      if (std::system(cmd.c_str()) != 0) return false;
    }
    return true;
  };

  if (!run("acc8_a") || !run("acc8_b")) return false;

  const std::vector<std::string> files = {
      "panel/banks.csv",   "panel/macro.csv",      "model.txt",
      "probe.csv",         "scores.csv",           "classify.csv",
      "horizon.txt",       "pairs.csv",            "report.txt",
      "report/entries.csv", "report/alerts.csv",   "report/yearly.csv",
      "report/exceptions.csv", "report/indicators.csv",
  };
  bool ok = true;
  for (const auto& f : files) {
    bool readable = true;
    const std::string a = slurp("acc8_a/" + f, readable);
    const std::string b = slurp("acc8_b/" + f, readable);
    ok = ok && readable && !a.empty() && a == b;
  }
  fs::remove_all("acc8_a");
  fs::remove_all("acc8_b");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "published count matrices reproduce accuracies (+-0.01) and row percents (+-1)",
            published_ratios);
  criterion(2, "fixture model classifies the published score trajectory, boundary inclusive",
            fixture_classification);
  criterion(3, "102 seeded fits (dims 2/5/10) align with the dense-solve oracle to 1-1e-9",
            fit_matches_oracle);
  criterion(4, "decisions survive 20 random invertible affine re-fits unchanged",
            affine_invariance);
  criterion(5, "threshold tuner agrees with the exhaustive sweep on 110 random score sets",
            tuner_matches_sweep);
  criterion(6, "scripted panel: exactly one alert, one-period lead, zero false alarms",
            scripted_breach);
  criterion(7, "four-sigma classes: holdout accuracy >= 95% on 1000 fresh samples",
            gaussian_recovery);
  criterion(8, "identical inputs and argv give byte-identical pipeline outputs",
            [&] { return pipeline_determinism(cli); });

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
