#include "synth/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"
#include "data/dataset.hpp"
#include "indicators/indicators.hpp"

namespace ews {

namespace {

// Per-bank stream channels; stream id = bank_index * kChannels + channel.
enum Channel : std::uint64_t {
  kChJitter = 0,
  kChCap = 1,
  kChF1 = 2,
  kChF2 = 3,
  kChF3 = 4,
  kChF4 = 5,
  kChannels = 8,
};

void check_covariance(const Matrix& cov, std::size_t d) {
  if (cov.rows() != d || cov.cols() != d) {
    throw Error(ErrorCode::InvalidConfig, "covariance shape does not match the mean dimension");
  }
  double scale = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::abs(cov(i, j)));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (std::abs(cov(i, j) - cov(j, i)) > 1e-12 * std::max(1.0, scale)) {
        throw Error(ErrorCode::InvalidConfig, "covariance is not symmetric");
      }
    }
  }
}

// Lower-triangular factor for sampling: x = mean + L z.
Matrix sampling_factor(const Matrix& cov) {
  // Reuse Cholesky by solving against the identity? No -- we need L itself,
  // so factor manually here (same algorithm, local copy).
  const std::size_t n = cov.rows();
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = cov(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0) {
          throw Error(ErrorCode::NonPositiveDefinite, "covariance is not positive definite");
        }
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

// Smooth positive macro trajectories; k is the offset in half-years from the
// panel start (k = -1 is the warm-up row the growth rates need).
MacroPeriodRecord macro_row(Period start, int k) {
  const double t = static_cast<double>(k);
  MacroPeriodRecord r;
  r.period = Period::from_index(start.index() + k);
  r.active_rate = 38.0 + 6.0 * std::sin(t / 3.1);
  r.passive_rate = r.active_rate - (12.0 + 3.0 * std::sin(t / 4.3 + 1.0));
  r.reer_index = 95.0 + 10.0 * std::sin(t / 5.7 + 2.0);
  r.m1 = 1000.0 * std::exp(0.01 * t);
  r.m2 = r.m1 * (1.6 + 0.1 * std::sin(t / 4.9));
  r.igaem_index = 100.0 * std::exp(0.008 * t + 0.05 * std::sin(t / 2.9));
  r.reserves_ex_gold = 8000.0 * std::exp(0.005 * t + 0.08 * std::sin(t / 3.7));
  return r;
}

std::string padded_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04zu", prefix, i);
  return buf;
}

}  // namespace

std::vector<std::vector<double>> gaussian_draws(std::uint64_t seed, std::uint64_t stream,
                                                std::size_t n, const std::vector<double>& mean,
                                                const Matrix& covariance) {
  const std::size_t d = mean.size();
  if (d == 0) throw Error(ErrorCode::InvalidConfig, "empty mean vector");
  check_covariance(covariance, d);
  const Matrix l = sampling_factor(covariance);

  CounterRng rng(seed, stream);
  std::vector<std::vector<double>> out(n, std::vector<double>(d));
  std::vector<double> z(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) z[j] = rng.normal(i * d + j);
    for (std::size_t row = 0; row < d; ++row) {
      double s = mean[row];
      for (std::size_t col = 0; col <= row; ++col) s += l(row, col) * z[col];
      out[i][row] = s;
    }
  }
  return out;
}

std::vector<LabeledVector> gaussian_classes(const GaussianConfig& c) {
  if (c.mean_healthy.size() != 10 || c.mean_distressed.size() != 10) {
    throw Error(ErrorCode::InvalidConfig, "class means must have 10 features");
  }
  auto healthy = gaussian_draws(c.seed, 0, c.n_healthy, c.mean_healthy, c.covariance);
  auto distressed = gaussian_draws(c.seed, 1, c.n_distressed, c.mean_distressed, c.covariance);

  std::vector<LabeledVector> out;
  out.reserve(healthy.size() + distressed.size());
  const Period when{2000, Half::H1};
  for (std::size_t i = 0; i < healthy.size(); ++i) {
    std::array<double, 10> a;
    std::copy(healthy[i].begin(), healthy[i].end(), a.begin());
    out.push_back({IndicatorVector::from_array(a), BankClass::Healthy, padded_id("H", i + 1), when});
  }
  for (std::size_t i = 0; i < distressed.size(); ++i) {
    std::array<double, 10> a;
    std::copy(distressed[i].begin(), distressed[i].end(), a.begin());
    out.push_back(
        {IndicatorVector::from_array(a), BankClass::Distressed, padded_id("D", i + 1), when});
  }
  return out;
}

PanelFiles generate_panel(const PanelConfig& c) {
  if (c.n_banks < 1) throw Error(ErrorCode::InvalidConfig, "n_banks must be >= 1");
  if (c.n_periods < 2) throw Error(ErrorCode::InvalidConfig, "n_periods must be >= 2");
  if (c.weights[4] == 0) {
    throw Error(ErrorCode::InvalidConfig,
                "weight on the inflow/outflow ratio must be nonzero to invert target scores");
  }
  if (!(c.healthy_spread >= 0)) throw Error(ErrorCode::InvalidConfig, "negative spread");
  const Period last = Period::from_index(c.start.index() + static_cast<int>(c.n_periods) - 1);
  if (c.scripted) {
    if (c.scripted->breach_period < c.start || last < c.scripted->breach_period) {
      throw Error(ErrorCode::InvalidConfig, "scripted breach period is outside the panel");
    }
    if (c.scripted->breach_score < c.intervention_threshold) {
      throw Error(ErrorCode::InvalidConfig, "scripted breach score is below the threshold");
    }
    if (c.scripted->base_score >= c.intervention_threshold) {
      throw Error(ErrorCode::InvalidConfig, "scripted base score must stay below the threshold");
    }
    if (c.scripted->bank_id.empty()) throw Error(ErrorCode::InvalidConfig, "empty scripted bank id");
  }

  std::vector<MacroPeriodRecord> macro;
  for (int k = -1; k < static_cast<int>(c.n_periods); ++k) macro.push_back(macro_row(c.start, k));

  // Macro part of each period's score; the bank part is steered to hit the
  // target exactly through the f5 indicator.
  std::vector<double> macro_contrib(c.n_periods);
  for (std::size_t p = 0; p < c.n_periods; ++p) {
    const MacroIndicators m = macro_indicators(macro[p + 1], macro[p]);
    macro_contrib[p] = c.weights[5] * m.m1 + c.weights[6] * m.m2 + c.weights[7] * m.m3 +
                       c.weights[8] * m.m4 + c.weights[9] * m.m5;
  }

  std::vector<BankPeriodRecord> banks;
  banks.reserve(c.n_banks * c.n_periods);
  for (std::size_t bank = 0; bank < c.n_banks; ++bank) {
    const bool scripted = c.scripted && bank == 0;
    const std::string id =
        scripted ? c.scripted->bank_id : padded_id("B", c.scripted ? bank : bank + 1);
    const std::uint64_t base_stream = bank * kChannels;
    const CounterRng jitter(c.seed, base_stream + kChJitter);
    const CounterRng cap(c.seed, base_stream + kChCap);
    const CounterRng rf1(c.seed, base_stream + kChF1);
    const CounterRng rf2(c.seed, base_stream + kChF2);
    const CounterRng rf3(c.seed, base_stream + kChF3);
    const CounterRng rf4(c.seed, base_stream + kChF4);
    const double capitalization = 50.0 + 100.0 * cap.uniform(0);

    for (std::size_t p = 0; p < c.n_periods; ++p) {
      const Period period = Period::from_index(c.start.index() + static_cast<int>(p));
      double target;
      if (scripted) {
        target = period == c.scripted->breach_period ? c.scripted->breach_score
                                                     : c.scripted->base_score;
      } else {
        auto lvl = c.yearly_levels.find(period.year);
        const double level = lvl == c.yearly_levels.end() ? c.healthy_level : lvl->second;
        target = level - 5.0 - c.healthy_spread * jitter.uniform(p);
      }

      const double f1 = 2.0 + 6.0 * rf1.uniform(p);
      const double f2 = 40.0 + 20.0 * rf2.uniform(p);
      const double f3 = 1.0 + 2.0 * rf3.uniform(p);
      const double f4 = 10.0 + 10.0 * rf4.uniform(p);
      const double bank_part =
          c.weights[0] * f1 + c.weights[1] * f2 + c.weights[2] * f3 + c.weights[3] * f4;
      double f5 = (target - macro_contrib[p] - bank_part) / c.weights[4];
      f5 = std::max(f5, 0.01);

      BankPeriodRecord r;
      r.bank_id = id;
      r.period = period;
      r.total_assets = 100.0;
      r.other_assets = f1;
      r.avg_total_inflows = 100.0;
      r.financial_outflows = f2;
      r.avg_assets = 100.0;
      r.operative_margin = f3;
      r.avg_equity = 100.0 * f3 / f4;
      r.financial_inflows = f5 * f2 / 100.0;
      r.avg_capitalization = capitalization;
      if (scripted) {
        r.status = BankStatus::Intervened;
        r.intervention_period = c.scripted->breach_period.next();
      } else {
        r.status = BankStatus::Active;
      }
      banks.push_back(std::move(r));
    }
  }

  PanelFiles files;
  files.banks_csv = banks_csv(banks);
  files.macro_csv = macro_csv(macro);
  return files;
}

void write_panel(const PanelConfig& c, const std::string& dir) {
  const PanelFiles files = generate_panel(c);
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  write_file_atomic((base / "banks.csv").string(), files.banks_csv);
  write_file_atomic((base / "macro.csv").string(), files.macro_csv);
}

}  // namespace ews
