#include "evaluation/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <set>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "indicators/indicators.hpp"

namespace ews {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double percent(long num, long den) {
  return den == 0 ? kNaN : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_stdev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double ss = 0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Column-aligned plain text: first column left, the rest right, two-space gutters.
std::string align_table(const std::vector<std::vector<std::string>>& rows) {
  std::size_t cols = 0;
  for (const auto& r : rows) cols = std::max(cols, r.size());
  std::vector<std::size_t> width(cols, 0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], r[j].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t j = 0; j < r.size(); ++j) {
      std::string cell = r[j];
      if (j == 0) {
        cell.resize(width[j], ' ');
      } else {
        cell.insert(0, width[j] - cell.size(), ' ');
      }
      if (j > 0) line += "  ";
      line += cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

double ConfusionMatrix::accuracy() const { return percent(tp + tn, total()); }
double ConfusionMatrix::distressed_recall() const { return percent(tp, tp + fn); }
double ConfusionMatrix::healthy_recall() const { return percent(tn, fp + tn); }

ConfusionMatrix evaluate(const DiscriminantModel& m, std::span<const LabeledVector> data) {
  if (data.empty()) throw Error(ErrorCode::InvalidArgument, "evaluate: no data");
  ConfusionMatrix c;
  for (const auto& lv : data) {
    const bool predicted_distressed = classify(m, lv.x) == BankClass::Distressed;
    if (lv.label == BankClass::Distressed) {
      (predicted_distressed ? c.tp : c.fn)++;
    } else {
      (predicted_distressed ? c.fp : c.tn)++;
    }
  }
  return c;
}

PairResult pair_banks(std::vector<BankCapitalization> intervened,
                      std::vector<BankCapitalization> active) {
  if (intervened.empty() || active.empty()) {
    throw Error(ErrorCode::InvalidArgument, "pair_banks: both bank lists must be non-empty");
  }
  for (const auto* list : {&intervened, &active}) {
    for (const auto& b : *list) {
      if (!(b.avg_capitalization > 0)) {
        throw Error(ErrorCode::InvalidArgument,
                    "pair_banks: non-positive capitalization for " + b.bank_id);
      }
    }
  }

  // Largest intervened banks pick first; each takes the closest remaining
  // active bank by capitalization, ties to the lexicographically smaller id.
  std::sort(intervened.begin(), intervened.end(), [](const auto& a, const auto& b) {
    if (a.avg_capitalization != b.avg_capitalization) {
      return a.avg_capitalization > b.avg_capitalization;
    }
    return a.bank_id < b.bank_id;
  });

  std::vector<bool> used(active.size(), false);
  PairResult result;
  for (const auto& iv : intervened) {
    std::size_t best = active.size();
    for (std::size_t j = 0; j < active.size(); ++j) {
      if (used[j]) continue;
      if (best == active.size()) {
        best = j;
        continue;
      }
      const double dj = std::abs(active[j].avg_capitalization - iv.avg_capitalization);
      const double db = std::abs(active[best].avg_capitalization - iv.avg_capitalization);
      if (dj < db || (dj == db && active[j].bank_id < active[best].bank_id)) best = j;
    }
    if (best == active.size()) {
      result.unmatched.push_back(iv.bank_id);
    } else {
      used[best] = true;
      result.pairs.emplace_back(iv.bank_id, active[best].bank_id);
    }
  }
  return result;
}

void bank_capitalizations(const std::vector<BankPeriodRecord>& rows,
                          std::vector<BankCapitalization>& intervened,
                          std::vector<BankCapitalization>& active) {
  intervened.clear();
  active.clear();
  struct Acc {
    double sum = 0;
    long n = 0;
    bool is_intervened = false;
  };
  std::map<std::string, Acc> per_bank;
  for (const auto& b : rows) {
    Acc& a = per_bank[b.bank_id];
    a.sum += b.avg_capitalization;
    ++a.n;
    if (b.status == BankStatus::Intervened) a.is_intervened = true;
  }
  for (const auto& [id, a] : per_bank) {
    BankCapitalization bc{id, a.sum / static_cast<double>(a.n)};
    (a.is_intervened ? intervened : active).push_back(bc);
  }
}

void bank_capitalizations(const Dataset& d, std::vector<BankCapitalization>& intervened,
                          std::vector<BankCapitalization>& active) {
  bank_capitalizations(d.banks, intervened, active);
}

std::map<int, ConfusionMatrix> horizon_study(
    const std::map<int, DiscriminantModel>& model_per_horizon,
    const std::map<int, std::vector<LabeledVector>>& data_per_horizon) {
  auto keys_of = [](const auto& m) {
    std::vector<int> k;
    for (const auto& [key, value] : m) k.push_back(key);
    return k;
  };
  if (keys_of(model_per_horizon) != keys_of(data_per_horizon)) {
    throw Error(ErrorCode::HorizonMismatch, "model and data horizons do not coincide");
  }
  if (model_per_horizon.empty()) {
    throw Error(ErrorCode::HorizonMismatch, "no horizons given");
  }
  std::map<int, ConfusionMatrix> out;
  for (const auto& [h, m] : model_per_horizon) {
    out[h] = evaluate(m, data_per_horizon.at(h));
  }
  return out;
}

std::string render_horizon_table(const std::map<int, ConfusionMatrix>& table) {
  if (table.empty()) throw Error(ErrorCode::HorizonMismatch, "empty horizon table");
  std::vector<int> horizons;
  for (const auto& [h, c] : table) horizons.push_back(h);
  std::sort(horizons.rbegin(), horizons.rend());

  auto round_pct = [](double v) {
    return std::isnan(v) ? std::string("-") : std::to_string(std::llround(v));
  };

  std::vector<std::vector<std::string>> rows(5);
  rows[0].push_back("");
  rows[1].push_back("");
  rows[2].push_back("Yes");
  rows[3].push_back("No");
  rows[4].push_back("Accuracy");
  for (int h : horizons) {
    const ConfusionMatrix& c = table.at(h);
    rows[0].push_back(std::to_string(h) + (h == 1 ? " year before c." : " years before c."));
    rows[0].push_back("");
    rows[0].push_back("");
    rows[1].insert(rows[1].end(), {"Yes", "No", "%"});
    rows[2].insert(rows[2].end(), {std::to_string(c.tp), std::to_string(c.fn),
                                   round_pct(c.distressed_recall())});
    rows[3].insert(rows[3].end(), {std::to_string(c.fp), std::to_string(c.tn),
                                   round_pct(c.healthy_recall())});
    rows[4].insert(rows[4].end(), {fixed2(c.accuracy()) + "%", "", ""});
  }
  return align_table(rows);
}

std::vector<LabeledVector> collect_vectors(const Dataset& d, std::optional<PeriodRange> window,
                                           std::optional<Period> label_intervened_by) {
  std::vector<LabeledVector> out;
  for (const auto& b : d.banks) {
    if (window && !window->contains(b.period)) continue;
    const MacroPeriodRecord* cur = d.find_macro(b.period);
    const MacroPeriodRecord* prev = d.find_macro(b.period.prev());
    if (!cur || !prev) {
      throw Error(ErrorCode::Internal, "macro coverage lost for " + b.period.str());
    }
    LabeledVector lv;
    lv.x = assemble(b, *cur, *prev);
    lv.bank_id = b.bank_id;
    lv.period = b.period;
    const bool distressed =
        b.status == BankStatus::Intervened &&
        (!label_intervened_by ||
         (b.intervention_period && *b.intervention_period <= *label_intervened_by));
    lv.label = distressed ? BankClass::Distressed : BankClass::Healthy;
    out.push_back(std::move(lv));
  }
  return out;
}

std::string indicators_csv(const Dataset& d, std::optional<PeriodRange> window) {
  std::string out = "bank_id,period,f1,f2,f3,f4,f5,m1,m2,m3,m4,m5\n";
  for (const auto& lv : collect_vectors(d, window, std::nullopt)) {
    std::vector<std::string> fields = {lv.bank_id, lv.period.str()};
    for (double v : lv.x.to_array()) fields.push_back(format_double(v));
    out += join_csv(fields);
    out += '\n';
  }
  return out;
}

ProbeReport probe(const DiscriminantModel& m, const Dataset& d, Period from, Period to) {
  if (from > to) {
    throw Error(ErrorCode::InvalidArgument,
                "probe range " + from.str() + ".." + to.str() + " is empty");
  }
  ProbeReport r;
  for (const auto& b : d.banks) {
    if (b.period < from || to < b.period) continue;
    const MacroPeriodRecord* cur = d.find_macro(b.period);
    const MacroPeriodRecord* prev = d.find_macro(b.period.prev());
    if (!cur || !prev) continue;  // no macro coverage, no entry
    try {
      const double s = score(m, assemble(b, *cur, *prev));
      ProbeEntry e;
      e.bank_id = b.bank_id;
      e.period = b.period;
      e.score = s;
      e.flagged = classify_score(m, s) == BankClass::Distressed;
      e.distance = s - m.threshold;
      r.entries.push_back(std::move(e));
    } catch (const Error& err) {
      r.exceptions.push_back({b.bank_id, b.period, err.what()});
    }
  }
  std::sort(r.entries.begin(), r.entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.bank_id, a.period) < std::tie(b.bank_id, b.period);
  });
  std::sort(r.exceptions.begin(), r.exceptions.end(), [](const auto& a, const auto& b) {
    return std::tie(a.bank_id, a.period) < std::tie(b.bank_id, b.period);
  });

  // Yearly roll-up: a bank's value for a year is its worst (highest) score,
  // stats are across banks.
  std::map<int, std::map<std::string, double>> yearly_value;
  for (const auto& e : r.entries) {
    auto& per_bank = yearly_value[e.period.year];
    auto [it, inserted] = per_bank.emplace(e.bank_id, e.score);
    if (!inserted) it->second = std::max(it->second, e.score);
  }
  for (const auto& [year, per_bank] : yearly_value) {
    std::vector<double> values;
    long flagged = 0;
    for (const auto& [id, v] : per_bank) {
      values.push_back(v);
      if (v >= m.threshold) ++flagged;
    }
    YearlyStat ys;
    ys.year = year;
    ys.banks = static_cast<long>(values.size());
    ys.median = median_of(values);
    ys.mean = mean_of(values);
    ys.stdev = sample_stdev_of(values);
    ys.flagged = flagged;
    r.yearly.push_back(ys);
  }

  // Alerts: first flagged period per bank vs the recorded intervention.
  std::map<std::string, Period> first_flag;
  for (const auto& e : r.entries) {
    if (e.flagged && !first_flag.count(e.bank_id)) first_flag[e.bank_id] = e.period;
  }
  for (const auto& [id, flag_period] : first_flag) {
    ProbeAlert a;
    a.bank_id = id;
    a.first_flag_period = flag_period;
    for (const auto& b : d.banks) {
      if (b.bank_id == id && b.intervention_period) {
        a.intervention_period = b.intervention_period;
        break;
      }
    }
    if (a.intervention_period) {
      a.lead_periods = half_steps(a.first_flag_period, *a.intervention_period);
    }
    r.alerts.push_back(std::move(a));
  }
  return r;
}

std::string entries_csv(const ProbeReport& r) {
  std::string out = "bank_id,period,score,flagged,distance\n";
  for (const auto& e : r.entries) {
    out += join_csv({e.bank_id, e.period.str(), format_double(e.score),
                     e.flagged ? "true" : "false", format_double(e.distance)});
    out += '\n';
  }
  return out;
}

std::string alerts_csv(const ProbeReport& r) {
  std::string out = "bank_id,first_flag_period,intervention_period,lead_periods\n";
  for (const auto& a : r.alerts) {
    out += join_csv({a.bank_id, a.first_flag_period.str(),
                     a.intervention_period ? a.intervention_period->str() : "",
                     a.lead_periods ? std::to_string(*a.lead_periods) : ""});
    out += '\n';
  }
  return out;
}

std::string yearly_csv(const ProbeReport& r) {
  std::string out = "year,banks,median,mean,stdev,flagged\n";
  for (const auto& y : r.yearly) {
    out += join_csv({std::to_string(y.year), std::to_string(y.banks), format_double(y.median),
                     format_double(y.mean), format_double(y.stdev), std::to_string(y.flagged)});
    out += '\n';
  }
  return out;
}

std::string exceptions_csv(const ProbeReport& r) {
  std::string out = "bank_id,period,message\n";
  for (const auto& e : r.exceptions) {
    out += join_csv({e.bank_id, e.period.str(), e.message});
    out += '\n';
  }
  return out;
}

void write_probe_reports(const ProbeReport& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  write_file_atomic((base / "entries.csv").string(), entries_csv(r));
  write_file_atomic((base / "alerts.csv").string(), alerts_csv(r));
  write_file_atomic((base / "yearly.csv").string(), yearly_csv(r));
  write_file_atomic((base / "exceptions.csv").string(), exceptions_csv(r));
}

std::vector<ProbeEntry> parse_entries_csv(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::SchemaError, "probe entries: empty file");
  {
    std::string header = lines[0];
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != "bank_id,period,score,flagged,distance") {
      throw Error(ErrorCode::SchemaError, "probe entries: bad header");
    }
  }
  std::vector<ProbeEntry> entries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty() || lines[i] == "\r") continue;
    auto f = split_csv_line(lines[i]);
    if (f.size() != 5) {
      throw Error(ErrorCode::SchemaError,
                  "probe entries: row " + std::to_string(i + 1) + ": expected 5 fields");
    }
    ProbeEntry e;
    e.bank_id = f[0];
    e.period = Period::parse(f[1]);
    e.score = parse_double(f[2]);
    if (f[3] != "true" && f[3] != "false") {
      throw Error(ErrorCode::SchemaError,
                  "probe entries: row " + std::to_string(i + 1) + ": flagged must be true/false");
    }
    e.flagged = f[3] == "true";
    e.distance = parse_double(f[4]);
    entries.push_back(std::move(e));
  }
  return entries;
}

std::string render_report(const std::vector<ProbeEntry>& entries, const std::string& format) {
  if (format == "csv") {
    std::string out = "bank_id,period,score,flagged,distance\n";
    for (const auto& e : entries) {
      out += join_csv({e.bank_id, e.period.str(), format_double(e.score),
                       e.flagged ? "true" : "false", format_double(e.distance)});
      out += '\n';
    }
    return out;
  }
  if (format != "text") {
    throw Error(ErrorCode::InvalidArgument, "report format must be 'text' or 'csv'");
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"bank_id", "period", "score", "flagged", "distance"});
  long flagged = 0;
  for (const auto& e : entries) {
    rows.push_back({e.bank_id, e.period.str(), fixed2(e.score), e.flagged ? "yes" : "no",
                    fixed2(e.distance)});
    if (e.flagged) ++flagged;
  }
  std::string out = align_table(rows);
  out += std::to_string(entries.size()) + " entries, " + std::to_string(flagged) + " flagged\n";
  return out;
}

}  // namespace ews
