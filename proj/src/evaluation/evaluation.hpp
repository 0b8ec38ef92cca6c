#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "data/dataset.hpp"
#include "discriminant/discriminant.hpp"

namespace ews {

struct ConfusionMatrix {
  long tp = 0;  // actual Distressed, predicted Distressed
  long fn = 0;  // actual Distressed, predicted Healthy (Type I, missed bankruptcy)
  long fp = 0;  // actual Healthy, predicted Distressed (Type II, false alarm)
  long tn = 0;  // actual Healthy, predicted Healthy

  long total() const { return tp + fn + fp + tn; }
  double accuracy() const;           // 100*(tp+tn)/total, NaN on empty
  double distressed_recall() const;  // 100*tp/(tp+fn), NaN when no distressed
  double healthy_recall() const;     // 100*tn/(fp+tn), NaN when no healthy

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix evaluate(const DiscriminantModel& m, std::span<const LabeledVector> data);

struct BankCapitalization {
  std::string bank_id;
  double avg_capitalization = 0;
};

struct PairResult {
  std::vector<std::pair<std::string, std::string>> pairs;  // (intervened, active)
  std::vector<std::string> unmatched;  // intervened banks left over when actives run out
};

// Greedy matching without replacement: intervened banks in descending
// capitalization each take the closest remaining active bank.
PairResult pair_banks(std::vector<BankCapitalization> intervened,
                      std::vector<BankCapitalization> active);

// Capitalization per bank = mean of avg_capitalization across its rows; a
// bank counts as intervened if any row says so.
void bank_capitalizations(const std::vector<BankPeriodRecord>& rows,
                          std::vector<BankCapitalization>& intervened,
                          std::vector<BankCapitalization>& active);
void bank_capitalizations(const Dataset& d, std::vector<BankCapitalization>& intervened,
                          std::vector<BankCapitalization>& active);

// Horizon keys are "years before the crisis". HorizonMismatch when the two
// maps do not cover the same horizons.
std::map<int, ConfusionMatrix> horizon_study(
    const std::map<int, DiscriminantModel>& model_per_horizon,
    const std::map<int, std::vector<LabeledVector>>& data_per_horizon);

// Plain-text table, horizons in descending order: Yes/No count rows with
// integer row percentages and an accuracy line.
std::string render_horizon_table(const std::map<int, ConfusionMatrix>& table);

// Indicator vectors for every usable bank-period, optionally restricted to a
// window. A bank-period is labeled Distressed when the bank is intervened
// and (if given) its intervention period is on or before `label_intervened_by`.
std::vector<LabeledVector> collect_vectors(const Dataset& d, std::optional<PeriodRange> window,
                                           std::optional<Period> label_intervened_by);

// Indicator dump `bank_id,period,f1..f5,m1..m5`, one row per usable
// bank-period (optionally restricted), sorted (bank_id, period).
std::string indicators_csv(const Dataset& d, std::optional<PeriodRange> window);

struct ProbeEntry {
  std::string bank_id;
  Period period;
  double score = 0;
  bool flagged = false;
  double distance = 0;  // score - threshold
};

struct ProbeAlert {
  std::string bank_id;
  Period first_flag_period;
  std::optional<Period> intervention_period;
  std::optional<int> lead_periods;  // half-year steps from first flag to intervention
};

struct YearlyStat {
  int year = 0;
  long banks = 0;    // banks probed that year
  double median = 0;  // over per-bank yearly values (max of the semiannual scores)
  double mean = 0;
  double stdev = 0;  // sample stdev, 0 when fewer than two banks
  long flagged = 0;  // banks whose yearly value crosses the threshold
};

struct ProbeException {
  std::string bank_id;
  Period period;
  std::string message;
};

struct ProbeReport {
  std::vector<ProbeEntry> entries;      // sorted (bank_id, period)
  std::vector<YearlyStat> yearly;       // sorted by year
  std::vector<ProbeAlert> alerts;       // sorted by bank_id
  std::vector<ProbeException> exceptions;
};

// Scores every bank at every covered period in [from, to]. Per-entry
// indicator failures land in `exceptions`; the probe itself completes.
ProbeReport probe(const DiscriminantModel& m, const Dataset& d, Period from, Period to);

std::string entries_csv(const ProbeReport& r);
std::string alerts_csv(const ProbeReport& r);
std::string yearly_csv(const ProbeReport& r);
std::string exceptions_csv(const ProbeReport& r);

// Writes entries.csv, alerts.csv, yearly.csv, exceptions.csv under `dir`.
void write_probe_reports(const ProbeReport& r, const std::string& dir);

std::vector<ProbeEntry> parse_entries_csv(const std::string& text);

// format is "text" (aligned table + summary) or "csv" (normalized entries).
std::string render_report(const std::vector<ProbeEntry>& entries, const std::string& format);

}  // namespace ews
