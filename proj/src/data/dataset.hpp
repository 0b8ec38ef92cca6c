#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/period.hpp"
#include "data/records.hpp"

namespace ews {

// A bank-period that was parsed but cannot be used (no macro coverage for its
// period or the period's predecessor).
struct Exclusion {
  std::string bank_id;
  Period period;
  std::string reason;

  friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

// Validated panel. Immutable once constructed; safe to share across readers.
// Every record in `banks` has macro coverage for its period and the period's
// predecessor; everything parsed but lacking that coverage sits in
// `exclusions`, so nothing is dropped silently.
struct Dataset {
  std::vector<BankPeriodRecord> banks;   // sorted by (bank_id, period)
  std::vector<MacroPeriodRecord> macro;  // sorted by period
  std::vector<Exclusion> exclusions;
  std::vector<std::string> diagnostics;  // lenient-mode row reports

  const MacroPeriodRecord* find_macro(Period p) const;
  const BankPeriodRecord* find_bank(const std::string& bank_id, Period p) const;
  std::vector<std::string> bank_ids() const;  // distinct, sorted

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

inline constexpr const char* kBanksCsvHeader =
    "bank_id,period,other_assets,total_assets,financial_outflows,avg_total_inflows,"
    "operative_margin,avg_assets,avg_equity,financial_inflows,avg_capitalization,"
    "status,intervention_period";

inline constexpr const char* kMacroCsvHeader =
    "period,active_rate,passive_rate,reer_index,m1,m2,igaem_index,reserves_ex_gold";

// Loads and validates the two CSVs. Default is fail-file: any bad row throws
// SchemaError / DuplicateKey with its row number and column. With
// lenient=true bad rows are skipped and reported in Dataset::diagnostics.
Dataset load_dataset(const std::string& banks_path, const std::string& macro_path,
                     bool lenient = false);

// In-memory variant, used by tests and by load_dataset itself.
Dataset parse_dataset(const std::string& banks_csv_text, const std::string& macro_csv_text,
                      bool lenient = false);

// Just the bank rows, validated but without the macro-coverage pass. For
// consumers (pairing) that need no indicators. diagnostics may be null.
std::vector<BankPeriodRecord> parse_banks_rows(const std::string& banks_csv_text, bool lenient,
                                               std::vector<std::string>* diagnostics);

std::string banks_csv(const std::vector<BankPeriodRecord>& records);
std::string macro_csv(const std::vector<MacroPeriodRecord>& records);

// Writes both CSVs (atomically) such that load_dataset reproduces the
// Dataset field-for-field.
void write_dataset(const Dataset& d, const std::string& banks_path, const std::string& macro_path);

struct FilterResult {
  std::vector<std::string> kept;                            // sorted bank ids
  std::vector<std::pair<std::string, std::string>> dropped; // (bank_id, reason)
};

// Keeps a bank iff it is missing at most max_missing periods inside `window`.
FilterResult filter_complete_banks(const Dataset& d, PeriodRange window, int max_missing);

}  // namespace ews
