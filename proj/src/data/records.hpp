#pragma once

#include <optional>
#include <string>

#include "core/period.hpp"

namespace ews {

enum class BankStatus { Active, Intervened };

// One bank's balance-sheet / income aggregates for one half-year. The
// "avg_" fields are taken as provided in the input, never recomputed.
struct BankPeriodRecord {
  std::string bank_id;
  Period period;
  double other_assets = 0;
  double total_assets = 0;
  double financial_outflows = 0;
  double avg_total_inflows = 0;
  double operative_margin = 0;  // may be negative
  double avg_assets = 0;
  double avg_equity = 0;
  double financial_inflows = 0;
  double avg_capitalization = 0;
  BankStatus status = BankStatus::Active;
  std::optional<Period> intervention_period;  // set iff status == Intervened

  friend bool operator==(const BankPeriodRecord&, const BankPeriodRecord&) = default;
};

// Economy-wide series for one half-year.
struct MacroPeriodRecord {
  Period period;
  double active_rate = 0;       // weighted average lending rate, % p.a.
  double passive_rate = 0;      // weighted average deposit rate, % p.a.
  double reer_index = 0;        // real effective exchange rate index
  double m1 = 0;                // circulating money
  double m2 = 0;                // monetary liquidity, >= m1
  double igaem_index = 0;       // economic activity index level
  double reserves_ex_gold = 0;  // international reserves minus gold

  friend bool operator==(const MacroPeriodRecord&, const MacroPeriodRecord&) = default;
};

}  // namespace ews
