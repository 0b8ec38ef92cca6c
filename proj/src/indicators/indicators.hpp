#pragma once

#include <array>
#include <cmath>

#include "data/records.hpp"

namespace ews {

// The ten early-warning indicators for one bank in one half-year.
// f1..f5 come from the bank's balance sheet, m1..m5 from the macro series.
// All ratio indicators are in percent.
struct IndicatorVector {
  double f1 = 0;  // other assets / total assets, %
  double f2 = 0;  // financial outflows / avg total inflows, %
  double f3 = 0;  // operative margin / avg assets, %
  double f4 = 0;  // operative margin / avg equity, %
  double f5 = 0;  // financial inflows / financial outflows, %
  double m1 = 0;  // active - passive interest rate, points
  double m2 = 0;  // real effective exchange rate index
  double m3 = 0;  // M2 / M1 money aggregates
  double m4 = 0;  // half-on-half IGAEM growth, %
  double m5 = 0;  // half-on-half growth of reserves ex gold, %

  std::array<double, 10> to_array() const { return {f1, f2, f3, f4, f5, m1, m2, m3, m4, m5}; }

  static IndicatorVector from_array(const std::array<double, 10>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9]};
  }

  bool finite() const {
    for (double v : to_array()) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  bool operator==(const IndicatorVector&) const = default;
};

struct FinancialRatios {
  double f1 = 0, f2 = 0, f3 = 0, f4 = 0, f5 = 0;
};

struct MacroIndicators {
  double m1 = 0, m2 = 0, m3 = 0, m4 = 0, m5 = 0;
};

// Throws DivisionByZero naming the offending denominator field.
FinancialRatios financial_indicators(const BankPeriodRecord& bank);

// `prev` must be the immediately preceding half-year (NonAdjacentPeriods otherwise):
// m4 and m5 are growth rates against that predecessor.
MacroIndicators macro_indicators(const MacroPeriodRecord& current, const MacroPeriodRecord& prev);

// Full vector for one bank-period. The macro rows must match the bank's
// period (PeriodMismatch otherwise).
IndicatorVector assemble(const BankPeriodRecord& bank, const MacroPeriodRecord& macro_current,
                         const MacroPeriodRecord& macro_prev);

}  // namespace ews
