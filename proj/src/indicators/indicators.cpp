#include "indicators/indicators.hpp"

#include "core/error.hpp"

namespace ews {

namespace {

double ratio(double numerator, double denominator, const char* field) {
  if (denominator == 0) {
    throw Error(ErrorCode::DivisionByZero, std::string(field) + " is zero");
  }
  return numerator / denominator;
}

}  // namespace

FinancialRatios financial_indicators(const BankPeriodRecord& b) {
  FinancialRatios r;
  r.f1 = 100.0 * ratio(b.other_assets, b.total_assets, "total_assets");
  r.f2 = 100.0 * ratio(b.financial_outflows, b.avg_total_inflows, "avg_total_inflows");
  r.f3 = 100.0 * ratio(b.operative_margin, b.avg_assets, "avg_assets");
  r.f4 = 100.0 * ratio(b.operative_margin, b.avg_equity, "avg_equity");
  r.f5 = 100.0 * ratio(b.financial_inflows, b.financial_outflows, "financial_outflows");
  return r;
}

MacroIndicators macro_indicators(const MacroPeriodRecord& cur, const MacroPeriodRecord& prev) {
  if (prev.period.next() != cur.period) {
    throw Error(ErrorCode::NonAdjacentPeriods, "macro rows " + prev.period.str() + " and " +
                                                   cur.period.str() + " are not consecutive");
  }
  MacroIndicators m;
  m.m1 = cur.active_rate - cur.passive_rate;
  m.m2 = cur.reer_index;
  m.m3 = ratio(cur.m2, cur.m1, "m1");
  m.m4 = 100.0 * ratio(cur.igaem_index - prev.igaem_index, prev.igaem_index, "igaem_index");
  m.m5 = 100.0 *
         ratio(cur.reserves_ex_gold - prev.reserves_ex_gold, prev.reserves_ex_gold, "reserves_ex_gold");
  return m;
}

IndicatorVector assemble(const BankPeriodRecord& bank, const MacroPeriodRecord& macro_current,
                         const MacroPeriodRecord& macro_prev) {
  if (bank.period != macro_current.period) {
    throw Error(ErrorCode::PeriodMismatch, "bank row is " + bank.period.str() +
                                               " but macro row is " + macro_current.period.str());
  }
  const FinancialRatios f = financial_indicators(bank);
  const MacroIndicators m = macro_indicators(macro_current, macro_prev);
  IndicatorVector v;
  v.f1 = f.f1;
  v.f2 = f.f2;
  v.f3 = f.f3;
  v.f4 = f.f4;
  v.f5 = f.f5;
  v.m1 = m.m1;
  v.m2 = m.m2;
  v.m3 = m.m3;
  v.m4 = m.m4;
  v.m5 = m.m5;
  return v;
}

}  // namespace ews
