#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "indicators/indicators.hpp"

using namespace ews;

namespace {

BankPeriodRecord sample_bank() {
  BankPeriodRecord b;
  b.bank_id = "ALPHA";
  b.period = Period::parse("1994-H1");
  b.other_assets = 5;
  b.total_assets = 100;
  b.financial_outflows = 80;
  b.avg_total_inflows = 100;
  b.operative_margin = 2;
  b.avg_assets = 100;
  b.avg_equity = 20;
  b.financial_inflows = 120;
  b.avg_capitalization = 80;
  return b;
}

MacroPeriodRecord sample_macro(Period p) {
  MacroPeriodRecord m;
  m.period = p;
  m.active_rate = 45.2;
  m.passive_rate = 30.1;
  m.reer_index = 95;
  m.m1 = 100;
  m.m2 = 200;
  m.igaem_index = 100;
  m.reserves_ex_gold = 8000;
  return m;
}

}  // namespace

TEST_CASE("financial ratios in percent units") {
  BankPeriodRecord b = sample_bank();
  SUBCASE("zero numerator gives zero") {
    b.other_assets = 0;
    CHECK(financial_indicators(b).f1 == 0);
  }
  SUBCASE("inflows 120 over outflows 80 is 150 percent") {
    CHECK(financial_indicators(b).f5 == doctest::Approx(150.0));
  }
  SUBCASE("negative margin carries its sign") {
    b.operative_margin = -5;
    b.avg_equity = 50;
    CHECK(financial_indicators(b).f4 == doctest::Approx(-10.0));
  }
  SUBCASE("division by zero names the field") {
    b.avg_equity = 0;
    try {
      financial_indicators(b);
      FAIL("expected DivisionByZero");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DivisionByZero);
      CHECK(std::string(e.what()).find("avg_equity") != std::string::npos);
    }
  }
}

TEST_CASE("macro indicators: spread, index, ratio, growth rates") {
  const Period p = Period::parse("1994-H1");
  MacroPeriodRecord prev = sample_macro(p.prev());
  MacroPeriodRecord cur = sample_macro(p);
  cur.igaem_index = 95;  // prev 100 -> -5%

  const MacroIndicators m = macro_indicators(cur, prev);
  CHECK(m.m1 == doctest::Approx(15.1));
  CHECK(m.m2 == doctest::Approx(95.0));
  CHECK(m.m3 == doctest::Approx(2.0));
  CHECK(m.m4 == doctest::Approx(-5.0));
  CHECK(m.m5 == doctest::Approx(0.0));

  SUBCASE("m4 and m5 are exactly zero on flat series") {
    cur = sample_macro(p);
    const MacroIndicators flat = macro_indicators(cur, prev);
    CHECK(flat.m4 == 0.0);
    CHECK(flat.m5 == 0.0);
  }
  SUBCASE("non-adjacent periods are rejected") {
    MacroPeriodRecord far = sample_macro(p.next());
    CHECK_THROWS_AS(macro_indicators(far, prev), Error);
  }
}

TEST_CASE("assemble composes the two halves") {
  const Period p = Period::parse("1994-H1");
  const BankPeriodRecord b = sample_bank();
  const MacroPeriodRecord prev = sample_macro(p.prev());
  const MacroPeriodRecord cur = sample_macro(p);

  const IndicatorVector v = assemble(b, cur, prev);
  const FinancialRatios f = financial_indicators(b);
  const MacroIndicators m = macro_indicators(cur, prev);
  CHECK(v.f1 == f.f1);
  CHECK(v.f2 == f.f2);
  CHECK(v.f3 == f.f3);
  CHECK(v.f4 == f.f4);
  CHECK(v.f5 == f.f5);
  CHECK(v.m1 == m.m1);
  CHECK(v.m2 == m.m2);
  CHECK(v.m3 == m.m3);
  CHECK(v.m4 == m.m4);
  CHECK(v.m5 == m.m5);
  CHECK(v.finite());

  SUBCASE("mismatched bank and macro periods are rejected") {
    BankPeriodRecord late = b;
    late.period = p.next();
    CHECK_THROWS_AS(assemble(late, cur, prev), Error);
  }
  SUBCASE("two banks share the macro block in the same period") {
    BankPeriodRecord other = b;
    other.bank_id = "BETA";
    other.other_assets = 9;
    other.financial_inflows = 10;
    const IndicatorVector w = assemble(other, cur, prev);
    CHECK(w.m1 == v.m1);
    CHECK(w.m2 == v.m2);
    CHECK(w.m3 == v.m3);
    CHECK(w.m4 == v.m4);
    CHECK(w.m5 == v.m5);
    CHECK(w.f1 != v.f1);
    CHECK(w.f5 != v.f5);
  }
}

TEST_CASE("ratios are invariant to monetary rescaling") {
  const Period p = Period::parse("1994-H1");
  BankPeriodRecord b = sample_bank();
  const FinancialRatios base = financial_indicators(b);
  for (double c : {3.0, 0.25, 1e6}) {
    BankPeriodRecord scaled = b;
    scaled.other_assets *= c;
    scaled.total_assets *= c;
    scaled.financial_outflows *= c;
    scaled.avg_total_inflows *= c;
    scaled.operative_margin *= c;
    scaled.avg_assets *= c;
    scaled.avg_equity *= c;
    scaled.financial_inflows *= c;
    scaled.avg_capitalization *= c;
    const FinancialRatios r = financial_indicators(scaled);
    CHECK(r.f1 == doctest::Approx(base.f1).epsilon(1e-12));
    CHECK(r.f2 == doctest::Approx(base.f2).epsilon(1e-12));
    CHECK(r.f3 == doctest::Approx(base.f3).epsilon(1e-12));
    CHECK(r.f4 == doctest::Approx(base.f4).epsilon(1e-12));
    CHECK(r.f5 == doctest::Approx(base.f5).epsilon(1e-12));
  }
  (void)p;
}

TEST_CASE("indicator vector array round trip") {
  IndicatorVector v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(IndicatorVector::from_array(v.to_array()) == v);
  v.m5 = std::nan("");
  CHECK_FALSE(v.finite());
}
