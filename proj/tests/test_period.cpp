#include <doctest.h>

#include "core/error.hpp"
#include "core/period.hpp"

using ews::Half;
using ews::Period;
using ews::PeriodRange;

TEST_CASE("period parse/str round trip") {
  CHECK(Period::parse("1994-H1") == Period{1994, Half::H1});
  CHECK(Period::parse("2000-H2") == Period{2000, Half::H2});
  CHECK(Period{1996, Half::H1}.str() == "1996-H1");
  for (const char* s : {"1990-H1", "1990-H2", "2004-H2", "7-H1"}) {
    CHECK(Period::parse(s).str() == s);
  }
}

TEST_CASE("period parse rejects malformed keys") {
  for (const char* s :
       {"", "1994", "1994-H3", "1994-h1", "1994-H", "H1-1994", "1994-H12", "19x4-H1", "-1994-H1"}) {
    CHECK_FALSE(Period::try_parse(s).has_value());
    CHECK_THROWS_AS(Period::parse(s), ews::Error);
  }
}

TEST_CASE("period arithmetic walks half-years") {
  const Period p{1994, Half::H2};
  CHECK(p.next() == Period{1995, Half::H1});
  CHECK(p.prev() == Period{1994, Half::H1});
  CHECK(Period{1995, Half::H1}.prev() == p);
  CHECK(Period::from_index(p.index()) == p);
  CHECK(ews::half_steps({1990, Half::H1}, {1990, Half::H2}) == 1);
  CHECK(ews::half_steps({2000, Half::H1}, {2000, Half::H2}) == 1);
  CHECK(ews::half_steps({1996, Half::H1}, {2004, Half::H2}) == 17);
  CHECK(ews::half_steps({2000, Half::H2}, {2000, Half::H1}) == -1);
}

TEST_CASE("period ordering is chronological") {
  CHECK(Period{1994, Half::H1} < Period{1994, Half::H2});
  CHECK(Period{1994, Half::H2} < Period{1995, Half::H1});
  CHECK(Period{1993, Half::H2} < Period{1994, Half::H1});
}

TEST_CASE("period range parse, contains, length") {
  const PeriodRange r = PeriodRange::parse("1990-H1..1993-H2");
  CHECK(r.from == Period{1990, Half::H1});
  CHECK(r.to == Period{1993, Half::H2});
  CHECK(r.length() == 8);
  CHECK(r.str() == "1990-H1..1993-H2");
  CHECK(r.contains(Period{1990, Half::H1}));
  CHECK(r.contains(Period{1993, Half::H2}));
  CHECK_FALSE(r.contains(Period{1994, Half::H1}));
  CHECK_FALSE(r.contains(Period{1989, Half::H2}));

  CHECK_THROWS_AS(PeriodRange::parse("1990-H1"), ews::Error);
  CHECK_THROWS_AS(PeriodRange::parse("1993-H2..1990-H1"), ews::Error);
}
