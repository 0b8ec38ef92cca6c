#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace ews {

enum class Half : int { H1 = 0, H2 = 1 };

// Half-year period, keyed "YYYY-H1" / "YYYY-H2". Totally ordered; H2 of year
// y precedes H1 of year y+1.
struct Period {
  int year = 0;
  Half half = Half::H1;

  // Absolute half-year index; the unit of period arithmetic.
  int index() const { return year * 2 + static_cast<int>(half); }
  static Period from_index(int index);

  Period next() const { return from_index(index() + 1); }
  Period prev() const { return from_index(index() - 1); }

  std::string str() const;
  static Period parse(std::string_view text);  // throws Error(InvalidArgument)
  static std::optional<Period> try_parse(std::string_view text);

  friend auto operator<=>(const Period&, const Period&) = default;
};

// Signed number of half-year steps from `from` to `to`.
inline int half_steps(Period from, Period to) { return to.index() - from.index(); }

// Inclusive period range "FROM..TO".
struct PeriodRange {
  Period from;
  Period to;

  bool contains(Period p) const { return from <= p && p <= to; }
  int length() const { return half_steps(from, to) + 1; }

  std::string str() const;
  static PeriodRange parse(std::string_view text);

  friend bool operator==(const PeriodRange&, const PeriodRange&) = default;
};

}  // namespace ews
