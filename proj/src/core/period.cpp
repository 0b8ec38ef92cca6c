#include "core/period.hpp"

#include <cctype>
#include <charconv>

#include "core/error.hpp"

namespace ews {

Period Period::from_index(int index) {
  int year = index >= 0 ? index / 2 : (index - 1) / 2;
  return Period{year, static_cast<Half>(index - year * 2)};
}

std::string Period::str() const {
  return std::to_string(year) + (half == Half::H1 ? "-H1" : "-H2");
}

std::optional<Period> Period::try_parse(std::string_view text) {
  auto dash = text.rfind('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 3 != text.size()) return std::nullopt;
  std::string_view digits = text.substr(0, dash);
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  }
  int year = 0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), year);
  if (ec != std::errc{} || p != digits.data() + digits.size()) return std::nullopt;
  if (text[dash + 1] != 'H') return std::nullopt;
  char h = text[dash + 2];
  if (h != '1' && h != '2') return std::nullopt;
  return Period{year, h == '1' ? Half::H1 : Half::H2};
}

Period Period::parse(std::string_view text) {
  auto p = try_parse(text);
  if (!p) {
    throw Error(ErrorCode::InvalidArgument,
                "invalid period '" + std::string(text) + "' (expected YYYY-H1 or YYYY-H2)");
  }
  return *p;
}

std::string PeriodRange::str() const { return from.str() + ".." + to.str(); }

PeriodRange PeriodRange::parse(std::string_view text) {
  auto sep = text.find("..");
  if (sep == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument,
                "invalid period range '" + std::string(text) + "' (expected FROM..TO)");
  }
  PeriodRange r{Period::parse(text.substr(0, sep)), Period::parse(text.substr(sep + 2))};
  if (r.from > r.to) {
    throw Error(ErrorCode::InvalidArgument, "period range '" + std::string(text) + "' is reversed");
  }
  return r;
}

}  // namespace ews
