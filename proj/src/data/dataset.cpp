#include "data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace ews {

namespace {

struct RowError {
  int row;
  std::string column;
  std::string message;

  std::string str() const {
    return "row " + std::to_string(row) + ", column " + column + ": " + message;
  }
};

[[noreturn]] void throw_schema(const RowError& e) {
  throw Error(ErrorCode::SchemaError, e.str());
}

double field_double(const std::string& text, int row, const std::string& column) {
  try {
    double v = parse_double(text);
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "not finite");
    return v;
  } catch (const Error& e) {
    throw_schema({row, column, e.what()});
  }
}

Period field_period(const std::string& text, int row, const std::string& column) {
  auto p = Period::try_parse(text);
  if (!p) throw_schema({row, column, "invalid period '" + text + "'"});
  return *p;
}

void require(bool ok, int row, const std::string& column, const std::string& message) {
  if (!ok) throw_schema({row, column, message});
}

BankPeriodRecord parse_bank_row(const std::vector<std::string>& f, int row) {
  require(f.size() == 13, row, "-", "expected 13 fields, got " + std::to_string(f.size()));
  BankPeriodRecord r;
  r.bank_id = f[0];
  require(!r.bank_id.empty(), row, "bank_id", "empty bank_id");
  r.period = field_period(f[1], row, "period");
  r.other_assets = field_double(f[2], row, "other_assets");
  require(r.other_assets >= 0, row, "other_assets", "must be >= 0");
  r.total_assets = field_double(f[3], row, "total_assets");
  require(r.total_assets > 0, row, "total_assets", "must be > 0");
  r.financial_outflows = field_double(f[4], row, "financial_outflows");
  require(r.financial_outflows > 0, row, "financial_outflows", "must be > 0");
  r.avg_total_inflows = field_double(f[5], row, "avg_total_inflows");
  require(r.avg_total_inflows > 0, row, "avg_total_inflows", "must be > 0");
  r.operative_margin = field_double(f[6], row, "operative_margin");
  r.avg_assets = field_double(f[7], row, "avg_assets");
  require(r.avg_assets > 0, row, "avg_assets", "must be > 0");
  r.avg_equity = field_double(f[8], row, "avg_equity");
  require(r.avg_equity != 0, row, "avg_equity", "must be nonzero");
  r.financial_inflows = field_double(f[9], row, "financial_inflows");
  require(r.financial_inflows >= 0, row, "financial_inflows", "must be >= 0");
  r.avg_capitalization = field_double(f[10], row, "avg_capitalization");
  require(r.avg_capitalization > 0, row, "avg_capitalization", "must be > 0");

  const std::string& status = f[11];
  if (status == "active") {
    r.status = BankStatus::Active;
    require(f[12].empty(), row, "intervention_period", "must be empty for active banks");
  } else if (status == "intervened") {
    r.status = BankStatus::Intervened;
    require(!f[12].empty(), row, "intervention_period", "required for intervened banks");
    r.intervention_period = field_period(f[12], row, "intervention_period");
  } else {
    throw_schema({row, "status", "expected 'active' or 'intervened', got '" + status + "'"});
  }
  return r;
}

MacroPeriodRecord parse_macro_row(const std::vector<std::string>& f, int row) {
  require(f.size() == 8, row, "-", "expected 8 fields, got " + std::to_string(f.size()));
  MacroPeriodRecord r;
  r.period = field_period(f[0], row, "period");
  r.active_rate = field_double(f[1], row, "active_rate");
  r.passive_rate = field_double(f[2], row, "passive_rate");
  r.reer_index = field_double(f[3], row, "reer_index");
  require(r.reer_index > 0, row, "reer_index", "must be > 0");
  r.m1 = field_double(f[4], row, "m1");
  require(r.m1 > 0, row, "m1", "must be > 0");
  r.m2 = field_double(f[5], row, "m2");
  require(r.m2 >= r.m1, row, "m2", "must be >= m1");
  r.igaem_index = field_double(f[6], row, "igaem_index");
  require(r.igaem_index > 0, row, "igaem_index", "must be > 0");
  r.reserves_ex_gold = field_double(f[7], row, "reserves_ex_gold");
  require(r.reserves_ex_gold > 0, row, "reserves_ex_gold", "must be > 0");
  return r;
}

// Runs `parse` on every data row; in lenient mode failing rows become
// diagnostics instead of errors.
template <typename Record, typename ParseRow, typename KeyOf>
std::vector<Record> parse_rows(const std::string& text, const char* expected_header, bool lenient,
                               std::vector<std::string>& diagnostics, ParseRow parse, KeyOf key_of,
                               const std::string& what) {
  auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::SchemaError, what + ": empty file");
  {
    std::string header = lines[0];
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != expected_header) {
      throw Error(ErrorCode::SchemaError,
                  what + ": bad header, expected '" + std::string(expected_header) + "'");
    }
  }

  std::vector<Record> records;
  std::map<decltype(key_of(std::declval<Record&>())), int> seen;  // key -> first row
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int row = static_cast<int>(i) + 1;
    if (lines[i].empty() || lines[i] == "\r") continue;
    try {
      Record r = parse(split_csv_line(lines[i]), row);
      auto [it, inserted] = seen.emplace(key_of(r), row);
      if (!inserted) {
        throw Error(ErrorCode::DuplicateKey,
                    what + ": row " + std::to_string(row) + " duplicates row " +
                        std::to_string(it->second));
      }
      records.push_back(std::move(r));
    } catch (const Error& e) {
      if (!lenient) throw;
      diagnostics.push_back(what + ": " + e.what());
    }
  }
  return records;
}

}  // namespace

const MacroPeriodRecord* Dataset::find_macro(Period p) const {
  auto it = std::lower_bound(macro.begin(), macro.end(), p,
                             [](const MacroPeriodRecord& r, Period q) { return r.period < q; });
  return (it != macro.end() && it->period == p) ? &*it : nullptr;
}

const BankPeriodRecord* Dataset::find_bank(const std::string& bank_id, Period p) const {
  auto it = std::lower_bound(banks.begin(), banks.end(), std::make_pair(bank_id, p),
                             [](const BankPeriodRecord& r, const std::pair<std::string, Period>& q) {
                               return std::tie(r.bank_id, r.period) < std::tie(q.first, q.second);
                             });
  return (it != banks.end() && it->bank_id == bank_id && it->period == p) ? &*it : nullptr;
}

std::vector<std::string> Dataset::bank_ids() const {
  std::vector<std::string> ids;
  for (const auto& b : banks) {
    if (ids.empty() || ids.back() != b.bank_id) ids.push_back(b.bank_id);
  }
  return ids;
}

std::vector<BankPeriodRecord> parse_banks_rows(const std::string& banks_csv_text, bool lenient,
                                               std::vector<std::string>* diagnostics) {
  std::vector<std::string> local;
  auto bank_key = [](const BankPeriodRecord& r) { return std::make_pair(r.bank_id, r.period); };
  return parse_rows<BankPeriodRecord>(banks_csv_text, kBanksCsvHeader, lenient,
                                      diagnostics ? *diagnostics : local, parse_bank_row, bank_key,
                                      "banks");
}

Dataset parse_dataset(const std::string& banks_csv_text, const std::string& macro_csv_text,
                      bool lenient) {
  Dataset d;
  auto macro_key = [](const MacroPeriodRecord& r) { return r.period; };
  auto parsed_banks = parse_banks_rows(banks_csv_text, lenient, &d.diagnostics);
  d.macro = parse_rows<MacroPeriodRecord>(macro_csv_text, kMacroCsvHeader, lenient, d.diagnostics,
                                          parse_macro_row, macro_key, "macro");

  std::sort(d.macro.begin(), d.macro.end(),
            [](const auto& a, const auto& b) { return a.period < b.period; });
  std::set<Period> macro_periods;
  for (const auto& m : d.macro) macro_periods.insert(m.period);

  // A usable bank-period needs macro coverage for itself and its predecessor.
  for (auto& b : parsed_banks) {
    if (!macro_periods.count(b.period)) {
      d.exclusions.push_back({b.bank_id, b.period, "missing macro record"});
    } else if (!macro_periods.count(b.period.prev())) {
      d.exclusions.push_back({b.bank_id, b.period, "missing macro predecessor"});
    } else {
      d.banks.push_back(std::move(b));
    }
  }

  std::sort(d.banks.begin(), d.banks.end(), [](const auto& a, const auto& b) {
    return std::tie(a.bank_id, a.period) < std::tie(b.bank_id, b.period);
  });
  std::sort(d.exclusions.begin(), d.exclusions.end(), [](const auto& a, const auto& b) {
    return std::tie(a.bank_id, a.period) < std::tie(b.bank_id, b.period);
  });
  return d;
}

Dataset load_dataset(const std::string& banks_path, const std::string& macro_path, bool lenient) {
  return parse_dataset(read_file(banks_path), read_file(macro_path), lenient);
}

std::string banks_csv(const std::vector<BankPeriodRecord>& records) {
  std::string out = kBanksCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += join_csv({r.bank_id, r.period.str(), format_double(r.other_assets),
                     format_double(r.total_assets), format_double(r.financial_outflows),
                     format_double(r.avg_total_inflows), format_double(r.operative_margin),
                     format_double(r.avg_assets), format_double(r.avg_equity),
                     format_double(r.financial_inflows), format_double(r.avg_capitalization),
                     r.status == BankStatus::Active ? "active" : "intervened",
                     r.intervention_period ? r.intervention_period->str() : ""});
    out += '\n';
  }
  return out;
}

std::string macro_csv(const std::vector<MacroPeriodRecord>& records) {
  std::string out = kMacroCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += join_csv({r.period.str(), format_double(r.active_rate), format_double(r.passive_rate),
                     format_double(r.reer_index), format_double(r.m1), format_double(r.m2),
                     format_double(r.igaem_index), format_double(r.reserves_ex_gold)});
    out += '\n';
  }
  return out;
}

void write_dataset(const Dataset& d, const std::string& banks_path, const std::string& macro_path) {
  write_file_atomic(banks_path, banks_csv(d.banks));
  write_file_atomic(macro_path, macro_csv(d.macro));
}

FilterResult filter_complete_banks(const Dataset& d, PeriodRange window, int max_missing) {
  if (window.from > window.to) {
    throw Error(ErrorCode::EmptyWindow, "window " + window.str() + " is empty");
  }
  std::map<std::string, int> present;
  for (const auto& id : d.bank_ids()) present[id] = 0;
  for (const auto& b : d.banks) {
    if (window.contains(b.period)) ++present[b.bank_id];
  }

  FilterResult result;
  const int span = window.length();
  for (const auto& [id, count] : present) {
    const int missing = span - count;
    if (missing <= max_missing) {
      result.kept.push_back(id);
    } else {
      result.dropped.emplace_back(
          id, std::to_string(missing) + " missing period" + (missing == 1 ? "" : "s"));
    }
  }
  return result;
}

}  // namespace ews
