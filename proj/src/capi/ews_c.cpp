#include "ews/ews.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "data/dataset.hpp"
#include "discriminant/discriminant.hpp"
#include "evaluation/evaluation.hpp"
#include "synth/synth.hpp"

struct ews_dataset {
  ews::Dataset d;
};

struct ews_model {
  ews::DiscriminantModel m;
};

struct ews_probe_report {
  ews::ProbeReport r;
};

namespace {

thread_local std::string g_last_error = "no error";

ews_status status_of(ews::ErrorCode c) {
  using ews::ErrorCode;
  switch (c) {
    case ErrorCode::FileNotFound: return EWS_ERR_FILE_NOT_FOUND;
    case ErrorCode::IoError: return EWS_ERR_IO;
    case ErrorCode::SchemaError: return EWS_ERR_SCHEMA;
    case ErrorCode::DuplicateKey: return EWS_ERR_DUPLICATE_KEY;
    case ErrorCode::InvalidArgument: return EWS_ERR_INVALID_ARGUMENT;
    case ErrorCode::EmptyWindow: return EWS_ERR_EMPTY_WINDOW;
    case ErrorCode::DivisionByZero: return EWS_ERR_DIVISION_BY_ZERO;
    case ErrorCode::NonAdjacentPeriods: return EWS_ERR_NON_ADJACENT_PERIODS;
    case ErrorCode::PeriodMismatch: return EWS_ERR_PERIOD_MISMATCH;
    case ErrorCode::TooFewSamples: return EWS_ERR_TOO_FEW_SAMPLES;
    case ErrorCode::DegenerateClasses: return EWS_ERR_DEGENERATE_CLASSES;
    case ErrorCode::SingularScatter: return EWS_ERR_SINGULAR_SCATTER;
    case ErrorCode::NoFeasibleThreshold: return EWS_ERR_NO_FEASIBLE_THRESHOLD;
    case ErrorCode::HorizonMismatch: return EWS_ERR_HORIZON_MISMATCH;
    case ErrorCode::NonPositiveDefinite: return EWS_ERR_NON_POSITIVE_DEFINITE;
    case ErrorCode::InvalidConfig: return EWS_ERR_INVALID_CONFIG;
    case ErrorCode::Internal: return EWS_ERR_INTERNAL;
  }
  return EWS_ERR_INTERNAL;
}

template <typename F>
ews_status wrap(F&& body) {
  try {
    body();
    g_last_error = "no error";
    return EWS_OK;
  } catch (const ews::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EWS_ERR_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) {
    throw ews::Error(ews::ErrorCode::InvalidArgument, std::string("null argument: ") + name);
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* ews_status_name(ews_status status) {
  switch (status) {
    case EWS_OK: return "OK";
    case EWS_ERR_FILE_NOT_FOUND: return "FileNotFound";
    case EWS_ERR_IO: return "IoError";
    case EWS_ERR_SCHEMA: return "SchemaError";
    case EWS_ERR_DUPLICATE_KEY: return "DuplicateKey";
    case EWS_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case EWS_ERR_EMPTY_WINDOW: return "EmptyWindow";
    case EWS_ERR_DIVISION_BY_ZERO: return "DivisionByZero";
    case EWS_ERR_NON_ADJACENT_PERIODS: return "NonAdjacentPeriods";
    case EWS_ERR_PERIOD_MISMATCH: return "PeriodMismatch";
    case EWS_ERR_TOO_FEW_SAMPLES: return "TooFewSamples";
    case EWS_ERR_DEGENERATE_CLASSES: return "DegenerateClasses";
    case EWS_ERR_SINGULAR_SCATTER: return "SingularScatter";
    case EWS_ERR_NO_FEASIBLE_THRESHOLD: return "NoFeasibleThreshold";
    case EWS_ERR_HORIZON_MISMATCH: return "HorizonMismatch";
    case EWS_ERR_NON_POSITIVE_DEFINITE: return "NonPositiveDefinite";
    case EWS_ERR_INVALID_CONFIG: return "InvalidConfig";
    case EWS_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* ews_last_error(void) { return g_last_error.c_str(); }

void ews_string_free(char* s) { std::free(s); }

/* ---- datasets ------------------------------------------------------- */

ews_status ews_dataset_load(const char* banks_csv_path, const char* macro_csv_path, int lenient,
                            ews_dataset** out) {
  return wrap([&] {
    need(banks_csv_path, "banks_csv_path");
    need(macro_csv_path, "macro_csv_path");
    need(out, "out");
    auto* ds = new ews_dataset{ews::load_dataset(banks_csv_path, macro_csv_path, lenient != 0)};
    *out = ds;
  });
}

void ews_dataset_free(ews_dataset* ds) { delete ds; }

ews_status ews_dataset_counts(const ews_dataset* ds, long* bank_rows, long* macro_rows,
                              long* exclusions, long* diagnostics) {
  return wrap([&] {
    need(ds, "ds");
    if (bank_rows) *bank_rows = static_cast<long>(ds->d.banks.size());
    if (macro_rows) *macro_rows = static_cast<long>(ds->d.macro.size());
    if (exclusions) *exclusions = static_cast<long>(ds->d.exclusions.size());
    if (diagnostics) *diagnostics = static_cast<long>(ds->d.diagnostics.size());
  });
}

ews_status ews_dataset_write(const ews_dataset* ds, const char* banks_csv_path,
                             const char* macro_csv_path) {
  return wrap([&] {
    need(ds, "ds");
    need(banks_csv_path, "banks_csv_path");
    need(macro_csv_path, "macro_csv_path");
    ews::write_dataset(ds->d, banks_csv_path, macro_csv_path);
  });
}

ews_status ews_dataset_filter_complete(const ews_dataset* ds, const char* window, int max_missing,
                                       char** out_csv) {
  return wrap([&] {
    need(ds, "ds");
    need(window, "window");
    need(out_csv, "out_csv");
    const ews::FilterResult fr =
        ews::filter_complete_banks(ds->d, ews::PeriodRange::parse(window), max_missing);
    std::string csv = "bank_id,kept,reason\n";
    for (const auto& id : fr.kept) csv += ews::join_csv({id, "true", ""}) + "\n";
    for (const auto& [id, reason] : fr.dropped) csv += ews::join_csv({id, "false", reason}) + "\n";
    *out_csv = dup_string(csv);
  });
}

/* ---- models ---------------------------------------------------------- */

ews_status ews_model_load(const char* path, ews_model** out) {
  return wrap([&] {
    need(path, "path");
    need(out, "out");
    *out = new ews_model{ews::load_model(path)};
  });
}

ews_status ews_model_save(const ews_model* m, const char* path) {
  return wrap([&] {
    need(m, "m");
    need(path, "path");
    ews::save_model(m->m, path);
  });
}

void ews_model_free(ews_model* m) { delete m; }

ews_status ews_model_weights(const ews_model* m, double* weights) {
  return wrap([&] {
    need(m, "m");
    need(weights, "weights");
    for (int i = 0; i < 10; ++i) weights[i] = m->m.weights[static_cast<std::size_t>(i)];
  });
}

ews_status ews_model_threshold(const ews_model* m, double* threshold) {
  return wrap([&] {
    need(m, "m");
    need(threshold, "threshold");
    *threshold = m->m.threshold;
  });
}

ews_status ews_model_regularization(const ews_model* m, double* regularization) {
  return wrap([&] {
    need(m, "m");
    need(regularization, "regularization");
    *regularization = m->m.regularization;
  });
}

ews_status ews_fit(const ews_dataset* ds, const char* label_intervened_by, const char* window,
                   int tune_threshold, int typeI_below_typeII, long* n_healthy, long* n_distressed,
                   ews_model** out) {
  return wrap([&] {
    need(ds, "ds");
    need(label_intervened_by, "label_intervened_by");
    need(out, "out");
    const ews::Period crisis = ews::Period::parse(label_intervened_by);
    std::optional<ews::PeriodRange> win;
    if (window) win = ews::PeriodRange::parse(window);

    const auto data = ews::collect_vectors(ds->d, win, crisis);
    long healthy = 0, distressed = 0;
    for (const auto& lv : data) {
      (lv.label == ews::BankClass::Healthy ? healthy : distressed)++;
    }
    if (n_healthy) *n_healthy = healthy;
    if (n_distressed) *n_distressed = distressed;

    ews::DiscriminantModel m = ews::fit(data);
    if (win) {
      m.fit_window = win;
    } else if (!data.empty()) {
      ews::Period lo = data.front().period, hi = data.front().period;
      for (const auto& lv : data) {
        lo = std::min(lo, lv.period);
        hi = std::max(hi, lv.period);
      }
      m.fit_window = ews::PeriodRange{lo, hi};
    }
    if (tune_threshold) {
      m.threshold = ews::tune_threshold(m, data, typeI_below_typeII != 0);
    }
    *out = new ews_model{std::move(m)};
  });
}

ews_status ews_score_vector(const ews_model* m, const double* x, double* score) {
  return wrap([&] {
    need(m, "m");
    need(x, "x");
    need(score, "score");
    std::array<double, 10> a;
    for (int i = 0; i < 10; ++i) a[static_cast<std::size_t>(i)] = x[i];
    *score = ews::score(m->m, ews::IndicatorVector::from_array(a));
  });
}

ews_status ews_classify_vector(const ews_model* m, const double* x, int* distressed) {
  return wrap([&] {
    need(m, "m");
    need(x, "x");
    need(distressed, "distressed");
    std::array<double, 10> a;
    for (int i = 0; i < 10; ++i) a[static_cast<std::size_t>(i)] = x[i];
    *distressed =
        ews::classify(m->m, ews::IndicatorVector::from_array(a)) == ews::BankClass::Distressed ? 1
                                                                                               : 0;
  });
}

ews_status ews_score_period_csv(const ews_model* m, const ews_dataset* ds, const char* period,
                                int with_decision, char** out_csv) {
  return wrap([&] {
    need(m, "m");
    need(ds, "ds");
    need(period, "period");
    need(out_csv, "out_csv");
    const ews::Period p = ews::Period::parse(period);
    std::string csv = with_decision ? "bank_id,period,score,decision\n" : "bank_id,period,score\n";
    const ews::MacroPeriodRecord* cur = ds->d.find_macro(p);
    const ews::MacroPeriodRecord* prev = ds->d.find_macro(p.prev());
    for (const auto& b : ds->d.banks) {
      if (b.period != p || !cur || !prev) continue;
      const double s = ews::score(m->m, ews::assemble(b, *cur, *prev));
      std::vector<std::string> fields = {b.bank_id, p.str(), ews::format_double(s)};
      if (with_decision) {
        fields.push_back(ews::bank_class_name(ews::classify_score(m->m, s)));
      }
      csv += ews::join_csv(fields) + "\n";
    }
    *out_csv = dup_string(csv);
  });
}

/* ---- probe ----------------------------------------------------------- */

ews_status ews_probe_run(const ews_model* m, const ews_dataset* ds, const char* from,
                         const char* to, ews_probe_report** out) {
  return wrap([&] {
    need(m, "m");
    need(ds, "ds");
    need(from, "from");
    need(to, "to");
    need(out, "out");
    *out = new ews_probe_report{
        ews::probe(m->m, ds->d, ews::Period::parse(from), ews::Period::parse(to))};
  });
}

void ews_probe_free(ews_probe_report* r) { delete r; }

ews_status ews_probe_counts(const ews_probe_report* r, long* entries, long* flagged, long* alerts,
                            long* exceptions) {
  return wrap([&] {
    need(r, "r");
    if (entries) *entries = static_cast<long>(r->r.entries.size());
    if (flagged) {
      long n = 0;
      for (const auto& e : r->r.entries) n += e.flagged ? 1 : 0;
      *flagged = n;
    }
    if (alerts) *alerts = static_cast<long>(r->r.alerts.size());
    if (exceptions) *exceptions = static_cast<long>(r->r.exceptions.size());
  });
}

ews_status ews_probe_write_reports(const ews_probe_report* r, const char* dir) {
  return wrap([&] {
    need(r, "r");
    need(dir, "dir");
    ews::write_probe_reports(r->r, dir);
  });
}

ews_status ews_probe_entries_csv(const ews_probe_report* r, char** out_csv) {
  return wrap([&] {
    need(r, "r");
    need(out_csv, "out_csv");
    *out_csv = dup_string(ews::entries_csv(r->r));
  });
}

ews_status ews_probe_alerts_csv(const ews_probe_report* r, char** out_csv) {
  return wrap([&] {
    need(r, "r");
    need(out_csv, "out_csv");
    *out_csv = dup_string(ews::alerts_csv(r->r));
  });
}

ews_status ews_probe_yearly_csv(const ews_probe_report* r, char** out_csv) {
  return wrap([&] {
    need(r, "r");
    need(out_csv, "out_csv");
    *out_csv = dup_string(ews::yearly_csv(r->r));
  });
}

/* ---- study helpers ---------------------------------------------------- */

ews_status ews_pair_csv(const char* banks_csv_path, int lenient, char** out_csv,
                        char** out_warning) {
  return wrap([&] {
    need(banks_csv_path, "banks_csv_path");
    need(out_csv, "out_csv");
    const auto rows =
        ews::parse_banks_rows(ews::read_file(banks_csv_path), lenient != 0, nullptr);
    std::vector<ews::BankCapitalization> intervened, active;
    ews::bank_capitalizations(rows, intervened, active);
    const ews::PairResult pr = ews::pair_banks(intervened, active);
    std::string csv = "intervened_id,active_id\n";
    for (const auto& [iv, ac] : pr.pairs) csv += ews::join_csv({iv, ac}) + "\n";
    *out_csv = dup_string(csv);
    if (out_warning) {
      *out_warning = nullptr;
      if (!pr.unmatched.empty()) {
        std::string w = std::to_string(pr.unmatched.size()) +
                        " intervened bank(s) left unmatched (active pool exhausted):";
        for (const auto& id : pr.unmatched) w += " " + id;
        *out_warning = dup_string(w);
      }
    }
  });
}

ews_status ews_indicators_csv(const ews_dataset* ds, const char* from, const char* to,
                              char** out_csv) {
  return wrap([&] {
    need(ds, "ds");
    need(out_csv, "out_csv");
    if ((from == nullptr) != (to == nullptr)) {
      throw ews::Error(ews::ErrorCode::InvalidArgument, "from/to must be given together");
    }
    std::optional<ews::PeriodRange> window;
    if (from) window = ews::PeriodRange{ews::Period::parse(from), ews::Period::parse(to)};
    if (window && window->from > window->to) {
      throw ews::Error(ews::ErrorCode::InvalidArgument, "period range is reversed");
    }
    *out_csv = dup_string(ews::indicators_csv(ds->d, window));
  });
}

ews_status ews_horizon_table(const ews_dataset* ds, const char* crisis, char** out_table) {
  return wrap([&] {
    need(ds, "ds");
    need(crisis, "crisis");
    need(out_table, "out_table");
    const ews::Period c = ews::Period::parse(crisis);
    std::map<int, ews::DiscriminantModel> models;
    std::map<int, std::vector<ews::LabeledVector>> data;
    for (int h = 4; h >= 1; --h) {
      const ews::Period from = ews::Period::from_index(c.index() - 2 * h);
      const ews::PeriodRange window{from, from.next()};
      auto vectors = ews::collect_vectors(ds->d, window, std::nullopt);
      models[h] = ews::fit(vectors);
      data[h] = std::move(vectors);
    }
    *out_table = dup_string(ews::render_horizon_table(ews::horizon_study(models, data)));
  });
}

ews_status ews_report_render(const char* probe_entries_csv_path, const char* format, char** out) {
  return wrap([&] {
    need(probe_entries_csv_path, "probe_entries_csv_path");
    need(format, "format");
    need(out, "out");
    const auto entries = ews::parse_entries_csv(ews::read_file(probe_entries_csv_path));
    *out = dup_string(ews::render_report(entries, format));
  });
}

/* ---- synthetic data --------------------------------------------------- */

ews_status ews_synth_panel(uint64_t seed, long n_banks, long n_periods, const char* start,
                           const char* out_dir) {
  return wrap([&] {
    need(out_dir, "out_dir");
    if (n_banks < 1 || n_periods < 2) {
      throw ews::Error(ews::ErrorCode::InvalidConfig,
                       "need n_banks >= 1 and n_periods >= 2");
    }
    ews::PanelConfig c;
    c.seed = seed;
    c.n_banks = static_cast<std::size_t>(n_banks);
    c.n_periods = static_cast<std::size_t>(n_periods);
    if (start) c.start = ews::Period::parse(start);
    if (n_banks >= 2) {
      ews::ScriptedBank sb;
      const int breach_idx = std::min<long>(8, n_periods - 2);
      sb.breach_period = ews::Period::from_index(c.start.index() + breach_idx);
      c.scripted = sb;
    }
    ews::write_panel(c, out_dir);
  });
}

}  // extern "C"
