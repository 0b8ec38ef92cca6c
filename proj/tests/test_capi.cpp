// Exercises the shared-library surface the way an external consumer would:
// only ews/ews.h, opaque handles, status codes, and malloc'd strings.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "ews/ews.h"

namespace {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name) : path(name) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string operator/(const std::string& leaf) const { return (path / leaf).string(); }
};

struct OwnedString {
  char* value = nullptr;
  ~OwnedString() { ews_string_free(value); }
  std::string str() const { return value ? value : ""; }
};

long count_lines(const std::string& text) {
  long n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("C API round trip: synth panel, fit, probe, reports") {
  TempDir tmp("capi_tmp");
  REQUIRE(ews_synth_panel(5, 10, 10, nullptr, tmp.path.string().c_str()) == EWS_OK);
  REQUIRE(std::filesystem::exists(tmp / "banks.csv"));
  REQUIRE(std::filesystem::exists(tmp / "macro.csv"));

  ews_dataset* ds = nullptr;
  REQUIRE(ews_dataset_load((tmp / "banks.csv").c_str(), (tmp / "macro.csv").c_str(), 0, &ds) ==
          EWS_OK);
  long bank_rows = 0, macro_rows = 0, exclusions = -1, diagnostics = -1;
  REQUIRE(ews_dataset_counts(ds, &bank_rows, &macro_rows, &exclusions, &diagnostics) == EWS_OK);
  CHECK(bank_rows == 100);
  CHECK(macro_rows == 11);  // warm-up period plus ten panel periods
  CHECK(exclusions == 0);
  CHECK(diagnostics == 0);

  long n_healthy = 0, n_distressed = 0;
  ews_model* model = nullptr;
  REQUIRE(ews_fit(ds, "2000-H2", nullptr, 0, 0, &n_healthy, &n_distressed, &model) == EWS_OK);
  CHECK(n_healthy == 90);
  CHECK(n_distressed == 10);

  SUBCASE("model files round trip") {
    REQUIRE(ews_model_save(model, (tmp / "model.txt").c_str()) == EWS_OK);
    ews_model* loaded = nullptr;
    REQUIRE(ews_model_load((tmp / "model.txt").c_str(), &loaded) == EWS_OK);
    double w1[10], w2[10], t1 = 0, t2 = 0;
    REQUIRE(ews_model_weights(model, w1) == EWS_OK);
    REQUIRE(ews_model_weights(loaded, w2) == EWS_OK);
    for (int i = 0; i < 10; ++i) CHECK(w1[i] == w2[i]);
    REQUIRE(ews_model_threshold(model, &t1) == EWS_OK);
    REQUIRE(ews_model_threshold(loaded, &t2) == EWS_OK);
    CHECK(t1 == t2);
    ews_model_free(loaded);
  }

  SUBCASE("scoring one period") {
    OwnedString csv;
    REQUIRE(ews_score_period_csv(model, ds, "1998-H1", 0, &csv.value) == EWS_OK);
    CHECK(csv.str().rfind("bank_id,period,score\n", 0) == 0);
    CHECK(count_lines(csv.str()) == 11);
    OwnedString with_decision;
    REQUIRE(ews_score_period_csv(model, ds, "1998-H1", 1, &with_decision.value) == EWS_OK);
    CHECK(with_decision.str().rfind("bank_id,period,score,decision\n", 0) == 0);
    CHECK(with_decision.str().find("Distressed") != std::string::npos);
  }

  SUBCASE("probe counts, CSVs, and report files") {
    ews_probe_report* probe = nullptr;
    REQUIRE(ews_probe_run(model, ds, "1996-H1", "2000-H2", &probe) == EWS_OK);
    long entries = 0, flagged = 0, alerts = 0, exceptions = -1;
    REQUIRE(ews_probe_counts(probe, &entries, &flagged, &alerts, &exceptions) == EWS_OK);
    CHECK(entries == 100);
    CHECK(flagged >= 1);
    CHECK(alerts >= 1);
    CHECK(exceptions == 0);

    OwnedString entries_csv, alerts_csv, yearly_csv;
    REQUIRE(ews_probe_entries_csv(probe, &entries_csv.value) == EWS_OK);
    CHECK(entries_csv.str().rfind("bank_id,period,score,flagged,distance\n", 0) == 0);
    CHECK(count_lines(entries_csv.str()) == 101);
    REQUIRE(ews_probe_alerts_csv(probe, &alerts_csv.value) == EWS_OK);
    CHECK(alerts_csv.str().rfind("bank_id,first_flag_period,intervention_period,lead_periods\n",
                                 0) == 0);
    REQUIRE(ews_probe_yearly_csv(probe, &yearly_csv.value) == EWS_OK);
    CHECK(yearly_csv.str().rfind("year,banks,median,mean,stdev,flagged\n", 0) == 0);

    const std::string report_dir = tmp / "report";
    REQUIRE(ews_probe_write_reports(probe, report_dir.c_str()) == EWS_OK);
    CHECK(slurp(report_dir + "/entries.csv") == entries_csv.str());
    CHECK(std::filesystem::exists(report_dir + "/alerts.csv"));
    CHECK(std::filesystem::exists(report_dir + "/yearly.csv"));
    CHECK(std::filesystem::exists(report_dir + "/exceptions.csv"));

    SUBCASE("report rendering from the entries file") {
      OwnedString text;
      REQUIRE(ews_report_render((report_dir + "/entries.csv").c_str(), "text", &text.value) ==
              EWS_OK);
      CHECK(text.str().find("entries,") != std::string::npos);
      OwnedString csv_again;
      REQUIRE(ews_report_render((report_dir + "/entries.csv").c_str(), "csv", &csv_again.value) ==
              EWS_OK);
      CHECK(csv_again.str() == entries_csv.str());
      char* out = nullptr;
      CHECK(ews_report_render((report_dir + "/entries.csv").c_str(), "html", &out) ==
            EWS_ERR_INVALID_ARGUMENT);
    }
    ews_probe_free(probe);
  }

  SUBCASE("completeness filter keeps the full panel") {
    OwnedString csv;
    REQUIRE(ews_dataset_filter_complete(ds, "1996-H1..2000-H2", 0, &csv.value) == EWS_OK);
    CHECK(csv.str().rfind("bank_id,kept,reason\n", 0) == 0);
    CHECK(count_lines(csv.str()) == 11);
    CHECK(csv.str().find("false") == std::string::npos);
  }

  SUBCASE("indicator dump") {
    OwnedString csv;
    REQUIRE(ews_indicators_csv(ds, nullptr, nullptr, &csv.value) == EWS_OK);
    CHECK(csv.str().rfind("bank_id,period,f1,f2,f3,f4,f5,m1,m2,m3,m4,m5\n", 0) == 0);
    CHECK(count_lines(csv.str()) == 101);
    OwnedString windowed;
    REQUIRE(ews_indicators_csv(ds, "1996-H1", "1996-H2", &windowed.value) == EWS_OK);
    CHECK(count_lines(windowed.str()) == 21);
    char* out = nullptr;
    CHECK(ews_indicators_csv(ds, "1996-H1", nullptr, &out) == EWS_ERR_INVALID_ARGUMENT);
  }

  SUBCASE("pairing straight from the banks file") {
    OwnedString csv;
    OwnedString warning;
    REQUIRE(ews_pair_csv((tmp / "banks.csv").c_str(), 0, &csv.value, &warning.value) == EWS_OK);
    CHECK(csv.str().rfind("intervened_id,active_id\n", 0) == 0);
    CHECK(count_lines(csv.str()) == 2);  // header + the one intervened bank
    CHECK(csv.str().find("CAPITAL,") != std::string::npos);
    CHECK(warning.value == nullptr);  // plenty of active banks left
  }

  SUBCASE("horizon table renders all four horizons") {
    OwnedString table;
    REQUIRE(ews_horizon_table(ds, "2000-H1", &table.value) == EWS_OK);
    CHECK(table.str().find("4 years before c.") != std::string::npos);
    CHECK(table.str().find("1 year before c.") != std::string::npos);
    CHECK(table.str().find("Accuracy") != std::string::npos);
  }

  ews_model_free(model);
  ews_dataset_free(ds);
}

TEST_CASE("C API scoring matches the published example") {
  ews_model* m = nullptr;
  const std::string fixture = std::string(EWS_FIXTURE_DIR) + "/paper_weights.txt";
  REQUIRE(ews_model_load(fixture.c_str(), &m) == EWS_OK);

  double threshold = 0;
  REQUIRE(ews_model_threshold(m, &threshold) == EWS_OK);
  CHECK(threshold == -190.395);

  double ones[10] = {1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  double s = 0;
  REQUIRE(ews_score_vector(m, ones, &s) == EWS_OK);
  CHECK(s == doctest::Approx(-2.93));

  int distressed = -1;
  REQUIRE(ews_classify_vector(m, ones, &distressed) == EWS_OK);
  CHECK(distressed == 1);  // -2.93 sits above the -190.395 cut

  // push the score deep below the threshold through the inflow ratio
  double calm[10] = {1, 1, 1, 1, 400, 1, 1, 1, 1, 1};
  REQUIRE(ews_classify_vector(m, calm, &distressed) == EWS_OK);
  CHECK(distressed == 0);

  ews_model_free(m);
}

TEST_CASE("C API error discipline") {
  CHECK(std::strcmp(ews_status_name(EWS_OK), "OK") == 0);
  CHECK(std::strcmp(ews_status_name(EWS_ERR_SINGULAR_SCATTER), "SingularScatter") == 0);

  ews_dataset* ds = nullptr;
  CHECK(ews_dataset_load("no_such_banks.csv", "no_such_macro.csv", 0, &ds) ==
        EWS_ERR_FILE_NOT_FOUND);
  CHECK(ds == nullptr);
  CHECK(std::strlen(ews_last_error()) > 0);

  CHECK(ews_dataset_load(nullptr, "x.csv", 0, &ds) == EWS_ERR_INVALID_ARGUMENT);
  ews_model* m = nullptr;
  CHECK(ews_model_load(nullptr, &m) == EWS_ERR_INVALID_ARGUMENT);
  CHECK(ews_model_load("no_such_model.txt", &m) == EWS_ERR_FILE_NOT_FOUND);
  double s = 0;
  CHECK(ews_score_vector(nullptr, &s, &s) == EWS_ERR_INVALID_ARGUMENT);

  TempDir tmp("capi_err_tmp");
  CHECK(ews_synth_panel(1, 0, 5, nullptr, tmp.path.string().c_str()) == EWS_ERR_INVALID_CONFIG);
  CHECK(ews_synth_panel(1, 3, 5, "totally-not-a-period", tmp.path.string().c_str()) ==
        EWS_ERR_INVALID_ARGUMENT);
}
