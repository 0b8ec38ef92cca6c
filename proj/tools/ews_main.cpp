// Command-line front end for the early-warning toolkit. All real work goes
// through the C API in ews/ews.h; this file only parses arguments, moves
// bytes, and keeps the exit-code contract: 0 ok, 1 validation/data error,
// 2 usage error.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ews/ews.h"

namespace {

int fail(ews_status status) {
  std::cerr << "error: " << ews_last_error() << " [" << ews_status_name(status) << "]\n";
  return 1;
}

// Same temp-file + rename discipline the library uses; no partial files.
int write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush()) {
      std::cerr << "error: cannot write " << tmp << "\n";
      return 1;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::cerr << "error: cannot move " << tmp << " to " << path << "\n";
    return 1;
  }
  return 0;
}

long count_rows(const std::string& csv) {
  long n = 0;
  for (char c : csv) n += c == '\n' ? 1 : 0;
  return n > 0 ? n - 1 : 0;  // minus the header
}

struct DatasetHandle {
  ews_dataset* ds = nullptr;
  ~DatasetHandle() { ews_dataset_free(ds); }
};

struct ModelHandle {
  ews_model* m = nullptr;
  ~ModelHandle() { ews_model_free(m); }
};

struct StringHandle {
  char* s = nullptr;
  ~StringHandle() { ews_string_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bank-distress early-warning toolkit"};
  app.require_subcommand(1);

  // fit
  std::string fit_banks, fit_macro, fit_label, fit_window, fit_out;
  bool fit_tune = false, fit_type1 = false, fit_lenient = false;
  auto* fit = app.add_subcommand("fit", "Fit the discriminant on a labeled panel");
  fit->add_option("--banks", fit_banks, "banks CSV")->required();
  fit->add_option("--macro", fit_macro, "macro CSV")->required();
  fit->add_option("--label-intervened-by", fit_label,
                  "banks intervened on or before this period are the distressed class")
      ->required();
  fit->add_option("--window", fit_window, "restrict fitting to FROM..TO");
  auto* fit_tune_flag =
      fit->add_flag("--tune-threshold", fit_tune, "replace the midpoint threshold by the "
                                                  "error-minimizing one on the training scores");
  fit->add_flag("--typeI-below-typeII", fit_type1,
                "constrain tuning so missed bankruptcies stay below false alarms")
      ->needs(fit_tune_flag);
  fit->add_flag("--lenient", fit_lenient, "skip bad CSV rows instead of failing");
  fit->add_option("--out", fit_out, "model file to write")->required();

  // score / classify
  std::string sc_model, sc_banks, sc_macro, sc_period;
  bool sc_lenient = false;
  auto* score_cmd = app.add_subcommand("score", "Score every bank at one period");
  auto* classify_cmd =
      app.add_subcommand("classify", "Score every bank at one period, with decisions");
  for (auto* cmd : {score_cmd, classify_cmd}) {
    cmd->add_option("--model", sc_model, "model file")->required();
    cmd->add_option("--banks", sc_banks, "banks CSV")->required();
    cmd->add_option("--macro", sc_macro, "macro CSV")->required();
    cmd->add_option("--period", sc_period, "period to score (YYYY-H1|YYYY-H2)")->required();
    cmd->add_flag("--lenient", sc_lenient, "skip bad CSV rows instead of failing");
  }

  // probe
  std::string pr_model, pr_banks, pr_macro, pr_from, pr_to, pr_report;
  bool pr_lenient = false;
  auto* probe_cmd = app.add_subcommand("probe", "Score every bank every half-year in a range");
  probe_cmd->add_option("--model", pr_model, "model file")->required();
  probe_cmd->add_option("--banks", pr_banks, "banks CSV")->required();
  probe_cmd->add_option("--macro", pr_macro, "macro CSV")->required();
  probe_cmd->add_option("--from", pr_from, "first period")->required();
  probe_cmd->add_option("--to", pr_to, "last period")->required();
  probe_cmd->add_option("--report", pr_report, "directory for the CSV report set");
  probe_cmd->add_flag("--lenient", pr_lenient, "skip bad CSV rows instead of failing");

  // horizon
  std::string hz_banks, hz_macro, hz_crisis, hz_out;
  bool hz_lenient = false;
  auto* horizon_cmd =
      app.add_subcommand("horizon", "Per-horizon precision table (4/3/2/1 years before a crisis)");
  horizon_cmd->add_option("--banks", hz_banks, "banks CSV")->required();
  horizon_cmd->add_option("--macro", hz_macro, "macro CSV")->required();
  horizon_cmd->add_option("--crisis", hz_crisis, "crisis period")->required();
  horizon_cmd->add_option("--out", hz_out, "table file to write")->required();
  horizon_cmd->add_flag("--lenient", hz_lenient, "skip bad CSV rows instead of failing");

  // pair
  std::string pa_banks, pa_out;
  bool pa_lenient = false;
  auto* pair_cmd =
      app.add_subcommand("pair", "Match intervened banks to active ones by capitalization");
  pair_cmd->add_option("--banks", pa_banks, "banks CSV")->required();
  pair_cmd->add_option("--out", pa_out, "pairs CSV to write")->required();
  pair_cmd->add_flag("--lenient", pa_lenient, "skip bad CSV rows instead of failing");

  // synth
  std::uint64_t sy_seed = 0;
  long sy_banks = 0, sy_periods = 0;
  std::string sy_out;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a deterministic synthetic panel");
  synth_cmd->add_option("--seed", sy_seed, "generator seed")->required();
  synth_cmd->add_option("--banks", sy_banks, "number of banks")->required();
  synth_cmd->add_option("--periods", sy_periods, "number of half-year periods")->required();
  synth_cmd->add_option("--out", sy_out, "output directory")->required();

  // report
  std::string rp_probe, rp_format;
  auto* report_cmd = app.add_subcommand("report", "Render a probe entries CSV");
  report_cmd->add_option("--probe", rp_probe, "probe entries CSV file")->required();
  report_cmd->add_option("--format", rp_format, "text or csv")
      ->required()
      ->check(CLI::IsMember({"text", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // help requested
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  if (app.got_subcommand(fit)) {
    DatasetHandle ds;
    ews_status st = ews_dataset_load(fit_banks.c_str(), fit_macro.c_str(), fit_lenient, &ds.ds);
    if (st != EWS_OK) return fail(st);
    ModelHandle model;
    long n_healthy = 0, n_distressed = 0;
    st = ews_fit(ds.ds, fit_label.c_str(), fit_window.empty() ? nullptr : fit_window.c_str(),
                 fit_tune, fit_type1, &n_healthy, &n_distressed, &model.m);
    if (st != EWS_OK) return fail(st);
    st = ews_model_save(model.m, fit_out.c_str());
    if (st != EWS_OK) return fail(st);
    double threshold = 0;
    ews_model_threshold(model.m, &threshold);
    std::fprintf(stderr, "fit: %ld healthy + %ld distressed samples, threshold %.6g, wrote %s\n",
                 n_healthy, n_distressed, threshold, fit_out.c_str());
    return 0;
  }

  if (app.got_subcommand(score_cmd) || app.got_subcommand(classify_cmd)) {
    const bool with_decision = app.got_subcommand(classify_cmd);
    ModelHandle model;
    ews_status st = ews_model_load(sc_model.c_str(), &model.m);
    if (st != EWS_OK) return fail(st);
    DatasetHandle ds;
    st = ews_dataset_load(sc_banks.c_str(), sc_macro.c_str(), sc_lenient, &ds.ds);
    if (st != EWS_OK) return fail(st);
    StringHandle csv;
    st = ews_score_period_csv(model.m, ds.ds, sc_period.c_str(), with_decision, &csv.s);
    if (st != EWS_OK) return fail(st);
    std::cout << csv.s;
    std::fprintf(stderr, "%s: %ld banks at %s\n", with_decision ? "classify" : "score",
                 count_rows(csv.s), sc_period.c_str());
    return 0;
  }

  if (app.got_subcommand(probe_cmd)) {
    ModelHandle model;
    ews_status st = ews_model_load(pr_model.c_str(), &model.m);
    if (st != EWS_OK) return fail(st);
    DatasetHandle ds;
    st = ews_dataset_load(pr_banks.c_str(), pr_macro.c_str(), pr_lenient, &ds.ds);
    if (st != EWS_OK) return fail(st);
    ews_probe_report* report = nullptr;
    st = ews_probe_run(model.m, ds.ds, pr_from.c_str(), pr_to.c_str(), &report);
    if (st != EWS_OK) return fail(st);
    long entries = 0, flagged = 0, alerts = 0, exceptions = 0;
    ews_probe_counts(report, &entries, &flagged, &alerts, &exceptions);
    if (!pr_report.empty()) {
      st = ews_probe_write_reports(report, pr_report.c_str());
      if (st != EWS_OK) {
        ews_probe_free(report);
        return fail(st);
      }
      StringHandle ind;
      st = ews_indicators_csv(ds.ds, pr_from.c_str(), pr_to.c_str(), &ind.s);
      if (st != EWS_OK) {
        ews_probe_free(report);
        return fail(st);
      }
      const std::string ind_path = (std::filesystem::path(pr_report) / "indicators.csv").string();
      if (int rc = write_atomic(ind_path, ind.s)) {
        ews_probe_free(report);
        return rc;
      }
    }
    StringHandle csv;
    st = ews_probe_entries_csv(report, &csv.s);
    ews_probe_free(report);
    if (st != EWS_OK) return fail(st);
    std::cout << csv.s;
    std::fprintf(stderr, "probe: %ld entries, %ld flagged, %ld alerts, %ld exceptions%s%s\n",
                 entries, flagged, alerts, exceptions,
                 pr_report.empty() ? "" : ", reports in ", pr_report.c_str());
    return 0;
  }

  if (app.got_subcommand(horizon_cmd)) {
    DatasetHandle ds;
    ews_status st = ews_dataset_load(hz_banks.c_str(), hz_macro.c_str(), hz_lenient, &ds.ds);
    if (st != EWS_OK) return fail(st);
    StringHandle table;
    st = ews_horizon_table(ds.ds, hz_crisis.c_str(), &table.s);
    if (st != EWS_OK) return fail(st);
    if (int rc = write_atomic(hz_out, table.s)) return rc;
    std::cout << table.s;
    std::fprintf(stderr, "horizon: precision table for crisis %s, wrote %s\n", hz_crisis.c_str(),
                 hz_out.c_str());
    return 0;
  }

  if (app.got_subcommand(pair_cmd)) {
    StringHandle csv, warning;
    ews_status st = ews_pair_csv(pa_banks.c_str(), pa_lenient, &csv.s, &warning.s);
    if (st != EWS_OK) return fail(st);
    if (int rc = write_atomic(pa_out, csv.s)) return rc;
    std::cout << csv.s;
    if (warning.s) std::fprintf(stderr, "warning: %s\n", warning.s);
    std::fprintf(stderr, "pair: %ld pairs, wrote %s\n", count_rows(csv.s), pa_out.c_str());
    return 0;
  }

  if (app.got_subcommand(synth_cmd)) {
    ews_status st = ews_synth_panel(sy_seed, sy_banks, sy_periods, nullptr, sy_out.c_str());
    if (st != EWS_OK) return fail(st);
    std::fprintf(stderr, "synth: seed %llu, %ld banks x %ld periods, wrote %s\n",
                 static_cast<unsigned long long>(sy_seed), sy_banks, sy_periods, sy_out.c_str());
    return 0;
  }

  if (app.got_subcommand(report_cmd)) {
    StringHandle rendered;
    ews_status st = ews_report_render(rp_probe.c_str(), rp_format.c_str(), &rendered.s);
    if (st != EWS_OK) return fail(st);
    std::cout << rendered.s;
    std::fprintf(stderr, "report: rendered %s as %s\n", rp_probe.c_str(), rp_format.c_str());
    return 0;
  }

  std::cerr << "error: no subcommand\n";
  return 2;
}
