#pragma once

#include "alemass/scenario.hpp"

#include <string>
#include <vector>

namespace alemass {

inline constexpr const char* kVersion = "0.1.0";

struct ReportRecord {
  std::string key;
  double value = 0.0;
};

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Verdict {
  std::string check;
  bool pass = false;
  std::string detail;
};

// Everything a scenario produces.  wall_seconds is bookkeeping only: it is
// stored in the bundle JSON but never participates in cache keys, CSV bytes,
// or SVG bytes, so reruns stay byte-identical on those outputs.
struct ReportBundle {
  std::string scenario_name;
  std::string kind;
  std::string version;
  std::string cache_key;
  bool cache_hit = false;
  double wall_seconds = 0.0;
  std::vector<ReportRecord> records;
  std::vector<ReportTable> tables;
  std::vector<Verdict> verdicts;

  bool all_pass() const;
};

// Runs the scenario, consulting the content cache first (key = SHA-256 of the
// canonical scenario text plus the library version).  Set ALEMASS_CACHE_DIR
// to relocate or isolate the cache.
ReportBundle run_scenario(const Scenario& scenario);

// Always computes; no cache interaction.
ReportBundle compute_scenario(const Scenario& scenario);

// Writes <name>_records.csv, one CSV per table, <name>_verdicts.txt, one SVG
// per plottable table, and <name>_bundle.json into dir.  Every file is
// written to a temp path and renamed, so a failure never leaves partials.
std::vector<std::string> emit_report(const ReportBundle& bundle, const std::string& dir);

std::string sha256_hex(const std::string& data);
std::string cache_directory();
std::string format_number(double value);  // %.12g, canonical for CSV cells
std::string csv_escape(const std::string& field);

std::string bundle_to_json(const ReportBundle& bundle);
ReportBundle bundle_from_json(const std::string& text);

}  // namespace alemass
