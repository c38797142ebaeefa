#pragma once

#include "alemass/cohomass.hpp"
#include "alemass/metric_field.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace alemass {

// Strict INI config layer.  Every diagnostic carries "<origin>:<line>"; a key
// the consuming scenario does not recognize is an error, not a warning.

struct IniEntry {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

struct IniSection {
  std::string name;
  int line = 0;
  std::map<std::string, IniEntry> entries;
};

struct IniFile {
  std::string origin;
  std::vector<IniSection> sections;

  const IniSection* find(const std::string& name) const;
};

IniFile parse_ini_text(const std::string& text, const std::string& origin);
IniFile parse_ini_file(const std::string& path);

enum class ScenarioKind { Mass, Hj, Capsule, Moser, Crosscheck, Penrose };

std::string kind_name(ScenarioKind kind);

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::Mass;

  // [metric]
  std::string catalog_spec;
  std::string quotient;
  DerivativeMode derivative_mode = DerivativeMode::Analytic;
  bool force_fd = false;

  // [numerics]
  int quadrature_n = 24;
  int k_min = 3;
  int k_max = 10;
  double inner_radius = 0.0;  // 0 keeps the family default
  double crosscheck_tol = 1e-2;
  double eq_tol = 1e-6;
  double closure_tol = 1e-6;
  double mass_abs_tol = 1e-9;
  double mass_rel_tol = 1e-3;

  // [hj]
  long long q = 0;
  long long p = 0;

  // [capsule]
  long long ell = 0;
  std::string group;
  std::vector<std::pair<long long, long long>> local_types;
  std::string central_weight;

  // [moser]
  std::string family;  // flat | burns | hopf | radial
  double c = 0.5;
  double amplitude = 0.5;
  double epsilon = 0.5;
  double b_radius = 0.0;  // 0 keeps the family default
  double c_radius = 0.0;  // 0 derives it from b
  int steps = 128;
  double seed_rho_min = 0.0;
  double seed_rho_max = 0.0;
  double pullback_tol = 1e-5;

  // [penrose]
  double mass = 0.0;
  bool has_mass = false;
  double scalar_integral = 0.0;
  std::vector<DivisorData> divisors;

  // [output]
  std::string output_dir;

  // Canonical key=value reserialization (sorted) used for cache keying.
  std::string canonical() const;
};

Scenario parse_scenario_text(const std::string& text, const std::string& origin);
Scenario parse_scenario_file(const std::string& path);

// A suite file lists one scenario path per line ('#' comments, blank lines
// allowed); paths are resolved against the suite file directory.
std::vector<std::string> parse_suite_file(const std::string& path);

}  // namespace alemass
