#include "alemass/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace alemass {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail_at(const std::string& origin, int line, const std::string& what) {
  std::ostringstream msg;
  msg << origin << ":" << line << ": " << what;
  throw std::invalid_argument(msg.str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Typed access that marks entries as consumed.
class SectionReader {
 public:
  SectionReader(const IniFile& file, const IniSection* section)
      : file_(file), section_(section) {}

  bool present() const { return section_ != nullptr; }

  const IniEntry* find(const std::string& key) const {
    if (!section_) return nullptr;
    auto it = section_->entries.find(key);
    if (it == section_->entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    const IniEntry* e = find(key);
    return e ? e->value : fallback;
  }

  std::string require_string(const std::string& key) const {
    const IniEntry* e = find(key);
    if (!e) {
      fail_at(file_.origin, section_ ? section_->line : 0,
              "missing required key '" + key + "' in [" + (section_ ? section_->name : "?") + "]");
    }
    return e->value;
  }

  double get_double(const std::string& key, double fallback) const {
    const IniEntry* e = find(key);
    if (!e) return fallback;
    return parse_double(*e, key);
  }

  double require_double(const std::string& key) const {
    return parse_double(require_entry(key), key);
  }

  long long get_int(const std::string& key, long long fallback) const {
    const IniEntry* e = find(key);
    if (!e) return fallback;
    return parse_int(*e, key);
  }

  long long require_int(const std::string& key) const {
    return parse_int(require_entry(key), key);
  }

  const IniSection* raw() const { return section_; }

 private:
  const IniEntry& require_entry(const std::string& key) const {
    const IniEntry* e = find(key);
    if (!e) {
      fail_at(file_.origin, section_ ? section_->line : 0,
              "missing required key '" + key + "' in [" + (section_ ? section_->name : "?") + "]");
    }
    return *e;
  }

  double parse_double(const IniEntry& e, const std::string& key) const {
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0') {
      fail_at(file_.origin, e.line, "key '" + key + "' expects a number, got '" + e.value + "'");
    }
    return v;
  }

  long long parse_int(const IniEntry& e, const std::string& key) const {
    char* end = nullptr;
    const long long v = std::strtoll(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0') {
      fail_at(file_.origin, e.line, "key '" + key + "' expects an integer, got '" + e.value + "'");
    }
    return v;
  }

  const IniFile& file_;
  const IniSection* section_;
};

void check_all_used(const IniFile& file) {
  for (const IniSection& section : file.sections) {
    for (const auto& [key, entry] : section.entries) {
      if (!entry.used) {
        fail_at(file.origin, entry.line,
                "unknown key '" + key + "' in [" + section.name + "] for this scenario kind");
      }
    }
  }
}

std::vector<std::pair<long long, long long>> parse_pair_list(const IniFile& file,
                                                             const IniEntry& entry,
                                                             const std::string& key) {
  std::vector<std::pair<long long, long long>> out;
  std::stringstream ss(entry.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      fail_at(file.origin, entry.line, "key '" + key + "' expects q:p pairs, got '" + item + "'");
    }
    char* end = nullptr;
    const long long q = std::strtoll(item.substr(0, colon).c_str(), &end, 10);
    char* end2 = nullptr;
    const std::string ptext = item.substr(colon + 1);
    const long long p = std::strtoll(ptext.c_str(), &end2, 10);
    if (*end != '\0' || *end2 != '\0') {
      fail_at(file.origin, entry.line, "key '" + key + "' expects q:p pairs, got '" + item + "'");
    }
    out.emplace_back(q, p);
  }
  if (out.empty()) fail_at(file.origin, entry.line, "key '" + key + "' lists no pairs");
  return out;
}

std::vector<DivisorData> parse_divisors(const IniFile& file, const IniEntry& entry) {
  std::vector<DivisorData> out;
  std::stringstream ss(entry.value);
  std::string item;
  int index = 0;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      fail_at(file.origin, entry.line,
              "key 'divisors' expects multiplicity:volume entries, got '" + item + "'");
    }
    char* end = nullptr;
    const long long n = std::strtoll(item.substr(0, colon).c_str(), &end, 10);
    char* end2 = nullptr;
    const std::string vtext = item.substr(colon + 1);
    const double vol = std::strtod(vtext.c_str(), &end2);
    if (*end != '\0' || end2 == vtext.c_str() || *end2 != '\0' || n < 1) {
      fail_at(file.origin, entry.line,
              "key 'divisors' expects multiplicity:volume entries, got '" + item + "'");
    }
    ++index;
    out.push_back(DivisorData{"D" + std::to_string(index), static_cast<int>(n), vol});
  }
  if (out.empty()) fail_at(file.origin, entry.line, "key 'divisors' lists no entries");
  return out;
}

}  // namespace

const IniSection* IniFile::find(const std::string& name) const {
  for (const IniSection& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

IniFile parse_ini_text(const std::string& text, const std::string& origin) {
  IniFile file;
  file.origin = origin;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  IniSection* current = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) fail_at(origin, line, "malformed section header");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) fail_at(origin, line, "empty section name");
      if (file.find(name)) fail_at(origin, line, "duplicate section [" + name + "]");
      file.sections.push_back(IniSection{name, line, {}});
      current = &file.sections.back();
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      fail_at(origin, line, "expected 'key = value' or a section header, got '" + s + "'");
    }
    if (!current) fail_at(origin, line, "key before any section header");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail_at(origin, line, "empty key");
    if (current->entries.count(key)) {
      fail_at(origin, line, "duplicate key '" + key + "' in [" + current->name + "]");
    }
    current->entries[key] = IniEntry{value, line, false};
  }
  return file;
}

IniFile parse_ini_file(const std::string& path) {
  return parse_ini_text(read_file(path), path);
}

std::string kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Mass: return "mass";
    case ScenarioKind::Hj: return "hj";
    case ScenarioKind::Capsule: return "capsule";
    case ScenarioKind::Moser: return "moser";
    case ScenarioKind::Crosscheck: return "crosscheck";
    case ScenarioKind::Penrose: return "penrose";
  }
  return "?";
}

namespace {

ScenarioKind parse_kind(const IniFile& file, const IniEntry& entry) {
  const std::string& v = entry.value;
  if (v == "mass") return ScenarioKind::Mass;
  if (v == "hj") return ScenarioKind::Hj;
  if (v == "capsule") return ScenarioKind::Capsule;
  if (v == "moser") return ScenarioKind::Moser;
  if (v == "crosscheck") return ScenarioKind::Crosscheck;
  if (v == "penrose") return ScenarioKind::Penrose;
  fail_at(file.origin, entry.line,
          "unknown kind '" + v + "' (expected mass|hj|capsule|moser|crosscheck|penrose)");
}

void read_numerics(const IniFile& file, Scenario& sc) {
  SectionReader numerics(file, file.find("numerics"));
  if (!numerics.present()) return;
  sc.quadrature_n = static_cast<int>(numerics.get_int("quadrature_n", sc.quadrature_n));
  sc.k_min = static_cast<int>(numerics.get_int("k_min", sc.k_min));
  sc.k_max = static_cast<int>(numerics.get_int("k_max", sc.k_max));
  sc.inner_radius = numerics.get_double("inner_radius", sc.inner_radius);
  sc.crosscheck_tol = numerics.get_double("crosscheck_tol", sc.crosscheck_tol);
  sc.eq_tol = numerics.get_double("eq_tol", sc.eq_tol);
  sc.closure_tol = numerics.get_double("closure_tol", sc.closure_tol);
  sc.mass_abs_tol = numerics.get_double("mass_abs_tol", sc.mass_abs_tol);
  sc.mass_rel_tol = numerics.get_double("mass_rel_tol", sc.mass_rel_tol);
  if (sc.quadrature_n < 4) {
    fail_at(file.origin, numerics.raw()->line, "quadrature_n must be >= 4");
  }
  if (sc.k_min < 0 || sc.k_max <= sc.k_min) {
    fail_at(file.origin, numerics.raw()->line, "need 0 <= k_min < k_max");
  }
}

void read_metric(const IniFile& file, Scenario& sc, bool required) {
  SectionReader metric(file, file.find("metric"));
  if (!metric.present()) {
    if (required) fail_at(file.origin, 0, "missing required section [metric]");
    return;
  }
  sc.catalog_spec = required ? metric.require_string("catalog")
                             : metric.get_string("catalog", "");
  sc.quotient = metric.get_string("quotient", "");
  const std::string mode = metric.get_string("derivative_mode", "analytic");
  if (mode == "analytic") {
    sc.force_fd = false;
  } else if (mode == "fd") {
    sc.force_fd = true;
    sc.derivative_mode = DerivativeMode::CentralDifference;
  } else {
    fail_at(file.origin, metric.raw()->line,
            "derivative_mode must be 'analytic' or 'fd', got '" + mode + "'");
  }
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
  const IniFile file = parse_ini_text(text, origin);
  Scenario sc;

  SectionReader head(file, file.find("scenario"));
  if (!head.present()) fail_at(origin, 0, "missing required section [scenario]");
  sc.name = head.require_string("name");
  if (sc.name.empty()) fail_at(origin, head.raw()->line, "scenario name is empty");
  for (char ch : sc.name) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') {
      fail_at(origin, head.raw()->line,
              "scenario name must be [A-Za-z0-9_-], got '" + sc.name + "'");
    }
  }
  const IniEntry* kind_entry = head.find("kind");
  if (!kind_entry) fail_at(origin, head.raw()->line, "missing required key 'kind'");
  sc.kind = parse_kind(file, *kind_entry);

  SectionReader output(file, file.find("output"));
  if (output.present()) sc.output_dir = output.get_string("dir", "");

  switch (sc.kind) {
    case ScenarioKind::Mass:
    case ScenarioKind::Crosscheck: {
      read_metric(file, sc, true);
      read_numerics(file, sc);
      break;
    }
    case ScenarioKind::Hj: {
      SectionReader hj(file, file.find("hj"));
      if (!hj.present()) fail_at(origin, 0, "missing required section [hj]");
      sc.q = hj.require_int("q");
      sc.p = hj.require_int("p");
      break;
    }
    case ScenarioKind::Capsule: {
      SectionReader capsule(file, file.find("capsule"));
      if (!capsule.present()) fail_at(origin, 0, "missing required section [capsule]");
      sc.ell = capsule.require_int("ell");
      sc.group = capsule.require_string("group");
      const IniEntry* local = capsule.find("local");
      if (!local) fail_at(origin, capsule.raw()->line, "missing required key 'local'");
      sc.local_types = parse_pair_list(file, *local, "local");
      sc.central_weight = capsule.get_string("central_weight", "");
      break;
    }
    case ScenarioKind::Moser: {
      SectionReader moser(file, file.find("moser"));
      if (!moser.present()) fail_at(origin, 0, "missing required section [moser]");
      sc.family = moser.require_string("family");
      if (sc.family != "flat" && sc.family != "burns" && sc.family != "hopf" &&
          sc.family != "radial") {
        fail_at(origin, moser.raw()->line,
                "family must be flat|burns|hopf|radial, got '" + sc.family + "'");
      }
      sc.c = moser.get_double("c", sc.c);
      sc.amplitude = moser.get_double("amplitude", sc.amplitude);
      sc.epsilon = moser.get_double("epsilon", sc.epsilon);
      sc.b_radius = moser.get_double("b_radius", sc.b_radius);
      sc.c_radius = moser.get_double("c_radius", sc.c_radius);
      sc.steps = static_cast<int>(moser.get_int("steps", sc.steps));
      sc.seed_rho_min = moser.get_double("seed_rho_min", sc.seed_rho_min);
      sc.seed_rho_max = moser.get_double("seed_rho_max", sc.seed_rho_max);
      sc.pullback_tol = moser.get_double("pullback_tol", sc.pullback_tol);
      read_numerics(file, sc);
      if (sc.steps < 1) fail_at(origin, moser.raw()->line, "steps must be >= 1");
      break;
    }
    case ScenarioKind::Penrose: {
      SectionReader penrose(file, file.find("penrose"));
      if (!penrose.present()) fail_at(origin, 0, "missing required section [penrose]");
      const IniEntry* mass_entry = penrose.find("mass");
      if (mass_entry) {
        sc.has_mass = true;
        sc.mass = penrose.get_double("mass", 0.0);
      }
      sc.scalar_integral = penrose.get_double("scalar_integral", 0.0);
      const IniEntry* divisors = penrose.find("divisors");
      if (!divisors) fail_at(origin, penrose.raw()->line, "missing required key 'divisors'");
      sc.divisors = parse_divisors(file, *divisors);
      read_numerics(file, sc);
      break;
    }
  }

  check_all_used(file);
  return sc;
}

Scenario parse_scenario_file(const std::string& path) {
  return parse_scenario_text(read_file(path), path);
}

namespace {

void put(std::ostringstream& out, const std::string& key, const std::string& value) {
  out << key << "=" << value << "\n";
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string Scenario::canonical() const {
  std::ostringstream out;
  put(out, "kind", kind_name(kind));
  put(out, "name", name);
  switch (kind) {
    case ScenarioKind::Mass:
    case ScenarioKind::Crosscheck:
      put(out, "metric.catalog", catalog_spec);
      put(out, "metric.quotient", quotient);
      put(out, "metric.force_fd", force_fd ? "1" : "0");
      put(out, "numerics.quadrature_n", std::to_string(quadrature_n));
      put(out, "numerics.k_min", std::to_string(k_min));
      put(out, "numerics.k_max", std::to_string(k_max));
      put(out, "numerics.inner_radius", num(inner_radius));
      put(out, "numerics.crosscheck_tol", num(crosscheck_tol));
      put(out, "numerics.mass_abs_tol", num(mass_abs_tol));
      put(out, "numerics.mass_rel_tol", num(mass_rel_tol));
      break;
    case ScenarioKind::Hj:
      put(out, "hj.q", std::to_string(q));
      put(out, "hj.p", std::to_string(p));
      break;
    case ScenarioKind::Capsule: {
      put(out, "capsule.ell", std::to_string(ell));
      put(out, "capsule.group", group);
      std::ostringstream locals;
      for (std::size_t i = 0; i < local_types.size(); ++i) {
        if (i) locals << ",";
        locals << local_types[i].first << ":" << local_types[i].second;
      }
      put(out, "capsule.local", locals.str());
      put(out, "capsule.central_weight", central_weight);
      break;
    }
    case ScenarioKind::Moser:
      put(out, "moser.family", family);
      put(out, "moser.c", num(c));
      put(out, "moser.amplitude", num(amplitude));
      put(out, "moser.epsilon", num(epsilon));
      put(out, "moser.b_radius", num(b_radius));
      put(out, "moser.c_radius", num(c_radius));
      put(out, "moser.steps", std::to_string(steps));
      put(out, "moser.seed_rho_min", num(seed_rho_min));
      put(out, "moser.seed_rho_max", num(seed_rho_max));
      put(out, "moser.pullback_tol", num(pullback_tol));
      put(out, "numerics.closure_tol", num(closure_tol));
      break;
    case ScenarioKind::Penrose: {
      put(out, "penrose.has_mass", has_mass ? "1" : "0");
      put(out, "penrose.mass", num(mass));
      put(out, "penrose.scalar_integral", num(scalar_integral));
      std::ostringstream divs;
      for (std::size_t i = 0; i < divisors.size(); ++i) {
        if (i) divs << ",";
        divs << divisors[i].multiplicity << ":" << num(divisors[i].volume);
      }
      put(out, "penrose.divisors", divs.str());
      put(out, "numerics.eq_tol", num(eq_tol));
      break;
    }
  }
  return out.str();
}

std::vector<std::string> parse_suite_file(const std::string& path) {
  const std::string text = read_file(path);
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    std::filesystem::path p(s);
    out.push_back(p.is_absolute() ? p.string() : (base / p).string());
  }
  if (out.empty()) throw std::invalid_argument(path + ": suite lists no scenarios");
  return out;
}

}  // namespace alemass
