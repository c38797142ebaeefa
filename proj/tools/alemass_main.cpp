#include "alemass/catalog.hpp"
#include "alemass/hj.hpp"
#include "alemass/intersection.hpp"
#include "alemass/orbifold.hpp"
#include "alemass/report.hpp"
#include "alemass/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 all checks pass, 1 numeric failure or failed verdict,
// 2 usage or configuration error.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void print_bundle(const alemass::ReportBundle& bundle, const std::vector<std::string>& files) {
  for (const alemass::Verdict& v : bundle.verdicts) {
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", v.check.c_str(), v.detail.c_str());
  }
  std::printf("scenario %s [%s]: %s (%s, %.3fs, %zu files)\n", bundle.scenario_name.c_str(),
              bundle.kind.c_str(), bundle.all_pass() ? "ALL-PASS" : "HAS-FAILURES",
              bundle.cache_hit ? "cached" : "computed", bundle.wall_seconds, files.size());
}

int run_one(const std::string& path, const std::string& out_override, bool no_cache) {
  alemass::Scenario sc;
  try {
    sc = alemass::parse_scenario_file(path);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  }
  std::string out_dir = !out_override.empty() ? out_override
                        : !sc.output_dir.empty() ? sc.output_dir
                                                 : std::string("reports");
  try {
    const alemass::ReportBundle bundle =
        no_cache ? alemass::compute_scenario(sc) : alemass::run_scenario(sc);
    const std::vector<std::string> files = alemass::emit_report(bundle, out_dir);
    print_bundle(bundle, files);
    return bundle.all_pass() ? kExitPass : kExitFail;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alemass: flux-integral and exact-topology toolkit for ALE/AE ends"};
  app.require_subcommand(1);

  std::string scenario_path, suite_path, out_dir;
  bool no_cache = false;
  long long hj_q = 0, hj_p = 0;
  long long capsule_ell = 0;
  std::string capsule_kind, capsule_local, capsule_weight;

  CLI::App* run = app.add_subcommand("run", "run one scenario config and emit its report");
  run->add_option("scenario", scenario_path, "scenario .cfg file")->required();
  run->add_option("--out", out_dir, "output directory (overrides [output] dir)");
  run->add_flag("--no-cache", no_cache, "recompute even on a cache hit");

  CLI::App* suite = app.add_subcommand("suite", "run every scenario listed in a suite file");
  suite->add_option("suite", suite_path, "suite file, one scenario path per line")->required();
  suite->add_option("--out", out_dir, "output directory for all reports");
  suite->add_flag("--no-cache", no_cache, "recompute even on cache hits");

  CLI::App* hj = app.add_subcommand("hj", "resolve q/p into its Hirzebruch-Jung chain");
  hj->add_option("q", hj_q, "cyclic order q >= 2")->required();
  hj->add_option("p", hj_p, "weight p, 0 < p < q, coprime to q")->required();

  CLI::App* capsule = app.add_subcommand("capsule", "build and validate a plumbing capsule");
  capsule->add_option("--ell", capsule_ell, "number of chain attachments")->required();
  capsule->add_option("--kind", capsule_kind,
                      "group: trivial|cyclic:n|dihedral:n|tetrahedral|octahedral|icosahedral")
      ->required();
  capsule->add_option("--local", capsule_local, "comma-separated q:p local types")->required();
  capsule->add_option("--central-weight", capsule_weight, "display weight for the hub");

  CLI::App* catalog = app.add_subcommand("catalog", "list the metric catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (run->parsed()) return run_one(scenario_path, out_dir, no_cache);

  if (suite->parsed()) {
    std::vector<std::string> paths;
    try {
      paths = alemass::parse_suite_file(suite_path);
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "config error: %s\n", e.what());
      return kExitUsage;
    }
    int worst = kExitPass;
    for (const std::string& path : paths) {
      std::printf("== %s\n", path.c_str());
      worst = std::max(worst, run_one(path, out_dir, no_cache));
    }
    std::printf("suite: %zu scenarios, %s\n", paths.size(),
                worst == kExitPass ? "ALL-PASS" : "HAS-FAILURES");
    return worst;
  }

  if (hj->parsed()) {
    try {
      const alemass::HJString chain = alemass::hj_resolve(hj_q, hj_p);
      const alemass::Signature sig = alemass::signature(alemass::hj_plumbing_form(chain.chain));
      std::printf("%lld/%lld = [", hj_q, hj_p);
      for (std::size_t i = 0; i < chain.chain.size(); ++i) {
        std::printf("%s%lld", i ? "," : "", chain.chain[i]);
      }
      std::printf("]\nlength %zu, det %s, signature (%d,%d,%d)\n", chain.chain.size(),
                  sig.determinant.str().c_str(), sig.positive, sig.negative, sig.zero);
      const long long dual = alemass::mod_inverse(hj_p, hj_q);
      std::printf("dual weight p' = %lld (chain reverses)\n", dual);
      return kExitPass;
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return kExitUsage;
    }
  }

  if (capsule->parsed()) {
    try {
      const auto type = alemass::OrbifoldGroupType::parse(capsule_kind);
      std::vector<std::pair<long long, long long>> locals;
      std::stringstream ss(capsule_local);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("local types are q:p pairs");
        locals.emplace_back(std::stoll(item.substr(0, colon)), std::stoll(item.substr(colon + 1)));
      }
      const alemass::CapsuleModel model =
          alemass::build_capsule(capsule_ell, type, locals, capsule_weight);
      std::printf("capsule over %s: ell=%lld, degree=%lld, %zu vertices, %zu edges\n",
                  type.name().c_str(), model.ell, model.degree(), model.vertex_labels.size(),
                  model.edges.size());
      for (std::size_t i = 0; i < model.chains.size(); ++i) {
        std::printf("  chain %zu: %lld/%lld -> [", i + 1, model.chains[i].q, model.chains[i].p);
        for (std::size_t j = 0; j < model.chains[i].chain.size(); ++j) {
          std::printf("%s%lld", j ? "," : "", model.chains[i].chain[j]);
        }
        std::printf("]\n");
      }
      return kExitPass;
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return kExitUsage;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return kExitFail;
    }
  }

  if (catalog->parsed()) {
    for (const alemass::CatalogEntryDoc& doc : alemass::catalog_documentation()) {
      std::printf("%-28s %s\n", doc.pattern.c_str(), doc.summary.c_str());
    }
    return kExitPass;
  }

  return kExitUsage;
}
