// ccluster: simulate -> sample -> summarize, plus metric / kmeans comparisons.
// Every run that writes files leaves <primary output>.manifest.json behind;
// `ccluster replay` reruns one.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cc/errors.hpp"
#include "ccluster/commands.hpp"
#include "ccluster/manifest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void print_error(const std::string& subcommand, const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", message}, {"kind", kind}, {"subcommand", subcommand}}.dump() << std::endl;
}

json flags_of(const CLI::App* sub) {
  json flags = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_name();
    name.erase(0, name.find_first_not_of('-'));
    flags[name] = opt->results();
  }
  return flags;
}

int run_cli(const std::vector<std::string>& args, bool allow_replay);

int replay(const fs::path& manifest_path, bool verify) {
  const auto manifest = ccluster::read_manifest(manifest_path);
  const auto args = manifest["argv"].get<std::vector<std::string>>();
  const auto old_cwd = fs::current_path();
  if (manifest.contains("cwd")) fs::current_path(manifest["cwd"].get<std::string>());
  const int rc = run_cli(args, false);
  int mismatches = 0;
  if (rc == 0 && verify) {
    for (const auto& out : manifest["outputs"]) {
      const auto path = out["path"].get<std::string>();
      const auto want = out["fnv1a64"].get<std::string>();
      const auto got = fs::exists(path) ? ccluster::file_digest(path) : std::string("missing");
      const bool same = got == want;
      mismatches += !same;
      std::cout << json{{"path", path}, {"expected", want}, {"actual", got}, {"identical", same}}.dump() << '\n';
    }
  }
  fs::current_path(old_cwd);
  if (rc != 0) return rc;
  if (mismatches) {
    print_error("replay", "mismatch", std::to_string(mismatches) + " output(s) differ from the manifest");
    return 3;
  }
  return 0;
}

int run_cli(const std::vector<std::string>& args, bool allow_replay) {
  CLI::App app{"Posterior clustering with a Dirichlet-process Normal-Wishart mixture"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CC_VERSION);

  ccluster::SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Draw a 1-D equal-weight normal mixture with truth labels");
  c_sim->add_option("--n", sim.n, "Number of rows")->capture_default_str();
  c_sim->add_option("--means", sim.means, "Component means")->delimiter(',')->capture_default_str();
  c_sim->add_option("--sigma", sim.sigma, "Common standard deviation (> 0)")->capture_default_str();
  c_sim->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  c_sim->add_option("--out", sim.out, "Output CSV")->required();
  c_sim->add_option("--truth", sim.truth, "Truth clustering file (default <out stem>.truth.txt)");

  ccluster::SampleArgs smp;
  auto* c_smp = app.add_subcommand("sample", "Run the Gibbs sampler and write a clustering trace");
  c_smp->add_option("--data", smp.data, "Input CSV")->required()->check(CLI::ExistingFile);
  c_smp->add_option("--columns", smp.columns, "Use only these 0-based columns")->delimiter(',');
  c_smp->add_option("--thin-rows", smp.thin_rows, "Keep every t-th row")->capture_default_str();
  c_smp->add_option("--max-components", smp.max_components, "Mixture slots M")->capture_default_str();
  c_smp->add_option("--dof", smp.dof, "Wishart degrees of freedom (default max(4, d))");
  c_smp->add_option("--psi", smp.psi, "Mean-precision scaling (default 1)");
  c_smp->add_option("--iters", smp.iters, "Total iterations")->capture_default_str();
  c_smp->add_option("--burnin", smp.burnin, "Burn-in iterations")->capture_default_str();
  c_smp->add_option("--thin", smp.thin, "Keep every t-th post burn-in iteration")->capture_default_str();
  c_smp->add_option("--seed", smp.seed, "RNG seed; chain c uses seed + c")->capture_default_str();
  c_smp->add_option("--alpha-prior", smp.alpha_prior, "Gamma prior shape,rate for alpha")
      ->delimiter(',')
      ->expected(2)
      ->capture_default_str();
  c_smp->add_option("--chains", smp.chains, "Independent chains, run in parallel")->capture_default_str();
  c_smp->add_flag("--check-invariants", smp.check, "Verify sampler state at every kept iteration");
  c_smp->add_option("--out", smp.out, "Trace file (chains > 1 add .chain<c> before the extension)")->required();

  ccluster::SummarizeArgs sum;
  auto* c_sum = app.add_subcommand("summarize", "Modes, credible and HPD regions of a trace");
  c_sum->add_option("--trace", sum.trace, "Trace file")->required()->check(CLI::ExistingFile);
  c_sum->add_option("--target", sum.target, "Region probability")->capture_default_str();
  c_sum->add_option("--zeta", sum.zeta, "Radius step")->capture_default_str();
  c_sum->add_option("--metric", sum.metric, "exact or approx")->capture_default_str();
  c_sum->add_option("--condition-k", sum.condition_k, "Restrict to entries with this many clusters");
  c_sum->add_option("--eps-grid", sum.eps_grid, "Neighborhood radii lo,hi,step")
      ->delimiter(',')
      ->expected(3)
      ->capture_default_str();
  c_sum->add_option("--growth", sum.growth, "HPD growth rule: nearest or all")->capture_default_str();
  c_sum->add_option("--candidates", sum.candidates, "Clustering file to test against the regions")
      ->check(CLI::ExistingFile);
  c_sum->add_option("--out", sum.out, "JSON report; CSV and mode files use the same stem")->required();

  ccluster::MetricArgs met;
  auto* c_met = app.add_subcommand("metric", "Distance between two clusterings");
  c_met->add_option("files", met.files, "Two clustering files")->expected(0, 2);
  c_met->add_option("--line-a", met.line_a, "Clustering line of the first file")->capture_default_str();
  c_met->add_option("--line-b", met.line_b, "Clustering line of the second file")->capture_default_str();
  c_met->add_option("--csv", met.csv, "CSV holding two label columns")->check(CLI::ExistingFile);
  c_met->add_option("--columns", met.csv_columns, "The two label columns of --csv")->delimiter(',');
  c_met->add_flag("--exact", met.exact, "Exact distance only");
  c_met->add_flag("--approx", met.approx, "Approximate distance only");
  c_met->add_option("--table", met.table, "Write the contingency table as CSV");
  c_met->add_option("--out", met.out, "Also write the JSON result here");

  ccluster::KMeansArgs km;
  auto* c_km = app.add_subcommand("kmeans", "Lloyd K-means baseline");
  c_km->add_option("--data", km.data, "Input CSV")->required()->check(CLI::ExistingFile);
  c_km->add_option("--columns", km.columns, "Use only these 0-based columns")->delimiter(',');
  c_km->add_option("--k", km.k, "Number of clusters")->capture_default_str();
  c_km->add_option("--seed", km.seed, "RNG seed")->capture_default_str();
  c_km->add_option("--max-iters", km.max_iters, "Lloyd iteration cap")->capture_default_str();
  c_km->add_option("--starts", km.starts, "Independent starts; best objective wins")->capture_default_str();
  c_km->add_option("--init", km.init, "uniform or plusplus")->capture_default_str();
  c_km->add_option("--out", km.out, "Clustering file")->required();

  std::string manifest_in;
  bool verify = false;
  CLI::App* c_rep = nullptr;
  if (allow_replay) {
    c_rep = app.add_subcommand("replay", "Rerun the command recorded in a manifest");
    c_rep->add_option("manifest", manifest_in, "Manifest file")->required()->check(CLI::ExistingFile);
    c_rep->add_flag("--verify", verify, "Compare the new outputs with the recorded digests");
  }

  std::string name = "ccluster";
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (!app.get_subcommands().empty()) name = app.get_subcommands().front()->get_name();
    print_error(name, "usage", e.what());
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  name = sub->get_name();
  try {
    if (sub == c_rep) return replay(manifest_in, verify);
    const auto start = std::chrono::steady_clock::now();
    ccluster::RunRecord rec;
    if (sub == c_sim) rec = ccluster::run_simulate(sim);
    else if (sub == c_smp) rec = ccluster::run_sample(smp);
    else if (sub == c_sum) rec = ccluster::run_summarize(sum);
    else if (sub == c_met) rec = ccluster::run_metric(met);
    else rec = ccluster::run_kmeans(km);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!rec.primary.empty())
      ccluster::write_manifest(ccluster::build_manifest(name, args, flags_of(sub), rec, secs),
                               ccluster::manifest_path_for(rec.primary));
    return 0;
  } catch (const cc::ParseError& e) {
    print_error(name, "parse", e.what());
  } catch (const cc::NumericError& e) {
    print_error(name, "numeric", e.what());
  } catch (const std::invalid_argument& e) {
    print_error(name, "invalid_argument", e.what());
  } catch (const std::exception& e) {
    print_error(name, "runtime", e.what());
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, true);
}
