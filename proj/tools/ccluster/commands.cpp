#include "ccluster/commands.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "cc/io.hpp"
#include "cc/kmeans.hpp"
#include "cc/metric.hpp"
#include "cc/parallel.hpp"
#include "cc/sampler.hpp"
#include "cc/simulate.hpp"
#include "cc/summarize.hpp"

namespace ccluster {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

fs::path with_suffix(const fs::path& path, const std::string& suffix) {
  auto stem = path;
  stem.replace_extension();
  stem += suffix;
  return stem;
}

cc::Dataset prepare_dataset(const std::string& path, const std::vector<int>& columns, std::size_t thin_rows) {
  auto data = cc::load_dataset(path);
  if (!columns.empty()) data = cc::feature_subset(data, columns);
  if (thin_rows > 1) {
    const Eigen::Index kept = (data.n() + Eigen::Index(thin_rows) - 1) / Eigen::Index(thin_rows);
    Eigen::MatrixXd rows(kept, data.d());
    for (Eigen::Index i = 0; i < kept; ++i) rows.row(i) = data.rows.row(i * Eigen::Index(thin_rows));
    data.rows = std::move(rows);
  }
  data.validate();
  return data;
}

json count_json(const std::map<int, double>& dist) {
  json out = json::object();
  for (const auto& [k, p] : dist) out[std::to_string(k)] = p;
  return out;
}

std::string count_csv(const std::map<int, double>& dist) {
  std::ostringstream os;
  os.precision(17);
  os << "k,probability\n";
  for (const auto& [k, p] : dist) os << k << ',' << p << '\n';
  return os.str();
}

}  // namespace

RunRecord run_simulate(const SimulateArgs& a) {
  require(a.sigma > 0.0, "--sigma must be positive");
  require(a.n >= 1, "--n must be at least 1");
  require(!a.means.empty(), "--means needs at least one value");
  require(!a.out.empty(), "--out is required");
  const auto sim = cc::generate_mixture_1d(a.n, a.means, a.sigma, a.seed);
  const fs::path out = a.out;
  const fs::path truth = a.truth.empty() ? with_suffix(out, ".truth.txt") : fs::path(a.truth);
  cc::save_dataset(sim.data, out);
  cc::save_clusterings({sim.truth}, truth);
  return {{a.seed}, {}, {out, truth}, out};
}

RunRecord run_sample(const SampleArgs& a) {
  require(!a.out.empty(), "--out is required");
  require(a.iters > a.burnin, "--iters must exceed --burnin");
  require(a.burnin >= 0, "--burnin must be nonnegative");
  require(a.thin >= 1, "--thin must be at least 1");
  require(a.thin_rows >= 1, "--thin-rows must be at least 1");
  require(a.chains >= 1, "--chains must be at least 1");
  require(a.alpha_prior.size() == 2, "--alpha-prior takes shape,rate");

  const auto data = prepare_dataset(a.data, a.columns, a.thin_rows);
  auto config = cc::ModelConfig::defaults_for(data);
  config.max_components = a.max_components;
  if (a.dof) config.dof = *a.dof;
  if (a.psi) config.psi = *a.psi;
  config.alpha_shape = a.alpha_prior[0];
  config.alpha_rate = a.alpha_prior[1];
  config.validate();

  const fs::path out = a.out;
  std::vector<fs::path> traces;
  std::vector<std::uint64_t> seeds;
  for (int c = 0; c < a.chains; ++c) {
    traces.push_back(a.chains == 1 ? out : with_suffix(out, ".chain" + std::to_string(c) + out.extension().string()));
    seeds.push_back(a.seed + std::uint64_t(c));
  }
  cc::parallel_for(traces.size(), cc::default_thread_count(), [&](std::size_t c) {
    cc::ChainOptions opts;
    opts.iterations = a.iters;
    opts.burn_in = a.burnin;
    opts.thinning = a.thin;
    opts.seed = seeds[c];
    opts.check_invariants = a.check;
    cc::save_trace(cc::run_chain(config, data, opts), traces[c]);
  });

  json echo;
  echo["model"] = {{"max_components", config.max_components},
                   {"dof", config.dof},
                   {"psi", config.psi},
                   {"alpha_shape", config.alpha_shape},
                   {"alpha_rate", config.alpha_rate},
                   {"mu0", std::vector<double>(config.mu0.data(), config.mu0.data() + config.mu0.size())},
                   {"scale", std::vector<double>(config.scale.data(), config.scale.data() + config.scale.size())},
                   {"describe", config.describe()}};
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config.hash()));
  echo["config_hash"] = hash;
  echo["chain"] = {{"iterations", a.iters}, {"burn_in", a.burnin}, {"thinning", a.thin}, {"seeds", seeds}};
  echo["data"] = {{"path", a.data}, {"n", data.n()}, {"d", data.d()}, {"columns", a.columns}, {"thin_rows", a.thin_rows}};
  const auto echo_path = with_suffix(out, ".config.json");
  cc::write_file_atomic(echo_path, echo.dump(2) + "\n");

  RunRecord r{seeds, {a.data}, traces, out};
  r.outputs.push_back(echo_path);
  return r;
}

RunRecord run_summarize(const SummarizeArgs& a) {
  require(!a.out.empty(), "--out is required");
  require(a.eps_grid.size() == 3, "--eps-grid takes lo,hi,step");
  require(a.growth == "nearest" || a.growth == "all", "--growth must be nearest or all");
  const auto kind = cc::parse_metric_kind(a.metric);
  const auto grid = cc::epsilon_grid(a.eps_grid[0], a.eps_grid[1], a.eps_grid[2]);
  const auto growth = a.growth == "all" ? cc::HpdGrowth::all : cc::HpdGrowth::nearest;

  const auto trace = cc::load_trace(a.trace);
  require(!trace.empty(), "trace has no entries");
  const auto clusterings = trace.clusterings();
  const auto d = cc::distance_matrix(clusterings, kind);

  // Everything below runs on the (possibly conditioned) sub-trace `pos`.
  std::vector<std::size_t> pos(trace.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = i;
  cc::ModeReport modes;
  if (a.condition_k) {
    modes = cc::conditional_central_clustering(trace, d, *a.condition_k, grid);
    pos = cc::entries_with_k(trace, *a.condition_k);
  } else {
    modes = cc::detect_modes(d, grid);
  }
  const auto sub = a.condition_k ? d.subset(pos) : d;
  auto local = [&](std::size_t full) {
    return static_cast<std::size_t>(std::lower_bound(pos.begin(), pos.end(), full) - pos.begin());
  };
  std::vector<std::size_t> local_modes;
  for (auto m : modes.mode_indices) local_modes.push_back(local(m));

  const auto hpd = cc::hpd_region(sub, local_modes, a.target, a.zeta, growth);
  const auto cred = cc::credible_region(sub, local_modes.front(), a.target, a.zeta);
  const auto median = pos[cc::median_clustering(sub)];

  auto entry_json = [&](std::size_t i) {
    return json{{"index", i}, {"iteration", trace.entries[i].iteration}, {"k", trace.entries[i].num_clusters()}};
  };

  json report;
  report["trace"] = a.trace;
  report["entries"] = trace.size();
  report["metric"] = std::string(cc::to_string(kind));
  report["target"] = a.target;
  report["zeta"] = a.zeta;
  report["growth"] = a.growth;
  report["eps_grid"] = a.eps_grid;
  report["condition_k"] = a.condition_k ? json(*a.condition_k) : json(nullptr);
  report["conditioned_entries"] = pos.size();

  report["modes"] = json::array();
  for (std::size_t m = 0; m < modes.mode_indices.size(); ++m) {
    auto e = entry_json(modes.mode_indices[m]);
    e["epsilon"] = modes.epsilons[m];
    e["neighborhood_prob"] = modes.neighborhood_probs[m];
    report["modes"].push_back(e);
  }
  report["global_mode"] = entry_json(modes.global_mode());

  std::vector<cc::Clustering> hpd_members;
  for (auto i : hpd.members) hpd_members.push_back(clusterings[pos[i]]);
  json h;
  h["centers"] = json::array();
  for (auto c : hpd.centers) h["centers"].push_back(pos[c]);
  h["radii"] = hpd.radii;
  h["radius_steps"] = hpd.radius_steps;
  h["achieved_prob"] = hpd.achieved_prob;
  h["members"] = hpd.members.size();
  h["sweeps"] = hpd.sweeps;
  h["count_distribution"] = count_json(cc::cluster_count_distribution(hpd_members));
  report["hpd"] = h;

  report["credible"] = {{"center", pos[cred.centers.front()]},
                        {"radius", cred.radii.front()},
                        {"radius_steps", cred.radius_steps.front()},
                        {"achieved_prob", cred.achieved_prob},
                        {"members", cred.members.size()}};
  report["median"] = entry_json(median);
  report["quantiles"] = json::array();
  for (double q : {0.25, 0.5, 0.75, 0.95, 1.0}) {
    auto e = entry_json(pos[cc::quantile_clustering(sub, local_modes.front(), q)]);
    e["q"] = q;
    report["quantiles"].push_back(e);
  }
  const auto counts = cc::cluster_count_distribution(trace, pos);
  report["count_distribution"] = count_json(counts);

  RunRecord rec{{}, {a.trace}, {}, a.out};
  if (!a.candidates.empty()) {
    report["candidates"] = json::array();
    const auto cands = cc::load_clusterings(a.candidates);
    for (std::size_t c = 0; c < cands.size(); ++c) {
      require(cands[c].size() == trace.meta.n_units, "candidate " + std::to_string(c) + " has " +
                                                         std::to_string(cands[c].size()) + " labels, trace has " +
                                                         std::to_string(trace.meta.n_units));
      json e{{"line", c}, {"k", cands[c].num_clusters()}};
      std::vector<double> to_centers;
      bool inside = false;
      for (std::size_t j = 0; j < hpd.centers.size(); ++j) {
        const double dist = cc::distance(cands[c], clusterings[pos[hpd.centers[j]]], kind).value;
        to_centers.push_back(dist);
        inside = inside || dist < hpd.radii[j];
      }
      e["distance_to_centers"] = to_centers;
      e["inside_hpd"] = inside;
      e["inside_credible"] =
          cc::distance(cands[c], clusterings[pos[cred.centers.front()]], kind).value < cred.radii.front();
      report["candidates"].push_back(e);
    }
    rec.inputs.push_back(a.candidates);
  }

  const fs::path out = a.out;
  const auto counts_path = with_suffix(out, ".counts.csv");
  const auto curves_path = with_suffix(out, ".curves.csv");
  const auto modes_path = with_suffix(out, ".modes.txt");

  std::ostringstream curves;
  curves.precision(17);
  curves << "epsilon";
  for (std::size_t m = 0; m < modes.mode_indices.size(); ++m) curves << ",mode_" << modes.mode_indices[m];
  curves << '\n';
  for (double eps : grid) {
    curves << eps;
    for (auto m : local_modes) {
      std::size_t c = 0;
      for (std::size_t j = 0; j < sub.size(); ++j) c += sub(m, j) < eps;
      curves << ',' << double(c) / double(sub.size());
    }
    curves << '\n';
  }

  std::string mode_lines;
  for (auto m : modes.mode_indices)
    mode_lines += cc::format_clustering_line(trace.entries[m].iteration, clusterings[m]) + '\n';

  cc::write_file_atomic(out, report.dump(2) + "\n");
  cc::write_file_atomic(counts_path, count_csv(counts));
  cc::write_file_atomic(curves_path, curves.str());
  cc::write_file_atomic(modes_path, mode_lines);
  rec.outputs = {out, counts_path, curves_path, modes_path};
  return rec;
}

RunRecord run_metric(const MetricArgs& a) {
  cc::Clustering ca, cb;
  RunRecord rec;
  if (!a.csv.empty()) {
    require(a.files.empty(), "give either two clustering files or --csv, not both");
    require(a.csv_columns.size() == 2, "--columns takes two column indices");
    std::tie(ca, cb) = cc::load_label_columns(a.csv, a.csv_columns[0], a.csv_columns[1]);
    rec.inputs = {a.csv};
  } else {
    require(a.files.size() == 2, "metric needs two clustering files (or --csv)");
    const auto fa = cc::load_clusterings(a.files[0]);
    const auto fb = cc::load_clusterings(a.files[1]);
    require(a.line_a < fa.size(), "--line-a out of range for " + a.files[0]);
    require(a.line_b < fb.size(), "--line-b out of range for " + a.files[1]);
    ca = fa[a.line_a];
    cb = fb[a.line_b];
    rec.inputs = {a.files[0], a.files[1]};
  }
  require(ca.size() == cb.size(), "clusterings have " + std::to_string(ca.size()) + " and " +
                                      std::to_string(cb.size()) + " units");
  const bool both = a.exact == a.approx;
  const cc::ContingencyTable table(ca, cb);

  json r{{"n", table.total()}, {"k_a", ca.num_clusters()}, {"k_b", cb.num_clusters()}};
  std::optional<double> exact, approx;
  if (both || a.exact) {
    const auto e = cc::exact_distance(table);
    exact = e.value;
    r["exact"] = {{"value", e.value}, {"agreement", e.agreement}};
  }
  if (both || a.approx) {
    const auto e = cc::approx_distance(table);
    approx = e.value;
    r["approx"] = {{"value", e.value}, {"agreement", e.agreement},
                   {"directed", {e.directed->first, e.directed->second}}};
  }
  if (exact && approx) {
    if (*approx > *exact) throw std::logic_error("approximate distance exceeds exact distance");
    r["approx_le_exact"] = true;
  }
  std::cout << r.dump() << '\n';

  if (!a.table.empty()) {
    cc::write_file_atomic(a.table, table.to_csv());
    rec.outputs.push_back(a.table);
  }
  if (!a.out.empty()) {
    cc::write_file_atomic(a.out, r.dump(2) + "\n");
    rec.outputs.push_back(a.out);
  }
  if (!rec.outputs.empty()) rec.primary = rec.outputs.back();
  return rec;
}

RunRecord run_kmeans(const KMeansArgs& a) {
  require(!a.out.empty(), "--out is required");
  require(a.init == "uniform" || a.init == "plusplus", "--init must be uniform or plusplus");
  const auto data = prepare_dataset(a.data, a.columns, 1);
  cc::KMeansOptions opts;
  opts.max_iters = a.max_iters;
  opts.n_starts = a.starts;
  opts.init = a.init == "plusplus" ? cc::KMeansInit::plus_plus : cc::KMeansInit::uniform_rows;
  const auto r = cc::kmeans(data, a.k, a.seed, opts);
  cc::save_clusterings({r.clustering}, a.out);
  std::cout << json{{"k", r.clustering.num_clusters()},
                    {"objective", r.objective},
                    {"iterations", r.iterations},
                    {"converged", r.converged}}
                   .dump()
            << '\n';
  return {{a.seed}, {a.data}, {a.out}, a.out};
}

}  // namespace ccluster
