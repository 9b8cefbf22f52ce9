#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccluster/manifest.hpp"

namespace ccluster {

struct SimulateArgs {
  std::size_t n = 5000;
  std::vector<double> means{1, 2, 3, 4, 5};
  double sigma = 0.25;
  std::uint64_t seed = 1;
  std::string out;
  std::string truth;
};

struct SampleArgs {
  std::string data;
  std::vector<int> columns;
  std::size_t thin_rows = 1;
  int max_components = 30;
  std::optional<double> dof;
  std::optional<double> psi;
  long iters = 6000;
  long burnin = 1000;
  long thin = 5;
  std::uint64_t seed = 1;
  std::vector<double> alpha_prior{0.1, 0.1};
  int chains = 1;
  bool check = false;
  std::string out;
};

struct SummarizeArgs {
  std::string trace;
  double target = 0.95;
  double zeta = 1e-3;
  std::string metric = "approx";
  std::optional<int> condition_k;
  std::vector<double> eps_grid{0.01, 0.99, 0.01};
  std::string growth = "nearest";
  std::string candidates;
  std::string out;
};

struct MetricArgs {
  std::vector<std::string> files;
  std::size_t line_a = 0;
  std::size_t line_b = 0;
  std::string csv;
  std::vector<int> csv_columns;
  bool exact = false;
  bool approx = false;
  std::string table;
  std::string out;
};

struct KMeansArgs {
  std::string data;
  std::vector<int> columns;
  int k = 5;
  std::uint64_t seed = 1;
  int max_iters = 100;
  int starts = 1;
  std::string init = "uniform";
  std::string out;
};

RunRecord run_simulate(const SimulateArgs& a);
RunRecord run_sample(const SampleArgs& a);
RunRecord run_summarize(const SummarizeArgs& a);
RunRecord run_metric(const MetricArgs& a);
RunRecord run_kmeans(const KMeansArgs& a);

}  // namespace ccluster
