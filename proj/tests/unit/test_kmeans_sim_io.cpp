#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cc/diagnostics.hpp"
#include "cc/errors.hpp"
#include "cc/io.hpp"
#include "cc/kmeans.hpp"
#include "cc/metric.hpp"
#include "cc/simulate.hpp"
#include "support/generators.hpp"

namespace fs = std::filesystem;

namespace {

cc::Dataset dataset_from(std::vector<std::vector<double>> rows) {
  cc::Dataset d;
  d.rows.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) d.rows(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  return d;
}

double wcss(const cc::Dataset& data, const cc::Clustering& c) {
  const int k = c.num_clusters();
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, data.d());
  std::vector<double> counts(static_cast<std::size_t>(k), 0.0);
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    sums.row(c[std::size_t(i)]) += data.rows.row(i);
    counts[std::size_t(c[std::size_t(i)])] += 1.0;
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const int l = c[std::size_t(i)];
    total += (data.rows.row(i) - sums.row(l) / counts[std::size_t(l)]).squaredNorm();
  }
  return total;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("cc_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p);
  out << s;
}

}  // namespace

TEST(KMeans, SingleCluster) {
  const auto sim = cc::generate_mixture_1d(50, std::vector<double>{0.0, 3.0}, 1.0, 1);
  const auto r = cc::kmeans(sim.data, 1, 7);
  EXPECT_EQ(r.clustering.num_clusters(), 1);
  EXPECT_NEAR(r.objective, wcss(sim.data, r.clustering), 1e-9);
  EXPECT_NEAR(r.centers(0, 0), sim.data.rows.col(0).mean(), 1e-12);
}

TEST(KMeans, OneClusterPerPoint) {
  const auto data = dataset_from({{0.0}, {1.0}, {2.5}, {7.0}, {-3.0}});
  const auto r = cc::kmeans(data, 5, 3);
  EXPECT_EQ(r.clustering.num_clusters(), 5);
  EXPECT_EQ(r.objective, 0.0);
}

TEST(KMeans, ObjectiveNonIncreasingAndMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sim = cc::generate_mixture_1d(300, std::vector<double>{-2.0, 0.0, 2.0, 4.0}, 1.0, seed);
    for (auto init : {cc::KMeansInit::uniform_rows, cc::KMeansInit::plus_plus}) {
      const auto r = cc::kmeans(sim.data, 4, seed + 100, {100, 1, init});
      for (std::size_t s = 1; s < r.objective_history.size(); ++s)
        EXPECT_LE(r.objective_history[s], r.objective_history[s - 1] + 1e-9);
      EXPECT_NEAR(r.objective, wcss(sim.data, r.clustering), 1e-8 * (1 + r.objective));
    }
  }
}

TEST(KMeans, MoreStartsNeverWorse) {
  const auto sim = cc::generate_mixture_1d(400, std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0}, 0.4, 5);
  const auto one = cc::kmeans(sim.data, 5, 9, {100, 1});
  const auto ten = cc::kmeans(sim.data, 5, 9, {100, 10});
  EXPECT_LE(ten.objective, one.objective + 1e-9);
}

TEST(KMeans, RecoversWellSeparatedTruth) {
  const auto sim = cc::generate_mixture_1d(500, std::vector<double>{0.0, 2.0, 4.0, 6.0, 8.0}, 1e-6, 11);
  const auto r = cc::kmeans(sim.data, 5, 4, {100, 10});
  EXPECT_EQ(cc::exact_distance(r.clustering, sim.truth).value, 0.0);
  EXPECT_EQ(r.clustering, sim.truth);
}

TEST(KMeans, Deterministic) {
  const auto sim = cc::generate_mixture_1d(200, std::vector<double>{0.0, 5.0}, 1.0, 2);
  EXPECT_EQ(cc::kmeans(sim.data, 3, 42).clustering, cc::kmeans(sim.data, 3, 42).clustering);
}

TEST(KMeans, RejectsBadArguments) {
  const auto data = dataset_from({{0.0}, {1.0}});
  EXPECT_THROW(cc::kmeans(data, 3, 1), std::invalid_argument);
  EXPECT_THROW(cc::kmeans(data, 0, 1), std::invalid_argument);
  EXPECT_THROW(cc::kmeans(data, 1, 1, {0, 1}), std::invalid_argument);
}

TEST(Simulate, ComponentFrequenciesAndMoments) {
  const std::vector<double> means{0.0, 2.0, 4.0, 6.0, 8.0};
  const std::size_t n = 20000;
  const auto sim = cc::generate_mixture_1d(n, means, 1.0, 123);
  ASSERT_EQ(sim.data.n(), Eigen::Index(n));
  ASSERT_EQ(sim.component.size(), n);
  std::vector<double> count(means.size(), 0.0), sum(means.size(), 0.0), sq(means.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = std::size_t(sim.component[i]);
    const double x = sim.data.rows(Eigen::Index(i), 0);
    count[c] += 1;
    sum[c] += x;
    sq[c] += (x - means[c]) * (x - means[c]);
  }
  const double p = 1.0 / double(means.size());
  const double se = std::sqrt(double(n) * p * (1 - p));
  for (std::size_t c = 0; c < means.size(); ++c) {
    EXPECT_NEAR(count[c], double(n) * p, 3 * se);
    EXPECT_NEAR(sum[c] / count[c], means[c], 3.0 / std::sqrt(count[c]));
    EXPECT_NEAR(sq[c] / count[c], 1.0, 4.0 * std::sqrt(2.0 / count[c]));
  }
  // truth is the canonical form of the component indices
  EXPECT_EQ(sim.truth, cc::canonicalize(sim.component));
}

TEST(Simulate, SeedDeterminesOutput) {
  const std::vector<double> means{0.0, 1.0};
  const auto a = cc::generate_mixture_1d(100, means, 1.0, 5), b = cc::generate_mixture_1d(100, means, 1.0, 5);
  EXPECT_EQ(a.data.rows, b.data.rows);
  EXPECT_NE(a.data.rows, cc::generate_mixture_1d(100, means, 1.0, 6).data.rows);
}

TEST(Simulate, RejectsBadArguments) {
  const std::vector<double> means{0.0};
  EXPECT_THROW(cc::generate_mixture_1d(10, means, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(cc::generate_mixture_1d(10, means, -1.0, 1), std::invalid_argument);
  EXPECT_THROW(cc::generate_mixture_1d(10, std::vector<double>{}, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(cc::generate_mixture_1d(0, means, 1.0, 1), std::invalid_argument);
}

TEST(Dataset, ValidateAndSubset) {
  auto data = dataset_from({{1, 2, 3}, {4, 5, 6}});
  EXPECT_NO_THROW(data.validate());
  const std::vector<int> cols{2, 0};
  const auto sub = cc::feature_subset(data, cols);
  EXPECT_EQ(sub.d(), 2);
  EXPECT_EQ(sub.rows(1, 0), 6.0);
  EXPECT_EQ(sub.rows(1, 1), 4.0);
  const std::vector<int> bad{3};
  EXPECT_THROW(cc::feature_subset(data, bad), std::invalid_argument);
  data.rows(0, 0) = std::nan("");
  EXPECT_THROW(data.validate(), std::invalid_argument);
}

TEST(Dataset, MomentsMatchDirectFormulas) {
  const auto data = dataset_from({{1, 2}, {3, 1}, {5, 7}});
  const auto mu = cc::column_means(data);
  EXPECT_DOUBLE_EQ(mu(0), 3.0);
  EXPECT_DOUBLE_EQ(mu(1), 10.0 / 3.0);
  const auto cov = cc::covariance(data);
  EXPECT_DOUBLE_EQ(cov(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(cov(0, 1), (-2 * (2 - 10.0 / 3) + 0 + 2 * (7 - 10.0 / 3)) / 2.0);
  EXPECT_EQ(cc::covariance(dataset_from({{1, 2}})), Eigen::MatrixXd::Zero(2, 2));
}

TEST(Io, DatasetRoundTripIsExact) {
  TempDir dir;
  const auto sim = cc::generate_mixture_1d(100, std::vector<double>{0.0, 1.0 / 3.0}, 0.1, 9);
  const auto path = dir / "data.csv";
  cc::save_dataset(sim.data, path);
  EXPECT_EQ(cc::load_dataset(path).rows, sim.data.rows);
}

TEST(Io, HeaderDetection) {
  std::ostringstream with_header, without;
  with_header << "a,b,c,d\n";
  for (int i = 0; i < 100; ++i) {
    const std::string row = std::to_string(i) + ",1.5,-2e-3," + std::to_string(i * 2) + "\n";
    with_header << row;
    without << row;
  }
  std::istringstream in1(with_header.str()), in2(without.str());
  const auto a = cc::read_dataset(in1), b = cc::read_dataset(in2);
  EXPECT_EQ(a.n(), 100);
  EXPECT_EQ(a.d(), 4);
  EXPECT_EQ(a.column_names, (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_EQ(b.n(), 100);
  EXPECT_TRUE(b.column_names.empty());
  EXPECT_EQ(a.rows, b.rows);
}

TEST(Io, ParseErrorCitesLine) {
  std::string text = "x,y\n";
  for (int i = 0; i < 5; ++i) text += "1,2\n";
  text += "1,oops\n";  // line 7
  std::istringstream in(text);
  try {
    cc::read_dataset(in);
    FAIL() << "expected ParseError";
  } catch (const cc::ParseError& e) {
    EXPECT_EQ(e.line(), 7u);
    EXPECT_NE(std::string(e.what()).find("line 7"), std::string::npos);
  }
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(cc::read_dataset(ragged), cc::ParseError);
}

TEST(Io, TraceRoundTrip) {
  TempDir dir;
  cc::ClusteringTrace t;
  t.meta = {4, 99, 0x0123456789abcdefULL, 10, 2};
  t.entries.push_back({12, cc::Clustering({0, 0, 1, 1}), 0.75});
  t.entries.push_back({14, cc::Clustering({0, 1, 2, 0}), 1.0 / 3.0});
  const auto path = dir / "trace.txt";
  cc::save_trace(t, path);
  EXPECT_EQ(cc::load_trace(path), t);
  EXPECT_EQ(cc::load_clusterings(path), t.clusterings());
}

TEST(Io, TraceVersionMismatch) {
  std::istringstream in("#cc-trace v2 n=2 seed=1 burnin=0 thin=1\niter=1 k=1 alpha=1 labels=0,0\n");
  try {
    cc::read_trace(in);
    FAIL() << "expected ParseError";
  } catch (const cc::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("v2"), std::string::npos) << e.what();
  }
  std::istringstream bad_k("#cc-trace v1 n=2 seed=1 burnin=0 thin=1\niter=1 k=3 alpha=1 labels=0,1\n");
  EXPECT_THROW(cc::read_trace(bad_k), cc::ParseError);
  std::istringstream wrong_n("#cc-trace v1 n=3 seed=1 burnin=0 thin=1\niter=1 k=2 alpha=1 labels=0,1\n");
  EXPECT_THROW(cc::read_trace(wrong_n), cc::ParseError);
}

TEST(Io, ClusteringFileAndLabelColumns) {
  TempDir dir;
  const std::vector<cc::Clustering> cs{cc::Clustering({0, 1, 1}), cc::Clustering({0, 0, 0})};
  const auto path = dir / "c.txt";
  cc::save_clusterings(cs, path);
  EXPECT_EQ(cc::load_clusterings(path), cs);
  EXPECT_EQ(cc::format_clustering_line(3, cs[0]), "iter=3 k=2 labels=0,1,1");

  const auto csv = dir / "labels.csv";
  write_text(csv, "id,a,b\n1,5,2\n2,5,2\n3,7,9\n4,8,9\n");
  const auto [a, b] = cc::load_label_columns(csv, 1, 2);
  EXPECT_EQ(a, cc::Clustering({0, 0, 1, 2}));
  EXPECT_EQ(b, cc::Clustering({0, 0, 1, 1}));
  EXPECT_THROW(cc::load_label_columns(csv, 1, 5), cc::ParseError);
}

TEST(Io, AtomicWriteReplacesContent) {
  TempDir dir;
  const auto path = dir / "out.json";
  cc::write_file_atomic(path, "first");
  cc::write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(s, "second");
  EXPECT_THROW(cc::load_dataset(dir / "missing.csv"), std::runtime_error);
}

TEST(Diagnostics, AutocorrelationOfAr1) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> eps(0.0, 1.0);
  std::vector<double> x(50000);
  double v = 0.0;
  const double phi = 0.6;
  for (auto& xi : x) xi = v = phi * v + eps(rng);
  const auto rho = cc::autocorrelation(x, 3);
  EXPECT_EQ(rho[0], 1.0);
  EXPECT_NEAR(rho[1], phi, 0.02);
  EXPECT_NEAR(rho[2], phi * phi, 0.02);
  const auto s = cc::summarize_scalar_trace(x);
  // ESS of an AR(1) series: n (1 - phi) / (1 + phi)
  EXPECT_NEAR(s.ess / (50000 * (1 - phi) / (1 + phi)), 1.0, 0.15);
  EXPECT_NEAR(s.lag1, phi, 0.02);
}

TEST(Diagnostics, ConstantAndShortSeries) {
  const std::vector<double> c(10, 2.0);
  const auto s = cc::summarize_scalar_trace(c);
  EXPECT_EQ(s.mean, 2.0);
  EXPECT_EQ(s.variance, 0.0);
  EXPECT_EQ(s.ess, 10.0);
  EXPECT_THROW(cc::summarize_scalar_trace(std::vector<double>{}), std::invalid_argument);

  cc::ClusteringTrace t;
  t.entries.push_back({1, cc::Clustering({0, 1}), 0.5});
  t.entries.push_back({2, cc::Clustering({0, 0}), 1.5});
  EXPECT_EQ(cc::cluster_count_series(t), (std::vector<double>{2, 1}));
  EXPECT_EQ(cc::alpha_series(t), (std::vector<double>{0.5, 1.5}));
}
