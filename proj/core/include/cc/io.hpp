#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cc/clustering.hpp"
#include "cc/dataset.hpp"
#include "cc/trace.hpp"

namespace cc {

// Text formats.
//
// Dataset: CSV with '.' decimals; an optional header row is detected when
// any cell of the first row is not a number.
//
// Trace:
//   #cc-trace v1 n=<n> seed=<seed> burnin=<b> thin=<t>
//   # config_hash=<16 hex digits>
//   iter=<i> k=<k> alpha=<a> labels=<l0,l1,...>
//
// Clustering file: one or more `iter=<i> k=<k> labels=<...>` lines (the
// alpha field is optional); lines starting with '#' are ignored.

inline constexpr const char* kTraceMagic = "#cc-trace";
inline constexpr int kTraceVersion = 1;

Dataset load_dataset(const std::filesystem::path& path);
Dataset read_dataset(std::istream& in);
/// Values are written with 17 significant digits so a reload is exact.
void save_dataset(const Dataset& data, const std::filesystem::path& path);
void write_dataset(const Dataset& data, std::ostream& out);

void save_trace(const ClusteringTrace& trace, const std::filesystem::path& path);
void write_trace(const ClusteringTrace& trace, std::ostream& out);
ClusteringTrace load_trace(const std::filesystem::path& path);
ClusteringTrace read_trace(std::istream& in);

std::string format_clustering_line(long iteration, const Clustering& c);
void save_clusterings(const std::vector<Clustering>& clusterings, const std::filesystem::path& path);
/// Every clustering line in a clustering or trace file, canonicalized.
std::vector<Clustering> load_clusterings(const std::filesystem::path& path);

/// Two integer label columns of a CSV file (header allowed), canonicalized.
std::pair<Clustering, Clustering> load_label_columns(const std::filesystem::path& path, int col_a,
                                                     int col_b);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace cc
