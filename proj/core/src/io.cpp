#include "cc/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cc/errors.hpp"

namespace cc {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && p == end;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_labels(const Clustering& c) {
  std::string s;
  s.reserve(c.size() * 3);
  for (std::size_t u = 0; u < c.size(); ++u) {
    if (u) s += ',';
    s += std::to_string(c[u]);
  }
  return s;
}

/// key=value fields of a space-separated line.
std::vector<std::pair<std::string, std::string>> fields(std::string_view line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) out.emplace_back(tok, "");
    else out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return out;
}

Clustering parse_labels(const std::string& text, std::size_t line) {
  std::vector<int> raw;
  for (const auto& cell : split(text, ',')) {
    int v = 0;
    if (!parse_int(cell, v)) throw ParseError("bad label '" + cell + "'", line);
    raw.push_back(v);
  }
  if (raw.empty()) throw ParseError("empty label list", line);
  return canonicalize(raw);
}

struct ClusteringLine {
  long iteration = 0;
  int k = 0;
  bool has_alpha = false;
  double alpha = 0.0;
  Clustering clustering;
};

ClusteringLine parse_clustering_line(std::string_view line, std::size_t lineno) {
  ClusteringLine out;
  bool have_iter = false, have_k = false, have_labels = false;
  for (const auto& [key, value] : fields(line)) {
    if (key == "iter") {
      if (!parse_int(value, out.iteration)) throw ParseError("bad iter '" + value + "'", lineno);
      have_iter = true;
    } else if (key == "k") {
      if (!parse_int(value, out.k)) throw ParseError("bad k '" + value + "'", lineno);
      have_k = true;
    } else if (key == "alpha") {
      if (!parse_double(value, out.alpha)) throw ParseError("bad alpha '" + value + "'", lineno);
      out.has_alpha = true;
    } else if (key == "labels") {
      out.clustering = parse_labels(value, lineno);
      have_labels = true;
    } else {
      throw ParseError("unknown field '" + key + "'", lineno);
    }
  }
  if (!have_iter || !have_k || !have_labels)
    throw ParseError("clustering line needs iter=, k= and labels=", lineno);
  if (out.k != out.clustering.num_clusters())
    throw ParseError("k=" + std::to_string(out.k) + " but labels have " +
                         std::to_string(out.clustering.num_clusters()) + " clusters",
                     lineno);
  return out;
}

}  // namespace

Dataset read_dataset(std::istream& in) {
  Dataset data;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split(line, ',');
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (!parse_double(cells[c], row[c])) numeric = false;
    if (rows.empty() && data.column_names.empty() && !numeric) {
      data.column_names = cells;
      width = cells.size();
      continue;
    }
    if (!numeric) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        double v;
        if (!parse_double(cells[c], v))
          throw ParseError("non-numeric value '" + cells[c] + "' in column " + std::to_string(c + 1), lineno);
      }
    }
    if (width == 0) width = row.size();
    if (row.size() != width)
      throw ParseError("expected " + std::to_string(width) + " columns, found " + std::to_string(row.size()),
                       lineno);
    for (double v : row)
      if (!std::isfinite(v)) throw ParseError("non-finite value", lineno);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows", 0);
  data.rows.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      data.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return data;
}

Dataset load_dataset(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_dataset(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

void write_dataset(const Dataset& data, std::ostream& out) {
  if (!data.column_names.empty()) {
    for (std::size_t j = 0; j < data.column_names.size(); ++j)
      out << (j ? "," : "") << data.column_names[j];
    out << '\n';
  }
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < data.d(); ++j) out << (j ? "," : "") << format_double(data.rows(i, j));
    out << '\n';
  }
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) {
  std::ostringstream os;
  write_dataset(data, os);
  write_file_atomic(path, os.str());
}

void write_trace(const ClusteringTrace& trace, std::ostream& out) {
  const auto& m = trace.meta;
  out << kTraceMagic << " v" << kTraceVersion << " n=" << m.n_units << " seed=" << m.seed
      << " burnin=" << m.burn_in << " thin=" << m.thinning << '\n';
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(m.config_hash));
  out << "# config_hash=" << hash << '\n';
  for (const auto& e : trace.entries) {
    out << "iter=" << e.iteration << " k=" << e.num_clusters() << " alpha=" << format_double(e.alpha)
        << " labels=" << join_labels(e.clustering) << '\n';
  }
}

void save_trace(const ClusteringTrace& trace, const std::filesystem::path& path) {
  std::ostringstream os;
  write_trace(trace, os);
  write_file_atomic(path, os.str());
}

ClusteringTrace read_trace(std::istream& in) {
  ClusteringTrace trace;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty trace file", 0);
  ++lineno;
  {
    const auto f = fields(line);
    if (f.empty() || f[0].first != kTraceMagic) throw ParseError("missing #cc-trace header", lineno);
    if (f.size() < 2 || f[1].first != "v" + std::to_string(kTraceVersion))
      throw ParseError("unsupported trace version '" + (f.size() > 1 ? f[1].first : std::string()) +
                           "', expected v" + std::to_string(kTraceVersion),
                       lineno);
    for (std::size_t i = 2; i < f.size(); ++i) {
      const auto& [key, value] = f[i];
      bool ok = true;
      if (key == "n") ok = parse_int(value, trace.meta.n_units);
      else if (key == "seed") ok = parse_int(value, trace.meta.seed);
      else if (key == "burnin") ok = parse_int(value, trace.meta.burn_in);
      else if (key == "thin") ok = parse_int(value, trace.meta.thinning);
      else ok = false;
      if (!ok) throw ParseError("bad header field '" + key + "=" + value + "'", lineno);
    }
  }
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto f = fields(std::string_view(t).substr(1));
      if (!f.empty() && f[0].first == "config_hash") {
        if (std::from_chars(f[0].second.data(), f[0].second.data() + f[0].second.size(),
                            trace.meta.config_hash, 16)
                .ec != std::errc{})
          throw ParseError("bad config_hash", lineno);
      }
      continue;
    }
    auto parsed = parse_clustering_line(t, lineno);
    if (!parsed.has_alpha) throw ParseError("trace entry without alpha", lineno);
    if (trace.meta.n_units && parsed.clustering.size() != trace.meta.n_units)
      throw ParseError("entry has " + std::to_string(parsed.clustering.size()) + " labels, header says n=" +
                           std::to_string(trace.meta.n_units),
                       lineno);
    if (!trace.entries.empty() && parsed.iteration <= trace.entries.back().iteration)
      throw ParseError("iterations must increase", lineno);
    trace.entries.push_back({parsed.iteration, std::move(parsed.clustering), parsed.alpha});
  }
  return trace;
}

ClusteringTrace load_trace(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return read_trace(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

std::vector<Clustering> ClusteringTrace::clusterings() const {
  std::vector<Clustering> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.clustering);
  return out;
}

std::string format_clustering_line(long iteration, const Clustering& c) {
  return "iter=" + std::to_string(iteration) + " k=" + std::to_string(c.num_clusters()) +
         " labels=" + join_labels(c);
}

void save_clusterings(const std::vector<Clustering>& clusterings, const std::filesystem::path& path) {
  std::string out;
  for (std::size_t i = 0; i < clusterings.size(); ++i)
    out += format_clustering_line(static_cast<long>(i), clusterings[i]) + '\n';
  write_file_atomic(path, out);
}

std::vector<Clustering> load_clusterings(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<Clustering> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    try {
      out.push_back(parse_clustering_line(t, lineno).clustering);
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what(), e.line());
    }
  }
  if (out.empty()) throw ParseError(path.string() + ": no clustering lines", 0);
  return out;
}

std::pair<Clustering, Clustering> load_label_columns(const std::filesystem::path& path, int col_a,
                                                     int col_b) {
  auto in = open_in(path);
  std::vector<std::string> a, b;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    const auto need = static_cast<std::size_t>(std::max(col_a, col_b));
    if (col_a < 0 || col_b < 0 || cells.size() <= need)
      throw ParseError(path.string() + ": label column out of range", lineno);
    long va = 0, vb = 0;
    const bool numeric = parse_int(cells[col_a], va) && parse_int(cells[col_b], vb);
    if (first && !numeric) {
      first = false;
      continue;
    }
    first = false;
    a.push_back(cells[static_cast<std::size_t>(col_a)]);
    b.push_back(cells[static_cast<std::size_t>(col_b)]);
  }
  if (a.empty()) throw ParseError(path.string() + ": no label rows", 0);
  return {canonicalize(a), canonicalize(b)};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cc
