#include "ccluster/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "cc/io.hpp"

namespace ccluster {

namespace fs = std::filesystem;

std::string file_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for hashing");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    h ^= static_cast<unsigned char>(*it);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

fs::path manifest_path_for(const fs::path& primary) {
  auto p = primary;
  p += ".manifest.json";
  return p;
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

nlohmann::json build_manifest(const std::string& subcommand, const std::vector<std::string>& args,
                              const nlohmann::json& flags, const RunRecord& record, double wall_seconds) {
  nlohmann::json m;
  m["tool"] = "ccluster";
  m["version"] = CC_VERSION;
  m["subcommand"] = subcommand;
  m["argv"] = args;
  m["flags"] = flags;
  m["seeds"] = record.seeds;
  m["cwd"] = fs::current_path().string();
  m["inputs"] = nlohmann::json::array();
  for (const auto& p : record.inputs) m["inputs"].push_back(p.string());
  m["outputs"] = nlohmann::json::array();
  for (const auto& p : record.outputs) m["outputs"].push_back({{"path", p.string()}, {"fnv1a64", file_digest(p)}});
  m["finished_at"] = utc_now();
  m["wall_clock_seconds"] = wall_seconds;
  return m;
}

void write_manifest(const nlohmann::json& manifest, const fs::path& path) {
  cc::write_file_atomic(path, manifest.dump(2) + "\n");
}

nlohmann::json read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest '" + path.string() + "'");
  nlohmann::json m;
  try {
    in >> m;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("manifest '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (m.value("tool", "") != "ccluster" || !m.contains("argv") || !m["argv"].is_array())
    throw std::runtime_error("'" + path.string() + "' is not a ccluster manifest");
  return m;
}

}  // namespace ccluster
