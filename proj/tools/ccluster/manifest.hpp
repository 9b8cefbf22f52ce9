#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace ccluster {

/// What a subcommand read and wrote. `primary` names the output the manifest
/// sits next to; an empty primary means nothing was written.
struct RunRecord {
  std::vector<std::uint64_t> seeds;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  std::filesystem::path primary;
};

/// FNV-1a over the file bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

std::filesystem::path manifest_path_for(const std::filesystem::path& primary);

nlohmann::json build_manifest(const std::string& subcommand, const std::vector<std::string>& args,
                              const nlohmann::json& flags, const RunRecord& record, double wall_seconds);

void write_manifest(const nlohmann::json& manifest, const std::filesystem::path& path);
nlohmann::json read_manifest(const std::filesystem::path& path);

}  // namespace ccluster
