#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wxfleet::report {

struct ManifestFile {
  std::string path;  ///< relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string tool_version;
  std::string config_hash;
  std::uint64_t seed = 0;
  /// Wall-clock stamps are off by default so repeated runs stay byte-identical.
  std::optional<std::string> started_at;
  std::optional<std::string> finished_at;
  std::vector<ManifestFile> files;
};

/// Hashes `relative` under `dir` and appends it to the manifest.
void add_file(RunManifest& manifest, const std::filesystem::path& dir, const std::string& relative);

std::string to_json(const RunManifest& manifest);
RunManifest parse_manifest(std::string_view json_text);

/// True when every listed file exists under `dir` with the recorded hash.
bool verify_manifest(const RunManifest& manifest, const std::filesystem::path& dir);

std::string library_version();

}  // namespace wxfleet::report
