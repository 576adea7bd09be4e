#include "wxfleet/report/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include <json.hpp>

#include "wxfleet/error.hpp"
#include "wxfleet/report/csv.hpp"
#include "wxfleet/report/hash.hpp"

namespace wxfleet::report {

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
    throw Error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string library_version() { return "0.3.0"; }

void add_file(RunManifest& m, const std::filesystem::path& dir, const std::string& relative) {
  const auto contents = read_text_file(dir / relative);
  m.files.push_back({relative, sha256_hex(contents), contents.size()});
}

std::string to_json(const RunManifest& m) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["tool_version"] = m.tool_version;
  doc["config_hash"] = m.config_hash;
  doc["seed"] = m.seed;
  doc["started_at"] = m.started_at ? ordered_json(*m.started_at) : ordered_json(nullptr);
  doc["finished_at"] = m.finished_at ? ordered_json(*m.finished_at) : ordered_json(nullptr);
  ordered_json files = ordered_json::array();
  for (const auto& f : m.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  doc["files"] = files;
  return doc.dump(2) + "\n";
}

RunManifest parse_manifest(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    RunManifest m;
    m.tool_version = doc.at("tool_version").get<std::string>();
    m.config_hash = doc.at("config_hash").get<std::string>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    if (!doc.at("started_at").is_null()) m.started_at = doc["started_at"].get<std::string>();
    if (!doc.at("finished_at").is_null()) m.finished_at = doc["finished_at"].get<std::string>();
    for (const auto& f : doc.at("files"))
      m.files.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>(),
                         f.at("bytes").get<std::uintmax_t>()});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
}

bool verify_manifest(const RunManifest& m, const std::filesystem::path& dir) {
  for (const auto& f : m.files) {
    std::error_code ec;
    if (!std::filesystem::exists(dir / f.path, ec)) return false;
    if (sha256_hex(read_text_file(dir / f.path)) != f.sha256) return false;
  }
  return true;
}

}  // namespace wxfleet::report
