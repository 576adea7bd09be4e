#include <doctest.h>

#include <filesystem>

#include "wxfleet/report/csv.hpp"
#include "wxfleet/report/hash.hpp"
#include "wxfleet/report/manifest.hpp"

using namespace wxfleet::report;
namespace fs = std::filesystem;

TEST_CASE("manifest round-trip and verification") {
  const auto dir = fs::temp_directory_path() / "wxfleet_manifest_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_text_file(dir / "a.csv", "x,y\n1,2\n");
  write_text_file(dir / "b.json", "{}\n");

  RunManifest m;
  m.tool_version = library_version();
  m.config_hash = "abc";
  m.seed = 42;
  add_file(m, dir, "a.csv");
  add_file(m, dir, "b.json");
  REQUIRE(m.files.size() == 2u);
  CHECK(m.files[0].bytes == 8u);
  CHECK(m.files[0].sha256.size() == 64u);

  const auto back = parse_manifest(to_json(m));
  CHECK(back.seed == 42u);
  CHECK(back.config_hash == "abc");
  REQUIRE(back.files.size() == 2u);
  CHECK(back.files[1].sha256 == m.files[1].sha256);
  CHECK(to_json(back) == to_json(m));
  CHECK_FALSE(back.started_at.has_value());

  CHECK(verify_manifest(m, dir));
  write_text_file(dir / "a.csv", "x,y\n1,3\n");
  CHECK_FALSE(verify_manifest(m, dir));
  fs::remove_all(dir);
}

TEST_CASE("sha256 known answers") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
