#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "tpl/cache.hpp"

using namespace tpl;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("tpl_cache_test_" + name);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("rationals roundtrip, including wide integers") {
  for (const auto& r : {Rational(0), Rational(-3, 4), Rational(static_cast<i128>(1) << 80, 3)}) {
    CHECK(rational_from_json(rational_to_json(r)) == r);
  }
  CHECK(rational_to_json(Rational(static_cast<i128>(1) << 80))[0].is_string());
  CHECK_THROWS_AS(rational_from_json(json::array({1})), CertificationError);
  CHECK_THROWS_AS(rational_from_json(json::array({"1x", 2})), CertificationError);
}

TEST_CASE("class set roundtrip and byte-identical rewrites") {
  const auto root = fresh_dir("roundtrip");
  Cache cache(root);
  for (i64 q : {11, 37, 41}) {
    ShimuraSet X = cache.shimura_set(q);
    const auto file = cache.dir(q) / "classes.json";
    REQUIRE(fs::exists(file));
    const std::string first = slurp(file);
    ShimuraSet Y = cache.shimura_set(q);
    CHECK(Y.weights == X.weights);
    REQUIRE(Y.size() == X.size());
    for (std::size_t i = 0; i < X.size(); ++i) CHECK(Y.classes[i].lattice.basis() == X.classes[i].lattice.basis());
    auto B = cache.brandt(X, 2);
    CHECK(cache.brandt(Y, 2).entries == B.entries);
    CHECK(B.entries == brandt_matrix(X, 2).entries);
    fs::remove_all(cache.dir(q));
    cache.shimura_set(q);
    CHECK(slurp(file) == first);
  }
  CHECK_FALSE(fs::exists(root / "q13"));
  fs::remove_all(root);
}

TEST_CASE("tampered files fail certification") {
  const auto root = fresh_dir("tamper");
  Cache cache(root);
  ShimuraSet X = cache.shimura_set(11);
  json j = shimura_to_json(X);
  j["weights"][0] = 1;
  CHECK_THROWS_AS(shimura_from_json(j), CertificationError);
  j = shimura_to_json(X);
  j["classes"][1] = j["classes"][0];
  CHECK_THROWS_AS(shimura_from_json(j), CertificationError);
  j = shimura_to_json(X);
  j["classes"].erase(1);
  j["weights"].erase(1);
  CHECK_THROWS_AS(shimura_from_json(j), CertificationError);
  {
    std::ofstream out(cache.dir(11) / "classes.json");
    out << "{ not json";
  }
  CHECK_THROWS_AS(cache.shimura_set(11), CertificationError);
  fs::remove_all(root);
}

TEST_CASE("lock file excludes a second writer") {
  const auto root = fresh_dir("lock");
  fs::create_directories(root);
  {
    LockFile a(root / ".lock");
    CHECK(fs::exists(root / ".lock"));
    CHECK_THROWS(LockFile(root / ".lock", 100));
  }
  CHECK_FALSE(fs::exists(root / ".lock"));
  fs::remove_all(root);
}

TEST_CASE("cache directory precedence") {
  ::setenv("TPL_CACHE", "/env/dir", 1);
  CHECK(resolve_cache_dir("/flag", "/cfg") == "/flag");
  CHECK(resolve_cache_dir("", "/cfg") == "/env/dir");
  ::unsetenv("TPL_CACHE");
  CHECK(resolve_cache_dir("", "/cfg") == "/cfg");
  CHECK(resolve_cache_dir("", "") == "cache");
}
