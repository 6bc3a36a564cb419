#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "tpl/shimura.hpp"

namespace tpl {

using json = nlohmann::json;

/// Integers are JSON numbers when they fit in 64 bits, decimal strings otherwise;
/// rationals are [num, den] pairs.
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json shimura_to_json(const ShimuraSet& X);
/// Rebuilds the set and re-certifies the order and the mass formula.
ShimuraSet shimura_from_json(const json& j);

json brandt_to_json(const ShimuraSet& X, const BrandtMatrix& B);
BrandtMatrix brandt_from_json(const json& j);

/// Exclusive writer lock: creates `path` with O_EXCL, waiting up to timeout_ms.
class LockFile {
 public:
  explicit LockFile(std::filesystem::path path, int timeout_ms = 60000);
  ~LockFile();
  LockFile(const LockFile&) = delete;
  LockFile& operator=(const LockFile&) = delete;

 private:
  std::filesystem::path path_;
};

/// On-disk cache rooted at `root`: q{q}/classes.json and q{q}/brandt_{n}.json.
class Cache {
 public:
  explicit Cache(std::filesystem::path root) : root_(std::move(root)) {}
  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path dir(i64 q) const { return root_ / ("q" + std::to_string(q)); }

  /// Loads the class set for q, or computes and stores it.
  ShimuraSet shimura_set(i64 q) const;
  BrandtMatrix brandt(const ShimuraSet& X, i64 n) const;

 private:
  void write(i64 q, const std::string& name, const json& j) const;
  std::filesystem::path root_;
};

/// Cache directory from, in order: explicit flag value, TPL_CACHE, config value, "cache".
std::filesystem::path resolve_cache_dir(const std::string& flag_value, const std::string& config_value);

}  // namespace tpl
