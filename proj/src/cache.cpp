#include "tpl/cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <thread>

namespace tpl {

namespace {

json int_to_json(i128 v) {
  if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max()) return static_cast<i64>(v);
  return to_string(v);
}

i128 int_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<i64>();
  if (!j.is_string()) throw CertificationError("cache: expected an integer");
  const std::string s = j.get<std::string>();
  if (s.empty()) throw CertificationError("cache: empty integer string");
  i128 v = 0;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) throw CertificationError("cache: bad integer string");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw CertificationError("cache: bad integer string " + s);
    v = checked_add(checked_mul(v, 10), s[i] - '0');
  }
  return s[0] == '-' ? -v : v;
}

json lattice_to_json(const Lattice& L) {
  json rows = json::array();
  for (const auto& b : L.basis()) {
    json row = json::array();
    for (const auto& c : b.x) row.push_back(rational_to_json(c));
    rows.push_back(row);
  }
  return rows;
}

Lattice lattice_from_json(const json& j) {
  std::vector<Quat> gens;
  for (const auto& row : j) {
    if (row.size() != 4) throw CertificationError("cache: basis rows need 4 entries");
    Quat x;
    for (std::size_t i = 0; i < 4; ++i) x.x[i] = rational_from_json(row[i]);
    gens.push_back(x);
  }
  if (gens.size() != 4) throw CertificationError("cache: a basis needs 4 rows");
  return Lattice::from_generators(gens);
}

json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CertificationError("corrupt cache file " + p.string() + ": " + e.what());
  }
}

}  // namespace

json rational_to_json(const Rational& r) { return json::array({int_to_json(r.num()), int_to_json(r.den())}); }

Rational rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw CertificationError("cache: rationals are [num, den] pairs");
  return Rational(int_from_json(j[0]), int_from_json(j[1]));
}

json shimura_to_json(const ShimuraSet& X) {
  json j;
  j["q"] = X.order.A.q;
  j["a"] = X.order.A.a;
  j["b"] = X.order.A.b;
  j["order"] = lattice_to_json(X.order.lattice);
  j["classes"] = json::array();
  for (const auto& I : X.classes) j["classes"].push_back({{"basis", lattice_to_json(I.lattice)}, {"nrd", rational_to_json(I.norm)}});
  j["weights"] = X.weights;
  return j;
}

ShimuraSet shimura_from_json(const json& j) {
  try {
    const QuaternionAlgebra A = build_algebra(j.at("q").get<i64>());
    if (A.a != j.at("a").get<i64>() || A.b != j.at("b").get<i64>()) throw CertificationError("cache: algebra mismatch");
    const Lattice L = lattice_from_json(j.at("order"));
    if (!is_order(A, L) || reduced_discriminant(A, L) != Rational(A.q))
      throw CertificationError("cache: stored order is not maximal");
    ShimuraSet X;
    X.order = QuatOrder{A, L, integral_gram(L.gram(A), 1)};
    for (const auto& c : j.at("classes")) {
      RightIdeal I{lattice_from_json(c.at("basis")), rational_from_json(c.at("nrd"))};
      if (ideal_norm(X.order, I.lattice) != I.norm) throw CertificationError("cache: ideal norm mismatch");
      X.classes.push_back(I);
    }
    X.weights = j.at("weights").get<std::vector<i64>>();
    if (X.weights.size() != X.classes.size()) throw CertificationError("cache: weights and classes differ in length");
    for (std::size_t i = 0; i < X.size(); ++i)
      if (unit_count(A, left_order(X.order, X.classes[i])) != 2 * X.weights[i])
        throw CertificationError("cache: weight mismatch");
    if (X.mass() != Rational(A.q - 1, 24)) throw CertificationError("cache: mass formula fails");
    for (std::size_t i = 0; i < X.size(); ++i)
      for (std::size_t k = i + 1; k < X.size(); ++k)
        if (is_isomorphic(X.order, X.classes[i], X.classes[k])) throw CertificationError("cache: duplicate class");
    return X;
  } catch (const json::exception& e) {
    throw CertificationError(std::string("cache: malformed classes.json: ") + e.what());
  }
}

json brandt_to_json(const ShimuraSet& X, const BrandtMatrix& B) {
  return json{{"q", X.order.A.q}, {"n", B.n}, {"entries", B.entries}};
}

BrandtMatrix brandt_from_json(const json& j) {
  try {
    BrandtMatrix B;
    B.n = j.at("n").get<i64>();
    B.entries = j.at("entries").get<std::vector<std::vector<i64>>>();
    return B;
  } catch (const json::exception& e) {
    throw CertificationError(std::string("cache: malformed Brandt file: ") + e.what());
  }
}

LockFile::LockFile(std::filesystem::path path, int timeout_ms) : path_(std::move(path)) {
  const auto start = std::chrono::steady_clock::now();
  for (;;) {
    const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd >= 0) {
      ::close(fd);
      return;
    }
    if (std::chrono::steady_clock::now() - start > std::chrono::milliseconds(timeout_ms))
      throw Error("cache is locked: " + path_.string());
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

LockFile::~LockFile() {
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

void Cache::write(i64 q, const std::string& name, const json& j) const {
  const auto d = dir(q);
  std::filesystem::create_directories(d);
  LockFile lock(d / ".lock");
  const auto tmp = d / (name + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write " + tmp.string());
    out << j.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, d / name);
}

ShimuraSet Cache::shimura_set(i64 q) const {
  const auto file = dir(q) / "classes.json";
  if (std::filesystem::exists(file)) {
    ShimuraSet X = shimura_from_json(read_json(file));
    if (X.order.A.q != q) throw CertificationError("cache: " + file.string() + " is for another q");
    return X;
  }
  ShimuraSet X = right_ideal_classes(maximal_order(build_algebra(q)));
  write(q, "classes.json", shimura_to_json(X));
  return X;
}

BrandtMatrix Cache::brandt(const ShimuraSet& X, i64 n) const {
  const i64 q = X.order.A.q;
  const auto name = "brandt_" + std::to_string(n) + ".json";
  const auto file = dir(q) / name;
  if (std::filesystem::exists(file)) {
    BrandtMatrix B = brandt_from_json(read_json(file));
    if (B.n != n || B.entries.size() != X.size()) throw CertificationError("cache: " + file.string() + " does not match");
    return B;
  }
  BrandtMatrix B = brandt_matrix(X, n);
  write(q, name, brandt_to_json(X, B));
  return B;
}

std::filesystem::path resolve_cache_dir(const std::string& flag_value, const std::string& config_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("TPL_CACHE"); env && *env) return env;
  if (!config_value.empty()) return config_value;
  return "cache";
}

}  // namespace tpl
