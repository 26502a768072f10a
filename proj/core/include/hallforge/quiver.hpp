#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace hallforge {

/// Element of the Grothendieck group Z^{vertices}.  For a representation the
/// class is its dimension vector.
class KClass {
 public:
  KClass() = default;
  explicit KClass(std::size_t n) : v_(n, 0) {}
  explicit KClass(std::vector<long long> v) : v_(std::move(v)) {}
  static KClass from_dims(const std::vector<int>& dims);

  std::size_t size() const noexcept { return v_.size(); }
  long long operator[](std::size_t i) const { return v_[i]; }
  long long& operator[](std::size_t i) { return v_[i]; }
  const std::vector<long long>& values() const noexcept { return v_; }
  bool is_zero() const;
  long long total() const;

  KClass& operator+=(const KClass& o);
  KClass& operator-=(const KClass& o);
  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
  KClass operator-() const;
  KClass scaled(long long s) const;

  friend bool operator==(const KClass&, const KClass&) = default;
  friend auto operator<=>(const KClass&, const KClass&) = default;

  /// "(1,0)"
  std::string to_string() const;

 private:
  std::vector<long long> v_;
};

struct Arrow {
  std::size_t source;
  std::size_t target;
  std::string name;
};

/// Sequence of arrow indices, composable left to right.
using Path = std::vector<std::size_t>;

/// Finite acyclic quiver.  Immutable after construction.
class Quiver {
 public:
  /// Throws ContractViolation on out-of-range endpoints or a cycle.
  Quiver(std::string name, std::vector<std::string> vertices, std::vector<Arrow> arrows);

  static Quiver fixture(const std::string& name);
  static bool is_fixture(const std::string& name);
  static std::vector<std::string> fixture_names();
  /// {"name": ..., "vertices": [...], "arrows": [[s, t], ...] or [{"source":..,"target":..}]}.
  /// Endpoints may be vertex names or indices.
  static Quiver from_json(const nlohmann::json& j);
  /// Fixture name, or path to a JSON quiver file.
  static Quiver load(const std::string& name_or_path);
  nlohmann::json to_json() const;

  const std::string& name() const noexcept { return name_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  const std::vector<std::string>& vertex_names() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  /// Sources first.
  const std::vector<std::size_t>& topological_order() const noexcept { return topo_; }

  /// All paths from i to j (the trivial path when i == j), in a fixed order.
  const std::vector<Path>& paths(std::size_t i, std::size_t j) const { return paths_[i * vertex_count() + j]; }

  /// Dimension vector of the indecomposable projective P_v (number of paths from v).
  KClass projective_class(std::size_t v) const;
  KClass unit_class(std::size_t v) const;
  KClass zero_class() const { return KClass(vertex_count()); }

  /// <a,b> = sum a_i b_i - sum_{i->j} a_i b_j.
  long long euler_form(const KClass& a, const KClass& b) const;
  /// (a,b) = <a,b> + <b,a>.
  long long sym_euler_form(const KClass& a, const KClass& b) const;

  /// Stable text identifying the quiver's shape (vertex count and arrow list).
  std::string fingerprint() const;

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> topo_;
  std::vector<std::vector<Path>> paths_;
};

}  // namespace hallforge
