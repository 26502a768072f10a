#include "hallforge/quiver.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hallforge/errors.hpp"

namespace hallforge {

KClass KClass::from_dims(const std::vector<int>& dims) {
  return KClass(std::vector<long long>(dims.begin(), dims.end()));
}

bool KClass::is_zero() const {
  for (auto x : v_)
    if (x != 0) return false;
  return true;
}

long long KClass::total() const {
  long long s = 0;
  for (auto x : v_) s += x;
  return s;
}

KClass& KClass::operator+=(const KClass& o) {
  if (o.v_.size() != v_.size()) throw ContractViolation("class length mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

KClass& KClass::operator-=(const KClass& o) {
  if (o.v_.size() != v_.size()) throw ContractViolation("class length mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

KClass KClass::operator-() const { return scaled(-1); }

KClass KClass::scaled(long long s) const {
  KClass r = *this;
  for (auto& x : r.v_) x *= s;
  return r;
}

std::string KClass::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v_[i]);
  }
  return s + ")";
}

Quiver::Quiver(std::string name, std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : name_(std::move(name)), vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  const std::size_t n = vertices_.size();
  if (n == 0) throw ContractViolation("quiver has no vertices");
  for (auto& a : arrows_) {
    if (a.source >= n || a.target >= n) throw ContractViolation("arrow endpoint out of range");
    if (a.name.empty()) a.name = vertices_[a.source] + "->" + vertices_[a.target];
  }

  // Kahn's algorithm, smallest available vertex first.
  std::vector<int> indeg(n, 0);
  for (const auto& a : arrows_) ++indeg[a.target];
  std::vector<bool> done(n, false);
  while (topo_.size() < n) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && indeg[v] == 0) {
        pick = v;
        break;
      }
    if (pick == n) throw ContractViolation("quiver '" + name_ + "' has an oriented cycle");
    done[pick] = true;
    topo_.push_back(pick);
    for (const auto& a : arrows_)
      if (a.source == pick) --indeg[a.target];
  }

  paths_.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<std::size_t, Path>> stack{{i, {}}};
    while (!stack.empty()) {
      auto [cur, path] = std::move(stack.back());
      stack.pop_back();
      paths_[i * n + cur].push_back(path);
      for (std::size_t ai = arrows_.size(); ai-- > 0;) {
        if (arrows_[ai].source != cur) continue;
        Path next = path;
        next.push_back(ai);
        stack.emplace_back(arrows_[ai].target, std::move(next));
      }
    }
  }
}

Quiver Quiver::fixture(const std::string& name) {
  if (name == "a1") return Quiver("a1", {"1"}, {});
  if (name == "a2") return Quiver("a2", {"1", "2"}, {{0, 1, "a"}});
  if (name == "kronecker") return Quiver("kronecker", {"1", "2"}, {{0, 1, "a"}, {0, 1, "b"}});
  throw ContractViolation("unknown quiver fixture '" + name + "' (known: a1, a2, kronecker)");
}

bool Quiver::is_fixture(const std::string& name) { return name == "a1" || name == "a2" || name == "kronecker"; }

std::vector<std::string> Quiver::fixture_names() { return {"a1", "a2", "kronecker"}; }

Quiver Quiver::from_json(const nlohmann::json& j) {
  try {
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    auto vertex_index = [&](const nlohmann::json& e) -> std::size_t {
      if (e.is_number_integer()) return e.get<std::size_t>();
      const auto s = e.get<std::string>();
      for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == s) return i;
      throw ContractViolation("arrow refers to unknown vertex '" + s + "'");
    };
    std::vector<Arrow> arrows;
    if (j.contains("arrows")) {
      for (const auto& a : j.at("arrows")) {
        Arrow arrow{};
        if (a.is_array()) {
          arrow.source = vertex_index(a.at(0));
          arrow.target = vertex_index(a.at(1));
        } else {
          arrow.source = vertex_index(a.at("source"));
          arrow.target = vertex_index(a.at("target"));
          if (a.contains("name")) arrow.name = a.at("name").get<std::string>();
        }
        arrows.push_back(arrow);
      }
    }
    return Quiver(j.value("name", std::string("custom")), std::move(vertices), std::move(arrows));
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation(std::string("malformed quiver definition: ") + e.what());
  }
}

Quiver Quiver::load(const std::string& name_or_path) {
  if (is_fixture(name_or_path)) return fixture(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw ContractViolation("unknown quiver '" + name_or_path + "': not a fixture and not a readable file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation("cannot parse quiver file '" + name_or_path + "': " + e.what());
  }
  return from_json(j);
}

nlohmann::json Quiver::to_json() const {
  nlohmann::json arrows = nlohmann::json::array();
  for (const auto& a : arrows_) arrows.push_back({{"source", a.source}, {"target", a.target}, {"name", a.name}});
  return {{"name", name_}, {"vertices", vertices_}, {"arrows", arrows}};
}

KClass Quiver::projective_class(std::size_t v) const {
  KClass c(vertex_count());
  for (std::size_t w = 0; w < vertex_count(); ++w) c[w] = static_cast<long long>(paths(v, w).size());
  return c;
}

KClass Quiver::unit_class(std::size_t v) const {
  KClass c(vertex_count());
  c[v] = 1;
  return c;
}

long long Quiver::euler_form(const KClass& a, const KClass& b) const {
  if (a.size() != vertex_count() || b.size() != vertex_count()) throw ContractViolation("class length mismatch");
  long long s = 0;
  for (std::size_t i = 0; i < vertex_count(); ++i) s += a[i] * b[i];
  for (const auto& ar : arrows_) s -= a[ar.source] * b[ar.target];
  return s;
}

long long Quiver::sym_euler_form(const KClass& a, const KClass& b) const { return euler_form(a, b) + euler_form(b, a); }

std::string Quiver::fingerprint() const {
  std::ostringstream os;
  os << "v" << vertex_count();
  for (const auto& a : arrows_) os << ";" << a.source << ">" << a.target;
  return os.str();
}

}  // namespace hallforge
