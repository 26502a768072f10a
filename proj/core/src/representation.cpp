#include "hallforge/representation.hpp"

#include <numeric>

#include "hallforge/errors.hpp"

namespace hallforge {

RepObject::RepObject(const Quiver& quiver, const GaloisField& field, DimVec dims, std::vector<FieldMatrix> maps)
    : field_(&field), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (dims_.size() != quiver.vertex_count()) throw ContractViolation("dimension vector length mismatch");
  for (int d : dims_)
    if (d < 0) throw ContractViolation("negative dimension");
  if (maps_.size() != quiver.arrows().size()) throw ContractViolation("arrow map count mismatch");
  for (std::size_t a = 0; a < maps_.size(); ++a) {
    const auto& ar = quiver.arrows()[a];
    if (maps_[a].rows() != static_cast<std::size_t>(dims_[ar.target]) ||
        maps_[a].cols() != static_cast<std::size_t>(dims_[ar.source]))
      throw ContractViolation("arrow map '" + ar.name + "' has the wrong shape");
    if (!maps_[a].has_field()) maps_[a] = FieldMatrix(field, maps_[a].rows(), maps_[a].cols());
  }
}

RepObject RepObject::zero(const Quiver& quiver, const GaloisField& field) {
  std::vector<FieldMatrix> maps(quiver.arrows().size(), FieldMatrix(field, 0, 0));
  return RepObject(quiver, field, DimVec(quiver.vertex_count(), 0), std::move(maps));
}

int RepObject::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

int IsoLabel::total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

std::string IsoLabel::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims[i]);
  }
  return s + ")#" + std::to_string(index);
}

IsoLabel IsoLabel::parse(const std::string& text) {
  const auto hash = text.find('#');
  if (text.empty() || text.front() != '(' || hash == std::string::npos || hash < 2 || text[hash - 1] != ')')
    throw ContractViolation("malformed iso label '" + text + "' (expected e.g. (1,0)#0)");
  IsoLabel out;
  const std::string inner = text.substr(1, hash - 2);
  try {
    std::size_t pos = 0;
    while (pos <= inner.size()) {
      const auto comma = inner.find(',', pos);
      const auto tok = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 0) throw ContractViolation("bad dimension");
      out.dims.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    std::size_t used = 0;
    const auto idx_text = text.substr(hash + 1);
    out.index = std::stoul(idx_text, &used);
    if (used != idx_text.size()) throw ContractViolation("bad index");
  } catch (const std::logic_error&) {
    throw ContractViolation("malformed iso label '" + text + "' (expected e.g. (1,0)#0)");
  }
  return out;
}

}  // namespace hallforge
