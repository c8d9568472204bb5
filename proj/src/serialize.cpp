#include "ubeta/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace ubeta {

std::string format_real(Real x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15Lg", x);
  return buf;
}

nlohmann::json json_real(Real x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_real(x).c_str(), nullptr);
}

nlohmann::json json_enclosure(const Enclosure<Real>& e) {
  return {{"value", json_real(e.value)}, {"radius", json_real(e.radius)}};
}

nlohmann::json json_digits(const Word& w) {
  nlohmann::json out = nlohmann::json::array();
  for (Digit d : w.digits()) out.push_back(d);
  return out;
}

nlohmann::json to_json(const AdmissibleInterval& iv) {
  return {{"N", iv.block.alphabet().size()},
          {"block", json_digits(iv.block)},
          {"beta_L", json_enclosure(iv.beta_L)},
          {"beta_U", json_enclosure(iv.beta_U)}};
}

nlohmann::json to_json(const SftGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (std::size_t i = 0; i < g.vertex_count(); ++i) vertices.push_back(json_digits(g.vertex(i)));
  nlohmann::json adjacency = nlohmann::json::array();
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    std::vector<std::uint32_t> row(g.vertex_count(), 0);
    const auto succ = g.successors(u);
    const auto wts = g.weights(u);
    for (std::size_t k = 0; k < succ.size(); ++k) row[succ[k]] = wts[k];
    adjacency.push_back(row);
  }
  return {{"N", g.block().alphabet().size()},
          {"block", json_digits(g.block())},
          {"vertices", vertices},
          {"adjacency", adjacency}};
}

nlohmann::json to_json(const Word& block, const EntropyResult& e) {
  return {{"N", block.alphabet().size()},
          {"block", json_digits(block)},
          {"rho", json_enclosure(e.spectral.rho)},
          {"h", json_real(e.h)},
          {"zero_certified", e.zero_certified}};
}

nlohmann::json to_json(const DimensionSample& s) {
  nlohmann::json out = {{"beta", json_real(s.beta)},
                        {"N", s.n},
                        {"regime", std::string(to_string(s.regime))},
                        {"dim", s.resolved() ? json_real(s.dim) : nlohmann::json(nullptr)},
                        {"dim_lower", json_real(s.dim_lower)},
                        {"dim_upper", json_real(s.dim_upper)},
                        {"block", s.block ? json_digits(*s.block) : nlohmann::json(nullptr)},
                        {"h", s.h ? json_real(*s.h) : nlohmann::json(nullptr)}};
  if (!s.note.empty()) out["note"] = s.note;
  return out;
}

}  // namespace ubeta
