#include "rigidlab/serialize.hpp"

#include <variant>

namespace rigidlab {

Json to_json(const BoundReport& r) {
  Json context = Json::object();
  for (const auto& [key, value] : r.context)
    std::visit([&, &k = key](const auto& v) { context[k] = v; }, value);
  Json out = {{"name", r.name},     {"lhs", r.lhs},   {"rhs", r.rhs},
              {"margin", r.margin}, {"tol", r.tol},   {"holds", r.holds},
              {"context", context}};
  if (r.skipped) out["skipped"] = true;
  return out;
}

Json to_json(const std::vector<BoundReport>& reports) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(to_json(r));
  return out;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

Json to_json(const EstimateResult& r) {
  Json per_restart = Json::array();
  for (std::size_t k = 0; k < r.restarts.size(); ++k)
    per_restart.push_back({{"restart", k},
                           {"final_value", r.restarts[k].final_value},
                           {"iterations", r.restarts[k].iterations}});
  return {{"best_value", r.best_value},
          {"best_restart", r.best_restart},
          {"best_configuration", to_json(r.best_config.positions())},
          {"a_1", r.algebraic_connectivity},
          {"certificate", r.certificate},
          {"violation", r.violation},
          {"d", r.d},
          {"n", r.n},
          {"restarts", r.restarts.size()},
          {"per_restart", per_restart}};
}

std::string summary_line(const std::vector<BoundReport>& reports) {
  std::size_t checked = 0;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (r.skipped) continue;
    ++checked;
    if (!r.holds) ++failed;
  }
  return "checked=" + std::to_string(checked) + " failed=" + std::to_string(failed);
}

}  // namespace rigidlab
