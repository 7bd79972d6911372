#include "congest/export.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace congest {

namespace {

nlohmann::ordered_json weight_json(Weight w, bool integer_mode) {
  if (w == kInfWeight) return nullptr;
  if (integer_mode) return static_cast<std::int64_t>(w);
  return w;
}

}  // namespace

std::string cycle_result_json(const CycleResult& r, bool integer_mode) {
  nlohmann::ordered_json j;
  j["global"] = weight_json(r.global, integer_mode);
  j["per_node"] = nlohmann::ordered_json::array();
  for (Weight w : r.per_node) j["per_node"].push_back(weight_json(w, integer_mode));
  j["witnesses"] = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < r.witnesses.size(); ++v) {
    const CycleWitness& w = r.witnesses[v];
    if (w.level < 0) continue;
    j["witnesses"].push_back({{"node", v}, {"u", w.u}, {"q", w.q}, {"level", w.level}});
  }
  return j.dump(2) + "\n";
}

std::string cycle_result_csv(const CycleResult& r) {
  std::ostringstream os;
  os << "node,value\n";
  for (std::size_t v = 0; v < r.per_node.size(); ++v)
    os << v << ',' << format_weight(r.per_node[v]) << '\n';
  os << "global," << format_weight(r.global) << '\n';
  return os.str();
}

std::string mssp_json(const MsspResult& r, bool integer_mode) {
  nlohmann::ordered_json j;
  j["sources"] = r.sources;
  j["dist"] = nlohmann::ordered_json::array();
  for (const auto& row : r.dist) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (Weight w : row) jr.push_back(weight_json(w, integer_mode));
    j["dist"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

std::string mssp_csv(const MsspResult& r) {
  std::ostringstream os;
  os << "source";
  if (!r.dist.empty()) {
    for (std::size_t v = 0; v < r.dist.front().size(); ++v) os << ',' << v;
  }
  os << '\n';
  for (std::size_t si = 0; si < r.sources.size(); ++si) {
    os << r.sources[si];
    for (Weight w : r.dist[si]) os << ',' << format_weight(w);
    os << '\n';
  }
  return os.str();
}

}  // namespace congest
