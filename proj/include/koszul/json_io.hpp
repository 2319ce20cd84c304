#pragma once
// JSON encodings for the objects that appear in reports: ring elements as
// canonical strings, sparse matrices, module presentations.  Parsing partners
// are provided so encoded values round-trip exactly.

#include <json.hpp>

#include <string>
#include <vector>

#include "koszul/matrix.hpp"
#include "koszul/parse.hpp"
#include "koszul/presentation.hpp"

namespace koszul {

using nlohmann::json;

inline std::string element_str(const RingElement& e) {
  return print_poly(e.p, e.R->names);
}

inline json matrix_json(const FreeModuleMatrix& m) {
  json entries = json::array();
  m.for_entries([&](int r, int c, const RingElement& e) {
    entries.push_back(json::array({r, c, element_str(e)}));
  });
  return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(entries)}};
}

inline FreeModuleMatrix matrix_from_json(const RingPtr& R, const json& j) {
  FreeModuleMatrix m(R, j.at("rows").get<int>(), j.at("cols").get<int>());
  for (const json& e : j.at("entries"))
    m.set(e.at(0).get<int>(), e.at(1).get<int>(), re_parse(R, e.at(2).get<std::string>()));
  return m;
}

inline json vector_json(const std::vector<RingElement>& v) {
  json out = json::array();
  for (const RingElement& e : v) out.push_back(element_str(e));
  return out;
}

inline json presentation_json(const ModulePresentation& P) {
  json j{{"gens", P.ngens}, {"relations", matrix_json(P.relations)}};
  if (!P.labels.empty()) j["labels"] = P.labels;
  return j;
}

}  // namespace koszul
