// Copyright 2026 The qdec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdec/serialize.hpp"

namespace qdec {

using nlohmann::json;

json layout_to_json(const SystemLayout& layout) {
  json out = json::array();
  for (const auto& f : layout.factors()) out.push_back(json::array({f.label, f.dim}));
  return out;
}

SystemLayout layout_from_json(const json& j) {
  if (!j.is_array()) throw LayoutError("layout must be an array of [label, dim] pairs");
  std::vector<SystemLayout::Factor> fs;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer())
      throw LayoutError("layout entries must be [label, dim] pairs");
    fs.push_back({e[0].get<std::string>(), e[1].get<int>()});
  }
  return SystemLayout(std::move(fs));
}

json operator_to_json(const Operator& op) {
  const Matrix& m = op.matrix();
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array(), ii = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return json{{"layout", layout_to_json(op.layout())}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Operator operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("layout") || !j.contains("re"))
    throw LayoutError("operator container needs 'layout' and 're'");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "layout" && it.key() != "re" && it.key() != "im")
      throw LayoutError("unknown operator field '" + it.key() + "'");
  SystemLayout layout = layout_from_json(j.at("layout"));
  const int d = layout.total_dim();
  Matrix m = Matrix::Zero(d, d);
  auto fill = [&](const json& rows, bool imag) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
      throw LayoutError("operator entries do not match the layout dimension");
    for (int r = 0; r < d; ++r) {
      const json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != d)
        throw LayoutError("operator row has the wrong length");
      for (int c = 0; c < d; ++c) {
        const double v = row[static_cast<std::size_t>(c)].get<double>();
        if (imag) m(r, c) += Complex(0.0, v);
        else m(r, c) += v;
      }
    }
  };
  fill(j.at("re"), false);
  if (j.contains("im")) fill(j.at("im"), true);
  return {std::move(layout), std::move(m)};
}

}  // namespace qdec
