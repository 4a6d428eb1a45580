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

// JSON containers for operators:
//   {"layout": [[label, dim], ...], "re": [[...], ...], "im": [[...], ...]}
// with row-major entries.

#ifndef QDEC_SERIALIZE_HPP
#define QDEC_SERIALIZE_HPP

#include "json.hpp"
#include "qdec/qmath.hpp"

namespace qdec {

nlohmann::json layout_to_json(const SystemLayout& layout);
SystemLayout layout_from_json(const nlohmann::json& j);

nlohmann::json operator_to_json(const Operator& op);

/// Throws LayoutError on malformed containers.
Operator operator_from_json(const nlohmann::json& j);

}  // namespace qdec

#endif  // QDEC_SERIALIZE_HPP
