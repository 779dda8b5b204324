// Copyright 2026 The crnt Authors
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

#pragma once

#include <string>

#include "json.hpp"

namespace crnt {

// Deterministic JSON text: sorted keys, two-space indent, primitive arrays
// inline, doubles at 17 significant digits, trailing newline.
std::string dump_json(const nlohmann::json& doc);

}  // namespace crnt
