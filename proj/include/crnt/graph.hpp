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

#include <utility>
#include <vector>

namespace crnt {

using Edge = std::pair<int, int>;

// Directed graph on vertices 0..n-1 with sorted, duplicate-free adjacency.
class Digraph {
 public:
  Digraph(int n, const std::vector<Edge>& edges);

  int size() const { return static_cast<int>(out_.size()); }
  const std::vector<int>& out(int v) const { return out_[v]; }
  const std::vector<int>& in(int v) const { return in_[v]; }

  // Strongly connected components (Tarjan), canonical order.
  std::vector<std::vector<int>> strong_components() const;
  // Weakly connected components, canonical order.
  std::vector<std::vector<int>> weak_components() const;

  // Vertices reachable from `from` (inclusive) never entering `blocked`.
  std::vector<bool> reachable(int from, const std::vector<bool>& blocked) const;
  std::vector<bool> reachable(int from) const;

 private:
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// Sorts members and orders blocks by smallest member.
void canonicalize(std::vector<std::vector<int>>& partition);

}  // namespace crnt
