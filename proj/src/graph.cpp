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

#include "crnt/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace crnt {

Digraph::Digraph(int n, const std::vector<Edge>& edges) : out_(n), in_(n) {
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  for (auto* lists : {&out_, &in_}) {
    for (auto& adj : *lists) {
      std::sort(adj.begin(), adj.end());
      adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
  }
}

std::vector<std::vector<int>> Digraph::strong_components() const {
  const int n = size();
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<int>> result;
  int counter = 0;
  // Iterative Tarjan: frames hold (vertex, next out-edge position).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < out_[v].size()) {
        int w = out_[v][pos++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        result.push_back(std::move(comp));
      }
      int finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  canonicalize(result);
  return result;
}

std::vector<std::vector<int>> Digraph::weak_components() const {
  const int n = size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> result;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(result.size());
    result.emplace_back();
    std::vector<int> todo{s};
    comp[s] = id;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      result[id].push_back(v);
      for (const auto* adj : {&out_[v], &in_[v]}) {
        for (int w : *adj) {
          if (comp[w] < 0) {
            comp[w] = id;
            todo.push_back(w);
          }
        }
      }
    }
  }
  canonicalize(result);
  return result;
}

std::vector<bool> Digraph::reachable(int from, const std::vector<bool>& blocked) const {
  std::vector<bool> seen(size(), false);
  if (blocked[from]) return seen;
  std::vector<int> todo{from};
  seen[from] = true;
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (int w : out_[v]) {
      if (!seen[w] && !blocked[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<bool> Digraph::reachable(int from) const {
  return reachable(from, std::vector<bool>(size(), false));
}

void canonicalize(std::vector<std::vector<int>>& partition) {
  for (auto& block : partition) std::sort(block.begin(), block.end());
  std::sort(partition.begin(), partition.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
}

}  // namespace crnt
