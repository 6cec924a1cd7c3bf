#include "termcert/graph.hpp"

#include <algorithm>
#include <cassert>
#include <queue>

namespace termcert {

std::vector<std::vector<int>> condensation_in_topo_order(
    int n, const std::set<std::pair<int, int>>& edges) {
  assert(n >= 0);
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : edges) {
    assert(u >= 0 && u < n && v >= 0 && v < n);
    adj[u].push_back(v);
  }

  // Tarjan.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> onstack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;
  auto dfs = [&](auto&& self, int v) -> void {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    onstack[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (onstack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> c;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        onstack[w] = false;
        comp[w] = static_cast<int>(comps.size());
        c.push_back(w);
      } while (w != v);
      std::sort(c.begin(), c.end());
      comps.push_back(std::move(c));
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) dfs(dfs, v);

  // Kahn on the condensation; the ready heap is keyed by smallest member.
  int m = static_cast<int>(comps.size());
  std::vector<std::set<int>> cadj(m);
  std::vector<int> indeg(m, 0);
  for (const auto& [u, v] : edges) {
    int cu = comp[u], cv = comp[v];
    if (cu != cv && cadj[cu].insert(cv).second) ++indeg[cv];
  }
  auto later = [&](int a, int b) { return comps[a][0] > comps[b][0]; };
  std::priority_queue<int, std::vector<int>, decltype(later)> ready(later);
  for (int c = 0; c < m; ++c)
    if (indeg[c] == 0) ready.push(c);

  std::vector<std::vector<int>> out;
  out.reserve(m);
  while (!ready.empty()) {
    int c = ready.top();
    ready.pop();
    out.push_back(comps[c]);
    for (int d : cadj[c])
      if (--indeg[d] == 0) ready.push(d);
  }
  assert(static_cast<int>(out.size()) == m);
  return out;
}

}  // namespace termcert
