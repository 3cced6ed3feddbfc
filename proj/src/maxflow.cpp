#include "scdkit/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace scdkit {

MaxFlow::MaxFlow(int num_nodes)
    : graph_(num_nodes), level_(num_nodes), iter_(num_nodes) {}

int MaxFlow::add_edge(int from, int to, std::int64_t cap) {
  int id = static_cast<int>(edge_pos_.size());
  edge_pos_.emplace_back(from, static_cast<int>(graph_[from].size()));
  caps_.push_back(cap);
  graph_[from].push_back({to, cap, static_cast<int>(graph_[to].size())});
  graph_[to].push_back({from, 0, static_cast<int>(graph_[from].size()) - 1});
  return id;
}

void MaxFlow::set_cap(int edge_id, std::int64_t cap) {
  caps_[edge_id] = cap;
}

std::int64_t MaxFlow::flow_on(int edge_id) const {
  auto [node, slot] = edge_pos_[edge_id];
  return caps_[edge_id] - graph_[node][slot].cap;
}

void MaxFlow::reset() {
  for (std::size_t id = 0; id < edge_pos_.size(); ++id) {
    auto [node, slot] = edge_pos_[id];
    Edge& e = graph_[node][slot];
    Edge& r = graph_[e.to][e.rev];
    e.cap = caps_[id];
    r.cap = 0;
  }
}

bool MaxFlow::bfs(int s, int t) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Edge& e : graph_[v]) {
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int t, std::int64_t limit) {
  if (v == t) return limit;
  for (int& i = iter_[v]; i < static_cast<int>(graph_[v].size()); ++i) {
    Edge& e = graph_[v][i];
    if (e.cap <= 0 || level_[e.to] != level_[v] + 1) continue;
    std::int64_t d = dfs(e.to, t, std::min(limit, e.cap));
    if (d > 0) {
      e.cap -= d;
      graph_[e.to][e.rev].cap += d;
      return d;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int source, int sink) {
  std::int64_t flow = 0;
  while (bfs(source, sink)) {
    std::fill(iter_.begin(), iter_.end(), 0);
    while (std::int64_t f =
               dfs(source, sink, std::numeric_limits<std::int64_t>::max()))
      flow += f;
  }
  return flow;
}

}  // namespace scdkit
