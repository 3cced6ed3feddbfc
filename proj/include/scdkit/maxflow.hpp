#pragma once

#include <cstdint>
#include <vector>

namespace scdkit {

// Dinic max-flow on int64 capacities. Capacities can be rewritten and the
// flow reset, so one graph serves a whole binary search.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  int add_edge(int from, int to, std::int64_t cap);  // returns edge id
  void set_cap(int edge_id, std::int64_t cap);
  std::int64_t flow_on(int edge_id) const;
  void reset();

  std::int64_t run(int source, int sink);

 private:
  struct Edge {
    int to;
    std::int64_t cap;
    int rev;  // index of the reverse edge in graph_[to]
  };
  bool bfs(int s, int t);
  std::int64_t dfs(int v, int t, std::int64_t limit);

  std::vector<std::vector<Edge>> graph_;
  std::vector<std::pair<int, int>> edge_pos_;  // id -> (node, slot)
  std::vector<std::int64_t> caps_;             // original caps per id
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace scdkit
