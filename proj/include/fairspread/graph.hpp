#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace fairspread {

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = kUnsetWeight;

  static constexpr double kUnsetWeight = -1.0;
  bool has_weight() const { return weight >= 0.0; }
};

// Directed weighted graph over dense 0-based node ids. Edges are stored
// sorted by (src, dst) with duplicates merged (first weight wins), and are
// indexed both by source and by target. Immutable after construction.
class Graph {
 public:
  Graph() = default;
  Graph(int node_count, std::vector<Edge> edges,
        std::vector<std::string> labels = {});

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

  // Edge indices leaving / entering v.
  std::span<const int> out_edges(int v) const;
  std::span<const int> in_edges(int v) const;
  int out_degree(int v) const;
  int in_degree(int v) const;

  const std::string& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
  // Dense id for a token, or -1 when unknown.
  int node_id(const std::string& token) const;

  bool has_unset_weights() const;
  // Number of stochastic edges (weight strictly inside (0,1)).
  int stochastic_edge_count() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> id_by_label_;
  std::vector<int> out_offsets_, out_index_;
  std::vector<int> in_offsets_, in_index_;
};

// Parses whitespace-separated `u v [w]` lines; `#` starts a comment. Tokens
// are remapped to dense ids in order of first appearance. With
// directed=false each line yields both directions (equal weight).
Graph load_edge_list(const std::string& text, bool directed);
Graph load_edge_list_file(const std::string& path, bool directed);

// Barabasi-Albert preferential attachment, stored bidirected, weights unset.
// Starts from a clique on m_attach+1 nodes; each new node attaches to
// m_attach distinct existing nodes, degree-proportionally (repeated draws,
// repeats discarded). Requires n > m_attach >= 1.
Graph generate_barabasi_albert(int n, int m_attach, std::uint64_t rng_seed);

// Draws every edge weight i.i.d. uniform on [0, w_max]. Bidirected pairs
// (u,v)/(v,u) share one draw so undirected inputs keep equal weights.
Graph assign_uniform_weights(const Graph& graph, double w_max,
                             std::uint64_t rng_seed);

// A set of m >= 1 non-empty node groups; groups may overlap and need not
// cover the node set. Members are sorted, ids dense in [0, n).
struct CommunityStructure {
  std::vector<std::vector<int>> communities;
  std::vector<std::string> labels;  // same length as communities

  int size() const { return static_cast<int>(communities.size()); }
  const std::vector<int>& operator[](int i) const {
    return communities[static_cast<std::size_t>(i)];
  }
  // Throws when empty, a community is empty, or an id is out of [0, n).
  void validate(int node_count) const;
};

enum class CommunityScheme { kSingleton, kRandom, kBfs, kRandomOverlap };

CommunityScheme community_scheme_from_string(const std::string& name);
std::string to_string(CommunityScheme scheme);

CommunityStructure singleton_communities(int node_count);
// singleton: n groups {v}. random: each node goes u.a.r. to one of m groups,
// empty groups removed. bfs: m groups of size ~n/m grown by BFS over
// out-edges from random unassigned sources (ties in ascending node id; a new
// random source is drawn when the frontier empties). random_overlap: per
// node one draw among m+2 options (group i, none, or all m).
CommunityStructure build_communities(const Graph& graph, CommunityScheme scheme,
                                     int m, std::uint64_t rng_seed);

// Parses `node_token community_id` lines; one community per distinct id, in
// order of first appearance. Unknown node tokens are an error.
CommunityStructure load_communities(const Graph& graph, const std::string& text);
CommunityStructure load_communities_file(const Graph& graph, const std::string& path);

}  // namespace fairspread
