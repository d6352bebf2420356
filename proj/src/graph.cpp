#include "fairspread/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "fairspread/rng.hpp"

namespace fairspread {

namespace {

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) labels[static_cast<std::size_t>(v)] = std::to_string(v);
  return labels;
}

}  // namespace

Graph::Graph(int node_count, std::vector<Edge> edges, std::vector<std::string> labels)
    : n_(node_count), labels_(std::move(labels)) {
  if (n_ < 0) throw std::invalid_argument("graph: negative node count");
  if (labels_.empty()) labels_ = default_labels(n_);
  if (static_cast<int>(labels_.size()) != n_)
    throw std::invalid_argument("graph: label count does not match node count");

  for (const Edge& e : edges) {
    if (e.src < 0 || e.src >= n_ || e.dst < 0 || e.dst >= n_)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (e.weight != Edge::kUnsetWeight && (e.weight < 0.0 || e.weight > 1.0))
      throw std::invalid_argument("graph: edge weight outside [0,1]");
  }

  // Canonical order; duplicates merged keeping the first weight. stable_sort
  // preserves input order inside each (src, dst) group.
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (!edges_.empty() && edges_.back().src == e.src && edges_.back().dst == e.dst)
      continue;
    edges_.push_back(e);
  }

  out_offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  in_offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const Edge& e : edges_) {
    ++out_offsets_[static_cast<std::size_t>(e.src) + 1];
    ++in_offsets_[static_cast<std::size_t>(e.dst) + 1];
  }
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
  out_index_.resize(edges_.size());
  in_index_.resize(edges_.size());
  std::vector<int> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<int> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    out_index_[static_cast<std::size_t>(out_fill[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].src)]++)] = e;
    in_index_[static_cast<std::size_t>(in_fill[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].dst)]++)] = e;
  }

  for (int v = 0; v < n_; ++v) id_by_label_.emplace(labels_[static_cast<std::size_t>(v)], v);
}

std::span<const int> Graph::out_edges(int v) const {
  const auto lo = static_cast<std::size_t>(out_offsets_[static_cast<std::size_t>(v)]);
  const auto hi = static_cast<std::size_t>(out_offsets_[static_cast<std::size_t>(v) + 1]);
  return {out_index_.data() + lo, hi - lo};
}

std::span<const int> Graph::in_edges(int v) const {
  const auto lo = static_cast<std::size_t>(in_offsets_[static_cast<std::size_t>(v)]);
  const auto hi = static_cast<std::size_t>(in_offsets_[static_cast<std::size_t>(v) + 1]);
  return {in_index_.data() + lo, hi - lo};
}

int Graph::out_degree(int v) const { return static_cast<int>(out_edges(v).size()); }
int Graph::in_degree(int v) const { return static_cast<int>(in_edges(v).size()); }

int Graph::node_id(const std::string& token) const {
  const auto it = id_by_label_.find(token);
  return it == id_by_label_.end() ? -1 : it->second;
}

bool Graph::has_unset_weights() const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return !e.has_weight(); });
}

int Graph::stochastic_edge_count() const {
  int count = 0;
  for (const Edge& e : edges_)
    if (e.weight > 0.0 && e.weight < 1.0) ++count;
  return count;
}

Graph load_edge_list(const std::string& text, bool directed) {
  std::unordered_map<std::string, int> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;

  auto intern = [&](const std::string& token) {
    auto [it, fresh] = ids.emplace(token, static_cast<int>(labels.size()));
    if (fresh) labels.push_back(token);
    return it->second;
  };

  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string u, v;
    if (!(fields >> u)) continue;  // blank line
    if (!(fields >> v))
      throw std::runtime_error("edge list: line " + std::to_string(line_no) +
                               ": expected `u v [w]`");
    double w = Edge::kUnsetWeight;
    std::string w_token;
    if (fields >> w_token) {
      try {
        std::size_t used = 0;
        w = std::stod(w_token, &used);
        if (used != w_token.size()) throw std::invalid_argument(w_token);
      } catch (const std::exception&) {
        throw std::runtime_error("edge list: line " + std::to_string(line_no) +
                                 ": bad weight `" + w_token + "`");
      }
      if (w < 0.0 || w > 1.0)
        throw std::runtime_error("edge list: line " + std::to_string(line_no) +
                                 ": weight outside [0,1]");
    }
    std::string extra;
    if (fields >> extra)
      throw std::runtime_error("edge list: line " + std::to_string(line_no) +
                               ": trailing field `" + extra + "`");
    const int a = intern(u), b = intern(v);
    edges.push_back({a, b, w});
    if (!directed) edges.push_back({b, a, w});
  }
  const int node_count = static_cast<int>(labels.size());
  return Graph(node_count, std::move(edges), std::move(labels));
}

Graph load_edge_list_file(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_edge_list(buffer.str(), directed);
}

Graph generate_barabasi_albert(int n, int m_attach, std::uint64_t rng_seed) {
  if (m_attach < 1) throw std::invalid_argument("barabasi_albert: m_attach must be >= 1");
  if (n <= m_attach)
    throw std::invalid_argument("barabasi_albert: need n > m_attach");

  Rng rng(rng_seed);
  std::vector<Edge> edges;
  // One entry per degree endpoint; drawing uniformly from it is a
  // degree-proportional draw.
  std::vector<int> endpoints;

  auto add_undirected = [&](int u, int v) {
    edges.push_back({u, v, Edge::kUnsetWeight});
    edges.push_back({v, u, Edge::kUnsetWeight});
    endpoints.push_back(u);
    endpoints.push_back(v);
  };

  const int seed_nodes = m_attach + 1;
  for (int u = 0; u < seed_nodes; ++u)
    for (int v = u + 1; v < seed_nodes; ++v) add_undirected(u, v);

  std::vector<int> chosen;
  for (int v = seed_nodes; v < n; ++v) {
    chosen.clear();
    while (static_cast<int>(chosen.size()) < m_attach) {
      const int target = endpoints[rng.uniform_int(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), target) == chosen.end())
        chosen.push_back(target);
    }
    for (int target : chosen) add_undirected(v, target);
  }
  return Graph(n, std::move(edges));
}

Graph assign_uniform_weights(const Graph& graph, double w_max, std::uint64_t rng_seed) {
  if (!(w_max > 0.0 && w_max <= 1.0))
    throw std::invalid_argument("assign_uniform_weights: w_max must be in (0,1]");

  Rng rng(rng_seed);
  std::vector<Edge> edges = graph.edges();
  // Edges are in canonical (src, dst) order, so pair lookups are binary
  // searches and the draw sequence is reproducible.
  auto find_edge = [&](int src, int dst) {
    const auto it = std::lower_bound(
        edges.begin(), edges.end(), std::pair<int, int>{src, dst},
        [](const Edge& e, const std::pair<int, int>& key) {
          return e.src != key.first ? e.src < key.first : e.dst < key.second;
        });
    if (it != edges.end() && it->src == src && it->dst == dst)
      return static_cast<int>(it - edges.begin());
    return -1;
  };

  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    Edge& cur = edges[static_cast<std::size_t>(e)];
    const int rev = find_edge(cur.dst, cur.src);
    if (rev >= 0 && rev < e) continue;  // reverse direction already drew
    const double w = rng.uniform(0.0, w_max);
    cur.weight = w;
    if (rev >= 0) edges[static_cast<std::size_t>(rev)].weight = w;
  }

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(graph.node_count()));
  for (int v = 0; v < graph.node_count(); ++v) labels.push_back(graph.label(v));
  return Graph(graph.node_count(), std::move(edges), std::move(labels));
}

void CommunityStructure::validate(int node_count) const {
  if (communities.empty())
    throw std::invalid_argument("community structure: need m >= 1 communities");
  for (const auto& community : communities) {
    if (community.empty())
      throw std::invalid_argument("community structure: empty community");
    for (int v : community)
      if (v < 0 || v >= node_count)
        throw std::invalid_argument("community structure: member id out of range");
  }
}

CommunityScheme community_scheme_from_string(const std::string& name) {
  if (name == "singleton") return CommunityScheme::kSingleton;
  if (name == "random") return CommunityScheme::kRandom;
  if (name == "bfs") return CommunityScheme::kBfs;
  if (name == "random_overlap") return CommunityScheme::kRandomOverlap;
  throw std::invalid_argument("unknown community scheme: " + name);
}

std::string to_string(CommunityScheme scheme) {
  switch (scheme) {
    case CommunityScheme::kSingleton: return "singleton";
    case CommunityScheme::kRandom: return "random";
    case CommunityScheme::kBfs: return "bfs";
    case CommunityScheme::kRandomOverlap: return "random_overlap";
  }
  return "?";
}

CommunityStructure singleton_communities(int node_count) {
  CommunityStructure cs;
  cs.communities.reserve(static_cast<std::size_t>(node_count));
  for (int v = 0; v < node_count; ++v) {
    cs.communities.push_back({v});
    cs.labels.push_back(std::to_string(v));
  }
  cs.validate(node_count);
  return cs;
}

namespace {

CommunityStructure finalize_groups(std::vector<std::vector<int>> groups, int n) {
  CommunityStructure cs;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].empty()) continue;
    std::sort(groups[i].begin(), groups[i].end());
    cs.communities.push_back(std::move(groups[i]));
    cs.labels.push_back(std::to_string(i));
  }
  cs.validate(n);
  return cs;
}

CommunityStructure bfs_communities(const Graph& graph, int m, Rng& rng) {
  const int n = graph.node_count();
  // Target sizes floor(n/m), remainder spread over the first communities.
  std::vector<int> target(static_cast<std::size_t>(m), n / m);
  for (int i = 0; i < n % m; ++i) ++target[static_cast<std::size_t>(i)];

  std::vector<bool> assigned(static_cast<std::size_t>(n), false);
  std::vector<int> unassigned(static_cast<std::size_t>(n));
  std::iota(unassigned.begin(), unassigned.end(), 0);
  auto draw_unassigned = [&] {
    // unassigned is kept sorted; draws are deterministic under the seed.
    const auto pos = rng.uniform_int(unassigned.size());
    return unassigned[static_cast<std::size_t>(pos)];
  };
  auto mark_assigned = [&](int v) {
    assigned[static_cast<std::size_t>(v)] = true;
    const auto it = std::lower_bound(unassigned.begin(), unassigned.end(), v);
    unassigned.erase(it);
  };

  std::vector<std::vector<int>> groups(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto& group = groups[static_cast<std::size_t>(i)];
    std::vector<int> frontier;
    while (static_cast<int>(group.size()) < target[static_cast<std::size_t>(i)]) {
      if (frontier.empty()) {
        const int source = draw_unassigned();
        mark_assigned(source);
        group.push_back(source);
        frontier.push_back(source);
        continue;
      }
      // Expand the whole frontier, visiting new nodes in ascending id.
      std::vector<int> next;
      for (int u : frontier)
        for (int e : graph.out_edges(u)) {
          const int v = graph.edge(e).dst;
          if (!assigned[static_cast<std::size_t>(v)] &&
              std::find(next.begin(), next.end(), v) == next.end())
            next.push_back(v);
        }
      std::sort(next.begin(), next.end());
      frontier.clear();
      for (int v : next) {
        if (static_cast<int>(group.size()) >= target[static_cast<std::size_t>(i)]) break;
        mark_assigned(v);
        group.push_back(v);
        frontier.push_back(v);
      }
    }
  }
  return finalize_groups(std::move(groups), n);
}

}  // namespace

CommunityStructure build_communities(const Graph& graph, CommunityScheme scheme,
                                     int m, std::uint64_t rng_seed) {
  const int n = graph.node_count();
  if (scheme == CommunityScheme::kSingleton) return singleton_communities(n);
  if (m < 1) throw std::invalid_argument("build_communities: need m >= 1");

  Rng rng(rng_seed);
  switch (scheme) {
    case CommunityScheme::kRandom: {
      if (m > n) throw std::invalid_argument("build_communities: m > n");
      std::vector<std::vector<int>> groups(static_cast<std::size_t>(m));
      for (int v = 0; v < n; ++v)
        groups[static_cast<std::size_t>(rng.uniform_int(static_cast<std::uint64_t>(m)))].push_back(v);
      return finalize_groups(std::move(groups), n);
    }
    case CommunityScheme::kBfs: {
      if (m > n) throw std::invalid_argument("build_communities: m > n");
      return bfs_communities(graph, m, rng);
    }
    case CommunityScheme::kRandomOverlap: {
      std::vector<std::vector<int>> groups(static_cast<std::size_t>(m));
      for (int v = 0; v < n; ++v) {
        const auto option = rng.uniform_int(static_cast<std::uint64_t>(m) + 2);
        if (option < static_cast<std::uint64_t>(m)) {
          groups[static_cast<std::size_t>(option)].push_back(v);
        } else if (option == static_cast<std::uint64_t>(m) + 1) {
          for (auto& group : groups) group.push_back(v);
        }
        // option == m: member of no community
      }
      return finalize_groups(std::move(groups), n);
    }
    default:
      throw std::invalid_argument("build_communities: unhandled scheme");
  }
}

CommunityStructure load_communities(const Graph& graph, const std::string& text) {
  std::map<std::string, std::vector<int>> by_id;
  std::vector<std::string> order;

  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string node, community;
    if (!(fields >> node)) continue;
    if (!(fields >> community))
      throw std::runtime_error("communities: line " + std::to_string(line_no) +
                               ": expected `node community`");
    const int v = graph.node_id(node);
    if (v < 0)
      throw std::runtime_error("communities: line " + std::to_string(line_no) +
                               ": unknown node id `" + node + "`");
    auto [it, fresh] = by_id.try_emplace(community);
    if (fresh) order.push_back(community);
    it->second.push_back(v);
  }

  CommunityStructure cs;
  for (const std::string& id : order) {
    auto members = by_id[id];
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    cs.communities.push_back(std::move(members));
    cs.labels.push_back(id);
  }
  cs.validate(graph.node_count());
  return cs;
}

CommunityStructure load_communities_file(const Graph& graph, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open communities file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_communities(graph, buffer.str());
}

}  // namespace fairspread
