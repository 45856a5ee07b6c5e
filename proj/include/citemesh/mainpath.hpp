#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "citemesh/bigint.hpp"
#include "citemesh/citegraph.hpp"
#include "citemesh/common.hpp"

namespace citemesh {

struct AcyclicPrepReport {
  int n_weak_components = 0;
  int largest_component_size = 0;
  int n_strong_components_shrunk = 0;
  int n_loops_removed = 0;
  /// Original document key -> vertex index in the prepared graph; members of
  /// a shrunk strong component all map to the same vertex.
  std::map<std::string, int> vertex_map;
};

namespace detail {

inline std::vector<std::vector<int>> out_adjacency(const CitationGraph& g) {
  std::vector<std::vector<int>> adj(g.keys.size());
  for (const auto& [from, to] : g.arcs) adj[from].push_back(to);
  return adj;
}

inline std::vector<std::vector<int>> undirected_adjacency(const CitationGraph& g) {
  std::vector<std::vector<int>> adj(g.keys.size());
  for (const auto& [from, to] : g.arcs) {
    if (from == to) continue;
    adj[from].push_back(to);
    adj[to].push_back(from);
  }
  return adj;
}

/// Orders document keys the way shrunk-vertex representatives are chosen:
/// all-digit keys numerically, anything else lexicographically after them.
inline bool key_less(const std::string& a, const std::string& b) {
  const bool da = all_digits(a), db = all_digits(b);
  if (da && db) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
  if (da != db) return da;
  return a < b;
}

}  // namespace detail

/// Induced subgraph on the largest weakly connected vertex set; ties go to
/// the component containing the smallest vertex index.
inline CitationGraph extract_largest_weak_component(const CitationGraph& g,
                                                    AcyclicPrepReport* report = nullptr) {
  if (g.keys.empty()) throw DataError("empty citation graph");
  const int n = static_cast<int>(g.keys.size());
  const auto adj = detail::undirected_adjacency(g);
  std::vector<int> comp(n, -1);
  int n_comps = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] != -1) continue;
    std::vector<int> stack{start};
    comp[start] = n_comps;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (comp[w] == -1) {
          comp[w] = n_comps;
          stack.push_back(w);
        }
      }
    }
    ++n_comps;
  }
  std::vector<int> size(n_comps, 0);
  for (int v = 0; v < n; ++v) ++size[comp[v]];
  // components are numbered by their smallest member, so the first maximal
  // one realizes the smallest-minimum-index tie rule
  int best = 0;
  for (int c = 1; c < n_comps; ++c)
    if (size[c] > size[best]) best = c;

  CitationGraph out;
  std::vector<int> remap(n, -1);
  for (int v = 0; v < n; ++v) {
    if (comp[v] != best) continue;
    remap[v] = static_cast<int>(out.keys.size());
    out.keys.push_back(g.keys[v]);
  }
  std::set<std::pair<int, int>> arcs;
  for (const auto& [from, to] : g.arcs)
    if (remap[from] != -1 && remap[to] != -1)
      arcs.emplace(remap[from], remap[to]);
  out.arcs.assign(arcs.begin(), arcs.end());

  if (report) {
    report->n_weak_components = n_comps;
    report->largest_component_size = size[best];
    report->vertex_map.clear();
    for (int v = 0; v < n; ++v)
      if (remap[v] != -1) report->vertex_map[g.keys[v]] = remap[v];
  }
  return out;
}

/// Replaces every strongly connected component of two or more vertices by a
/// single vertex labelled by its earliest-published member (smallest key on
/// ties). Arcs inside a component disappear; parallel arcs collapse.
inline CitationGraph condense_strong_components(
    const CitationGraph& g, AcyclicPrepReport* report = nullptr,
    const std::function<std::optional<int>(const std::string&)>& year_of = {}) {
  const int n = static_cast<int>(g.keys.size());
  const auto adj = detail::out_adjacency(g);

  // iterative Tarjan
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0, n_comps = 0;
  struct Frame {
    int v;
    std::size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = n_comps;
            if (w == f.v) break;
          }
          ++n_comps;
        }
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }

  std::vector<std::vector<int>> members(n_comps);
  for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);

  // new vertices ordered by each group's smallest original index
  std::vector<int> order(n_comps);
  for (int c = 0; c < n_comps; ++c) order[c] = c;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return members[a].front() < members[b].front(); });

  CitationGraph out;
  std::vector<int> comp_to_new(n_comps, -1);
  int shrunk = 0;
  for (int c : order) {
    comp_to_new[c] = static_cast<int>(out.keys.size());
    if (members[c].size() == 1) {
      out.keys.push_back(g.keys[members[c].front()]);
      continue;
    }
    ++shrunk;
    int rep = members[c].front();
    auto year = [&](int u) -> std::optional<int> {
      return year_of ? year_of(g.keys[u]) : std::optional<int>{};
    };
    for (int v : members[c]) {
      const auto yv = year(v), yr = year(rep);
      const int a = yv ? *yv : std::numeric_limits<int>::max();
      const int b = yr ? *yr : std::numeric_limits<int>::max();
      if (a < b || (a == b && detail::key_less(g.keys[v], g.keys[rep]))) rep = v;
    }
    out.keys.push_back(g.keys[rep]);
  }

  std::set<std::pair<int, int>> arcs;
  for (const auto& [from, to] : g.arcs) {
    if (comp[from] == comp[to] && members[comp[from]].size() > 1)
      continue;  // arc inside a shrunk component
    arcs.emplace(comp_to_new[comp[from]], comp_to_new[comp[to]]);
  }
  out.arcs.assign(arcs.begin(), arcs.end());

  if (report) {
    report->n_strong_components_shrunk += shrunk;
    report->vertex_map.clear();
    for (int v = 0; v < n; ++v)
      report->vertex_map[g.keys[v]] = comp_to_new[comp[v]];
  }
  return out;
}

/// Deletes self-arcs.
inline CitationGraph remove_loops(const CitationGraph& g,
                                  AcyclicPrepReport* report = nullptr) {
  CitationGraph out;
  out.keys = g.keys;
  int removed = 0;
  for (const auto& arc : g.arcs) {
    if (arc.first == arc.second)
      ++removed;
    else
      out.arcs.push_back(arc);
  }
  if (report) report->n_loops_removed += removed;
  return out;
}

struct PreparedGraph {
  CitationGraph graph;
  AcyclicPrepReport report;
};

/// Largest weak component -> shrink strong components -> remove loops.
/// The result is a weakly connected DAG; running the pipeline on its own
/// output changes nothing.
inline PreparedGraph prepare_acyclic(
    const CitationGraph& g,
    const std::function<std::optional<int>(const std::string&)>& year_of = {}) {
  PreparedGraph out;
  CitationGraph largest = extract_largest_weak_component(g, &out.report);
  CitationGraph condensed = condense_strong_components(largest, &out.report, year_of);
  out.graph = remove_loops(condensed, &out.report);
  return out;
}

// ---------------------------------------------------------------------------
// Search Path Count weighting
// ---------------------------------------------------------------------------

/// Traversal counts on a DAG with a virtual source feeding every in-degree-0
/// vertex and a virtual sink fed by every out-degree-0 vertex. The weight of
/// arc u->v is source_counts[u] * sink_counts[v]: the number of distinct
/// source-to-sink paths through that arc.
struct SpcWeights {
  std::vector<BigUint> source_counts;
  std::vector<BigUint> sink_counts;
  std::vector<BigUint> arc_weights;  // parallel to graph.arcs
};

namespace detail {

/// Kahn topological order; nullopt when a cycle exists.
inline std::optional<std::vector<int>> topological_order(const CitationGraph& g) {
  const int n = static_cast<int>(g.keys.size());
  std::vector<int> in_deg(n, 0);
  const auto adj = out_adjacency(g);
  for (const auto& [from, to] : g.arcs) {
    (void)from;
    ++in_deg[to];
  }
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (in_deg[v] == 0) queue.push_back(v);
  std::vector<int> order;
  order.reserve(n);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    order.push_back(v);
    for (int w : adj[v])
      if (--in_deg[w] == 0) queue.push_back(w);
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

inline std::string describe_cycle(const CitationGraph& g) {
  // peel vertices that cannot lie on a cycle (in- or out-degree zero), then
  // walk successors inside the remainder until one repeats
  const int n = static_cast<int>(g.keys.size());
  const auto adj = out_adjacency(g);
  std::vector<std::vector<int>> radj(n);
  for (const auto& [from, to] : g.arcs) radj[to].push_back(from);
  std::vector<int> in_deg(n, 0), out_deg(n, 0);
  for (const auto& [from, to] : g.arcs) {
    ++in_deg[to];
    ++out_deg[from];
  }
  std::vector<bool> removed(n, false);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    if (in_deg[v] == 0 || out_deg[v] == 0) {
      removed[v] = true;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int w : adj[v]) {
      if (!removed[w] && --in_deg[w] == 0) {
        removed[w] = true;
        queue.push_back(w);
      }
    }
    for (int w : radj[v]) {
      if (!removed[w] && --out_deg[w] == 0) {
        removed[w] = true;
        queue.push_back(w);
      }
    }
  }

  int start = 0;
  while (start < n && removed[start]) ++start;
  if (start == n) return "cycle not isolated";
  std::vector<int> path;
  std::vector<int> seen_at(n, -1);
  int cur = start;
  while (seen_at[cur] == -1) {
    seen_at[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    for (int w : adj[cur]) {
      if (!removed[w]) {
        cur = w;
        break;
      }
    }
  }
  std::string out = "cycle:";
  for (std::size_t i = static_cast<std::size_t>(seen_at[cur]); i < path.size(); ++i)
    out += " " + g.keys[path[i]] + " ->";
  out += " " + g.keys[cur];
  return out;
}

}  // namespace detail

/// SPC weights of an acyclic graph. Throws DataError describing one cycle
/// when the graph is not a DAG.
inline SpcWeights spc(const CitationGraph& g) {
  auto order = detail::topological_order(g);
  if (!order) throw DataError("graph is not acyclic; " + detail::describe_cycle(g));
  const int n = static_cast<int>(g.keys.size());
  const auto adj = detail::out_adjacency(g);
  std::vector<std::vector<int>> radj(n);
  for (const auto& [from, to] : g.arcs) radj[to].push_back(from);

  SpcWeights w;
  w.source_counts.assign(n, BigUint{});
  w.sink_counts.assign(n, BigUint{});
  for (int v : *order) {
    if (radj[v].empty()) {
      w.source_counts[v] = 1;
    } else {
      for (int u : radj[v]) w.source_counts[v] += w.source_counts[u];
    }
  }
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const int v = *it;
    if (adj[v].empty()) {
      w.sink_counts[v] = 1;
    } else {
      for (int u : adj[v]) w.sink_counts[v] += w.sink_counts[u];
    }
  }
  w.arc_weights.reserve(g.arcs.size());
  for (const auto& [from, to] : g.arcs)
    w.arc_weights.push_back(w.source_counts[from] * w.sink_counts[to]);
  return w;
}

// ---------------------------------------------------------------------------
// Main path extraction
// ---------------------------------------------------------------------------

enum class MainPathVariant { local, global_standard, key_route };

struct MainPathResult {
  MainPathVariant variant = MainPathVariant::global_standard;
  int k = 1;
  std::vector<std::pair<int, int>> arcs;  // prepared-graph indices, sorted
  std::vector<int> vertices;              // induced, sorted
  BigUint total_weight;                   // global_standard only
};

namespace detail {

struct PathContext {
  const CitationGraph* g = nullptr;
  std::vector<std::vector<std::pair<int, int>>> out;  // (head, arc idx)
  std::vector<std::vector<std::pair<int, int>>> in;   // (tail, arc idx)
  const SpcWeights* w = nullptr;
  std::vector<int> topo;
  /// best_to_sink[v]: maximal sum of real arc weights over paths v -> sink.
  std::vector<BigUint> best_to_sink;

  explicit PathContext(const CitationGraph& graph, const SpcWeights& weights) {
    g = &graph;
    w = &weights;
    const int n = static_cast<int>(graph.keys.size());
    out.resize(n);
    in.resize(n);
    for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
      out[graph.arcs[a].first].emplace_back(graph.arcs[a].second, static_cast<int>(a));
      in[graph.arcs[a].second].emplace_back(graph.arcs[a].first, static_cast<int>(a));
    }
    auto order = topological_order(graph);
    if (!order) throw DataError("graph is not acyclic; " + describe_cycle(graph));
    topo = std::move(*order);
    best_to_sink.assign(n, BigUint{});
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const int v = *it;
      for (const auto& [head, arc] : out[v]) {
        BigUint cand = weights.arc_weights[arc] + best_to_sink[head];
        if (cand > best_to_sink[v]) best_to_sink[v] = cand;
      }
    }
  }

  /// Greedy continuation from `v` to a sink along maximal-weight arcs,
  /// taking the smallest head index on ties: the lexicographically smallest
  /// optimal completion.
  void follow_best_to_sink(int v, std::vector<int>& vertices,
                           std::vector<std::pair<int, int>>& arcs) const {
    int cur = v;
    while (!out[cur].empty()) {
      int next = -1;
      for (const auto& [head, arc] : out[cur]) {
        BigUint cand = w->arc_weights[arc] + best_to_sink[head];
        if (cand == best_to_sink[cur] && (next == -1 || head < next)) next = head;
      }
      arcs.emplace_back(cur, next);
      vertices.push_back(next);
      cur = next;
    }
  }

  /// Lexicographically smallest maximal-weight path from any source vertex
  /// to `target` (inclusive). Returns vertices in path order.
  std::vector<int> best_path_to(int target) const {
    const int n = static_cast<int>(g->keys.size());
    // rem[v]: max real-arc weight of a v -> target path; unset when v
    // cannot reach target
    std::vector<std::optional<BigUint>> rem(n);
    rem[target] = BigUint{};
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const int v = *it;
      if (v == target) continue;
      for (const auto& [head, arc] : out[v]) {
        if (!rem[head]) continue;
        BigUint cand = w->arc_weights[arc] + *rem[head];
        if (!rem[v] || cand > *rem[v]) rem[v] = cand;
      }
    }
    int start = -1;
    for (int v = 0; v < n; ++v) {
      if (!in[v].empty() || !rem[v]) continue;  // sources that reach target
      if (start == -1 || *rem[v] > *rem[start]) start = v;
    }
    if (start == -1) return {target};  // target is itself a source
    std::vector<int> path{start};
    int cur = start;
    while (cur != target) {
      int next = -1;
      for (const auto& [head, arc] : out[cur]) {
        if (!rem[head]) continue;
        if (w->arc_weights[arc] + *rem[head] == *rem[cur] &&
            (next == -1 || head < next))
          next = head;
      }
      path.push_back(next);
      cur = next;
    }
    return path;
  }
};

}  // namespace detail

/// Extracts a main path from an SPC-weighted DAG.
///
///  * local: from the virtual source, repeatedly follow every maximal-weight
///    outgoing arc (per frontier vertex); ties branch in parallel.
///  * global_standard: the simple source-to-sink path with maximal total arc
///    weight; ties resolve to the lexicographically smallest vertex sequence.
///  * key_route: the k heaviest arcs (ties by smallest (tail, head) pair),
///    each extended with maximal-weight paths to a source and a sink.
inline MainPathResult main_path(const CitationGraph& g, const SpcWeights& w,
                                MainPathVariant variant, int k = 1) {
  if (g.keys.empty()) throw DataError("empty graph");
  if (k < 1) throw DataError("key-route k must be >= 1");
  if (w.arc_weights.size() != g.arcs.size())
    throw DataError("weights were not computed on this graph");
  detail::PathContext ctx(g, w);
  const int n = static_cast<int>(g.keys.size());

  MainPathResult result;
  result.variant = variant;
  result.k = k;
  std::set<std::pair<int, int>> arcs;
  std::set<int> vertices;

  if (variant == MainPathVariant::local) {
    // virtual arcs source->v weigh sink_counts[v], v->sink source_counts[v]
    BigUint best_entry;
    for (int v = 0; v < n; ++v)
      if (ctx.in[v].empty() && w.sink_counts[v] > best_entry)
        best_entry = w.sink_counts[v];
    std::vector<int> frontier;
    std::vector<bool> visited(n, false);
    for (int v = 0; v < n; ++v) {
      if (ctx.in[v].empty() && w.sink_counts[v] == best_entry) {
        frontier.push_back(v);
        visited[v] = true;
        vertices.insert(v);
      }
    }
    while (!frontier.empty()) {
      std::vector<int> next_frontier;
      for (int v : frontier) {
        if (ctx.out[v].empty()) continue;  // only the virtual sink remains
        BigUint best;
        for (const auto& [head, arc] : ctx.out[v]) {
          (void)head;
          if (w.arc_weights[arc] > best) best = w.arc_weights[arc];
        }
        for (const auto& [head, arc] : ctx.out[v]) {
          if (!(w.arc_weights[arc] == best)) continue;
          arcs.emplace(v, head);
          vertices.insert(head);
          if (!visited[head]) {
            visited[head] = true;
            next_frontier.push_back(head);
          }
        }
      }
      frontier = std::move(next_frontier);
    }
  } else if (variant == MainPathVariant::global_standard) {
    int start = -1;
    for (int v = 0; v < n; ++v) {
      if (!ctx.in[v].empty()) continue;
      if (start == -1 || ctx.best_to_sink[v] > ctx.best_to_sink[start]) start = v;
    }
    result.total_weight = ctx.best_to_sink[start];
    std::vector<int> path_vertices{start};
    std::vector<std::pair<int, int>> path_arcs;
    ctx.follow_best_to_sink(start, path_vertices, path_arcs);
    vertices.insert(path_vertices.begin(), path_vertices.end());
    arcs.insert(path_arcs.begin(), path_arcs.end());
  } else {
    std::vector<int> ranked(g.arcs.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i] = static_cast<int>(i);
    std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
      if (!(w.arc_weights[a] == w.arc_weights[b]))
        return w.arc_weights[a] > w.arc_weights[b];
      return g.arcs[a] < g.arcs[b];
    });
    const std::size_t take = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < take; ++i) {
      const auto [tail, head] = g.arcs[ranked[i]];
      arcs.emplace(tail, head);
      vertices.insert(tail);
      vertices.insert(head);
      std::vector<int> prefix = ctx.best_path_to(tail);
      for (std::size_t p = 0; p + 1 < prefix.size(); ++p) {
        arcs.emplace(prefix[p], prefix[p + 1]);
        vertices.insert(prefix[p]);
        vertices.insert(prefix[p + 1]);
      }
      std::vector<int> suffix_vertices{head};
      std::vector<std::pair<int, int>> suffix_arcs;
      ctx.follow_best_to_sink(head, suffix_vertices, suffix_arcs);
      vertices.insert(suffix_vertices.begin(), suffix_vertices.end());
      arcs.insert(suffix_arcs.begin(), suffix_arcs.end());
    }
  }

  result.arcs.assign(arcs.begin(), arcs.end());
  result.vertices.assign(vertices.begin(), vertices.end());
  return result;
}

}  // namespace citemesh
