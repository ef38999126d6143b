#include "loopsim/graph.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace loopsim {

namespace {

// Subgraph with node ids renumbered to 0..V-1 (ascending global order) and
// CSR adjacency sorted by (neighbor, edge position).
struct LocalGraph {
  int v = 0;
  int e = 0;
  std::vector<std::pair<int, int>> ends;        // per edge: local tail, head
  std::vector<int> off;                         // size v+1
  std::vector<std::pair<int, int>> adj;         // (neighbor, edge position)
};

int local_id(const ErrorSubgraph& g, std::uint32_t global) {
  return static_cast<int>(
      std::lower_bound(g.nodes.begin(), g.nodes.end(), global) -
      g.nodes.begin());
}

LocalGraph make_local(const ErrorSubgraph& g) {
  LocalGraph lg;
  lg.v = static_cast<int>(g.nodes.size());
  lg.e = static_cast<int>(g.edges.size());
  lg.ends.reserve(lg.e);
  for (const auto& e : g.edges) {
    lg.ends.emplace_back(local_id(g, e.tail), local_id(g, e.head));
  }
  lg.off.assign(lg.v + 1, 0);
  for (const auto& [t, h] : lg.ends) {
    ++lg.off[t + 1];
    ++lg.off[h + 1];
  }
  for (int i = 0; i < lg.v; ++i) lg.off[i + 1] += lg.off[i];
  lg.adj.resize(2 * static_cast<std::size_t>(lg.e));
  std::vector<int> cursor(lg.off.begin(), lg.off.end() - 1);
  for (int pos = 0; pos < lg.e; ++pos) {
    const auto& [t, h] = lg.ends[pos];
    lg.adj[cursor[t]++] = {h, pos};
    lg.adj[cursor[h]++] = {t, pos};
  }
  for (int i = 0; i < lg.v; ++i) {
    std::sort(lg.adj.begin() + lg.off[i], lg.adj.begin() + lg.off[i + 1]);
  }
  return lg;
}

// Coordinate extents of one edge, dangling ends mapped to their boundary
// attachment.
std::array<int, 4> edge_extent(const CodeLattice& lat, Side side,
                               int side_edge) {
  const EdgeRef e = lat.edge_ref(side, side_edge);
  int minx = 1 << 30, maxx = -(1 << 30), miny = 1 << 30, maxy = -(1 << 30);
  auto add = [&](int x, int y) {
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  };
  for (const NodeId* n : {&e.tail, &e.head}) {
    if (n->dummy) {
      add(lat.attachment_x(e), e.y);
    } else {
      add(n->x, n->y);
    }
  }
  return {minx, maxx, miny, maxy};
}

struct DfsResult {
  BridgePartition partition;
  int components = 0;
  std::vector<BccBox> bccs;  // filled only when extents given
};

// Iterative low-link pass: bridges, components and (optionally) bounding
// boxes of biconnected components via an edge stack.
DfsResult run_dfs(const LocalGraph& lg,
                  const std::vector<std::array<int, 4>>* extents) {
  DfsResult out;
  out.partition.is_bridge.assign(lg.e, 0);
  std::vector<int> disc(lg.v, 0), low(lg.v, 0), it(lg.v, 0),
      parent_edge(lg.v, -1);
  std::vector<char> edge_seen(lg.e, 0);
  std::vector<int> stack, estack;
  int timer = 1;
  for (int root = 0; root < lg.v; ++root) {
    if (disc[root]) continue;
    ++out.components;
    stack.push_back(root);
    disc[root] = low[root] = timer++;
    it[root] = lg.off[root];
    while (!stack.empty()) {
      const int v = stack.back();
      if (it[v] < lg.off[v + 1]) {
        const auto [w, epos] = lg.adj[it[v]++];
        if (epos == parent_edge[v]) continue;
        if (!edge_seen[epos]) {
          edge_seen[epos] = 1;
          estack.push_back(epos);
        }
        if (!disc[w]) {
          disc[w] = low[w] = timer++;
          parent_edge[w] = epos;
          it[w] = lg.off[w];
          stack.push_back(w);
        } else {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        stack.pop_back();
        const int pe = parent_edge[v];
        if (pe < 0) continue;
        const int u = stack.back();
        low[u] = std::min(low[u], low[v]);
        if (low[v] > disc[u]) out.partition.is_bridge[pe] = 1;
        if (low[v] >= disc[u]) {
          // one biconnected component ends at tree edge pe
          int edge_count = 0;
          std::array<int, 4> box = {1 << 30, -(1 << 30), 1 << 30, -(1 << 30)};
          for (;;) {
            const int e = estack.back();
            estack.pop_back();
            ++edge_count;
            if (extents) {
              const auto& x = (*extents)[e];
              box[0] = std::min(box[0], x[0]);
              box[1] = std::max(box[1], x[1]);
              box[2] = std::min(box[2], x[2]);
              box[3] = std::max(box[3], x[3]);
            }
            if (e == pe) break;
          }
          if (extents && edge_count >= 2) {
            out.bccs.push_back(
                {edge_count, std::max(box[1] - box[0], box[3] - box[2])});
          }
        }
      }
    }
  }
  for (char b : out.partition.is_bridge) {
    if (b) {
      ++out.partition.bridge_count;
    } else {
      ++out.partition.loop_edge_count;
    }
  }
  return out;
}

std::vector<CycleRef> basis_from_local(const LocalGraph& lg) {
  std::vector<CycleRef> cycles;
  std::vector<int> parent_node(lg.v, -1), parent_epos(lg.v, -1),
      depth(lg.v, 0);
  std::vector<char> visited(lg.v, 0), in_tree(lg.e, 0);
  std::vector<int> queue;
  queue.reserve(lg.v);
  for (int root = 0; root < lg.v; ++root) {
    if (visited[root]) continue;
    visited[root] = 1;
    queue.clear();
    queue.push_back(root);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int v = queue[qi];
      for (int a = lg.off[v]; a < lg.off[v + 1]; ++a) {
        const auto [w, epos] = lg.adj[a];
        if (visited[w]) continue;
        visited[w] = 1;
        parent_node[w] = v;
        parent_epos[w] = epos;
        depth[w] = depth[v] + 1;
        in_tree[epos] = 1;
        queue.push_back(w);
      }
    }
  }
  for (int epos = 0; epos < lg.e; ++epos) {
    if (in_tree[epos]) continue;
    int a = lg.ends[epos].first, b = lg.ends[epos].second;
    // chord + the two tree paths up to the lowest common ancestor
    std::vector<int> up_a, up_b;
    while (depth[a] > depth[b]) {
      up_a.push_back(parent_epos[a]);
      a = parent_node[a];
    }
    while (depth[b] > depth[a]) {
      up_b.push_back(parent_epos[b]);
      b = parent_node[b];
    }
    while (a != b) {
      up_a.push_back(parent_epos[a]);
      a = parent_node[a];
      up_b.push_back(parent_epos[b]);
      b = parent_node[b];
    }
    CycleRef c;
    c.edge_pos.reserve(1 + up_a.size() + up_b.size());
    c.edge_pos.push_back(epos);
    c.edge_pos.insert(c.edge_pos.end(), up_b.begin(), up_b.end());
    c.edge_pos.insert(c.edge_pos.end(), up_a.rbegin(), up_a.rend());
    cycles.push_back(std::move(c));
  }
  return cycles;
}

}  // namespace

ErrorSubgraph build_subgraph(const CodeLattice& lattice,
                             const ErrorPattern& pattern, Side side) {
  if (pattern.qudit_count() != lattice.qudit_count()) {
    throw std::invalid_argument("pattern does not match lattice");
  }
  ErrorSubgraph g;
  g.side = side;
  g.edges.reserve(pattern.count());
  for (int q : pattern.indices()) {
    SubgraphEdge e;
    e.qudit = q;
    e.side_edge = side == Side::Primal ? q : lattice.dual_edge_of_qudit(q);
    const EdgeRef ref = lattice.edge_ref(side, e.side_edge);
    e.tail = lattice.node_index(side, ref.tail);
    e.head = lattice.node_index(side, ref.head);
    g.edges.push_back(e);
  }
  g.nodes.reserve(2 * g.edges.size());
  for (const auto& e : g.edges) {
    g.nodes.push_back(e.tail);
    g.nodes.push_back(e.head);
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
  return g;
}

BridgePartition bridges(const ErrorSubgraph& g) {
  return run_dfs(make_local(g), nullptr).partition;
}

int components(const ErrorSubgraph& g) {
  return run_dfs(make_local(g), nullptr).components;
}

long betti(const ErrorSubgraph& g) {
  const LocalGraph lg = make_local(g);
  return static_cast<long>(lg.e) - lg.v + run_dfs(lg, nullptr).components;
}

std::vector<CycleRef> cycle_basis(const ErrorSubgraph& g) {
  return basis_from_local(make_local(g));
}

int loop_span(const CodeLattice& lattice, const ErrorSubgraph& g,
              const CycleRef& cycle) {
  if (cycle.edge_pos.empty()) {
    throw std::invalid_argument("empty walk");
  }
  // parity check: every node of a closed walk has even incidence count
  std::vector<std::uint32_t> touched;
  touched.reserve(2 * cycle.edge_pos.size());
  int minx = 1 << 30, maxx = -(1 << 30), miny = 1 << 30, maxy = -(1 << 30);
  for (int pos : cycle.edge_pos) {
    if (pos < 0 || pos >= static_cast<int>(g.edges.size())) {
      throw std::invalid_argument("walk edge out of range");
    }
    const auto& e = g.edges[pos];
    touched.push_back(e.tail);
    touched.push_back(e.head);
    const auto ext = edge_extent(lattice, g.side, e.side_edge);
    minx = std::min(minx, ext[0]);
    maxx = std::max(maxx, ext[1]);
    miny = std::min(miny, ext[2]);
    maxy = std::max(maxy, ext[3]);
  }
  std::sort(touched.begin(), touched.end());
  for (std::size_t i = 0; i < touched.size();) {
    std::size_t j = i;
    while (j < touched.size() && touched[j] == touched[i]) ++j;
    if ((j - i) % 2 != 0) {
      throw std::invalid_argument("walk is not closed");
    }
    i = j;
  }
  return std::max(maxx - minx, maxy - miny);
}

SubgraphAnalysis analyze_subgraph(const CodeLattice& lattice,
                                  const ErrorSubgraph& g) {
  SubgraphAnalysis a;
  a.node_count = static_cast<int>(g.nodes.size());
  a.edge_count = static_cast<int>(g.edges.size());
  const LocalGraph lg = make_local(g);
  std::vector<std::array<int, 4>> extents;
  extents.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    extents.push_back(edge_extent(lattice, g.side, e.side_edge));
  }
  DfsResult dfs = run_dfs(lg, &extents);
  a.component_count = dfs.components;
  a.b1 = static_cast<long>(a.edge_count) - a.node_count + a.component_count;
  a.bridge_partition = std::move(dfs.partition);
  a.bccs = std::move(dfs.bccs);
  for (const auto& b : a.bccs) a.max_bcc_span = std::max(a.max_bcc_span, b.span);
  if (a.b1 > 0) {
    a.cycles = basis_from_local(lg);
    a.cycle_spans.reserve(a.cycles.size());
    a.cycle_node_counts.reserve(a.cycles.size());
    for (const auto& c : a.cycles) {
      const int span = loop_span(lattice, g, c);
      const int nodes = static_cast<int>(c.edge_pos.size());
      a.cycle_spans.push_back(span);
      a.cycle_node_counts.push_back(nodes);
      a.max_cycle_span = std::max(a.max_cycle_span, span);
      a.max_cycle_nodes = std::max(a.max_cycle_nodes, nodes);
    }
  }
  return a;
}

SampleRecord loop_metrics(const CodeLattice& lattice,
                          const ErrorPattern& pattern) {
  SampleRecord rec;
  rec.n_err = pattern.count();
  if (rec.n_err == 0) return rec;
  const ErrorSubgraph gp = build_subgraph(lattice, pattern, Side::Primal);
  const ErrorSubgraph gd = build_subgraph(lattice, pattern, Side::Dual);
  const SubgraphAnalysis ap = analyze_subgraph(lattice, gp);
  const SubgraphAnalysis ad = analyze_subgraph(lattice, gd);
  // both subgraphs list edges in ascending qudit order
  for (int k = 0; k < rec.n_err; ++k) {
    if (!ap.bridge_partition.is_bridge[k] || !ad.bridge_partition.is_bridge[k]) {
      ++rec.n_loop_qudits;
    }
  }
  rec.has_loop = ap.b1 + ad.b1 >= 1;
  rec.l_max = std::max(ap.max_cycle_span, ad.max_cycle_span);
  rec.n_max = std::max(ap.max_cycle_nodes, ad.max_cycle_nodes);
  return rec;
}

}  // namespace loopsim
