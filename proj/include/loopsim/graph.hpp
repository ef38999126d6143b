#pragma once

#include <cstdint>
#include <vector>

#include "loopsim/lattice.hpp"
#include "loopsim/sampling.hpp"

namespace loopsim {

struct SubgraphEdge {
  int qudit = 0;      // originating qudit
  int side_edge = 0;  // edge index on this side
  std::uint32_t tail = 0;  // compact node ids; 0 is the contracted node
  std::uint32_t head = 0;
};

// Erroneous edges of one side plus the nodes they touch.  `nodes` is sorted
// ascending; the contracted node appears only if some dangling edge is in
// error.
struct ErrorSubgraph {
  Side side = Side::Primal;
  std::vector<std::uint32_t> nodes;
  std::vector<SubgraphEdge> edges;
};

ErrorSubgraph build_subgraph(const CodeLattice& lattice,
                             const ErrorPattern& pattern, Side side);

struct BridgePartition {
  std::vector<char> is_bridge;  // per subgraph edge
  int bridge_count = 0;
  int loop_edge_count = 0;
};

BridgePartition bridges(const ErrorSubgraph& g);

int components(const ErrorSubgraph& g);

// First Betti number b1 = E - V + C; zero exactly when the subgraph is a
// forest.
long betti(const ErrorSubgraph& g);

// Closed walk given as positions into ErrorSubgraph::edges, in traversal
// order.  Fundamental cycles are simple, so the node count equals the edge
// count.
struct CycleRef {
  std::vector<int> edge_pos;
};

// Fundamental cycles off a breadth-first spanning forest (lowest node id
// first, neighbors in ascending order), one per non-tree edge.
std::vector<CycleRef> cycle_basis(const ErrorSubgraph& g);

// Longest side of the loop's bounding rectangle.  Dangling edges contribute
// their attachment point on the contracted boundary.
int loop_span(const CodeLattice& lattice, const ErrorSubgraph& g,
              const CycleRef& cycle);

struct BccBox {
  int edge_count = 0;
  int span = 0;
};

struct SubgraphAnalysis {
  int node_count = 0;
  int edge_count = 0;
  int component_count = 0;
  long b1 = 0;
  BridgePartition bridge_partition;
  std::vector<CycleRef> cycles;
  std::vector<int> cycle_spans;
  std::vector<int> cycle_node_counts;
  std::vector<BccBox> bccs;  // biconnected components with >= 2 edges
  int max_cycle_span = 0;
  int max_cycle_nodes = 0;
  int max_bcc_span = 0;
};

SubgraphAnalysis analyze_subgraph(const CodeLattice& lattice,
                                  const ErrorSubgraph& g);

struct SampleRecord {
  std::uint64_t sample_index = 0;
  int n_err = 0;
  int n_loop_qudits = 0;  // qudits whose primal or dual edge lies on a loop
  bool has_loop = false;  // b1_primal + b1_dual >= 1
  int l_max = 0;          // largest basis-loop span over both sides
  int n_max = 0;          // largest basis-loop node count over both sides
};

SampleRecord loop_metrics(const CodeLattice& lattice,
                          const ErrorPattern& pattern);

}  // namespace loopsim
