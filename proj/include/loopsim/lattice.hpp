#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace loopsim {

// Planar code layout: two square lattices (primal and dual) whose edges carry
// the same qudits.  Rows run horizontally; each side has two rough ends that
// are contracted into a single bookkeeping node ("dummy", compact id 0).
//
// Primal, with nh = edges per row and nv = nodes per column:
//   horizontal h(x,y): x in [0,nh-1], y in [0,nv-1]; tail (x,y) or dummy when
//     x = 0; head (x+1,y) or dummy when x = nh-1; oriented rightward.
//   vertical   v(x,y): x in [1,nh-1], y in [0,nv-2]; tail (x,y), head (x,y+1);
//     oriented upward.
// The dual follows the same two families with (nh,nv) swapped.  Real nodes of
// a side live at x in [1,R-1], y in [0,C-1] where R = edges per row of that
// side and C = nodes per column.

enum class Side { Primal, Dual };
enum class EdgeFamily { Horizontal, Vertical };

struct CodeShape {
  int nh = 0;
  int nv = 0;
};

struct NodeId {
  int x = 0;
  int y = 0;
  bool dummy = false;

  static NodeId real(int x, int y) { return NodeId{x, y, false}; }
  static NodeId contracted() { return NodeId{0, 0, true}; }
  bool operator==(const NodeId&) const = default;
};

struct EdgeRef {
  Side side = Side::Primal;
  EdgeFamily family = EdgeFamily::Horizontal;
  int x = 0;
  int y = 0;
  int index = 0;  // row-major within side: all horizontals, then verticals
  NodeId tail;
  NodeId head;

  bool touches_dummy() const { return tail.dummy || head.dummy; }
};

struct ElementaryLoops {
  // Three-edge loops: two dangling edges in adjacent rows at the same end
  // plus the vertical edge joining their real endpoints.  Four-edge loops:
  // interior unit squares.
  std::vector<std::array<int, 3>> three_edge;
  std::vector<std::array<int, 4>> four_edge;
};

class CodeLattice {
 public:
  explicit CodeLattice(CodeShape shape);  // throws std::invalid_argument

  CodeShape shape() const { return shape_; }
  int qudit_count() const;  // 2*nh*nv - nh - nv + 1

  int row_edges(Side s) const;   // R: edges per row of this side
  int col_nodes(Side s) const;   // C: nodes per column of this side
  int horizontal_count(Side s) const { return row_edges(s) * col_nodes(s); }
  int vertical_count(Side s) const {
    return (row_edges(s) - 1) * (col_nodes(s) - 1);
  }
  int edge_count(Side s) const {
    return horizontal_count(s) + vertical_count(s);
  }
  int real_node_count(Side s) const {
    return (row_edges(s) - 1) * col_nodes(s);
  }

  EdgeRef edge_ref(Side s, int index) const;
  EdgeRef horizontal_edge(Side s, int x, int y) const;
  EdgeRef vertical_edge(Side s, int x, int y) const;

  // Qudit q is primal edge q; its dual counterpart is a fixed bijection.
  int dual_edge_of_qudit(int qudit) const;
  int qudit_of_dual_edge(int dual_index) const;
  EdgeRef primal_edge(int qudit) const { return edge_ref(Side::Primal, qudit); }
  EdgeRef dual_counterpart(int qudit) const {
    return edge_ref(Side::Dual, dual_edge_of_qudit(qudit));
  }

  // Compact per-side node ids: 0 is the contracted node, then real nodes
  // row-major.
  std::uint32_t node_index(Side s, NodeId n) const;
  NodeId node_at(Side s, std::uint32_t index) const;

  // Edges at a real node with orientation sign: +1 incoming (node is head),
  // -1 outgoing.  Order: left horizontal, right horizontal, down vertical,
  // up vertical.  Throws on the contracted node (it carries no check).
  std::vector<std::pair<EdgeRef, int>> incident_edges(Side s, NodeId n) const;

  ElementaryLoops elementary_loops(Side s) const;

  // x coordinate where a dangling edge meets the contracted node: 0 on the
  // left end, row_edges(side) on the right.  Pre: edge touches the dummy.
  int attachment_x(const EdgeRef& e) const;

 private:
  CodeShape shape_;
};

}  // namespace loopsim
