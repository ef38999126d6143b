#include "loopsim/lattice.hpp"

#include <stdexcept>
#include <string>

namespace loopsim {

CodeLattice::CodeLattice(CodeShape shape) : shape_(shape) {
  if (shape.nh < 2 || shape.nv < 2) {
    throw std::invalid_argument("code shape requires nh >= 2 and nv >= 2, got (" +
                                std::to_string(shape.nh) + "," +
                                std::to_string(shape.nv) + ")");
  }
}

int CodeLattice::qudit_count() const {
  return 2 * shape_.nh * shape_.nv - shape_.nh - shape_.nv + 1;
}

int CodeLattice::row_edges(Side s) const {
  return s == Side::Primal ? shape_.nh : shape_.nv;
}

int CodeLattice::col_nodes(Side s) const {
  return s == Side::Primal ? shape_.nv : shape_.nh;
}

EdgeRef CodeLattice::horizontal_edge(Side s, int x, int y) const {
  const int r = row_edges(s), c = col_nodes(s);
  if (x < 0 || x >= r || y < 0 || y >= c) {
    throw std::invalid_argument("horizontal edge out of range");
  }
  EdgeRef e;
  e.side = s;
  e.family = EdgeFamily::Horizontal;
  e.x = x;
  e.y = y;
  e.index = y * r + x;
  e.tail = x >= 1 ? NodeId::real(x, y) : NodeId::contracted();
  e.head = x <= r - 2 ? NodeId::real(x + 1, y) : NodeId::contracted();
  return e;
}

EdgeRef CodeLattice::vertical_edge(Side s, int x, int y) const {
  const int r = row_edges(s), c = col_nodes(s);
  if (x < 1 || x >= r || y < 0 || y >= c - 1) {
    throw std::invalid_argument("vertical edge out of range");
  }
  EdgeRef e;
  e.side = s;
  e.family = EdgeFamily::Vertical;
  e.x = x;
  e.y = y;
  e.index = r * c + y * (r - 1) + (x - 1);
  e.tail = NodeId::real(x, y);
  e.head = NodeId::real(x, y + 1);
  return e;
}

EdgeRef CodeLattice::edge_ref(Side s, int index) const {
  const int r = row_edges(s), c = col_nodes(s);
  const int nhoriz = r * c;
  if (index < 0 || index >= edge_count(s)) {
    throw std::invalid_argument("edge index out of range");
  }
  if (index < nhoriz) {
    return horizontal_edge(s, index % r, index / r);
  }
  const int t = index - nhoriz;
  return vertical_edge(s, 1 + t % (r - 1), t / (r - 1));
}

int CodeLattice::dual_edge_of_qudit(int qudit) const {
  const int nh = shape_.nh, nv = shape_.nv;
  if (qudit < 0 || qudit >= qudit_count()) {
    throw std::invalid_argument("qudit index out of range");
  }
  if (qudit < nh * nv) {
    // primal h(x,y) crosses the dual edge joining dual nodes (y,x), (y+1,x)
    const int x = qudit % nh, y = qudit / nh;
    return x * nv + y;  // dual horizontal h'(y, x) in (x', y') = (y, x)
  }
  // primal v(x,y) crosses the dual edge joining dual nodes (y+1,x-1), (y+1,x)
  const int t = qudit - nh * nv;
  const int x = 1 + t % (nh - 1), y = t / (nh - 1);
  return nv * nh + (x - 1) * (nv - 1) + y;  // dual vertical v'(y+1, x-1)
}

int CodeLattice::qudit_of_dual_edge(int dual_index) const {
  const int nh = shape_.nh, nv = shape_.nv;
  if (dual_index < 0 || dual_index >= qudit_count()) {
    throw std::invalid_argument("dual edge index out of range");
  }
  if (dual_index < nv * nh) {
    const int xd = dual_index % nv, yd = dual_index / nv;
    return xd * nh + yd;  // primal h(yd, xd)
  }
  const int t = dual_index - nv * nh;
  const int xd = 1 + t % (nv - 1), yd = t / (nv - 1);
  return nh * nv + (xd - 1) * (nh - 1) + yd;  // primal v(yd+1, xd-1)
}

std::uint32_t CodeLattice::node_index(Side s, NodeId n) const {
  if (n.dummy) return 0;
  const int r = row_edges(s), c = col_nodes(s);
  if (n.x < 1 || n.x > r - 1 || n.y < 0 || n.y > c - 1) {
    throw std::invalid_argument("node out of range");
  }
  return 1 + static_cast<std::uint32_t>(n.y) * (r - 1) + (n.x - 1);
}

NodeId CodeLattice::node_at(Side s, std::uint32_t index) const {
  if (index == 0) return NodeId::contracted();
  const int r = row_edges(s);
  const std::uint32_t k = index - 1;
  NodeId n = NodeId::real(1 + static_cast<int>(k % (r - 1)),
                          static_cast<int>(k / (r - 1)));
  if (n.y > col_nodes(s) - 1) {
    throw std::invalid_argument("node index out of range");
  }
  return n;
}

std::vector<std::pair<EdgeRef, int>> CodeLattice::incident_edges(
    Side s, NodeId n) const {
  if (n.dummy) {
    throw std::invalid_argument("contracted node carries no check");
  }
  node_index(s, n);  // range check
  const int c = col_nodes(s);
  std::vector<std::pair<EdgeRef, int>> out;
  out.reserve(4);
  out.emplace_back(horizontal_edge(s, n.x - 1, n.y), +1);
  out.emplace_back(horizontal_edge(s, n.x, n.y), -1);
  if (n.y >= 1) out.emplace_back(vertical_edge(s, n.x, n.y - 1), +1);
  if (n.y <= c - 2) out.emplace_back(vertical_edge(s, n.x, n.y), -1);
  return out;
}

ElementaryLoops CodeLattice::elementary_loops(Side s) const {
  const int r = row_edges(s), c = col_nodes(s);
  ElementaryLoops loops;
  loops.three_edge.reserve(2 * (c - 1));
  for (int y = 0; y + 1 <= c - 1; ++y) {
    loops.three_edge.push_back({horizontal_edge(s, 0, y).index,
                                horizontal_edge(s, 0, y + 1).index,
                                vertical_edge(s, 1, y).index});
  }
  for (int y = 0; y + 1 <= c - 1; ++y) {
    loops.three_edge.push_back({horizontal_edge(s, r - 1, y).index,
                                horizontal_edge(s, r - 1, y + 1).index,
                                vertical_edge(s, r - 1, y).index});
  }
  loops.four_edge.reserve(static_cast<std::size_t>(r - 2) * (c - 1));
  for (int y = 0; y + 1 <= c - 1; ++y) {
    for (int x = 1; x + 1 <= r - 1; ++x) {
      loops.four_edge.push_back(
          {horizontal_edge(s, x, y).index, vertical_edge(s, x + 1, y).index,
           horizontal_edge(s, x, y + 1).index, vertical_edge(s, x, y).index});
    }
  }
  return loops;
}

int CodeLattice::attachment_x(const EdgeRef& e) const {
  if (!e.touches_dummy()) {
    throw std::invalid_argument("edge does not touch the contracted node");
  }
  return e.tail.dummy ? 0 : row_edges(e.side);
}

}  // namespace loopsim
