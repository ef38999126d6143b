#include "loopsim/dense_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace loopsim {

namespace {

int mod_d(long long v, int d) {
  int r = static_cast<int>(v % d);
  return r < 0 ? r + d : r;
}

using State = std::vector<cplx>;

struct CheckOp {
  bool xtype = true;
  std::vector<std::pair<std::size_t, int>> edges;  // (digit stride, exponent)
};

struct DenseSim {
  int d = 2;
  int nq = 0;
  std::size_t dim = 1;
  std::vector<std::size_t> stride;  // qudit 0 most significant
  std::vector<cplx> om;

  DenseSim(int d_, int nq_, std::size_t max_dim) : d(d_), nq(nq_) {
    stride.resize(nq);
    for (int q = nq; q-- > 0;) {
      stride[q] = dim;
      if (dim > max_dim / d) {
        throw resource_error("state vector of " + std::to_string(nq) + " qudits at d=" +
                             std::to_string(d) + " exceeds the dimension limit");
      }
      dim *= d;
    }
    if (dim > max_dim) throw resource_error("state vector exceeds the dimension limit");
    om.resize(d);
    for (int t = 0; t < d; ++t) om[t] = omega_root(d, t);
  }

  int digit(std::size_t idx, int q) const { return static_cast<int>((idx / stride[q]) % d); }

  void apply_check(const CheckOp& op, const State& in, State& out) const {
    if (op.xtype) {
      out.assign(dim, 0.0);
      for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t target = idx;
        for (const auto& [st, exp] : op.edges) {
          const int dig = static_cast<int>((idx / st) % d);
          int nd = dig + exp;
          if (nd >= d) nd -= d;
          target += (static_cast<std::size_t>(nd) - dig) * st;
        }
        out[target] = in[idx];
      }
    } else {
      out.resize(dim);
      for (std::size_t idx = 0; idx < dim; ++idx) {
        long long e = 0;
        for (const auto& [st, exp] : op.edges) e += static_cast<long long>(exp) * ((idx / st) % d);
        out[idx] = in[idx] * om[mod_d(e, d)];
      }
    }
  }

  // Single-qudit gate m (d x d row-major) on qudit q.
  void apply_gate(const CMat& m, int q, State& phi) const {
    const std::size_t st = stride[q];
    State tmp(phi.size());
    for (std::size_t idx = 0; idx < dim; ++idx) {
      const int dig = static_cast<int>((idx / st) % d);
      const std::size_t base = idx - static_cast<std::size_t>(dig) * st;
      cplx acc = 0.0;
      for (int j = 0; j < d; ++j) acc += m[static_cast<std::size_t>(dig) * d + j] * phi[base + j * st];
      tmp[idx] = acc;
    }
    phi.swap(tmp);
  }

  // Projector onto label 0 of op: (1/d) sum_t op^t.
  void project_zero(const CheckOp& op, State& phi) const {
    State acc = phi;
    State cur = phi, next;
    for (int t = 1; t < d; ++t) {
      apply_check(op, cur, next);
      cur.swap(next);
      for (std::size_t i = 0; i < dim; ++i) acc[i] += cur[i];
    }
    for (std::size_t i = 0; i < dim; ++i) acc[i] /= static_cast<double>(d);
    phi.swap(acc);
  }
};

double norm2(const State& v) {
  double s = 0;
  for (const cplx& a : v) s += std::norm(a);
  return s;
}

CheckOp make_check(const CodeLattice& lat, const DenseSim& sim, Side side, std::uint32_t node_id,
                   int osign) {
  CheckOp op;
  op.xtype = side == Side::Primal;
  const NodeId n = lat.node_at(side, node_id);
  for (const auto& [e, sign] : lat.incident_edges(side, n)) {
    int qudit, exp;
    if (side == Side::Primal) {
      qudit = e.index;
      exp = mod_d(-static_cast<long long>(osign) * sign, sim.d);
    } else {
      qudit = lat.qudit_of_dual_edge(e.index);
      exp = mod_d(static_cast<long long>(osign) * family_twist(e.family) * sign, sim.d);
    }
    op.edges.emplace_back(sim.stride[qudit], exp);
  }
  return op;
}

State build_code_state(const CodeLattice& lat, const DenseSim& sim) {
  State phi(sim.dim, 0.0);
  phi[0] = 1.0;  // all labels of the diagonal checks are already 0 here
  const int np = lat.real_node_count(Side::Primal);
  for (int id = 1; id <= np; ++id) {
    sim.project_zero(make_check(lat, sim, Side::Primal, static_cast<std::uint32_t>(id), 1), phi);
  }
  const double n = std::sqrt(norm2(phi));
  for (cplx& a : phi) a /= n;
  return phi;
}

struct Branching {
  const DenseSim* sim = nullptr;
  const std::vector<CheckOp>* ops = nullptr;
  std::vector<std::pair<SyndromeKey, double>> leaves;

  void run(int r, State& phi, SyndromeKey key) {
    if (r == static_cast<int>(ops->size())) {
      leaves.emplace_back(key, norm2(phi));
      return;
    }
    const int d = sim->d;
    std::vector<State> powers(d);
    powers[0] = phi;
    for (int t = 1; t < d; ++t) sim->apply_check((*ops)[r], powers[t - 1], powers[t]);
    for (int k = 0; k < d; ++k) {
      State child(sim->dim, 0.0);
      for (int t = 0; t < d; ++t) {
        const cplx w = std::conj(sim->om[mod_d(static_cast<long long>(k) * t, d)]);
        for (std::size_t i = 0; i < sim->dim; ++i) child[i] += w * powers[t][i];
      }
      for (cplx& a : child) a /= static_cast<double>(d);
      if (norm2(child) < 1e-13) continue;
      SyndromeKey ck = key;
      key_set(ck, r, k);
      run(r + 1, child, ck);
    }
  }
};

}  // namespace

SyndromeDistribution oracle_distribution(const CodeLattice& lat, const ErrorModel& model,
                                         const ErrorPattern& pattern, const SyndromeMap& map,
                                         const OracleLimits& limits) {
  if (model.d != map.d) throw std::invalid_argument("model and map dimensions differ");
  DenseSim sim(model.d, lat.qudit_count(), limits.max_dim);
  State phi = build_code_state(lat, sim);

  const CMat f = model_matrix(model);
  for (std::uint32_t q : map.support) sim.apply_gate(f, static_cast<int>(q), phi);

  const int osign = map.orientation == Orientation::Standard ? 1 : -1;
  std::vector<CheckOp> ops;
  ops.reserve(map.rows());
  for (std::uint32_t id : map.primal_rows) ops.push_back(make_check(lat, sim, Side::Primal, id, osign));
  for (std::uint32_t id : map.dual_rows) ops.push_back(make_check(lat, sim, Side::Dual, id, osign));

  // Checks away from the support must stay deterministic at label 0.
  State tmp;
  for (Side side : {Side::Primal, Side::Dual}) {
    const auto& rows = side == Side::Primal ? map.primal_rows : map.dual_rows;
    const int count = lat.real_node_count(side);
    for (int id = 1; id <= count; ++id) {
      if (std::binary_search(rows.begin(), rows.end(), static_cast<std::uint32_t>(id))) continue;
      sim.apply_check(make_check(lat, sim, side, static_cast<std::uint32_t>(id), osign), phi, tmp);
      double diff = 0;
      for (std::size_t i = 0; i < sim.dim; ++i) diff = std::max(diff, std::abs(tmp[i] - phi[i]));
      if (diff > 1e-9) {
        throw std::logic_error("check away from the error support is not deterministic");
      }
    }
  }

  Branching br{&sim, &ops, {}};
  br.run(0, phi, SyndromeKey{});
  std::sort(br.leaves.begin(), br.leaves.end());

  SyndromeDistribution out;
  for (std::size_t i = 0; i < br.leaves.size();) {
    double mass = 0;
    std::size_t j = i;
    while (j < br.leaves.size() && br.leaves[j].first == br.leaves[i].first) mass += br.leaves[j++].second;
    out.probs.emplace_back(br.leaves[i].first, mass);
    out.total += mass;
    i = j;
  }
  return out;
}

double code_space_dimension(const CodeLattice& lat, int d, std::size_t max_dim) {
  DenseSim sim(d, lat.qudit_count(), max_dim);
  std::vector<CheckOp> ops;
  for (Side side : {Side::Primal, Side::Dual}) {
    const int count = lat.real_node_count(side);
    for (int id = 1; id <= count; ++id)
      ops.push_back(make_check(lat, sim, side, static_cast<std::uint32_t>(id), 1));
  }
  double trace = 0;
  State v;
  for (std::size_t b = 0; b < sim.dim; ++b) {
    v.assign(sim.dim, 0.0);
    v[b] = 1.0;
    for (const CheckOp& op : ops) sim.project_zero(op, v);
    trace += v[b].real();
  }
  return trace;
}

}  // namespace loopsim
