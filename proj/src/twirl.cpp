#include "loopsim/twirl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <queue>

namespace loopsim {

namespace {

int mod_d(long long v, int d) {
  int r = static_cast<int>(v % d);
  return r < 0 ? r + d : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Expansion

Expansion::Expansion(ErrorModel model, std::vector<std::uint32_t> support)
    : model_(std::move(model)), support_(std::move(support)) {
  const std::size_t dd = static_cast<std::size_t>(model_.d) * model_.d;
  count_ = 1;
  for (std::size_t q = 0; q < support_.size(); ++q) count_ *= dd;
}

void Expansion::exponents(std::size_t id, int* x, int* z) const {
  const int d = model_.d;
  const std::size_t dd = static_cast<std::size_t>(d) * d;
  for (std::size_t q = 0; q < support_.size(); ++q) {
    const int t = static_cast<int>(id % dd);
    id /= dd;
    x[q] = t / d;
    z[q] = t % d;
  }
}

cplx Expansion::amplitude(std::size_t id) const {
  const std::size_t dd = static_cast<std::size_t>(model_.d) * model_.d;
  cplx amp = 1.0;
  for (std::size_t q = 0; q < support_.size(); ++q) {
    amp *= model_.f[id % dd];  // f is indexed by i*d+j, which is the digit
    id /= dd;
  }
  return amp;
}

Expansion expand_error(const ErrorModel& model, const ErrorPattern& pattern,
                       const ExpansionLimits& limits) {
  const std::vector<int> idx = pattern.indices();
  if (static_cast<int>(idx.size()) > limits.max_qudits) {
    throw resource_error("error support has " + std::to_string(idx.size()) +
                         " qudits, limit is " + std::to_string(limits.max_qudits));
  }
  const std::size_t dd = static_cast<std::size_t>(model.d) * model.d;
  std::size_t count = 1;
  for (std::size_t q = 0; q < idx.size(); ++q) {
    if (count > limits.max_terms / dd) {
      throw resource_error("expansion would exceed the term limit of " +
                           std::to_string(limits.max_terms));
    }
    count *= dd;
  }
  return Expansion(model, std::vector<std::uint32_t>(idx.begin(), idx.end()));
}

// ---------------------------------------------------------------------------
// Syndrome map

SyndromeKey SyndromeMap::apply(const int* x, const int* z) const {
  int acc[32] = {0};
  const std::size_t m = support.size();
  for (std::size_t pos = 0; pos < m; ++pos) {
    for (const Entry& e : primal_entries[pos])
      if (e.row >= 0) acc[e.row] += e.coeff * z[pos];
    for (const Entry& e : dual_entries[pos])
      if (e.row >= 0) acc[e.row] += e.coeff * x[pos];
  }
  SyndromeKey k;
  const int n = rows();
  for (int r = 0; r < n; ++r) key_set(k, r, mod_d(acc[r], d));
  return k;
}

int SyndromeMap::winding_p(const int* z) const {
  long long s = 0;
  for (int pos : primal_winding_positions) s += z[pos];
  return mod_d(s, d);
}

int SyndromeMap::winding_d(const int* x) const {
  long long s = 0;
  for (int pos : dual_winding_positions) s += x[pos];
  return mod_d(s, d);
}

SyndromeMap build_syndrome_map(const CodeLattice& lat, std::span<const std::uint32_t> support,
                               int d, Orientation orientation) {
  if (d < 2 || d > 16)
    throw std::invalid_argument("qudit dimension must be in [2, 16] for packed syndromes");
  SyndromeMap map;
  map.d = d;
  map.orientation = orientation;
  map.support.assign(support.begin(), support.end());
  for (std::size_t k = 1; k < map.support.size(); ++k)
    if (map.support[k] <= map.support[k - 1])
      throw std::invalid_argument("support must be strictly ascending");

  const int osign = orientation == Orientation::Standard ? 1 : -1;
  const std::size_t m = map.support.size();

  struct RawEntry {
    std::uint32_t node;
    int coeff;
  };
  std::vector<std::array<RawEntry, 2>> praw(m), draw(m);
  std::vector<int> pcount(m, 0), dcount(m, 0);

  for (std::size_t pos = 0; pos < m; ++pos) {
    const int q = static_cast<int>(map.support[pos]);
    const EdgeRef pe = lat.primal_edge(q);
    if (!pe.tail.dummy)
      praw[pos][pcount[pos]++] = {lat.node_index(Side::Primal, pe.tail), -osign};
    if (!pe.head.dummy)
      praw[pos][pcount[pos]++] = {lat.node_index(Side::Primal, pe.head), +osign};
    if (pe.family == EdgeFamily::Horizontal && pe.x == 0)
      map.primal_winding_positions.push_back(static_cast<int>(pos));

    const EdgeRef de = lat.dual_counterpart(q);
    const int tw = family_twist(de.family);
    if (!de.tail.dummy)
      draw[pos][dcount[pos]++] = {lat.node_index(Side::Dual, de.tail), -osign * tw};
    if (!de.head.dummy)
      draw[pos][dcount[pos]++] = {lat.node_index(Side::Dual, de.head), +osign * tw};
    if (de.family == EdgeFamily::Horizontal && de.x == 0)
      map.dual_winding_positions.push_back(static_cast<int>(pos));
  }

  for (std::size_t pos = 0; pos < m; ++pos) {
    for (int k = 0; k < pcount[pos]; ++k) map.primal_rows.push_back(praw[pos][k].node);
    for (int k = 0; k < dcount[pos]; ++k) map.dual_rows.push_back(draw[pos][k].node);
  }
  auto dedup = [](std::vector<std::uint32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(map.primal_rows);
  dedup(map.dual_rows);
  if (map.rows() > 32)
    throw resource_error("support touches " + std::to_string(map.rows()) +
                         " checks; packed syndrome keys hold at most 32");

  const int poffset = 0;
  const int doffset = static_cast<int>(map.primal_rows.size());
  auto row_of = [](const std::vector<std::uint32_t>& rows, std::uint32_t node) {
    return static_cast<int>(std::lower_bound(rows.begin(), rows.end(), node) - rows.begin());
  };
  map.primal_entries.assign(m, {});
  map.dual_entries.assign(m, {});
  for (std::size_t pos = 0; pos < m; ++pos) {
    for (int k = 0; k < pcount[pos]; ++k)
      map.primal_entries[pos][k] = {poffset + row_of(map.primal_rows, praw[pos][k].node),
                                    praw[pos][k].coeff};
    for (int k = 0; k < dcount[pos]; ++k)
      map.dual_entries[pos][k] = {doffset + row_of(map.dual_rows, draw[pos][k].node),
                                  draw[pos][k].coeff};
  }
  return map;
}

// ---------------------------------------------------------------------------
// Kernel via integer Smith-style diagonalization (divisibility chain not
// needed: any unimodular diagonalization determines the kernel mod d).

namespace {

struct Diagonalized {
  std::vector<long long> diag;               // nonzero pivots found
  std::vector<std::vector<long long>> v;     // m x m column transform
};

Diagonalized diagonalize(std::vector<std::vector<long long>> a, int r, int m) {
  Diagonalized out;
  out.v.assign(m, std::vector<long long>(m, 0));
  for (int i = 0; i < m; ++i) out.v[i][i] = 1;

  auto swap_cols = [&](int j1, int j2) {
    if (j1 == j2) return;
    for (int i = 0; i < r; ++i) std::swap(a[i][j1], a[i][j2]);
    for (int i = 0; i < m; ++i) std::swap(out.v[i][j1], out.v[i][j2]);
  };

  int t = 0;
  while (t < r && t < m) {
    int pi = -1, pj = -1;
    long long best = 0;
    for (int i = t; i < r; ++i)
      for (int j = t; j < m; ++j)
        if (a[i][j] != 0 && (pi < 0 || std::llabs(a[i][j]) < best)) {
          pi = i;
          pj = j;
          best = std::llabs(a[i][j]);
        }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (a[i][t] == 0) continue;
        const long long q = a[i][t] / a[t][t];
        for (int j = t; j < m; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {  // remainder strictly smaller: promote it
          std::swap(a[i], a[t]);
          clean = false;
        }
      }
      if (!clean) continue;
      for (int j = t + 1; j < m; ++j) {
        if (a[t][j] == 0) continue;
        const long long q = a[t][j] / a[t][t];
        for (int i = t; i < r; ++i) a[i][j] -= q * a[i][t];
        for (int i = 0; i < m; ++i) out.v[i][j] -= q * out.v[i][t];
        if (a[t][j] != 0) {
          swap_cols(t, j);
          clean = false;  // swapped-in column may repopulate rows below t
        }
      }
    }
    out.diag.push_back(a[t][t]);
    ++t;
  }
  return out;
}

}  // namespace

KernelInfo kernel_and_windings(const SyndromeMap& map, int d) {
  if (d != map.d) throw std::invalid_argument("dimension does not match the map");
  const int m = static_cast<int>(map.support.size());
  KernelInfo info;
  info.size = 1;
  info.log_size = 0;
  bool saturated = false;

  for (Side side : {Side::Primal, Side::Dual}) {
    const bool primal = side == Side::Primal;
    const int r = static_cast<int>(primal ? map.primal_rows.size() : map.dual_rows.size());
    const int offset = primal ? 0 : static_cast<int>(map.primal_rows.size());
    std::vector<std::vector<long long>> a(r, std::vector<long long>(m, 0));
    for (int pos = 0; pos < m; ++pos) {
      const auto& entries = primal ? map.primal_entries[pos] : map.dual_entries[pos];
      for (const SyndromeMap::Entry& e : entries)
        if (e.row >= 0) a[e.row - offset][pos] = e.coeff;
    }
    const Diagonalized dg = diagonalize(std::move(a), r, m);
    const auto& wpos = primal ? map.primal_winding_positions : map.dual_winding_positions;
    for (int k = 0; k < m; ++k) {
      const long long dk =
          k < static_cast<int>(dg.diag.size()) ? std::llabs(dg.diag[k]) : 0;
      const int g = static_cast<int>(std::gcd(dk % d, static_cast<long long>(d)));
      if (g <= 1) continue;
      if (info.size > std::numeric_limits<std::size_t>::max() / g) saturated = true;
      if (!saturated) info.size *= static_cast<std::size_t>(g);
      info.log_size += std::log(static_cast<double>(g));
      KernelGenerator gen;
      gen.side = side;
      gen.coeffs.resize(m);
      const long long scale = d / g;
      for (int pos = 0; pos < m; ++pos)
        gen.coeffs[pos] = mod_d(scale * dg.v[pos][k], d);
      long long w = 0;
      for (int pos : wpos) w += gen.coeffs[pos];
      gen.winding = mod_d(w, d);
      info.generators.push_back(std::move(gen));
    }
  }
  if (saturated) info.size = std::numeric_limits<std::size_t>::max();
  return info;
}

// ---------------------------------------------------------------------------
// Distributions

namespace {

std::vector<std::pair<SyndromeKey, std::uint64_t>> keyed_terms(const Expansion& ex,
                                                               const SyndromeMap& map) {
  if (ex.support() != map.support)
    throw std::invalid_argument("expansion and syndrome map cover different supports");
  if (ex.d() != map.d)
    throw std::invalid_argument("expansion and syndrome map dimensions differ");
  const int m = ex.support_size();
  std::vector<std::pair<SyndromeKey, std::uint64_t>> items;
  std::vector<int> x(m), z(m);
  for (std::size_t id = 0; id < ex.term_count(); ++id) {
    if (ex.amplitude(id) == 0.0) continue;  // exact zeros cannot contribute
    ex.exponents(id, x.data(), z.data());
    items.emplace_back(map.apply(x.data(), z.data()), id);
  }
  std::sort(items.begin(), items.end());
  return items;
}

}  // namespace

SyndromeDistribution coherent_distribution(const Expansion& ex, const SyndromeMap& map,
                                           LogicalFrame) {
  const auto items = keyed_terms(ex, map);
  const int d = map.d;
  const int m = ex.support_size();
  std::vector<cplx> om(d);
  for (int t = 0; t < d; ++t) om[t] = omega_root(d, t);

  SyndromeDistribution out;
  std::vector<int> xs, zs, wd;
  std::vector<cplx> amp;
  std::size_t lo = 0;
  while (lo < items.size()) {
    std::size_t hi = lo;
    while (hi < items.size() && items[hi].first == items[lo].first) ++hi;
    const std::size_t len = hi - lo;
    xs.assign(len * m, 0);
    zs.assign(len * m, 0);
    wd.assign(len, 0);
    amp.assign(len, 0.0);
    for (std::size_t l = 0; l < len; ++l) {
      const std::uint64_t id = items[lo + l].second;
      ex.exponents(id, &xs[l * m], &zs[l * m]);
      amp[l] = ex.amplitude(id);
      wd[l] = map.winding_d(&xs[l * m]);
    }
    cplx acc = 0.0;
    for (std::size_t lb = 0; lb < len; ++lb) {
      const int* xb = &xs[lb * m];
      const int* zb = &zs[lb * m];
      const cplx cb = std::conj(amp[lb]);
      for (std::size_t la = 0; la < len; ++la) {
        if (wd[la] != wd[lb]) continue;  // pairs across logical sectors vanish
        const int* xa = &xs[la * m];
        long long e = 0;
        for (int q = 0; q < m; ++q) e += static_cast<long long>(xb[q] - xa[q]) * zb[q];
        acc += amp[la] * cb * om[mod_d(e, d)];
      }
    }
    out.max_imag_residual = std::max(out.max_imag_residual, std::abs(acc.imag()));
    out.probs.emplace_back(items[lo].first, acc.real());
    out.total += acc.real();
    lo = hi;
  }
  return out;
}

SyndromeDistribution pta_distribution(const Expansion& ex, const SyndromeMap& map) {
  const auto items = keyed_terms(ex, map);
  SyndromeDistribution out;
  std::size_t lo = 0;
  while (lo < items.size()) {
    std::size_t hi = lo;
    double mass = 0;
    while (hi < items.size() && items[hi].first == items[lo].first) {
      mass += std::norm(ex.amplitude(items[hi].second));
      ++hi;
    }
    out.probs.emplace_back(items[lo].first, mass);
    out.total += mass;
    lo = hi;
  }
  return out;
}

double tv_distance(const SyndromeDistribution& a, const SyndromeDistribution& b) {
  double acc = 0;
  std::size_t i = 0, j = 0;
  while (i < a.probs.size() || j < b.probs.size()) {
    if (j >= b.probs.size() || (i < a.probs.size() && a.probs[i].first < b.probs[j].first)) {
      acc += std::abs(a.probs[i++].second);
    } else if (i >= a.probs.size() || b.probs[j].first < a.probs[i].first) {
      acc += std::abs(b.probs[j++].second);
    } else {
      acc += std::abs(a.probs[i++].second - b.probs[j++].second);
    }
  }
  return acc / 2;
}

// ---------------------------------------------------------------------------
// Adaptive schedules

std::vector<MeasurementStep> schedule_measurements(const ErrorSubgraph& g) {
  const std::size_t n = g.nodes.size();
  auto local = [&](std::uint32_t node) {
    return static_cast<std::size_t>(
        std::lower_bound(g.nodes.begin(), g.nodes.end(), node) - g.nodes.begin());
  };
  std::vector<std::vector<int>> adj(n);
  for (std::size_t pos = 0; pos < g.edges.size(); ++pos) {
    adj[local(g.edges[pos].tail)].push_back(static_cast<int>(pos));
    adj[local(g.edges[pos].head)].push_back(static_cast<int>(pos));
  }
  std::vector<int> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = static_cast<int>(adj[i].size());
  std::vector<char> done(g.edges.size(), 0);

  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (g.nodes[i] != 0 && degree[i] == 1) ready.push(g.nodes[i]);

  std::vector<MeasurementStep> steps;
  steps.reserve(g.edges.size());
  while (!ready.empty()) {
    const std::uint32_t node = ready.top();
    ready.pop();
    const std::size_t i = local(node);
    if (degree[i] != 1) continue;  // stale entry
    int pos = -1;
    for (int cand : adj[i])
      if (!done[cand]) pos = cand;
    done[pos] = 1;
    steps.push_back({node, static_cast<std::uint32_t>(g.edges[pos].qudit)});
    const std::uint32_t other =
        g.edges[pos].tail == node && g.edges[pos].head != node ? g.edges[pos].head
                                                               : g.edges[pos].tail;
    // Self-loops at the contracted node cannot occur; parallel edges can.
    degree[i] -= 1;
    if (other != node) {
      const std::size_t oi = local(other);
      degree[oi] -= 1;
      if (other != 0 && degree[oi] == 1) ready.push(other);
    } else {
      degree[i] -= 1;
    }
  }
  if (steps.size() != g.edges.size()) {
    throw partial_discretization_error(
        "subgraph contains loops; " +
        std::to_string(g.edges.size() - steps.size()) +
        " edges cannot be resolved by single-check steps");
  }
  return steps;
}

ErrorExponents invert_syndrome_on_forest(const SyndromeMap& map, const SyndromeKey& key) {
  const int d = map.d;
  const std::size_t m = map.support.size();
  ErrorExponents out;
  out.x.assign(m, 0);
  out.z.assign(m, 0);

  for (Side side : {Side::Primal, Side::Dual}) {
    const bool primal = side == Side::Primal;
    const int offset = primal ? 0 : static_cast<int>(map.primal_rows.size());
    const int nrows = static_cast<int>(primal ? map.primal_rows.size() : map.dual_rows.size());
    const auto& entries = primal ? map.primal_entries : map.dual_entries;
    std::vector<int>& vals = primal ? out.z : out.x;

    std::vector<std::vector<std::pair<int, int>>> row_positions(nrows);  // (pos, coeff)
    for (std::size_t pos = 0; pos < m; ++pos)
      for (const SyndromeMap::Entry& e : entries[pos])
        if (e.row >= 0) row_positions[e.row - offset].emplace_back(static_cast<int>(pos), e.coeff);

    std::vector<int> residual(nrows), unknowns(nrows);
    for (int r = 0; r < nrows; ++r) {
      residual[r] = key_get(key, offset + r);
      unknowns[r] = static_cast<int>(row_positions[r].size());
    }
    std::vector<char> known(m, 0);
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int r = 0; r < nrows; ++r)
      if (unknowns[r] == 1) ready.push(r);

    std::size_t solved = 0;
    while (!ready.empty()) {
      const int r = ready.top();
      ready.pop();
      if (unknowns[r] != 1) continue;
      int pos = -1, coeff = 0;
      for (const auto& [p, c] : row_positions[r])
        if (!known[p]) {
          pos = p;
          coeff = c;
        }
      vals[pos] = mod_d(static_cast<long long>(coeff) * residual[r], d);  // coeff^2 = 1
      known[pos] = 1;
      ++solved;
      for (const SyndromeMap::Entry& e : entries[pos]) {
        if (e.row < 0) continue;
        const int rr = e.row - offset;
        residual[rr] = mod_d(residual[rr] - static_cast<long long>(e.coeff) * vals[pos], d);
        unknowns[rr] -= 1;
        if (unknowns[rr] == 1) ready.push(rr);
      }
    }
    if (solved != m) {
      throw partial_discretization_error("syndrome inversion stalled: the " +
                                         std::string(primal ? "vertex" : "plaquette") +
                                         " subgraph is not a forest");
    }
  }

  if (map.apply(out.x.data(), out.z.data()) != key) {
    throw syndrome_inconsistency_error("syndrome is not consistent with any forest error");
  }
  return out;
}

}  // namespace loopsim
