#pragma once
// Exact syndrome statistics for a local coherent error on the code, and the
// machinery around them: lazy X/Z expansion of a product error, the linear
// syndrome map restricted to the error support, its kernel over Z_d, coherent
// vs incoherent (amplitude-squared) syndrome distributions, and adaptive
// forest measurement schedules.
//
// Check conventions (fixed project-wide):
//   vertex check at primal node u:    A_u = prod_{e ~ u} X_e^{-sign(u,e)}
//   plaquette check at dual node w:   B_w = prod_{e ~ w} Z_e^{twist(e)*sign(w,e)}
// where sign = +1 if the node is the edge head, -1 if tail, and
// twist = +1 for horizontal dual edges, -1 for vertical dual edges (without
// the twist the two families of checks fail to commute for d > 2).
// Measuring a check on  prod_q X^{i_q} Z^{j_q} |code>  yields label
//   primal row:  sum_q sign(u,e_q) * j_q   (mod d)
//   dual row:    sum_q twist*sign(w,e_q') * i_q   (mod d)
// which is exactly what SyndromeMap::apply computes.

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopsim/graph.hpp"
#include "loopsim/lattice.hpp"
#include "loopsim/pauli.hpp"
#include "loopsim/sampling.hpp"

namespace loopsim {

class resource_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Raised when an adaptive schedule cannot determine every qudit (loops left).
class partial_discretization_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class syndrome_inconsistency_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sign twist applied to dual-side check coefficients, per edge family.
inline int family_twist(EdgeFamily f) { return f == EdgeFamily::Horizontal ? 1 : -1; }

struct ExpansionLimits {
  int max_qudits = 8;
  std::size_t max_terms = std::size_t(1) << 24;
};

// F^{tensor support} = sum_t amplitude(t) * prod_q X^{x_q} Z^{z_q}, with the
// d^{2m} terms indexed by an odometer id and decoded on demand: position q of
// id's base-d^2 digit t_q encodes (x_q, z_q) = (t_q / d, t_q % d).
class Expansion {
 public:
  Expansion(ErrorModel model, std::vector<std::uint32_t> support);

  int d() const { return model_.d; }
  int support_size() const { return static_cast<int>(support_.size()); }
  const std::vector<std::uint32_t>& support() const { return support_; }
  const ErrorModel& model() const { return model_; }
  std::size_t term_count() const { return count_; }

  // x, z must have room for support_size() entries.
  void exponents(std::size_t id, int* x, int* z) const;
  cplx amplitude(std::size_t id) const;

 private:
  ErrorModel model_;
  std::vector<std::uint32_t> support_;
  std::size_t count_;
};

// Expansion of model applied iid to every qudit in pattern; throws
// resource_error when the support or term count exceeds the limits.
Expansion expand_error(const ErrorModel& model, const ErrorPattern& pattern,
                       const ExpansionLimits& limits = {});

// Syndrome vector packed 4 bits per row, primal rows first then dual rows,
// both in ascending node order. Supports at most 32 rows and d <= 16.
struct SyndromeKey {
  std::array<std::uint64_t, 2> w{0, 0};

  friend bool operator==(const SyndromeKey&, const SyndromeKey&) = default;
  friend std::strong_ordering operator<=>(const SyndromeKey&, const SyndromeKey&) = default;
};

inline void key_set(SyndromeKey& k, int row, int value) {
  k.w[row >> 4] |= static_cast<std::uint64_t>(value) << ((row & 15) * 4);
}
inline int key_get(const SyndromeKey& k, int row) {
  return static_cast<int>((k.w[row >> 4] >> ((row & 15) * 4)) & 0xf);
}

enum class Orientation { Standard, Reversed };

// Restriction of the check labels to the error support: one row per real check
// node touched by a support edge on either side. Rows act linearly mod d on
// the (x, z) exponent vectors: primal rows read z, dual rows read x.
struct SyndromeMap {
  int d = 2;
  Orientation orientation = Orientation::Standard;
  std::vector<std::uint32_t> support;     // qudit ids, ascending
  std::vector<std::uint32_t> primal_rows; // compact node ids, ascending
  std::vector<std::uint32_t> dual_rows;

  struct Entry {
    int row = -1;  // global row index; primal rows come first
    int coeff = 0; // +1 or -1
  };
  // Up to two rows per support position on each side (one per real endpoint).
  std::vector<std::array<Entry, 2>> primal_entries;
  std::vector<std::array<Entry, 2>> dual_entries;

  // Support positions whose edge dangles from the left boundary on that side;
  // summing the matching exponents there gives the winding of a cycle.
  std::vector<int> primal_winding_positions;
  std::vector<int> dual_winding_positions;

  int rows() const { return static_cast<int>(primal_rows.size() + dual_rows.size()); }

  SyndromeKey apply(const int* x, const int* z) const;
  int winding_p(const int* z) const;  // mod d
  int winding_d(const int* x) const;  // mod d
};

SyndromeMap build_syndrome_map(const CodeLattice& lat, std::span<const std::uint32_t> support,
                               int d, Orientation orientation = Orientation::Standard);

// One generator of the syndrome-map kernel: a single-side exponent assignment
// (a cycle on that side) together with its winding mod d.
struct KernelGenerator {
  Side side = Side::Primal;  // Primal: z-exponents; Dual: x-exponents
  std::vector<int> coeffs;   // per support position, in [0, d)
  int winding = 0;
};

struct KernelInfo {
  std::vector<KernelGenerator> generators;
  double log_size = 0;   // log of the kernel order
  std::size_t size = 0;  // kernel order (exact while it fits)
};

// Kernel of the syndrome map over Z_d, computed from an integer Smith normal
// form of the two per-side incidence blocks.
KernelInfo kernel_and_windings(const SyndromeMap& map, int d);

struct SyndromeDistribution {
  std::vector<std::pair<SyndromeKey, double>> probs;  // ascending by key
  double total = 0;
  double max_imag_residual = 0;  // coherent sums should be real
};

enum class LogicalFrame { LogicalZPlus };

// P(s) = sum over term pairs (P, P') in class s of
//        c_P conj(c_{P'}) omega^{sum_q (x'_q - x_q) z'_q},
// restricted to pairs whose x-difference has zero dual winding (other pairs
// connect different logical sectors of the +1 logical-Z code state and drop).
SyndromeDistribution coherent_distribution(const Expansion& ex, const SyndromeMap& map,
                                           LogicalFrame frame = LogicalFrame::LogicalZPlus);

// Same classes, but weights |c_P|^2: the error channel with cross terms
// discarded (equivalently, the Pauli-twirled channel).
SyndromeDistribution pta_distribution(const Expansion& ex, const SyndromeMap& map);

double tv_distance(const SyndromeDistribution& a, const SyndromeDistribution& b);

// One adaptive step: measuring check `node` determines qudit `qudit`.
struct MeasurementStep {
  std::uint32_t node = 0;
  std::uint32_t qudit = 0;
};

// Leaf peeling on one side's error subgraph, lowest node first. Every step
// measures a real check with exactly one undetermined incident support edge.
// Throws partial_discretization_error if loops survive.
std::vector<MeasurementStep> schedule_measurements(const ErrorSubgraph& g);

struct ErrorExponents {
  std::vector<int> x, z;  // per support position
};

// Unique solve of map.apply(x, z) == key when both side subgraphs are forests,
// by peeling rows with one unknown. Verifies every row afterwards and throws
// syndrome_inconsistency_error on mismatch, partial_discretization_error if
// peeling stalls.
ErrorExponents invert_syndrome_on_forest(const SyndromeMap& map, const SyndromeKey& key);

}  // namespace loopsim
