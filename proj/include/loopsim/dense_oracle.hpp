#pragma once
// Brute-force state-vector reference for the symbolic syndrome machinery.
// Builds the full code state on all qudits, applies the error unitary on its
// support, then measures every touched check projectively, branching over
// outcomes.  Exponential in qudit count; guarded by OracleLimits.

#include <cstddef>

#include "loopsim/lattice.hpp"
#include "loopsim/pauli.hpp"
#include "loopsim/sampling.hpp"
#include "loopsim/twirl.hpp"

namespace loopsim {

struct OracleLimits {
  std::size_t max_dim = std::size_t(1) << 20;  // state vector length d^Q
};

// Joint label distribution of the map's check rows measured on F|code>,
// keyed exactly like SyndromeMap::apply.  Checks outside the map are verified
// to stay deterministic at label 0.
SyndromeDistribution oracle_distribution(const CodeLattice& lat, const ErrorModel& model,
                                         const ErrorPattern& pattern, const SyndromeMap& map,
                                         const OracleLimits& limits = {});

// Dimension of the joint label-0 eigenspace of every check on both sides
// (trace of the product of all check projectors); d for one logical qudit.
double code_space_dimension(const CodeLattice& lat, int d,
                            std::size_t max_dim = std::size_t(1) << 12);

}  // namespace loopsim
