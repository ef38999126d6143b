#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loopsim/lattice.hpp"

namespace loopsim {

// One generator stream per (master_seed, sample_index) pair, so results do
// not depend on how samples are distributed across workers.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t sample_index = 0;
};

class ErrorPattern {
 public:
  ErrorPattern() = default;
  explicit ErrorPattern(int qudit_count);

  int qudit_count() const { return qudit_count_; }
  int count() const { return count_; }
  bool test(int qudit) const {
    return (words_[static_cast<std::size_t>(qudit) >> 6] >>
            (static_cast<unsigned>(qudit) & 63u)) & 1u;
  }
  void set(int qudit);  // throws if out of range or already set
  std::vector<int> indices() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  int qudit_count_ = 0;
  int count_ = 0;
  std::vector<std::uint64_t> words_;
};

// Independent Bernoulli(p) per qudit, drawn with geometric gap skipping.
ErrorPattern sample_pattern(const CodeLattice& lattice, double p,
                            SeedSpec seed);

ErrorPattern pattern_from_list(const CodeLattice& lattice,
                               const std::vector<int>& qudits);

// Fixture format: one line of comma-separated qudit indices, sorted.
std::string serialize_pattern(const ErrorPattern& pattern);
std::vector<int> parse_pattern_line(const std::string& line);

}  // namespace loopsim
