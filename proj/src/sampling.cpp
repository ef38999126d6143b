#include "loopsim/sampling.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace loopsim {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// xoshiro256++, seeded from (master_seed, sample_index) via splitmix64.
struct StreamRng {
  std::uint64_t s[4];

  explicit StreamRng(SeedSpec seed) {
    std::uint64_t st = seed.master_seed;
    splitmix64(st);
    st ^= 0x9e3779b97f4a7c15ull * (seed.sample_index + 1);
    for (auto& w : s) w = splitmix64(st);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }

  // uniform in [0,1); 53-bit resolution
  double next_double() { return (next() >> 11) * 0x1.0p-53; }
};

}  // namespace

ErrorPattern::ErrorPattern(int qudit_count)
    : qudit_count_(qudit_count),
      words_((static_cast<std::size_t>(qudit_count) + 63) / 64, 0) {
  if (qudit_count < 0) throw std::invalid_argument("negative qudit count");
}

void ErrorPattern::set(int qudit) {
  if (qudit < 0 || qudit >= qudit_count_) {
    throw std::invalid_argument("qudit index out of range");
  }
  if (test(qudit)) throw std::invalid_argument("duplicate qudit index");
  words_[static_cast<std::size_t>(qudit) >> 6] |=
      1ull << (static_cast<unsigned>(qudit) & 63u);
  ++count_;
}

std::vector<int> ErrorPattern::indices() const {
  std::vector<int> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      const int b = __builtin_ctzll(bits);
      out.push_back(static_cast<int>(w * 64) + b);
      bits &= bits - 1;
    }
  }
  return out;
}

ErrorPattern sample_pattern(const CodeLattice& lattice, double p,
                            SeedSpec seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("error rate must lie in [0,1]");
  }
  const int q = lattice.qudit_count();
  ErrorPattern pattern(q);
  if (p == 0.0) return pattern;
  StreamRng rng(seed);
  if (p == 1.0) {
    for (int i = 0; i < q; ++i) pattern.set(i);
    return pattern;
  }
  // Jump between hits with geometric gaps: one draw per erroneous qudit.
  const double log1mp = std::log1p(-p);
  std::int64_t idx = -1;
  for (;;) {
    const double u = rng.next_double();
    const double gap = std::floor(std::log1p(-u) / log1mp);
    if (gap >= static_cast<double>(q)) break;
    idx += 1 + static_cast<std::int64_t>(gap);
    if (idx >= q) break;
    pattern.set(static_cast<int>(idx));
  }
  return pattern;
}

ErrorPattern pattern_from_list(const CodeLattice& lattice,
                               const std::vector<int>& qudits) {
  ErrorPattern pattern(lattice.qudit_count());
  for (int q : qudits) pattern.set(q);
  return pattern;
}

std::string serialize_pattern(const ErrorPattern& pattern) {
  std::string out;
  bool first = true;
  for (int q : pattern.indices()) {
    if (!first) out += ',';
    out += std::to_string(q);
    first = false;
  }
  return out;
}

std::vector<int> parse_pattern_line(const std::string& line) {
  std::vector<int> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto start = tok.find_first_not_of(" \t\r\n");
    if (start == std::string::npos) continue;
    const auto end = tok.find_last_not_of(" \t\r\n");
    out.push_back(std::stoi(tok.substr(start, end - start + 1)));
  }
  return out;
}

}  // namespace loopsim
