#ifndef NF_GEN_HPP
#define NF_GEN_HPP

#include <cstdint>

#include "nf/formula.hpp"

namespace nf {

enum class GenMode { arbitrary, acyclic, stratified };

struct GenConfig {
  std::uint64_t seed = 0;
  int num_vars = 4;
  int num_atoms = 4;        // in acyclic mode at most num_vars - 1
  GenMode mode = GenMode::arbitrary;
  int connective_depth = 6; // max nesting of connectives above atoms
};

// splitmix64: next state = state + 0x9e3779b97f4a7c15, output mixed with
// shifts 30/27/31 and constants 0xbf58476d1ce4e5b9, 0x94d049bb133111eb.
// The stream is fixed so fixed seeds reproduce identical formulas anywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-enough value in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  bool coin(int percent) { return below(100) < static_cast<std::uint64_t>(percent); }

 private:
  std::uint64_t state_;
};

// Deterministic pseudo-random formula, desugared and rectified by
// construction. Acyclic mode realizes a random labeled forest, so the
// output has no cycle; stratified mode draws atoms consistent with a
// pre-sampled typing, so the output is stratifiable. Throws
// std::invalid_argument on config violations.
FormulaPtr generate(const GenConfig& cfg);

}  // namespace nf

#endif
