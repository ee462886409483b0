// Folner tilings by digit normal forms.
//
// A point of the tiling space at depth k is a digit word: one digit per
// coordinate per level 0..k. A coordinate of layer weight i carries the
// alphabet {-2^i..-1} on odd levels and {0..2^i-1} on even levels >= 2;
// level 0 holds a value in the base interval (-2^{i-1}, 2^{i-1}], either on
// a dyadic grid (continuous model) or an integer (lattice model). The word
// decodes to the group element prod_l prod_idx exp(digit * 2^{l i} X_idx),
// levels ascending, coordinates in layer-then-position order inside a level.
#pragma once

#include "group.hpp"
#include "rng.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace nilc {

// Digit interval I_{i,l}: the set of scalars encodable with levels 0..l.
struct DigitInterval {
  Rat lo, hi;  // half open (lo, hi]
  bool contains(const Rat& x) const { return lo < x && x <= hi; }
};
DigitInterval digit_interval(int weight, int level);

// Digits d_k..d_1 and the residual base value, top down. Throws
// OutOfRangeError when the value lies outside I_{i,k} (or, in lattice mode,
// is not an admissible integer).
struct ScalarDigits {
  std::vector<Rat> digit;  // digit[l] for l = 1..k at index l-1
  Rat base;                // level-0 value
};
ScalarDigits scalar_encode(const Rat& x, int weight, int k, bool lattice);
Rat scalar_decode(const ScalarDigits& d, int weight);

// Smallest depth whose interval contains x.
int scalar_min_depth(const Rat& x, int weight);

struct DigitWord {
  std::vector<VecQ> levels;  // levels[l][idx], l = 0..depth
  int depth() const { return static_cast<int>(levels.size()) - 1; }
  bool operator==(const DigitWord& o) const { return levels == o.levels; }
};

struct TilingSpec {
  std::vector<std::shared_ptr<const LayeredAlgebra>> quots;  // class 1..s
  Law law = Law::original;
  int depth = 8;       // truncation K
  int bits = 32;       // dyadic resolution of the base interval
  bool lattice = false;
  int block = 1;       // levels merged per block letter

  const LayeredAlgebra& alg() const { return *quots.back(); }
  int dim() const { return alg().dim(); }
  int flat_depth(int k) const { return block * k; }
  Group group() const { return Group(&alg(), law); }
};

TilingSpec make_tiling(const LayeredAlgebra& alg, Law law = Law::original,
                       int depth = 8, int bits = 32, bool lattice = false);

// Same tiling read through block letters of m levels; the alphabet of one
// block letter has 2^{m r} symbols (r the growth degree).
TilingSpec block_tiling(const TilingSpec& spec, int m);
long block_alphabet_bits(const TilingSpec& spec);

// Digit word of a group element at flat depth k. On failure carries the
// smallest sufficient depth instead; -1 when no depth up to k + 64 works
// (the forced truncation pads can outrace the top-layer interval).
struct EncodeOutcome {
  std::optional<DigitWord> word;
  int required_depth = 0;  // valid when !word
  bool ok() const { return word.has_value(); }
};
EncodeOutcome encode(const TilingSpec& spec, const VecQ& v, int k);

VecQ decode(const TilingSpec& spec, const DigitWord& w);

// Uniform word at block depth k (flat depth block*k).
DigitWord sample_uniform(const TilingSpec& spec, int k, Rng& rng);

// Separation in block levels: 0 when equal, otherwise one past the highest
// differing block level. Words must share a depth.
int rho(const TilingSpec& spec, const DigitWord& x, const DigitWord& y);

// Left translation read through digits: encode(g * decode(x)) at the spec's
// truncation depth.
EncodeOutcome act(const TilingSpec& spec, const VecQ& g, const DigitWord& x);

// Monte Carlo escape probabilities q_k = P(some generator pushes a uniform
// depth-k word outside the tile). Rows per generator plus a pooled row over
// the whole set (gen = -1). Wilson 95% intervals.
struct FolnerRow {
  int gen;  // index into gens, -1 = pooled over the set
  int k;
  long long escapes, trials;
  double q_hat, ci_lo, ci_hi;
};
std::vector<FolnerRow> folner_stats(const TilingSpec& spec,
                                    const std::vector<VecQ>& gens,
                                    const std::vector<int>& ks, long long n,
                                    std::uint64_t seed);

struct DiameterStats {
  int k;
  long long trials;
  double max_dist, mean_dist, ratio;  // ratio = max / 2^{flat depth}
};
DiameterStats diameter_stats(const TilingSpec& spec, int k, long long n,
                             std::uint64_t seed);

}  // namespace nilc
