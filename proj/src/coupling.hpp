// Orbit-equivalence couplings between two matched tilings: digitwise
// transport, cocycle sampling, residue profiles, exponent fits, and the
// reporter for known integrability intervals.
#pragma once

#include "tiling.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilc {

// How a block level's digit tuple is carried to the target alphabet.
//  aligned:   lex rank by (layer, position, level-in-block), digits offset
//             into [0, 2^i); rank written into the target radices.
//  scrambled: aligned rank composed with a fixed nonlinear bit-mixing
//             permutation of the alphabet. Destroys the algebraic alignment
//             while staying an exact measure-preserving bijection; used as
//             the unaligned control in exponent comparisons.
enum class DigitMap : std::uint8_t { aligned, scrambled };

struct CouplingSpec {
  TilingSpec src, dst;
  bool identity_digits = false;  // same basis labels and layers
  DigitMap map = DigitMap::aligned;
  bool scramble_level0 = false;
  int block_depth = 0;  // shared number of block levels
};

// Matches the two tilings: equal growth degrees pair level by level;
// otherwise cross blocks (m_src = r_dst, m_dst = r_src) make the level
// alphabets equal. Throws UnmatchedAlphabetsError when the cardinalities
// cannot be matched.
CouplingSpec build_coupling(const TilingSpec& src, const TilingSpec& dst,
                            DigitMap map = DigitMap::aligned,
                            bool scramble_level0 = false);

// Digitwise transport of a source word (depth = src flat depth).
DigitWord phi(const CouplingSpec& spec, const DigitWord& x);

// Distance between two points of the tiling space: Guivarc'h length of
// g(x) g(y)^-1 for the decoded words. Common top levels cancel, so the
// value is stable under extending both words by equal digits.
double point_dist(const TilingSpec& spec, const DigitWord& x,
                  const DigitWord& y);

struct CocycleSample {
  int gen = 0;
  long long trial = 0;
  int k = 0;        // rho(s.x, x) in source block levels
  bool ok = false;  // false = depth exceeded
  double d = 0.0;   // target-side point distance
};

// Acts by s on the source side, transports both points, measures in the
// target. Depth-exceeded outcomes are recorded, not discarded.
CocycleSample cocycle_eval(const CouplingSpec& spec, const VecQ& s,
                           const DigitWord& x);

// N trials per generator, streams keyed by (seed, generator, trial).
std::vector<CocycleSample> sample_cocycle(const CouplingSpec& spec,
                                          const std::vector<VecQ>& gens,
                                          long long n, std::uint64_t seed);

// Default generating family exp(+-X_{1j}) of the source group.
std::vector<VecQ> default_generators(const LayeredAlgebra& alg);

// Residues r_l of the graded-vs-original comparison and the error terms
// v_l = r_{l-1} * f_l * r_l^-1 * (f_l^s)^-1, with the exact factorization
// s * g(phi x) = v_0 * f_0^s * ... * v_K * f_K^s checked as rational
// vectors. Requires an identity-shaped coupling.
struct ResidueProfile {
  int k = 0;
  std::vector<VecQ> r, v;          // levels 0..K
  std::vector<double> v_len;       // guivarch lengths of the v_l
  bool factorization_ok = false;
  bool v_top_layer_only = false;   // every v_l supported on the top layer
  bool depth_exceeded = false;
};
ResidueProfile residue_profile(const CouplingSpec& spec, const VecQ& s,
                               const DigitWord& x);

struct ExponentFit {
  double slope = 0, intercept = 0, residual_rms = 0;
  double theil_sen = 0;
  long long used = 0;
  int distinct_k = 0;
};
// Least squares of log2 d on k over ok samples with k >= 2; Theil-Sen slope
// alongside. Throws InsufficientDataError below 100 samples or 4 distinct k.
ExponentFit exponent_fit(const std::vector<CocycleSample>& samples);

struct MomentRow {
  double p;
  std::vector<int> truncations;
  std::vector<double> means;   // mean of d^p over ok samples with k <= K'
  std::vector<double> ratios;  // successive means
  bool divergence_suspected;   // three successive ratios above 1.3
};
std::vector<MomentRow> moment_report(const std::vector<CocycleSample>& samples,
                                     const std::vector<double>& p_grid,
                                     int depth_k);

struct BoundEntry {
  std::string kind;        // e.g. "lp_interval_upper"
  std::string value;       // exact rational or "inf"
  std::string provenance;  // citation
};
enum class CarnotRelation { same, different, unknown };
struct BoundsParams {
  CarnotRelation relation = CarnotRelation::unknown;
  std::optional<Rat> e;          // Cornulier constant of the pair
  bool central_difference = false;
  std::optional<std::pair<int, int>> family_mn;  // (m, n) for G_{m,n}
};
std::vector<BoundEntry> bounds_report(const LayeredAlgebra& g,
                                      const LayeredAlgebra& h,
                                      const BoundsParams& params);

}  // namespace nilc
