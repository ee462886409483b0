// Central extensions of nilpotent groups by R and their group 2-cocycles.
//
// The extension of g by an antisymmetric form omega is the algebra on
// g + R z with [(x,a),(y,b)] = ([x,y], omega(x,y)); the z coordinate is
// stored last so base indices are unchanged. The group 2-cocycle psi is
// read off a single BCH product of zero-section lifts.
#pragma once

#include "coupling.hpp"

#include <string>
#include <vector>

namespace nilc {

struct CentralExtension {
  LayeredAlgebra base;
  MatQ omega;     // dim x dim, antisymmetric
  Algebra total;  // dim + 1 with z last
};

CentralExtension make_extension(const LayeredAlgebra& base, const MatQ& omega);

// Empty iff omega is antisymmetric and the extension bracket satisfies
// Jacobi (equivalently the Lie 2-cocycle condition holds).
std::vector<std::string> validate_extension(const CentralExtension& ext);

int extension_class(const CentralExtension& ext);

// psi(g1, g2) = z-coordinate of (g1, 0) * (g2, 0) in the extension group.
Rat psi(const CentralExtension& ext, const VecQ& g1, const VecQ& g2);

// psi(g2,g3) - psi(g1 g2, g3) + psi(g1, g2 g3) - psi(g1, g2), zero for a
// 2-cocycle.
Rat cocycle_identity_residual(const CentralExtension& ext, const VecQ& g1,
                              const VecQ& g2, const VecQ& g3);

// psi(g,h) - psi(h,g) for commuting g, h; equals the z-coordinate of the
// commutator of the lifts (checked exactly). Throws NotCommutingError.
Rat commutator_pairing(const CentralExtension& ext, const VecQ& g,
                       const VecQ& h);

struct ProbeResult {
  double sup = 0, sup_doubled = 0;
  double ratio = 0;  // sup_doubled / sup when sup > 0
  long long trials = 0;
};

// Empirical sup of |psi(g1,g2)| / (|g1|^{s-1}|g2| + |g1||g2|^{s-1}) over
// random pairs with layer-i coordinates in [-2^{i b}, 2^{i b}], b =
// box_log2; repeated with the box doubled.
ProbeResult growth_bound_probe(const CentralExtension& ext, long long n,
                               int box_log2, std::uint64_t seed);

// Empirical sup of |psi(u, v^-1) - psi(u d_u, v d_v)| / (eps R^s) over
// perturbations of Guivarc'h size < eps R; repeated with R doubled.
ProbeResult continuity_probe(const CentralExtension& ext, int r_log2,
                             int eps_log2, long long n, std::uint64_t seed);

// Monte Carlo estimate of the induced cocycle
//   c'(g1, g2) = E_x[ psi(alpha(g1, x), alpha(g2, g2^-1 . x)) ]
// through an orbit-equivalence coupling whose target group is ext.base.
// EXPERIMENTAL: meaningful only under integrability hypotheses the sampled
// coupling is not certified to satisfy; the report always carries the flag.
struct InducedCocycleEstimate {
  double mean = 0, ci_lo = 0, ci_hi = 0;
  long long used = 0, excluded = 0;  // excluded = depth-exceeded trials
  bool experimental = true;
};
InducedCocycleEstimate induced_cocycle_mc(const CouplingSpec& coupling,
                                          const CentralExtension& ext,
                                          const VecQ& g1, const VecQ& g2,
                                          long long n, std::uint64_t seed);

}  // namespace nilc
