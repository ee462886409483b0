#include "extension.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace nilc {

namespace {

VecQ lift(const VecQ& g) {
  VecQ u = g;
  u.push_back(Rat(0));
  return u;
}

}  // namespace

CentralExtension make_extension(const LayeredAlgebra& base, const MatQ& omega) {
  const int d = base.dim();
  if (static_cast<int>(omega.size()) != d)
    throw std::invalid_argument("omega must be dim x dim");
  for (const auto& row : omega)
    if (static_cast<int>(row.size()) != d)
      throw std::invalid_argument("omega must be dim x dim");
  std::vector<Algebra::Pair> pairs;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      VecQ out = base.alg().bracket_basis(a, b);
      out.push_back(omega[a][b]);
      if (!is_zero_vec(out)) pairs.push_back({a, b, std::move(out)});
    }
  return {base, omega, Algebra(d + 1, std::move(pairs))};
}

std::vector<std::string> validate_extension(const CentralExtension& ext) {
  std::vector<std::string> bad;
  const int d = ext.base.dim();
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b)
      if (ext.omega[a][b] != -ext.omega[b][a])
        bad.push_back("omega(" + std::to_string(a + 1) + "," +
                      std::to_string(b + 1) + ") breaks antisymmetry");
  for (auto& s : validate(ext.total)) bad.push_back(std::move(s));
  return bad;
}

int extension_class(const CentralExtension& ext) {
  return nilpotency_class(ext.total);
}

Rat psi(const CentralExtension& ext, const VecQ& g1, const VecQ& g2) {
  const int d = ext.base.dim();
  if (static_cast<int>(g1.size()) != d || static_cast<int>(g2.size()) != d)
    throw std::invalid_argument("element dimension mismatch");
  // The extension is nilpotent of class at most s + 1.
  return bch(ext.total, ext.base.cls() + 1, lift(g1), lift(g2))[d];
}

Rat cocycle_identity_residual(const CentralExtension& ext, const VecQ& g1,
                              const VecQ& g2, const VecQ& g3) {
  const Algebra& a = ext.base.alg();
  const int s = ext.base.cls();
  const VecQ g12 = bch(a, s, g1, g2), g23 = bch(a, s, g2, g3);
  return psi(ext, g2, g3) - psi(ext, g12, g3) + psi(ext, g1, g23) -
         psi(ext, g1, g2);
}

Rat commutator_pairing(const CentralExtension& ext, const VecQ& g,
                       const VecQ& h) {
  const Algebra& a = ext.base.alg();
  const int s = ext.base.cls();
  if (bch(a, s, g, h) != bch(a, s, h, g))
    throw NotCommutingError("elements do not commute in the base group");
  const Rat value = psi(ext, g, h) - psi(ext, h, g);
  // Cross-check against the commutator of the lifts.
  const int d = ext.base.dim();
  const VecQ gh = bch(ext.total, s + 1, lift(g), lift(h));
  const VecQ hg = bch(ext.total, s + 1, lift(h), lift(g));
  const VecQ comm = bch(ext.total, s + 1, gh, neg(hg));
  for (int idx = 0; idx < d; ++idx)
    if (comm[idx] != 0)
      throw std::logic_error("lift commutator is not central");
  if (comm[d] != value)
    throw std::logic_error("pairing disagrees with the lift commutator");
  return value;
}

namespace {

// Layer-i coordinates uniform on the dyadic grid in [-2^{i b}, 2^{i b}].
VecQ sample_box(const LayeredAlgebra& alg, int log2_scale, Rng& rng) {
  const int grid = 8;
  VecQ v = zero_vec(alg.dim());
  for (int idx = 0; idx < alg.dim(); ++idx) {
    const long long n = 1ll << grid;
    const long long draw = rng.range(-n, n);
    v[idx] = Rat(static_cast<long>(draw)) *
             pow2(static_cast<long>(alg.weight(idx)) * log2_scale - grid);
  }
  return v;
}

double growth_sup(const CentralExtension& ext, long long n, int box_log2,
                  std::uint64_t seed) {
  Group grp(&ext.base, Law::original);
  const int s = nilpotency_class(ext.total);
  double sup = 0;
  for (long long t = 0; t < n; ++t) {
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(box_log2), t);
    const VecQ g1 = sample_box(ext.base, box_log2, rng);
    const VecQ g2 = sample_box(ext.base, box_log2, rng);
    const double n1 = guivarch_length(grp.element(g1));
    const double n2 = guivarch_length(grp.element(g2));
    const double denom =
        std::pow(n1, s - 1) * n2 + n1 * std::pow(n2, s - 1);
    sup = std::max(sup, std::fabs(psi(ext, g1, g2).get_d()) / denom);
  }
  return sup;
}

}  // namespace

ProbeResult growth_bound_probe(const CentralExtension& ext, long long n,
                               int box_log2, std::uint64_t seed) {
  ProbeResult r;
  r.trials = n;
  r.sup = growth_sup(ext, n, box_log2, seed);
  r.sup_doubled = growth_sup(ext, n, box_log2 + 1, seed);
  r.ratio = r.sup > 0 ? r.sup_doubled / r.sup : 0;
  return r;
}

namespace {

double continuity_sup(const CentralExtension& ext, int r_log2, int eps_log2,
                      long long n, std::uint64_t seed) {
  const Algebra& a = ext.base.alg();
  const int s_base = ext.base.cls();
  const int s = nilpotency_class(ext.total);
  double sup = 0;
  for (long long t = 0; t < n; ++t) {
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(r_log2), t);
    const VecQ u = sample_box(ext.base, r_log2, rng);
    const VecQ v = sample_box(ext.base, r_log2, rng);
    const VecQ du = sample_box(ext.base, r_log2 + eps_log2, rng);
    const VecQ dv = sample_box(ext.base, r_log2 + eps_log2, rng);
    const VecQ ub = bch(a, s_base, u, du), vb = bch(a, s_base, v, dv);
    const Rat diff = psi(ext, u, neg(v)) - psi(ext, ub, neg(vb));
    const double denom = std::ldexp(1.0, eps_log2 + r_log2 * s);
    sup = std::max(sup, std::fabs(diff.get_d()) / denom);
  }
  return sup;
}

}  // namespace

ProbeResult continuity_probe(const CentralExtension& ext, int r_log2,
                             int eps_log2, long long n, std::uint64_t seed) {
  ProbeResult r;
  r.trials = n;
  r.sup = continuity_sup(ext, r_log2, eps_log2, n, seed);
  r.sup_doubled = continuity_sup(ext, r_log2 + 1, eps_log2, n, seed);
  r.ratio = r.sup > 0 ? r.sup_doubled / r.sup : 0;
  return r;
}

InducedCocycleEstimate induced_cocycle_mc(const CouplingSpec& coupling,
                                          const CentralExtension& ext,
                                          const VecQ& g1, const VecQ& g2,
                                          long long n, std::uint64_t seed) {
  if (!(ext.base == coupling.dst.alg()))
    throw AlgebraMismatchError("extension base is not the coupling target");
  const TilingSpec& src = coupling.src;
  const TilingSpec& dst = coupling.dst;
  Group gd = dst.group();
  const Algebra& da = gd.alg();
  const int cls = gd.cls();
  auto alpha = [&](const VecQ& g, const DigitWord& x,
                   std::optional<VecQ>& out) {
    EncodeOutcome moved = act(src, g, x);
    if (!moved.ok()) return false;
    const VecQ a = decode(dst, phi(coupling, *moved.word));
    const VecQ b = decode(dst, phi(coupling, x));
    out = bch(da, cls, a, neg(b));
    return true;
  };
  InducedCocycleEstimate est;
  double sum = 0, sumsq = 0;
  for (long long t = 0; t < n; ++t) {
    Rng rng = stream_rng(seed, 0x494e44ull, t);
    DigitWord x = sample_uniform(src, coupling.block_depth, rng);
    std::optional<VecQ> a1, a2;
    EncodeOutcome x2 = act(src, neg(g2), x);
    if (!x2.ok() || !alpha(g1, x, a1) || !alpha(g2, *x2.word, a2)) {
      ++est.excluded;
      continue;
    }
    const double val = psi(ext, *a1, *a2).get_d();
    sum += val;
    sumsq += val * val;
    ++est.used;
  }
  if (est.used < 10)
    throw InsufficientDataError("fewer than 10 usable trials");
  est.mean = sum / est.used;
  const double var =
      std::max(0.0, (sumsq - sum * sum / est.used) / (est.used - 1));
  const double half = 1.959963984540054 * std::sqrt(var / est.used);
  est.ci_lo = est.mean - half;
  est.ci_hi = est.mean + half;
  return est;
}

}  // namespace nilc
