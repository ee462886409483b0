#include "tiling.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nilc {

namespace {

Rat int_pow2(long e) {
  assert(e >= 0);
  return pow2(e);
}

}  // namespace

DigitInterval digit_interval(int weight, int level) {
  const long i = weight;
  DigitInterval iv{-pow2(i - 1), pow2(i - 1)};
  for (int l = 1; l <= level; ++l) {
    if (l % 2 == 1) {
      iv.lo -= int_pow2((l + 1) * i);
      iv.hi -= int_pow2(l * i);
    } else {
      iv.hi += (int_pow2(i) - 1) * int_pow2(l * i);
    }
  }
  return iv;
}

ScalarDigits scalar_encode(const Rat& x, int weight, int k, bool lattice) {
  const long i = weight;
  if (!digit_interval(weight, k).contains(x))
    throw OutOfRangeError("value " + rat_str(x) + " outside I_(" +
                          std::to_string(weight) + "," + std::to_string(k) +
                          ")");
  ScalarDigits d;
  d.digit.assign(k, Rat(0));
  Rat rem = x;
  for (int l = k; l >= 1; --l) {
    const DigitInterval prev = digit_interval(weight, l - 1);
    const Rat step = int_pow2(l * i);
    const long d_lo = (l % 2 == 1) ? -(1l << i) : 0;
    const long d_hi = (l % 2 == 1) ? -1 : (1l << i) - 1;
    bool found = false;
    for (long dv = d_lo; dv <= d_hi; ++dv) {
      if (prev.contains(rem - dv * step)) {
        d.digit[l - 1] = dv;
        rem -= dv * step;
        found = true;
        break;
      }
    }
    assert(found);
  }
  if (lattice && !is_integer(rem))
    throw OutOfRangeError("value " + rat_str(x) +
                          " is not a lattice point at weight " +
                          std::to_string(weight));
  d.base = rem;
  return d;
}

Rat scalar_decode(const ScalarDigits& d, int weight) {
  Rat x = d.base;
  for (std::size_t l = 1; l <= d.digit.size(); ++l)
    x += d.digit[l - 1] * int_pow2(static_cast<long>(l) * weight);
  return x;
}

int scalar_min_depth(const Rat& x, int weight) {
  for (int k = 0;; ++k)
    if (digit_interval(weight, k).contains(x)) return k;
}

TilingSpec make_tiling(const LayeredAlgebra& alg, Law law, int depth, int bits,
                       bool lattice) {
  TilingSpec spec;
  spec.law = law;
  spec.depth = depth;
  spec.bits = bits;
  spec.lattice = lattice;
  std::vector<std::shared_ptr<const LayeredAlgebra>> rev;
  rev.push_back(std::make_shared<const LayeredAlgebra>(alg));
  for (int c = alg.cls(); c > 1; --c)
    rev.push_back(std::make_shared<const LayeredAlgebra>(
        quotient_by_top_layer(*rev.back())));
  spec.quots.assign(rev.rbegin(), rev.rend());
  return spec;
}

TilingSpec block_tiling(const TilingSpec& spec, int m) {
  if (m < 1) throw std::invalid_argument("block size must be positive");
  TilingSpec b = spec;
  b.block = m;
  if (b.depth % m != 0) b.depth += m - b.depth % m;
  return b;
}

long block_alphabet_bits(const TilingSpec& spec) {
  return static_cast<long>(spec.block) * growth_degree(spec.alg());
}

namespace {

// Group product of the digit factors of levels 0..depth restricted to the
// first `dims` coordinates, inside the class-c quotient.
VecQ decode_in(const TilingSpec& spec, int c, const DigitWord& w, int dims) {
  const LayeredAlgebra& alg = *spec.quots[c - 1];
  Group g(&alg, spec.law);
  GroupElement p = g.id();
  for (int l = 0; l < static_cast<int>(w.levels.size()); ++l)
    for (int idx = 0; idx < dims; ++idx) {
      if (w.levels[l][idx] == 0) continue;
      GroupElement f = g.id();
      f.v[idx] =
          w.levels[l][idx] * int_pow2(static_cast<long>(l) * alg.weight(idx));
      p = mul(p, f);
    }
  return p.v;
}

bool encode_rec(const TilingSpec& spec, int c, const VecQ& v, int k,
                DigitWord& w) {
  const LayeredAlgebra& alg = *spec.quots[c - 1];
  const int lower = alg.dim() - alg.layers().back();
  if (c > 1) {
    VecQ vbar(v.begin(), v.begin() + lower);
    if (!encode_rec(spec, c - 1, vbar, k, w)) return false;
  }
  // Central residual of the partial word; only top-layer coordinates remain.
  VecQ p = decode_in(spec, c, w, lower);
  Group g(&alg, spec.law);
  VecQ r = bch(g.alg(), c, neg(p), VecQ(v.begin(), v.begin() + alg.dim()));
  for (int idx = 0; idx < lower; ++idx) assert(r[idx] == 0);
  for (int idx = lower; idx < alg.dim(); ++idx) {
    try {
      ScalarDigits d = scalar_encode(r[idx], c, k, spec.lattice);
      w.levels[0][idx] = d.base;
      for (int l = 1; l <= k; ++l) w.levels[l][idx] = d.digit[l - 1];
    } catch (const OutOfRangeError&) {
      return false;
    }
  }
  return true;
}

std::optional<DigitWord> encode_at(const TilingSpec& spec, const VecQ& v,
                                   int k) {
  DigitWord w;
  w.levels.assign(k + 1, zero_vec(spec.dim()));
  if (!encode_rec(spec, static_cast<int>(spec.quots.size()), v, k, w))
    return std::nullopt;
  return w;
}

}  // namespace

EncodeOutcome encode(const TilingSpec& spec, const VecQ& v, int k) {
  EncodeOutcome out;
  out.word = encode_at(spec, v, k);
  if (out.word) return out;
  out.required_depth = -1;
  for (int k2 = 0; k2 <= k + 64; k2 += 2) {
    if (k2 <= k && k2 % 2 == k % 2) continue;
    if (encode_at(spec, v, k2)) {
      out.required_depth = k2;
      return out;
    }
  }
  // Truncation pads can race the top-layer interval forever; no finite
  // sufficient depth exists for such elements.
  return out;
}

VecQ decode(const TilingSpec& spec, const DigitWord& w) {
  return decode_in(spec, static_cast<int>(spec.quots.size()), w, spec.dim());
}

DigitWord sample_uniform(const TilingSpec& spec, int k, Rng& rng) {
  const LayeredAlgebra& alg = spec.alg();
  const int d = spec.dim(), flat = spec.flat_depth(k);
  DigitWord w;
  w.levels.assign(flat + 1, zero_vec(d));
  for (int idx = 0; idx < d; ++idx) {
    const long i = alg.weight(idx);
    if (spec.lattice) {
      w.levels[0][idx] = static_cast<long>(
          rng.range(-(1l << (i - 1)) + 1, 1l << (i - 1)));
    } else {
      // grid points lo + n 2^{-bits}, n = 1 .. 2^{i + bits}
      const Rat step = pow2(-spec.bits);
      const std::uint64_t count = 1ull << (i + spec.bits);
      w.levels[0][idx] =
          -pow2(i - 1) + Rat(1 + rng.below(count)) * step;
    }
  }
  for (int l = 1; l <= flat; ++l)
    for (int idx = 0; idx < d; ++idx) {
      const long i = alg.weight(idx);
      const long draw = static_cast<long>(rng.below(1ull << i));
      w.levels[l][idx] = (l % 2 == 1) ? draw - (1l << i) : draw;
    }
  return w;
}

int rho(const TilingSpec& spec, const DigitWord& x, const DigitWord& y) {
  if (x.depth() != y.depth())
    throw std::invalid_argument("digit words have different depths");
  for (int l = x.depth(); l >= 0; --l)
    if (x.levels[l] != y.levels[l])
      // block c covers flat levels (c-1)m+1 .. cm; level 0 is the base
      return l == 0 ? 1 : (l - 1) / spec.block + 2;
  return 0;
}

EncodeOutcome act(const TilingSpec& spec, const VecQ& g, const DigitWord& x) {
  Group grp = spec.group();
  const VecQ moved = bch(grp.alg(), grp.cls(), g, decode(spec, x));
  return encode(spec, moved, spec.depth);
}

namespace {

void wilson(long long succ, long long n, double& lo, double& hi) {
  const double z = 1.959963984540054;
  const double p = static_cast<double>(succ) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  lo = std::max(0.0, center - half);
  hi = std::min(1.0, center + half);
}

double generator_envelope(const LayeredAlgebra& alg) {
  double r = 1.0;
  for (int i = 1; i <= alg.cls(); ++i)
    r += std::pow(alg.layer_dim(i) * std::ldexp(1.0, i - 1), 1.0 / i);
  return 2.0 * r;
}

}  // namespace

std::vector<FolnerRow> folner_stats(const TilingSpec& spec,
                                    const std::vector<VecQ>& gens,
                                    const std::vector<int>& ks, long long n,
                                    std::uint64_t seed) {
  Group grp = spec.group();
  const double envelope = generator_envelope(spec.alg());
  for (const auto& s : gens)
    if (guivarch_length(grp.element(s)) > envelope)
      throw std::invalid_argument(
          "generator exceeds the base tile envelope " +
          std::to_string(envelope));
  std::vector<FolnerRow> rows;
  for (int k : ks) {
    const int flat = spec.flat_depth(k);
    std::vector<long long> esc(gens.size(), 0);
    long long esc_any = 0;
    for (long long t = 0; t < n; ++t) {
      Rng rng = stream_rng(seed, static_cast<std::uint64_t>(k), t);
      DigitWord x = sample_uniform(spec, k, rng);
      const VecQ xv = decode(spec, x);
      bool any = false;
      for (std::size_t si = 0; si < gens.size(); ++si) {
        const VecQ moved = bch(grp.alg(), grp.cls(), gens[si], xv);
        if (!encode_at(spec, moved, flat)) {
          ++esc[si];
          any = true;
        }
      }
      if (any) ++esc_any;
    }
    for (std::size_t si = 0; si < gens.size(); ++si) {
      FolnerRow r{static_cast<int>(si), k, esc[si], n, 0, 0, 0};
      r.q_hat = static_cast<double>(esc[si]) / n;
      wilson(esc[si], n, r.ci_lo, r.ci_hi);
      rows.push_back(r);
    }
    FolnerRow pooled{-1, k, esc_any, n, 0, 0, 0};
    pooled.q_hat = static_cast<double>(esc_any) / n;
    wilson(esc_any, n, pooled.ci_lo, pooled.ci_hi);
    rows.push_back(pooled);
  }
  return rows;
}

DiameterStats diameter_stats(const TilingSpec& spec, int k, long long n,
                             std::uint64_t seed) {
  Group grp = spec.group();
  double maxd = 0.0, sum = 0.0;
  for (long long t = 0; t < n; ++t) {
    Rng rng = stream_rng(seed, 0x4d41494444ull + k, t);
    DigitWord x = sample_uniform(spec, k, rng);
    DigitWord y = sample_uniform(spec, k, rng);
    const double d =
        dist(grp.element(decode(spec, x)), grp.element(decode(spec, y)));
    maxd = std::max(maxd, d);
    sum += d;
  }
  DiameterStats s{k, n, maxd, sum / n, maxd / std::ldexp(1.0, spec.flat_depth(k))};
  return s;
}

}  // namespace nilc
