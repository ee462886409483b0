#include "coupling.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace nilc {

namespace {

// Invertible mixing on t-bit integers: odd multiplications mod 2^t, a shift
// xor, and a mask xor. Each step is a bijection of Z/2^t.
Int bitmix(const Int& n, long t) {
  const Int mod = Int(1) << t;
  Int mask = 0;
  for (long b = 0; b < t; b += 2) mask |= Int(1) << b;
  const Int k1("0x9e3779b97f4a7c15"), k2("0xbf58476d1ce4e5b9"),
      k3("0x94d049bb133111eb");
  Int x = n;
  x = (x * k1) % mod;
  x ^= (x >> (t / 2 + 1));
  x = (x * k2) % mod;
  x ^= mask;
  x = (x * k3) % mod;
  return x;
}

long level0_bits(const TilingSpec& spec) {
  long t = 0;
  for (int idx = 0; idx < spec.dim(); ++idx)
    t += spec.alg().weight(idx) + (spec.lattice ? 0 : spec.bits);
  return t;
}

// Level-0 value <-> nonnegative symbol on the grid of its base interval.
Int level0_symbol(const TilingSpec& spec, int weight, const Rat& v) {
  Rat s = v + pow2(weight - 1);
  if (!spec.lattice) s *= pow2(spec.bits);
  s -= 1;
  assert(is_integer(s) && s >= 0);
  return s.get_num();
}

Rat level0_value(const TilingSpec& spec, int weight, const Int& sym) {
  Rat v = Rat(sym) + 1;
  if (!spec.lattice) v /= pow2(spec.bits);
  return v - pow2(weight - 1);
}

}  // namespace

CouplingSpec build_coupling(const TilingSpec& src, const TilingSpec& dst,
                            DigitMap map, bool scramble_level0) {
  CouplingSpec c;
  c.src = src;
  c.dst = dst;
  c.map = map;
  c.scramble_level0 = scramble_level0;
  const long rs = growth_degree(src.alg()), rd = growth_degree(dst.alg());
  if (rs * src.block != rd * dst.block) {
    if (src.block == 1 && dst.block == 1) {
      c.src = block_tiling(c.src, static_cast<int>(rd));
      c.dst = block_tiling(c.dst, static_cast<int>(rs));
    } else {
      throw UnmatchedAlphabetsError(
          "level alphabets have " + std::to_string(rs * src.block) + " vs " +
          std::to_string(rd * dst.block) + " bits");
    }
  }
  c.block_depth = std::min(c.src.depth / c.src.block,
                           c.dst.depth / c.dst.block);
  c.src.depth = c.src.block * c.block_depth;
  c.dst.depth = c.dst.block * c.block_depth;
  c.identity_digits = map == DigitMap::aligned && !scramble_level0 &&
                      c.src.alg().layers() == c.dst.alg().layers() &&
                      c.src.block == c.dst.block &&
                      c.src.lattice == c.dst.lattice &&
                      (c.src.lattice || c.src.bits == c.dst.bits);
  return c;
}

DigitWord phi(const CouplingSpec& spec, const DigitWord& x) {
  if (x.depth() % spec.src.block != 0)
    throw std::invalid_argument("word depth not a whole number of blocks");
  const int nblocks = x.depth() / spec.src.block;
  if (spec.identity_digits) return x;

  const TilingSpec& s = spec.src;
  const TilingSpec& d = spec.dst;
  DigitWord y;
  y.levels.assign(d.block * nblocks + 1, zero_vec(d.dim()));

  {  // block level 0
    Int rank = 0, place = 1;
    for (int idx = 0; idx < s.dim(); ++idx) {
      const int i = s.alg().weight(idx);
      rank += place * level0_symbol(s, i, x.levels[0][idx]);
      place <<= i + (s.lattice ? 0 : s.bits);
    }
    if (spec.scramble_level0) rank = bitmix(rank, level0_bits(s));
    rank %= Int(1) << level0_bits(d);
    for (int idx = 0; idx < d.dim(); ++idx) {
      const int i = d.alg().weight(idx);
      const long bits = i + (d.lattice ? 0 : d.bits);
      Int sym = rank % (Int(1) << bits);
      rank >>= bits;
      y.levels[0][idx] = level0_value(d, i, sym);
    }
  }

  const long tbits = static_cast<long>(s.block) * growth_degree(s.alg());
  assert(tbits == static_cast<long>(d.block) * growth_degree(d.alg()));
  for (int b = 1; b <= nblocks; ++b) {
    Int rank = 0, place = 1;
    for (int l = (b - 1) * s.block + 1; l <= b * s.block; ++l)
      for (int idx = 0; idx < s.dim(); ++idx) {
        const int i = s.alg().weight(idx);
        Rat norm = x.levels[l][idx];
        if (l % 2 == 1) norm += pow2(i);
        assert(is_integer(norm) && norm >= 0);
        rank += place * norm.get_num();
        place <<= i;
      }
    if (spec.map == DigitMap::scrambled) rank = bitmix(rank, tbits);
    for (int l = (b - 1) * d.block + 1; l <= b * d.block; ++l)
      for (int idx = 0; idx < d.dim(); ++idx) {
        const int i = d.alg().weight(idx);
        Int sym = rank % (Int(1) << i);
        rank >>= i;
        Rat digit = Rat(sym);
        if (l % 2 == 1) digit -= pow2(i);
        y.levels[l][idx] = digit;
      }
  }
  return y;
}

double point_dist(const TilingSpec& spec, const DigitWord& x,
                  const DigitWord& y) {
  Group g = spec.group();
  const VecQ a = decode(spec, x), b = decode(spec, y);
  return guivarch_length(g.element(bch(g.alg(), g.cls(), a, neg(b))));
}

CocycleSample cocycle_eval(const CouplingSpec& spec, const VecQ& s,
                           const DigitWord& x) {
  CocycleSample out;
  EncodeOutcome moved = act(spec.src, s, x);
  if (!moved.ok()) {
    out.k = spec.block_depth;
    out.ok = false;
    return out;
  }
  out.ok = true;
  out.k = rho(spec.src, *moved.word, x);
  out.d = point_dist(spec.dst, phi(spec, *moved.word), phi(spec, x));
  return out;
}

std::vector<VecQ> default_generators(const LayeredAlgebra& alg) {
  std::vector<VecQ> gens;
  for (int j = 0; j < alg.layer_dim(1); ++j) {
    VecQ v = zero_vec(alg.dim());
    v[j] = 1;
    gens.push_back(v);
    v[j] = -1;
    gens.push_back(v);
  }
  return gens;
}

std::vector<CocycleSample> sample_cocycle(const CouplingSpec& spec,
                                          const std::vector<VecQ>& gens,
                                          long long n, std::uint64_t seed) {
  std::vector<CocycleSample> out;
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (long long t = 0; t < n; ++t) {
      Rng rng = stream_rng(seed, gi, t);
      DigitWord x = sample_uniform(spec.src, spec.block_depth, rng);
      CocycleSample s = cocycle_eval(spec, gens[gi], x);
      s.gen = static_cast<int>(gi);
      s.trial = t;
      out.push_back(s);
    }
  return out;
}

ResidueProfile residue_profile(const CouplingSpec& spec, const VecQ& s,
                               const DigitWord& x) {
  if (spec.src.alg().layers() != spec.dst.alg().layers() ||
      !spec.identity_digits)
    throw std::invalid_argument(
        "residue profile requires an identity-shaped coupling");
  ResidueProfile out;
  EncodeOutcome moved = act(spec.src, s, x);
  if (!moved.ok()) {
    out.depth_exceeded = true;
    return out;
  }
  const DigitWord& xs = *moved.word;
  out.k = rho(spec.src, xs, x);
  Group gs = spec.src.group(), gd = spec.dst.group();
  const int depth = x.depth();

  // Level factor under either law: the digit product of one level.
  auto factor = [&](const Group& g, const DigitWord& w, int l) {
    GroupElement p = g.id();
    for (int idx = 0; idx < g.dim(); ++idx) {
      if (w.levels[l][idx] == 0) continue;
      GroupElement f = g.id();
      f.v[idx] = w.levels[l][idx] *
                 pow2(static_cast<long>(l) * g.layered().weight(idx));
      p = mul(p, f);
    }
    return p;
  };

  GroupElement px = gs.id(), pxs = gs.id();  // source-law partial products
  out.r.assign(depth + 1, {});
  out.v.assign(depth + 1, {});
  out.v_len.assign(depth + 1, 0.0);
  VecQ r_prev = s;  // r_{-1}
  out.v_top_layer_only = true;
  const int top_off = spec.dst.alg().layer_offset(spec.dst.alg().cls());
  for (int l = 0; l <= depth; ++l) {
    px = mul(px, factor(gs, x, l));
    pxs = mul(pxs, factor(gs, xs, l));
    const VecQ r_l =
        bch(gs.alg(), gs.cls(), neg(pxs.v),
            bch(gs.alg(), gs.cls(), s, px.v));
    GroupElement v = gd.element(r_prev);
    v = mul(v, factor(gd, x, l));
    v = mul(v, gd.element(neg(r_l)));
    v = mul(v, inverse(factor(gd, xs, l)));
    out.r[l] = r_l;
    out.v[l] = v.v;
    out.v_len[l] = guivarch_length(v);
    for (int idx = 0; idx < top_off; ++idx)
      if (v.v[idx] != 0) out.v_top_layer_only = false;
    r_prev = r_l;
  }

  // s * g(phi x) = v_0 * phi_0(f_0^s) * ... * v_K * phi_K(f_K^s)
  GroupElement lhs = mul(gd.element(s), gd.element(decode(spec.dst, x)));
  GroupElement rhs = gd.id();
  for (int l = 0; l <= depth; ++l) {
    rhs = mul(rhs, gd.element(out.v[l]));
    rhs = mul(rhs, factor(gd, xs, l));
  }
  out.factorization_ok = lhs.v == rhs.v;
  return out;
}

ExponentFit exponent_fit(const std::vector<CocycleSample>& samples) {
  std::vector<std::pair<int, double>> pts;
  for (const auto& s : samples)
    if (s.ok && s.k >= 2 && s.d > 0) pts.push_back({s.k, std::log2(s.d)});
  std::vector<int> ks;
  for (const auto& p : pts) ks.push_back(p.first);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (pts.size() < 100 || ks.size() < 4)
    throw InsufficientDataError(
        "need at least 100 ok samples over 4 depths, have " +
        std::to_string(pts.size()) + " over " + std::to_string(ks.size()));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [k, y] : pts) {
    sx += k;
    sy += y;
    sxx += static_cast<double>(k) * k;
    sxy += k * y;
  }
  const double n = static_cast<double>(pts.size());
  ExponentFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (const auto& [k, y] : pts) {
    const double e = y - (fit.slope * k + fit.intercept);
    ss += e * e;
  }
  fit.residual_rms = std::sqrt(ss / n);
  fit.used = pts.size();
  fit.distinct_k = static_cast<int>(ks.size());
  // Theil-Sen over per-depth medians keeps the pair count tame.
  std::vector<std::pair<int, double>> med;
  for (int k : ks) {
    std::vector<double> ys;
    for (const auto& [pk, y] : pts)
      if (pk == k) ys.push_back(y);
    std::sort(ys.begin(), ys.end());
    med.push_back({k, ys[ys.size() / 2]});
  }
  std::vector<double> slopes;
  for (std::size_t i = 0; i < med.size(); ++i)
    for (std::size_t j = i + 1; j < med.size(); ++j)
      slopes.push_back((med[j].second - med[i].second) /
                       (med[j].first - med[i].first));
  std::sort(slopes.begin(), slopes.end());
  fit.theil_sen = slopes[slopes.size() / 2];
  return fit;
}

std::vector<MomentRow> moment_report(const std::vector<CocycleSample>& samples,
                                     const std::vector<double>& p_grid,
                                     int depth_k) {
  std::vector<MomentRow> rows;
  std::vector<int> truncs;
  for (int kp = std::max(2, depth_k - 5); kp <= depth_k; ++kp)
    truncs.push_back(kp);
  for (double p : p_grid) {
    MomentRow row{p, truncs, {}, {}, false};
    for (int kp : truncs) {
      double sum = 0;
      long long cnt = 0;
      for (const auto& s : samples)
        if (s.ok && s.k <= kp) {
          sum += std::pow(s.d, p);
          ++cnt;
        }
      row.means.push_back(cnt > 0 ? sum / cnt : 0.0);
    }
    for (std::size_t i = 1; i < row.means.size(); ++i)
      row.ratios.push_back(row.means[i - 1] > 0
                               ? row.means[i] / row.means[i - 1]
                               : 0.0);
    for (std::size_t i = 0; i + 3 <= row.ratios.size(); ++i)
      if (row.ratios[i] > 1.3 && row.ratios[i + 1] > 1.3 &&
          row.ratios[i + 2] > 1.3)
        row.divergence_suspected = true;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BoundEntry> bounds_report(const LayeredAlgebra& g,
                                      const LayeredAlgebra& h,
                                      const BoundsParams& params) {
  std::vector<BoundEntry> out;
  const int rg = growth_degree(g), rh = growth_degree(h);
  out.push_back({"growth_degree_G", std::to_string(rg),
                 "Bass-Guivarc'h degree sum i*m_i"});
  out.push_back({"growth_degree_H", std::to_string(rh),
                 "Bass-Guivarc'h degree sum i*m_i"});
  if (g == h) {
    out.push_back({"lp_interval", "[0, inf]", "identity coupling"});
    return out;
  }
  if (params.relation == CarnotRelation::different || rg != rh) {
    const int n = std::min(rg, rh), m = std::max(rg, rh);
    out.push_back({"lp_interval", "[0, " + rat_str(Rat(n) / Rat(m)) + ")",
                   "Thm. 1.8: L^p ME for p in [0, n/m) only"});
  }
  if (params.relation == CarnotRelation::same && params.e) {
    const Rat& e = *params.e;
    const int s = g.cls();
    out.push_back({"oe_lower_bound", rat_str(Rat(s) / (Rat(s) - (1 - e))),
                   "Thm. 1.10: p_OE(G, gr(G)) >= s/(s-(1-e))"});
    if (params.central_difference)
      out.push_back({"oe_lower_bound", rat_str(1 / e),
                     "Thm. 1.10: central case, p_OE(G, gr(G)) >= 1/e"});
  }
  if (params.family_mn) {
    const auto [m, n] = *params.family_mn;
    out.push_back({"family_lower_bound", rat_str(Rat(m - 1) / Rat(n - 1)),
                   "Prop. 1.11: G_{m,n} vs gr, L^p OE for p < (m-1)/(n-1)"});
    out.push_back({"family_upper_bound", std::to_string(m),
                   "Cor. 1.12: not L^p ME for any p > m"});
  }
  return out;
}

}  // namespace nilc
