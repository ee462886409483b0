#include "group.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <mutex>

namespace nilc {

namespace {

Rat factorial(int n) {
  static std::vector<Rat> cache{1, 1};
  while (static_cast<int>(cache.size()) <= n)
    cache.push_back(cache.back() * static_cast<int>(cache.size()));
  return cache[n];
}

// Dynkin's form: the coefficient of a word w is the sum over all splittings
// of w into blocks X^{a_1} Y^{b_1} ... X^{a_n} Y^{b_n} (a_i + b_i >= 1) of
// (-1)^{n-1} / (n * m * prod a_i! b_i!).
Rat word_coefficient(int len, std::uint32_t bits) {
  Rat total = 0;
  // splittings enumerated recursively over (position, block count, weight)
  struct Rec {
    int len;
    std::uint32_t bits;
    Rat* total;
    void go(int pos, int blocks, const Rat& inv_weight) {
      if (pos == len) {
        Rat term = inv_weight / (blocks * len);
        if (blocks % 2 == 0) term = -term;
        *total += term;
        return;
      }
      int max_x = 0;
      while (pos + max_x < len && ((bits >> (pos + max_x)) & 1) == 0) ++max_x;
      for (int a = 0; a <= max_x; ++a) {
        int max_y = 0;
        while (pos + a + max_y < len && ((bits >> (pos + a + max_y)) & 1) == 1)
          ++max_y;
        for (int b = (a == 0 ? 1 : 0); b <= max_y; ++b)
          go(pos + a + b, blocks + 1,
             inv_weight / (factorial(a) * factorial(b)));
      }
    }
  };
  Rec r{len, bits, &total};
  r.go(0, 0, Rat(1));
  return total;
}

}  // namespace

const std::vector<BchTerm>& bch_terms(int cls) {
  static std::mutex mu;
  static std::map<int, std::vector<BchTerm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(cls);
  if (it != cache.end()) return it->second;
  std::vector<BchTerm> terms;
  for (int len = 1; len <= cls; ++len)
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      Rat c = word_coefficient(len, bits);
      if (c != 0) terms.push_back({len, bits, std::move(c)});
    }
  return cache.emplace(cls, std::move(terms)).first->second;
}

VecQ bch(const Algebra& a, int cls, const VecQ& u, const VecQ& v) {
  const int d = a.dim();
  const auto& terms = bch_terms(cls);
  // value[m][bits] = right-nested bracket of the length-m word; suffix DP.
  std::vector<std::vector<VecQ>> value(cls + 1);
  std::vector<std::vector<bool>> zero(cls + 1);
  value[1] = {u, v};
  zero[1] = {is_zero_vec(u), is_zero_vec(v)};
  for (int m = 2; m <= cls; ++m) {
    value[m].resize(1u << m);
    zero[m].assign(1u << m, true);
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
      const std::uint32_t suffix = bits >> 1;
      if (zero[m - 1][suffix]) {
        value[m][bits] = zero_vec(d);
        continue;
      }
      const VecQ& head = (bits & 1) ? v : u;
      value[m][bits] = a.bracket(head, value[m - 1][suffix]);
      zero[m][bits] = is_zero_vec(value[m][bits]);
    }
  }
  VecQ r = zero_vec(d);
  for (const auto& t : terms)
    if (!zero[t.len][t.bits]) add_in_place(r, value[t.len][t.bits], t.coeff);
  return r;
}

namespace {
void check_ctx(const GroupElement& x, const GroupElement& y) {
  if (!x.grp || !y.grp || !(*x.grp == *y.grp))
    throw AlgebraMismatchError("operands belong to different groups");
}
}  // namespace

GroupElement mul(const GroupElement& x, const GroupElement& y) {
  check_ctx(x, y);
  return {x.grp, bch(x.grp->alg(), x.grp->cls(), x.v, y.v)};
}

GroupElement inverse(const GroupElement& x) { return {x.grp, neg(x.v)}; }

GroupElement power(const GroupElement& x, const Rat& t) {
  return {x.grp, scale(t, x.v)};
}

GroupElement commutator(const GroupElement& x, const GroupElement& y) {
  return mul(mul(x, y), mul(inverse(x), inverse(y)));
}

GroupElement iterated_commutator(const std::vector<GroupElement>& xs) {
  assert(!xs.empty());
  GroupElement r = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) r = commutator(xs[i], r);
  return r;
}

GroupElement conjugate(const GroupElement& x, const GroupElement& g) {
  return mul(mul(g, x), inverse(g));
}

GroupElement dilate(const GroupElement& x, const Rat& t) {
  const auto& L = x.grp->layered();
  VecQ r = x.v;
  Rat p = 1;
  int w = 0;
  for (int i = 0; i < x.grp->dim(); ++i) {
    while (w < L.weight(i)) {
      p *= t;
      ++w;
    }
    r[i] *= p;
  }
  return {x.grp, std::move(r)};
}

VecQ to_second_kind(const GroupElement& x) {
  const Group& g = *x.grp;
  const auto& L = g.layered();
  VecQ lambda = zero_vec(g.dim());
  // Peel layers: the layer-i coordinates of the remainder are exactly the
  // lambda_{ij}, since higher factors only touch higher layers.
  GroupElement rest = x;
  for (int i = 1; i <= g.cls(); ++i) {
    const int off = L.layer_offset(i), m = L.layer_dim(i);
    GroupElement block = g.id();
    for (int j = 0; j < m; ++j) {
      lambda[off + j] = rest.v[off + j];
      GroupElement f = g.id();
      f.v[off + j] = lambda[off + j];
      block = mul(block, f);
    }
    rest = mul(inverse(block), rest);
    for (int j = 0; j < m; ++j) assert(rest.v[off + j] == 0);
  }
  assert(is_zero_vec(rest.v));
  return lambda;
}

GroupElement from_second_kind(const Group& g, const VecQ& lambda) {
  GroupElement r = g.id();
  for (int i = 0; i < g.dim(); ++i) {
    if (lambda[i] == 0) continue;
    GroupElement f = g.id();
    f.v[i] = lambda[i];
    r = mul(r, f);
  }
  return r;
}

double guivarch_length(const GroupElement& x) {
  const auto& L = x.grp->layered();
  double len = 1.0;
  for (int i = 1; i <= x.grp->cls(); ++i) {
    Rat norm1 = 0;
    const int off = L.layer_offset(i);
    for (int j = 0; j < L.layer_dim(i); ++j) norm1 += abs(x.v[off + j]);
    if (norm1 != 0) len += std::pow(norm1.get_d(), 1.0 / i);
  }
  return len;
}

double dist(const GroupElement& a, const GroupElement& b) {
  return guivarch_length(mul(inverse(a), b));
}

double graded_defect(const Group& g, const std::vector<VecQ>& xs) {
  Group orig(&g.layered(), Law::original);
  Group grad(&g.layered(), Law::graded);
  GroupElement p = orig.id(), q = grad.id();
  for (const auto& v : xs) {
    p = mul(p, orig.element(v));
    q = mul(q, grad.element(v));
  }
  GroupElement diff = orig.element(sub(p.v, q.v));
  return guivarch_length(diff) - 1.0;  // 0 when the products coincide
}

}  // namespace nilc
