#include "algebra.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace nilc {

Algebra::Algebra(int dim, std::vector<Pair> pairs)
    : dim_(dim), pairs_(std::move(pairs)) {
  for (auto& p : pairs_) {
    assert(p.a >= 0 && p.a < p.b && p.b < dim_);
    assert(static_cast<int>(p.out.size()) == dim_);
  }
  std::sort(pairs_.begin(), pairs_.end(),
            [](const Pair& x, const Pair& y) {
              return std::pair(x.a, x.b) < std::pair(y.a, y.b);
            });
  rebuild_index();
}

void Algebra::rebuild_index() {
  pair_index_.assign(static_cast<std::size_t>(dim_) * dim_, -1);
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    pair_index_[pairs_[i].a * dim_ + pairs_[i].b] = static_cast<int>(i);
}

VecQ Algebra::bracket_basis(int a, int b) const {
  if (a == b) return zero_vec(dim_);
  const bool flip = a > b;
  if (flip) std::swap(a, b);
  const int idx = pair_index_[a * dim_ + b];
  if (idx < 0) return zero_vec(dim_);
  return flip ? neg(pairs_[idx].out) : pairs_[idx].out;
}

VecQ Algebra::bracket(const VecQ& u, const VecQ& v) const {
  VecQ r = zero_vec(dim_);
  for (const auto& p : pairs_) {
    Rat c = u[p.a] * v[p.b] - u[p.b] * v[p.a];
    if (c != 0) add_in_place(r, p.out, c);
  }
  return r;
}

void Algebra::set_bracket(int a, int b, VecQ out) {
  assert(a < b);
  const int idx = pair_index_[a * dim_ + b];
  if (idx >= 0) {
    pairs_[idx].out = std::move(out);
    return;
  }
  if (is_zero_vec(out)) return;
  pairs_.push_back({a, b, std::move(out)});
  std::sort(pairs_.begin(), pairs_.end(),
            [](const Pair& x, const Pair& y) {
              return std::pair(x.a, x.b) < std::pair(y.a, y.b);
            });
  rebuild_index();
}

bool Algebra::operator==(const Algebra& o) const {
  if (dim_ != o.dim_) return false;
  auto nonzero = [](const std::vector<Pair>& ps) {
    std::vector<Pair> r;
    for (const auto& p : ps)
      if (!is_zero_vec(p.out)) r.push_back(p);
    return r;
  };
  const auto a = nonzero(pairs_), b = nonzero(o.pairs_);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].a != b[i].a || a[i].b != b[i].b || a[i].out != b[i].out)
      return false;
  return true;
}

std::vector<std::string> validate(const Algebra& a) {
  std::vector<std::string> bad;
  const int d = a.dim();
  for (int x = 0; x < d; ++x)
    for (int y = x + 1; y < d; ++y)
      for (int z = y + 1; z < d; ++z) {
        VecQ s = a.bracket(a.bracket_basis(x, y), unit_vec(d, z));
        add_in_place(s, a.bracket(a.bracket_basis(y, z), unit_vec(d, x)), 1);
        add_in_place(s, a.bracket(a.bracket_basis(z, x), unit_vec(d, y)), 1);
        if (!is_zero_vec(s)) {
          std::ostringstream os;
          os << "jacobi fails on (e" << x + 1 << ", e" << y + 1 << ", e"
             << z + 1 << ")";
          bad.push_back(os.str());
        }
      }
  return bad;
}

std::vector<MatQ> lower_central_series_chain(const Algebra& a) {
  const int d = a.dim();
  std::vector<MatQ> chain;
  chain.push_back(identity_mat(d));
  while (true) {
    const MatQ& prev = chain.back();
    if (prev.empty()) break;
    MatQ next;
    for (int x = 0; x < d; ++x)
      for (const auto& row : prev) {
        VecQ w = a.bracket(unit_vec(d, x), row);
        if (!is_zero_vec(w)) next.push_back(std::move(w));
      }
    rref(next);
    if (next.size() == prev.size()) {
      chain.push_back(std::move(next));  // stabilized, nonzero
      break;
    }
    chain.push_back(std::move(next));
    if (chain.back().empty()) break;
  }
  return chain;
}

std::vector<int> lower_central_series_dims(const Algebra& a) {
  auto chain = lower_central_series_chain(a);
  if (!chain.back().empty())
    throw NotNilpotentError("lower central series stabilizes at dimension " +
                            std::to_string(chain.back().size()));
  std::vector<int> dims;
  for (const auto& m : chain) dims.push_back(static_cast<int>(m.size()));
  return dims;
}

int nilpotency_class(const Algebra& a) {
  return static_cast<int>(lower_central_series_dims(a).size()) - 1;
}

MatQ center(const Algebra& a) {
  const int d = a.dim();
  // Unknown v: sum_x v_x [e_x, e_y] = 0 for every y; rows indexed by (y, c).
  MatQ sys;
  for (int y = 0; y < d; ++y) {
    MatQ cols;  // column x = [e_x, e_y]
    for (int x = 0; x < d; ++x) cols.push_back(a.bracket_basis(x, y));
    for (int c = 0; c < d; ++c) {
      VecQ row(d);
      bool nz = false;
      for (int x = 0; x < d; ++x) {
        row[x] = cols[x][c];
        nz = nz || row[x] != 0;
      }
      if (nz) sys.push_back(std::move(row));
    }
  }
  if (sys.empty()) return identity_mat(d);
  MatQ basis = null_space(std::move(sys));
  rref(basis);
  return basis;
}

LayeredAlgebra::LayeredAlgebra(Algebra alg, std::vector<int> layers)
    : alg_(std::move(alg)), layers_(std::move(layers)) {
  int off = 0;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    offsets_.push_back(off);
    for (int j = 0; j < layers_[i]; ++j)
      weight_.push_back(static_cast<int>(i) + 1);
    off += layers_[i];
  }
  assert(off == alg_.dim());
  const int s = cls();
  graded_ = true;
  for (const auto& p : alg_.pairs()) {
    const int w = weight_[p.a] + weight_[p.b];
    for (int c = 0; c < alg_.dim(); ++c) {
      if (p.out[c] == 0) continue;
      assert(w <= s && weight_[c] >= w);  // basis adapted to the filtration
      if (weight_[c] != w) graded_ = false;
    }
  }
}

const Algebra& LayeredAlgebra::graded_alg() const {
  if (graded_) return alg_;
  if (!graded_cache_) {
    std::vector<Algebra::Pair> pairs;
    for (const auto& p : alg_.pairs()) {
      const int w = weight_[p.a] + weight_[p.b];
      VecQ out = zero_vec(alg_.dim());
      bool nz = false;
      for (int c = 0; c < alg_.dim(); ++c)
        if (weight_[c] == w && p.out[c] != 0) {
          out[c] = p.out[c];
          nz = true;
        }
      if (nz) pairs.push_back({p.a, p.b, std::move(out)});
    }
    graded_cache_ =
        std::make_shared<const Algebra>(alg_.dim(), std::move(pairs));
  }
  return *graded_cache_;
}

AdaptResult adapt_basis(const Algebra& a) {
  const int d = a.dim();
  auto chain = lower_central_series_chain(a);
  if (!chain.back().empty())
    throw NotNilpotentError("lower central series stabilizes at dimension " +
                            std::to_string(chain.back().size()));
  const int s = static_cast<int>(chain.size()) - 1;  // gamma_1 .. gamma_{s+1}
  // chain[i] = gamma_{i+1} in rref; complement rows picked by pivot columns.
  auto pivot_cols = [](const MatQ& m) {
    std::vector<int> ps;
    for (const auto& row : m)
      for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0) {
          ps.push_back(static_cast<int>(c));
          break;
        }
    return ps;
  };
  MatQ basis;
  std::vector<int> layers;
  for (int i = 0; i < s; ++i) {
    const auto next_pivots = pivot_cols(chain[i + 1]);
    int count = 0;
    const auto cur_pivots = pivot_cols(chain[i]);
    for (std::size_t r = 0; r < chain[i].size(); ++r) {
      if (std::find(next_pivots.begin(), next_pivots.end(), cur_pivots[r]) !=
          next_pivots.end())
        continue;
      basis.push_back(primitive_row(chain[i][r]));
      ++count;
    }
    layers.push_back(count);
  }
  assert(static_cast<int>(basis.size()) == d);
  // New structure constants: coordinates w.r.t. the rows of `basis`.
  const MatQ coord = *invert(transpose(basis));
  std::vector<Algebra::Pair> pairs;
  for (int x = 0; x < d; ++x)
    for (int y = x + 1; y < d; ++y) {
      VecQ w = a.bracket(basis[x], basis[y]);
      if (is_zero_vec(w)) continue;
      pairs.push_back({x, y, mat_vec(coord, w)});
    }
  AdaptResult res;
  res.basis = std::move(basis);
  res.algebra = LayeredAlgebra(Algebra(d, std::move(pairs)), std::move(layers));
  return res;
}

int growth_degree(const LayeredAlgebra& a) {
  int r = 0;
  for (std::size_t i = 0; i < a.layers().size(); ++i)
    r += static_cast<int>(i + 1) * a.layers()[i];
  return r;
}

LayeredAlgebra carnot_grading(const LayeredAlgebra& a) {
  LayeredAlgebra g(a.graded_alg(), a.layers());
  assert(g.graded());
  return g;
}

LayeredAlgebra quotient_by_top_layer(const LayeredAlgebra& a) {
  if (a.cls() <= 1) throw ClassOneError("abelian algebra has no proper quotient by the top layer");
  const int d = a.dim() - a.layers().back();
  std::vector<Algebra::Pair> pairs;
  for (const auto& p : a.alg().pairs()) {
    if (p.a >= d || p.b >= d) continue;
    VecQ out(p.out.begin(), p.out.begin() + d);
    if (!is_zero_vec(out)) pairs.push_back({p.a, p.b, std::move(out)});
  }
  std::vector<int> layers(a.layers().begin(), a.layers().end() - 1);
  return LayeredAlgebra(Algebra(d, std::move(pairs)), std::move(layers));
}

Algebra abelian(int n) { return Algebra(n, {}); }

Algebra filiform(int m) {
  std::vector<Algebra::Pair> pairs;
  for (int i = 1; i < m - 1; ++i) {
    VecQ out = zero_vec(m);
    out[i + 1] = 1;
    pairs.push_back({0, i, std::move(out)});
  }
  return Algebra(m, std::move(pairs));
}

Algebra heisenberg() { return filiform(3); }

Algebra direct_sum(const Algebra& a, const Algebra& b) {
  const int da = a.dim(), d = da + b.dim();
  std::vector<Algebra::Pair> pairs;
  for (const auto& p : a.pairs()) {
    VecQ out = zero_vec(d);
    std::copy(p.out.begin(), p.out.end(), out.begin());
    pairs.push_back({p.a, p.b, std::move(out)});
  }
  for (const auto& p : b.pairs()) {
    VecQ out = zero_vec(d);
    std::copy(p.out.begin(), p.out.end(), out.begin() + da);
    pairs.push_back({p.a + da, p.b + da, std::move(out)});
  }
  return Algebra(d, std::move(pairs));
}

Algebra central_product(const Algebra& a, const Algebra& b, const MatQ& theta) {
  const MatQ za = center(a), zb = center(b);
  const std::size_t zdim = za.size();
  if (zb.size() != zdim)
    throw CenterMismatchError("centers have dimensions " +
                              std::to_string(za.size()) + " and " +
                              std::to_string(zb.size()));
  if (theta.size() != zdim)
    throw CenterMismatchError("theta must be a " + std::to_string(zdim) + "x" +
                              std::to_string(zdim) + " matrix");
  for (const auto& row : theta)
    if (row.size() != zdim)
      throw CenterMismatchError("theta must be square over the center bases");
  if (!invert(theta))
    throw CenterMismatchError("theta is not invertible");

  const Algebra sum = direct_sum(a, b);
  const int da = a.dim(), db = b.dim(), dsum = da + db;
  // Ideal generators (z, -theta(z)) for z running over the center basis of a.
  MatQ ideal;
  for (std::size_t j = 0; j < zdim; ++j) {
    VecQ u = zero_vec(dsum);
    for (int c = 0; c < da; ++c) u[c] = za[j][c];
    for (std::size_t k = 0; k < zdim; ++k)
      if (theta[j][k] != 0)
        for (int c = 0; c < db; ++c) u[da + c] -= theta[j][k] * zb[k][c];
    ideal.push_back(std::move(u));
  }
  // Complement: standard basis vectors, greedily by index.
  MatQ span = ideal;
  auto pivots = rref(span);
  std::vector<int> comp;
  for (int c = 0; c < dsum && comp.size() + zdim < static_cast<std::size_t>(dsum);
       ++c) {
    VecQ v = unit_vec(dsum, c);
    if (in_row_span(span, pivots, v)) continue;
    span.push_back(std::move(v));
    pivots = rref(span);
    comp.push_back(c);
  }
  const int d = dsum - static_cast<int>(zdim);
  assert(static_cast<int>(comp.size()) == d);
  // Coordinates: v = sum c_j e_{comp_j} + sum d_i ideal_i.
  MatQ cols;  // square matrix with columns [comp | ideal]
  for (int c : comp) cols.push_back(unit_vec(dsum, c));
  for (const auto& u : ideal) cols.push_back(u);
  const MatQ coord = *invert(transpose(cols));
  auto project = [&](const VecQ& v) {
    VecQ full = mat_vec(coord, v);
    return VecQ(full.begin(), full.begin() + d);
  };
  std::vector<Algebra::Pair> pairs;
  for (int x = 0; x < d; ++x)
    for (int y = x + 1; y < d; ++y) {
      VecQ w = sum.bracket(unit_vec(dsum, comp[x]), unit_vec(dsum, comp[y]));
      if (is_zero_vec(w)) continue;
      VecQ out = project(w);
      if (!is_zero_vec(out)) pairs.push_back({x, y, std::move(out)});
    }
  return Algebra(d, std::move(pairs));
}

LayeredAlgebra g_mn(int m, int n) {
  return adapt_basis(
             central_product(filiform(m), filiform(n), identity_mat(1)))
      .algebra;
}

LayeredAlgebra layered(const Algebra& a) { return adapt_basis(a).algebra; }

}  // namespace nilc
