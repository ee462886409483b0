#include "linalg.hpp"

#include <algorithm>
#include <cassert>

namespace nilc {

std::vector<int> rref(MatQ& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rat inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rat f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  m.resize(row);
  return pivots;
}

int rank(MatQ m) { return static_cast<int>(rref(m).size()); }

VecQ reduce_against(const MatQ& rref_rows, const std::vector<int>& pivots,
                    VecQ v) {
  for (std::size_t i = 0; i < rref_rows.size(); ++i) {
    const int p = pivots[i];
    if (v[p] != 0) {
      const Rat f = v[p];
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * rref_rows[i][c];
    }
  }
  return v;
}

bool in_row_span(const MatQ& rref_rows, const std::vector<int>& pivots,
                 const VecQ& v) {
  return is_zero_vec(reduce_against(rref_rows, pivots, v));
}

MatQ null_space(MatQ m) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  const std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  MatQ basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    VecQ v = zero_vec(cols);
    v[free_col] = 1;
    for (std::size_t i = 0; i < m.size(); ++i)
      v[pivots[i]] = -m[i][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<VecQ> solve(MatQ a, VecQ b) {
  const std::size_t n = a.size();
  if (n == 0) return VecQ{};
  const std::size_t cols = a[0].size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots = rref(a);
  VecQ x = zero_vec(cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (pivots[i] == static_cast<int>(cols)) return std::nullopt;  // 0 = 1
    x[pivots[i]] = a[i][cols];
  }
  return x;
}

std::optional<MatQ> invert(const MatQ& a) {
  const std::size_t n = a.size();
  MatQ aug(n, zero_vec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  std::vector<int> pivots = rref(aug);
  if (pivots.size() != n) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (pivots[i] != static_cast<int>(i)) return std::nullopt;
  MatQ inv(n, zero_vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

VecQ primitive_row(VecQ v) {
  Int den_lcm = 1;
  for (const auto& x : v)
    if (x != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                        x.get_den_mpz_t());
  Int num_gcd = 0;
  for (auto& x : v) {
    x *= den_lcm;
    if (x != 0)
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num_mpz_t());
  }
  if (num_gcd > 1)
    for (auto& x : v) x /= num_gcd;
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

VecQ mat_vec(const MatQ& a, const VecQ& x) {
  VecQ r(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0 && x[j] != 0) r[i] += a[i][j] * x[j];
  return r;
}

MatQ mat_mul(const MatQ& a, const MatQ& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(),
                    k = b.size();
  MatQ r(n, zero_vec(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < k; ++p)
      if (a[i][p] != 0)
        for (std::size_t j = 0; j < m; ++j)
          if (b[p][j] != 0) r[i][j] += a[i][p] * b[p][j];
  return r;
}

MatQ transpose(const MatQ& a) {
  if (a.empty()) return {};
  MatQ r(a[0].size(), zero_vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

MatQ identity_mat(std::size_t n) {
  MatQ r(n, zero_vec(n));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

}  // namespace nilc
