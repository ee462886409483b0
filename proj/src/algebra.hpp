// Nilpotent Lie algebras over Q: structure constants, lower central series,
// adapted (canonical) bases, Carnot grading, and the example constructors.
#pragma once

#include "errors.hpp"
#include "linalg.hpp"
#include "rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace nilc {

// A Lie algebra given by structure constants on a fixed basis e_1..e_d.
// Only pairs a < b with a nonzero bracket are stored; antisymmetry and
// [e_a,e_a] = 0 are implicit.
class Algebra {
 public:
  struct Pair {
    int a, b;   // 0-based, a < b
    VecQ out;   // [e_a, e_b] coordinates, length dim
  };

  Algebra() = default;
  Algebra(int dim, std::vector<Pair> pairs);

  int dim() const { return dim_; }
  const std::vector<Pair>& pairs() const { return pairs_; }

  // [e_a, e_b] for arbitrary a, b (antisymmetry applied).
  VecQ bracket_basis(int a, int b) const;
  VecQ bracket(const VecQ& u, const VecQ& v) const;

  void set_bracket(int a, int b, VecQ out);  // a < b required

  bool operator==(const Algebra& o) const;

 private:
  int dim_ = 0;
  std::vector<Pair> pairs_;
  std::vector<int> pair_index_;  // dim*dim lookup, -1 = zero bracket
  void rebuild_index();
};

// Violated identities, empty iff the bracket satisfies Jacobi exactly.
std::vector<std::string> validate(const Algebra& a);

// gamma_1 >= gamma_2 >= ... as rref bases; last entry is the stabilized
// subspace (empty iff nilpotent). Never throws.
std::vector<MatQ> lower_central_series_chain(const Algebra& a);

// Dims (d, ..., 0) of the chain; throws NotNilpotentError if it stabilizes
// at a nonzero subspace.
std::vector<int> lower_central_series_dims(const Algebra& a);

int nilpotency_class(const Algebra& a);  // throws NotNilpotentError

// rref basis of the center {v : [v, g] = 0}.
MatQ center(const Algebra& a);

// An algebra whose basis is adapted to the lower central series: basis
// vectors X_{ij} grouped into layers i = 1..s with layer i spanning a
// complement of gamma_{i+1} in gamma_i.
class LayeredAlgebra {
 public:
  LayeredAlgebra() = default;
  LayeredAlgebra(Algebra alg, std::vector<int> layers);

  const Algebra& alg() const { return alg_; }
  const std::vector<int>& layers() const { return layers_; }
  int dim() const { return alg_.dim(); }
  int cls() const { return static_cast<int>(layers_.size()); }
  bool graded() const { return graded_; }

  // Layer weight (1-based) of coordinate index (0-based).
  int weight(int idx) const { return weight_[idx]; }
  // First coordinate index of a layer (1-based layer).
  int layer_offset(int i) const { return offsets_[i - 1]; }
  int layer_dim(int i) const { return layers_[i - 1]; }

  // Structure constants with all bracket components outside layer i+i'
  // dropped (built lazily, cached).
  const Algebra& graded_alg() const;

  bool operator==(const LayeredAlgebra& o) const {
    return layers_ == o.layers_ && alg_ == o.alg_;
  }

 private:
  Algebra alg_;
  std::vector<int> layers_;
  std::vector<int> weight_;
  std::vector<int> offsets_;
  bool graded_ = false;
  mutable std::shared_ptr<const Algebra> graded_cache_;
  friend LayeredAlgebra carnot_grading(const LayeredAlgebra&);
};

// Deterministic adapted basis: for each i the complement of gamma_{i+1} in
// gamma_i is spanned by the rref rows of gamma_i whose pivot is not a pivot
// of gamma_{i+1}, cleared to primitive integer vectors. Throws
// NotNilpotentError.
struct AdaptResult {
  LayeredAlgebra algebra;
  MatQ basis;  // rows = new basis vectors in old coordinates
};
AdaptResult adapt_basis(const Algebra& a);

int growth_degree(const LayeredAlgebra& a);  // sum of i * m_i

LayeredAlgebra carnot_grading(const LayeredAlgebra& a);

// Drops the top layer (a central ideal). Throws ClassOneError if s = 1.
LayeredAlgebra quotient_by_top_layer(const LayeredAlgebra& a);

// Constructors ---------------------------------------------------------------

Algebra abelian(int n);
// Model filiform algebra on x_1..x_m with [x_1, x_i] = x_{i+1}.
Algebra filiform(int m);
Algebra heisenberg();
Algebra direct_sum(const Algebra& a, const Algebra& b);

// Central product: quotient of a (+) b identifying the centers via theta,
// given in the computed (rref) center bases, row j = image of the j-th
// center basis vector of a. Throws CenterMismatchError.
Algebra central_product(const Algebra& a, const Algebra& b, const MatQ& theta);

// G_{m,n} = L_m x_Z L_n in an adapted basis.
LayeredAlgebra g_mn(int m, int n);

LayeredAlgebra layered(const Algebra& a);  // adapt_basis shorthand

}  // namespace nilc
