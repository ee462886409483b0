// Group arithmetic in exponential coordinates via truncated BCH.
#pragma once

#include "algebra.hpp"

#include <cstdint>
#include <vector>

namespace nilc {

// Which bracket the products use: the algebra's own, or its Carnot grading.
enum class Law : std::uint8_t { original, graded };

// Per-word BCH coefficients up to a nilpotency class. A word is a string in
// {X, Y}; its value is the right-nested bracket [w_0,[w_1,[...,w_{m-1}]]].
struct BchTerm {
  int len;            // word length m, 1..cls
  std::uint32_t bits; // bit j = letter at position j, 0 = X, 1 = Y
  Rat coeff;
};
const std::vector<BchTerm>& bch_terms(int cls);

// log(exp(u) exp(v)) truncated at the algebra's class.
VecQ bch(const Algebra& a, int cls, const VecQ& u, const VecQ& v);

class Group;

struct GroupElement {
  const Group* grp = nullptr;
  VecQ v;
};

// Arithmetic context: a layered algebra plus the chosen law.
class Group {
 public:
  Group() = default;
  explicit Group(const LayeredAlgebra* alg, Law law = Law::original)
      : alg_(alg), law_(law) {}

  const LayeredAlgebra& layered() const { return *alg_; }
  const Algebra& alg() const {
    return law_ == Law::graded ? alg_->graded_alg() : alg_->alg();
  }
  Law law() const { return law_; }
  int dim() const { return alg_->dim(); }
  int cls() const { return alg_->cls(); }

  GroupElement element(VecQ v) const { return {this, std::move(v)}; }
  GroupElement id() const { return {this, zero_vec(dim())}; }

  bool operator==(const Group& o) const {
    return law_ == o.law_ && alg_ == o.alg_;
  }

 private:
  const LayeredAlgebra* alg_ = nullptr;
  Law law_ = Law::original;
};

// Throws AlgebraMismatchError when operands carry different contexts.
GroupElement mul(const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupElement& x);
GroupElement power(const GroupElement& x, const Rat& t);
// x y x^-1 y^-1.
GroupElement commutator(const GroupElement& x, const GroupElement& y);
// Right-nested [x1, [x2, [..., xk]]] of group commutators.
GroupElement iterated_commutator(const std::vector<GroupElement>& xs);
GroupElement conjugate(const GroupElement& x, const GroupElement& g);  // g x g^-1

// Layer i scaled by t^i; an automorphism exactly when the law is graded.
GroupElement dilate(const GroupElement& x, const Rat& t);

// Coordinates of the second kind: x = prod_{i,j} exp(lambda_{ij} X_{ij}),
// factors ordered by layer then position.
VecQ to_second_kind(const GroupElement& x);
GroupElement from_second_kind(const Group& g, const VecQ& lambda);

// 1 + sum_i ||v_i||_1^{1/i} in binary64.
double guivarch_length(const GroupElement& x);
double dist(const GroupElement& a, const GroupElement& b);  // |a^-1 b|

// Homogeneous Guivarc'h length (without the +1) of the coordinate
// difference between the product of xs under the original law and under
// the graded law; 0 iff the products coincide.
double graded_defect(const Group& g, const std::vector<VecQ>& xs);

}  // namespace nilc
