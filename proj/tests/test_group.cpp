#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "group.hpp"
#include "rng.hpp"

#include <array>

using namespace nilc;

namespace {

VecQ rand_vec(int dim, Rng& rng) {
  VecQ v = zero_vec(dim);
  for (auto& x : v)
    x = Rat(static_cast<long>(rng.range(-12, 12))) /
        Rat(static_cast<long>(rng.range(1, 5)));
  return v;
}

// 3x3 unitriangular matrix [[1,a,c],[0,1,b],[0,0,1]] of exp(x1,x2,x3):
// a = x1, b = x2, c = x3 + x1 x2 / 2.
std::array<Rat, 3> heis_matrix(const VecQ& v) {
  return {v[0], v[1], v[2] + v[0] * v[1] / 2};
}

std::array<Rat, 3> mat_mul3(const std::array<Rat, 3>& x,
                            const std::array<Rat, 3>& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]};
}

}  // namespace

TEST_CASE("bch terms low degrees") {
  const auto& t1 = bch_terms(2);
  // degree 2 contributes 1/2 [X,Y], split over the words XY and YX
  Rat xy(0), yx(0);
  for (const auto& t : t1) {
    if (t.len != 2) continue;
    (t.bits == 0b10 ? xy : yx) += t.coeff;
  }
  CHECK(xy - yx == Rat(1) / 2);
}

TEST_CASE("heisenberg products match the matrix oracle") {
  const LayeredAlgebra h = layered(heisenberg());
  Group g(&h);
  Rng rng(101);
  for (int t = 0; t < 100; ++t) {
    const VecQ u = rand_vec(3, rng), v = rand_vec(3, rng);
    const VecQ p = mul(g.element(u), g.element(v)).v;
    CHECK(heis_matrix(p) == mat_mul3(heis_matrix(u), heis_matrix(v)));
  }
}

TEST_CASE("associativity") {
  for (const LayeredAlgebra& alg :
       {layered(heisenberg()), layered(filiform(4)), layered(filiform(5)),
        g_mn(4, 3)}) {
    Group g(&alg);
    Rng rng(7 + alg.dim());
    for (int t = 0; t < 25; ++t) {
      const GroupElement a = g.element(rand_vec(alg.dim(), rng));
      const GroupElement b = g.element(rand_vec(alg.dim(), rng));
      const GroupElement c = g.element(rand_vec(alg.dim(), rng));
      CHECK(mul(mul(a, b), c).v == mul(a, mul(b, c)).v);
    }
  }
}

TEST_CASE("inverse and identity") {
  const LayeredAlgebra alg = g_mn(4, 3);
  Group g(&alg);
  Rng rng(5);
  for (int t = 0; t < 25; ++t) {
    const GroupElement a = g.element(rand_vec(alg.dim(), rng));
    CHECK(mul(a, inverse(a)).v == g.id().v);
    CHECK(mul(inverse(a), a).v == g.id().v);
    CHECK(mul(a, g.id()).v == a.v);
  }
}

TEST_CASE("integer powers agree with repeated products") {
  const LayeredAlgebra alg = layered(filiform(5));
  Group g(&alg);
  Rng rng(9);
  const GroupElement a = g.element(rand_vec(5, rng));
  GroupElement p = g.id();
  for (int n = 1; n <= 6; ++n) {
    p = mul(p, a);
    CHECK(power(a, Rat(n)).v == p.v);
  }
  CHECK(power(a, Rat(-2)).v == inverse(mul(a, a)).v);
}

TEST_CASE("commutators") {
  const LayeredAlgebra h = layered(heisenberg());
  Group g(&h);
  const GroupElement x = g.element(unit_vec(3, 0));
  const GroupElement y = g.element(unit_vec(3, 1));
  CHECK(commutator(x, y).v == unit_vec(3, 2));
  CHECK(commutator(y, x).v == neg(unit_vec(3, 2)));
}

TEST_CASE("dilation is an automorphism under the graded law") {
  const LayeredAlgebra gr = carnot_grading(g_mn(4, 3));
  Group g(&gr, Law::graded);
  Rng rng(3);
  const Rat t(3);
  for (int i = 0; i < 20; ++i) {
    const GroupElement a = g.element(rand_vec(6, rng));
    const GroupElement b = g.element(rand_vec(6, rng));
    CHECK(dilate(mul(a, b), t).v == mul(dilate(a, t), dilate(b, t)).v);
  }
}

TEST_CASE("second-kind coordinates round trip") {
  for (const LayeredAlgebra& alg : {layered(filiform(5)), g_mn(4, 3)}) {
    Group g(&alg);
    Rng rng(13);
    for (int t = 0; t < 20; ++t) {
      const GroupElement a = g.element(rand_vec(alg.dim(), rng));
      CHECK(from_second_kind(g, to_second_kind(a)).v == a.v);
    }
  }
}

TEST_CASE("context mismatch rejected") {
  const LayeredAlgebra h = layered(heisenberg());
  const LayeredAlgebra l = layered(filiform(4));
  Group gh(&h), gl(&l);
  CHECK_THROWS_AS(mul(gh.element(zero_vec(3)), gl.element(zero_vec(4))),
                  AlgebraMismatchError);
}

TEST_CASE("guivarch length and distance") {
  const LayeredAlgebra h = layered(heisenberg());
  Group g(&h);
  CHECK(guivarch_length(g.id()) == doctest::Approx(1.0));
  const GroupElement a = g.element({Rat(3), Rat(0), Rat(0)});
  CHECK(guivarch_length(a) == doctest::Approx(4.0));
  CHECK(dist(a, a) == doctest::Approx(1.0));
  CHECK(dist(g.id(), a) == doctest::Approx(4.0));
}

TEST_CASE("graded defect vanishes on graded algebras") {
  const LayeredAlgebra h = layered(heisenberg());
  Group g(&h);
  Rng rng(17);
  const std::vector<VecQ> xs{rand_vec(3, rng), rand_vec(3, rng)};
  CHECK(graded_defect(g, xs) == doctest::Approx(0.0));
}
