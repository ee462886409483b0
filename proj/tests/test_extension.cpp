#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "extension.hpp"
#include "linalg.hpp"

using namespace nilc;

namespace {

CentralExtension heis_extension() {
  MatQ om = {{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}};
  return make_extension(layered(abelian(2)), om);
}

// omega dual to the missing bracket [x1, x_m] of the filiform algebra
CentralExtension filiform_extension(int m) {
  MatQ om(m, zero_vec(m));
  om[0][m - 1] = Rat(1);
  om[m - 1][0] = Rat(-1);
  return make_extension(layered(filiform(m)), om);
}

VecQ rand_vec(int dim, Rng& rng) {
  VecQ v = zero_vec(dim);
  for (auto& x : v)
    x = Rat(static_cast<long>(rng.range(-10, 10))) /
        Rat(static_cast<long>(rng.range(1, 4)));
  return v;
}

}  // namespace

TEST_CASE("trivial and heisenberg extensions validate") {
  const CentralExtension triv =
      make_extension(layered(heisenberg()), MatQ(3, zero_vec(3)));
  CHECK(validate_extension(triv).empty());
  CHECK(extension_class(triv) == 2);

  const CentralExtension h = heis_extension();
  CHECK(validate_extension(h).empty());
  CHECK(extension_class(h) == 2);
  CHECK(h.total == heisenberg());
}

TEST_CASE("filiform extension builds the next filiform algebra") {
  for (int m = 3; m <= 5; ++m) {
    const CentralExtension e = filiform_extension(m);
    CHECK(validate_extension(e).empty());
    CHECK(extension_class(e) == m);  // class of l_{m+1}
    CHECK(e.total == filiform(m + 1));
  }
}

TEST_CASE("cocycle condition failures are caught") {
  // omega dual to (x2, x4) on l_4: the cyclic sum on (x1, x2, x3) leaves
  // -omega(x4, x2) != 0
  MatQ om(4, zero_vec(4));
  om[1][3] = Rat(1);
  om[3][1] = Rat(-1);
  const CentralExtension bad = make_extension(layered(filiform(4)), om);
  CHECK(!validate_extension(bad).empty());
}

TEST_CASE("psi on the heisenberg extension") {
  const CentralExtension h = heis_extension();
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const VecQ a = rand_vec(2, rng), b = rand_vec(2, rng);
    CHECK(psi(h, a, b) == (a[0] * b[1] - a[1] * b[0]) / 2);
  }
  CHECK(psi(h, rand_vec(2, rng), zero_vec(2)) == 0);
}

TEST_CASE("four-term cocycle identity is exact") {
  for (const CentralExtension& e : {heis_extension(), filiform_extension(4)}) {
    Rng rng(37);
    for (int t = 0; t < 50; ++t) {
      const int d = e.base.dim();
      CHECK(cocycle_identity_residual(e, rand_vec(d, rng), rand_vec(d, rng),
                                      rand_vec(d, rng)) == 0);
    }
  }
}

TEST_CASE("commutator pairing") {
  const CentralExtension h = heis_extension();
  CHECK(commutator_pairing(h, unit_vec(2, 0), unit_vec(2, 1)) == 1);
  CHECK(commutator_pairing(h, unit_vec(2, 0), unit_vec(2, 0)) == 0);

  const CentralExtension e = filiform_extension(3);
  CHECK_THROWS_AS(commutator_pairing(e, unit_vec(3, 0), unit_vec(3, 1)),
                  NotCommutingError);
  // powers of one element always commute
  Rng rng(41);
  const VecQ g = rand_vec(3, rng);
  const VecQ g2 = bch(e.base.alg(), e.base.cls(), g, g);
  CHECK(commutator_pairing(e, g, g2) == 0);
}

TEST_CASE("omega is recovered from psi's degree-2 part") {
  // psi(t e_a, t e_b) - psi(t e_b, t e_a) is a polynomial in t with t^2
  // coefficient omega(a, b); recover it by exact interpolation.
  const CentralExtension e = filiform_extension(4);
  const int d = e.base.dim();
  const int deg = e.base.cls() + 1;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      MatQ vand;
      VecQ rhs;
      for (int t = 1; t <= deg; ++t) {
        VecQ row;
        Rat tp(1);
        for (int p = 1; p <= deg; ++p) {
          tp *= t;
          row.push_back(tp);
        }
        vand.push_back(row);
        const VecQ ga = scale(Rat(t), unit_vec(d, a));
        const VecQ gb = scale(Rat(t), unit_vec(d, b));
        rhs.push_back(psi(e, ga, gb) - psi(e, gb, ga));
      }
      const auto coeffs = solve(vand, rhs);
      REQUIRE(coeffs.has_value());
      CHECK((*coeffs)[1] == e.omega[a][b]);  // t^2 coefficient
    }
}

TEST_CASE("pairing scaling law for the s-fold commutator witness") {
  // l_3 -> l_4, witness (x1, x1, x2): the pairing of x1^n against
  // [x1^n, x2^n] grows as n^3
  const CentralExtension e = filiform_extension(3);
  Group g(&e.base, Law::original);
  Rat c0;
  for (long n : {1l, 2l, 4l, 8l}) {
    const GroupElement h1 = g.element(scale(Rat(n), unit_vec(3, 0)));
    const GroupElement h2 = g.element(scale(Rat(n), unit_vec(3, 1)));
    const GroupElement w = commutator(h1, h2);
    const Rat q = psi(e, h1.v, w.v) - psi(e, w.v, h1.v);
    const Rat ratio = q / (Rat(n) * n * n);
    if (n == 1)
      c0 = ratio;
    else
      CHECK(ratio == c0);
  }
  CHECK(c0 != 0);
}

TEST_CASE("growth probe is stable and vanishes for trivial omega") {
  const CentralExtension triv =
      make_extension(layered(filiform(3)), MatQ(3, zero_vec(3)));
  CHECK(growth_bound_probe(triv, 50, 6, 1).sup == 0.0);

  const ProbeResult p = growth_bound_probe(filiform_extension(3), 200, 10, 2);
  CHECK(p.sup > 0);
  CHECK(p.ratio <= 1.5);
}

TEST_CASE("continuity probe") {
  const ProbeResult p = continuity_probe(filiform_extension(3), 8, -4, 100, 3);
  CHECK(p.sup > 0);
  CHECK(std::isfinite(p.sup_doubled));
}

TEST_CASE("induced cocycle through the identity coupling is exact") {
  const CentralExtension h = heis_extension();
  const TilingSpec t = make_tiling(h.base, Law::original, 6, 8);
  const CouplingSpec c = build_coupling(t, t);
  const auto est =
      induced_cocycle_mc(c, h, unit_vec(2, 0), unit_vec(2, 1), 60, 5);
  CHECK(est.mean == doctest::Approx(0.5));
  CHECK(est.ci_lo == doctest::Approx(0.5));
  CHECK(est.ci_hi == doctest::Approx(0.5));
  CHECK(est.experimental);

  const auto zero = induced_cocycle_mc(c, h, zero_vec(2), zero_vec(2), 30, 5);
  CHECK(zero.mean == doctest::Approx(0.0));
}

TEST_CASE("induced cocycle wrong target rejected") {
  const CentralExtension e = filiform_extension(4);
  const TilingSpec t = make_tiling(layered(heisenberg()), Law::original, 6, 8);
  const CouplingSpec c = build_coupling(t, t);
  CHECK_THROWS_AS(
      induced_cocycle_mc(c, e, zero_vec(3), zero_vec(3), 10, 1),
      AlgebraMismatchError);
}
