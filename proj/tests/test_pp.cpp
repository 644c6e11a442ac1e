#include "doctest.h"

#include <cmath>

#include "compstar/enumerate.hpp"
#include "compstar/pp.hpp"
#include "oracles.hpp"

using namespace compstar;

namespace {

// Check the preprojective relation at every site: the composite
// T_- T_+ (into site r from site r) equals T_+ T_- , with the sign convention
// folded into the coordinate construction: going up then down along segment i
// collects sum_j x_{i,j} into f_j, and going down then up likewise; the
// relation T_+ T_- = T_- T_+ holds identically on the span because each
// f_{i,r} travels through the same coordinates either way.
bool preprojective_relation_holds(const Fp& F, const GenericModule& M) {
  const int n = M.m.n;
  for (int r = 1; r <= n; ++r) {
    int d = M.dim(r);
    if (d == 0) continue;
    Mat up_down(d, d), down_up(d, d);
    if (r < n)
      up_down = mat_mul(F, M.t_minus.blocks[r + 1], M.t_plus.blocks[r]);
    if (r > 1)
      down_up = mat_mul(F, M.t_plus.blocks[r - 1], M.t_minus.blocks[r]);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (up_down.at(i, j) != down_up.at(i, j)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sampled generic points satisfy the preprojective relation") {
  // The nilpotent-variety points are built so that the up-down and down-up
  // composites agree at every site, for arbitrary coordinate values.
  Fp F;
  for (int i = 0; i < 50; ++i) {
    auto rng = make_rng(5, "pp-relation", i);
    int n = 3 + static_cast<int>(rng() % 5);
    Multisegment m = random_multisegment(n, 6, rng);
    GenericModule M = sample_generic(F, m, rng);
    CHECK(preprojective_relation_holds(F, M));
  }
}

TEST_CASE("the dual T-matrix is the transpose of the T-matrix") {
  Fp F;
  for (int i = 0; i < 30; ++i) {
    auto rng = make_rng(6, "pp-transpose", i);
    int n = 3 + static_cast<int>(rng() % 4);
    Multisegment m = random_multisegment(n, 5, rng);
    Multisegment nn = random_multisegment(n, 5, rng);
    GenericModule M = sample_generic(F, m, rng);
    GenericModule N = sample_generic(F, nn, rng);
    Mat T = t_matrix(F, M, N);
    Mat Td = t_dual_matrix(F, M, N);
    REQUIRE(T.rows == Td.cols);
    REQUIRE(T.cols == Td.rows);
    for (std::size_t a = 0; a < T.rows; ++a)
      for (std::size_t b = 0; b < T.cols; ++b)
        CHECK(T.at(a, b) == Td.at(b, a));
  }
}

TEST_CASE("corank of the T-matrix equals the direct hom solve") {
  // dim Ker T_{M;N} = dim Hom over the preprojective algebra; the direct
  // graded intertwiner solve is the independent calibration.
  Fp F;
  for (int i = 0; i < 40; ++i) {
    auto rng = make_rng(8, "pp-corank", i);
    int n = 3 + static_cast<int>(rng() % 4);
    Multisegment m = random_multisegment(n, 5, rng);
    Multisegment nn = random_multisegment(n, 5, rng);
    GenericModule M = sample_generic(F, m, rng);
    GenericModule N = sample_generic(F, nn, rng);
    Mat T = t_matrix(F, M, N);
    long corank = static_cast<long>(T.cols) - static_cast<long>(rank(F, T));
    CHECK(corank == hom_dim_direct(F, M, N));
  }
}

TEST_CASE("hom and ext on single segments") {
  Engine e;
  Multisegment a = parse_multisegment("[1,2]", 3);
  Multisegment b = parse_multisegment("[2,3]", 3);
  CHECK(e.hom_pi(b, a).value == 1);
  CHECK(e.hom_pi(a, b).value == 0);
  CHECK(e.ext1_pi(a, b).value == 1);
  CHECK(e.ext1_pi(b, a).value == 1);
  CHECK(e.hom_pi(a, a).value == 1);
  CHECK(e.ext1_pi(a, a).value == 0);
  // Distant segments: everything vanishes.
  Multisegment c1 = parse_multisegment("[1,1]", 4);
  Multisegment c2 = parse_multisegment("[3,4]", 4);
  CHECK(e.hom_pi(c1, c2).value == 0);
  CHECK(e.hom_pi(c2, c1).value == 0);
  CHECK(e.ext1_pi(c1, c2).value == 0);
  CHECK(e.strongly_commute(c1, c2).value);
  CHECK_THROWS_AS(e.hom_pi(a, parse_multisegment("[1,2]", 4)),
                  precondition_error);
}

TEST_CASE("star operation basics") {
  Engine e;
  Multisegment a = parse_multisegment("[1,2]", 3);
  Multisegment b = parse_multisegment("[2,3]", 3);
  CHECK(e.star(a, b).value == parse_multisegment("[1,3]+[2,2]", 3));
  CHECK(e.star(b, a).value == b + a);  // the split direction
  Multisegment zero = parse_multisegment("0", 3);
  CHECK(e.star(zero, a).value == a);
  CHECK(e.star(a, zero).value == a);
  CHECK(e.commute(parse_multisegment("[1,1]", 4), parse_multisegment("[3,4]", 4))
            .value);
}

TEST_CASE("star preserves graded dimension and respects duality") {
  Engine e;
  for (int i = 0; i < 25; ++i) {
    auto rng = make_rng(9, "pp-star-props", i);
    int n = 3 + static_cast<int>(rng() % 4);
    Multisegment m = random_multisegment(n, 4, rng);
    Multisegment nn = random_multisegment(n, 4, rng);
    Multisegment st = e.star(m, nn).value;
    CHECK(grdim(st) == grdim(m + nn));
    CHECK(dual(st) == e.star(dual(nn), dual(m)).value);
  }
}

TEST_CASE("diagonal sampling on equal arguments") {
  Engine e;
  // The one-parameter family on n = 5: self-invariants are taken at a single
  // generic point, so End = 3 and self-Ext = 2; two independent points give
  // Hom = 2 and Ext = 0, so the component strongly commutes with itself.
  Multisegment m = parse_multisegment("[4,5]+[2,4]+[3,3]+[1,2]", 5);
  CHECK(e.hom_pi(m, m).value == 3);
  CHECK(e.ext1_pi(m, m).value == 2);
  CHECK_FALSE(e.is_rigid(m).value);
  CHECK(e.strongly_commute(m, m).value);
  CHECK(e.star(m, m).value == m + m);
}

TEST_CASE("error bounds are conservative and tiny at defaults") {
  Engine e;
  Multisegment m = parse_multisegment("[4,7]+[5,6]+[2,5]+[3,4]+[1,3]", 7);
  auto hom = e.hom_pi(m, m);
  CHECK(hom.trials == 5);
  CHECK(hom.error_bound < std::pow(2.0, -40));
  auto st = e.star(m, m);
  CHECK(st.error_bound < std::pow(2.0, -40));
  CHECK(st.error_bound >= 0.0);
}

TEST_CASE("determinism: same config gives identical verdicts") {
  EngineConfig cfg;
  cfg.seed = 42;
  Engine e1(cfg), e2(cfg);
  Multisegment m = parse_multisegment("[4,5]+[2,4]+[3,3]+[1,2]", 5);
  CHECK(e1.star(m, m).value == e2.star(m, m).value);
  CHECK(e1.hom_pi(m, m).value == e2.hom_pi(m, m).value);
  // A different seed still yields the same mathematical value.
  EngineConfig cfg2;
  cfg2.seed = 20240817;
  Engine e3(cfg2);
  CHECK(e3.hom_pi(m, m).value == 3);
}

TEST_CASE("mw involution") {
  Engine e;
  Multisegment s = parse_multisegment("[1,3]", 3);
  CHECK(e.mw(s).value == parse_multisegment("[1,1]+[2,2]+[3,3]", 3));
  for (int i = 0; i < 30; ++i) {
    auto rng = make_rng(10, "pp-mw", i);
    int n = 3 + static_cast<int>(rng() % 5);
    Multisegment m = random_multisegment(n, 5, rng);
    Multisegment t = e.mw(m).value;
    CHECK(grdim(t) == grdim(m));
    CHECK(e.mw(t).value == m);
  }
}

TEST_CASE("factor") {
  Engine e;
  Multisegment m1 = parse_multisegment("[1,1]+[3,4]+[4,7]", 8);
  Multisegment m2 = parse_multisegment("[2,4]+[5,6]+[8,8]", 8);
  Multisegment prod = parse_multisegment("[1,4]+[3,6]+[4,8]", 8);
  auto v = e.factor(prod, m1);
  REQUIRE(v.value.has_value());
  CHECK(*v.value == m2);
  // factor(m, m) = 0 for rigid m (identity quotient).
  auto self = e.factor(m1, m1);
  REQUIRE(self.value.has_value());
  CHECK(self.value->empty());
  // No factorization: graded dimensions cannot even match.
  Multisegment seg = parse_multisegment("[1,2]", 8);
  CHECK_FALSE(e.factor(seg, m1).value.has_value());
  // The known factor must be rigid.
  Multisegment nonrigid = parse_multisegment("[4,5]+[2,4]+[3,3]+[1,2]", 5);
  CHECK_THROWS_AS(e.factor(nonrigid + nonrigid, nonrigid), precondition_error);
}

TEST_CASE("quiver dimension formulas against brute-force solves") {
  Fp F;
  // All segment pairs at n <= 5.
  for (int n = 1; n <= 5; ++n)
    for (const Segment& s1 : all_segments(n))
      for (const Segment& s2 : all_segments(n)) {
        Multisegment m(n, {s1}), nn(n, {s2});
        QuiverDims qd = quiver_dims(m, nn);
        CHECK(qd.homQ == oracles::homQ_direct(F, m, nn));
        CHECK(qd.extQ == oracles::extQ_brute(F, m, nn));
      }
  // Random multisegment pairs.
  for (int i = 0; i < 100; ++i) {
    auto rng = make_rng(12, "pp-quiverdims", i);
    int n = 2 + static_cast<int>(rng() % 5);
    Multisegment m = random_multisegment(n, 5, rng);
    Multisegment nn = random_multisegment(n, 5, rng);
    QuiverDims qd = quiver_dims(m, nn);
    CHECK(qd.homQ == oracles::homQ_direct(F, m, nn));
    CHECK(qd.extQ == oracles::extQ_brute(F, m, nn));
  }
}

TEST_CASE("hom is monotone under the minimum across trials") {
  // With more trials the reported minimum can only stay or decrease; for a
  // correct generic value it is stable. Spot-check stability 1 vs 7 trials.
  Multisegment m = parse_multisegment("[4,5]+[2,4]+[3,3]+[1,2]", 5);
  EngineConfig one;
  one.trials = 1;
  EngineConfig many;
  many.trials = 7;
  CHECK(Engine(one).hom_pi(m, m).value == Engine(many).hom_pi(m, m).value);
}
