#include "syz/bounds.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace syz;

namespace {

DegreeBudget budget(std::optional<int> n, std::optional<int> m, std::optional<int> r,
                    std::optional<int> d, std::optional<int> d0, std::optional<int> da,
                    std::optional<int> dM = {}, std::optional<int> dN = {}) {
  DegreeBudget b;
  b.n = n;
  b.m = m;
  b.r = r;
  b.d = d;
  b.delta0 = d0;
  b.delta_a = da;
  b.delta_M = dM;
  b.delta_N = dN;
  return b;
}

}  // namespace

TEST_CASE("derived reference values") {
  CHECK(evaluate_bound(BoundFormula::QS_EXPLICIT, budget(2, {}, 2, 1, {}, {})) == 3072);
  CHECK(evaluate_bound(BoundFormula::MTT_1, budget(2, {}, {}, {}, 2, 2)) == 460992);
  CHECK(evaluate_bound(BoundFormula::CITAM, budget({}, {}, {}, {}, 2, 2)) == 120000);
  CHECK(evaluate_bound(BoundFormula::DELTA_N_ZERODIM, budget({}, {}, {}, {}, 2, 2)) == 12);
  CHECK(evaluate_bound(BoundFormula::MTT_2, budget(2, 4, {}, {}, 2, 2)) == 21934868);
  CHECK(evaluate_bound(BoundFormula::DELTA_M, budget({}, {}, {}, {}, 3, 2)) == 11);
}

TEST_CASE("worked bound for the first example data set") {
  // actual basis degree there is 2; the formula budget is far larger
  CHECK(evaluate_bound(BoundFormula::UNIMOD_M, budget(2, {}, {}, {}, 2, {}, 2)) == 15554);
}

TEST_CASE("missing parameters are reported by name") {
  try {
    evaluate_bound(BoundFormula::VIA_N, budget(2, {}, {}, {}, 1, 1, 1, 1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("m") != std::string::npos);
  }
  CHECK_THROWS_AS(evaluate_bound(BoundFormula::QS_EXPLICIT, budget({}, {}, 2, 1, {}, {})), Error);
}

TEST_CASE("monotonicity in every parameter on a grid") {
  for (int n = 1; n <= 3; ++n)
    for (int d0 = 1; d0 <= 3; ++d0)
      for (int da = 1; da <= 3; ++da)
        for (int m = 2; m <= 5; ++m) {
          auto b = budget(n, m, 2, d0, d0, da, d0, da);
          for (BoundFormula f :
               {BoundFormula::QS_EXPLICIT, BoundFormula::TILDE_M, BoundFormula::UNIMOD_M,
                BoundFormula::VIA_N, BoundFormula::MPRIME, BoundFormula::DELTA_M,
                BoundFormula::DELTA_N_GENERIC, BoundFormula::DELTA_N_ZERODIM, BoundFormula::MTT_1,
                BoundFormula::MTT_2, BoundFormula::CITAM, BoundFormula::BEZOUT_25}) {
            Int base = evaluate_bound(f, b);
            // bump each present parameter by one and require non-decrease
            auto bump = [&](DegreeBudget nb) { CHECK(evaluate_bound(f, nb) >= base); };
            DegreeBudget t = b;
            t.n = n + 1;
            bump(t);
            t = b;
            t.m = m + 1;
            bump(t);
            t = b;
            t.r = 3;
            bump(t);
            t = b;
            t.d = d0 + 1;
            bump(t);
            t = b;
            t.delta0 = d0 + 1;
            bump(t);
            t = b;
            t.delta_a = da + 1;
            bump(t);
            t = b;
            t.delta_M = d0 + 1;
            bump(t);
            t = b;
            t.delta_N = da + 1;
            bump(t);
          }
        }
}

TEST_CASE("consistency chain of the two main bounds") {
  for (int n = 1; n <= 3; ++n)
    for (int d0 = 1; d0 <= 3; ++d0)
      for (int da = 1; da <= 3; ++da) {
        // first chain: MTT_1 equals TILDE_M at delta_M = DELTA_M(d0, da)
        Int dM = evaluate_bound(BoundFormula::DELTA_M, budget({}, {}, {}, {}, d0, da));
        REQUIRE(dM >= d0);  // d0^2 + da >= d0 on this grid
        DegreeBudget tb = budget(n, {}, {}, {}, d0, da, static_cast<int>(dM));
        CHECK(evaluate_bound(BoundFormula::MTT_1, tb) == evaluate_bound(BoundFormula::TILDE_M, tb));

        for (int m = 2; m <= 5; ++m) {
          // second chain: MTT_2 is VIA_N with the zero-dimensional delta_N
          // and delta_M = DELTA_M folded in
          Int dN = evaluate_bound(BoundFormula::DELTA_N_ZERODIM, budget({}, {}, {}, {}, d0, da));
          DegreeBudget vb = budget(n, m, {}, {}, d0, da, static_cast<int>(dM), static_cast<int>(dN));
          CHECK(evaluate_bound(BoundFormula::MTT_2, vb) == evaluate_bound(BoundFormula::VIA_N, vb));
        }
      }
}

TEST_CASE("formula ids round trip") {
  for (BoundFormula f : {BoundFormula::QS_EXPLICIT, BoundFormula::MTT_2, BoundFormula::BEZOUT_25}) {
    auto parsed = parse_formula_id(formula_id(f));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == f);
  }
  CHECK_FALSE(parse_formula_id("NOPE").has_value());
}
