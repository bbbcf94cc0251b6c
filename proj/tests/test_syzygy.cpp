#include "testkit.hpp"

#include "syz/syzygy.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace syz;
using syzt::M;
using syzt::P;

TEST_CASE("derive_conversion on the first data set gives the identity K") {
  auto inst = syzt::instance51();
  auto pair = derive_conversion(inst);
  CHECK(pair.K == PolyMatrix::identity(2, 2));
  CHECK(pair.e.is_zero());
  CHECK(pair.f.is_zero());
}

TEST_CASE("derive_conversion on the second data set gives e = f = 1") {
  auto inst = syzt::instance52();
  auto pair = derive_conversion(inst);
  CHECK(pair.e == P("1"));
  CHECK(pair.f == P("1"));
  // the forced shape with p = t+2s+1, q = -2t-s
  CHECK(pair.K.at(0, 0) == P("1 + s + 2*t"));
  CHECK(pair.K.at(0, 1) == P("-s - 2*t"));
  CHECK(pair.K.at(1, 0) == P("1 + 2*s + t"));
  CHECK(pair.K.at(1, 1) == P("-2*s - t"));
}

TEST_CASE("derive_conversion builds matrices when none are supplied") {
  auto inst = syzt::instance51(false);
  auto pair = derive_conversion(inst);
  // (p q) M = (a) and (a) N = (p q) for the derived pair
  for (int j = 0; j < 4; ++j)
    CHECK(inst.p * pair.M.at(0, j) + inst.q * pair.M.at(1, j) == inst.a[static_cast<std::size_t>(j)]);
  Polynomial cp(2), cq(2);
  for (int i = 0; i < 4; ++i) {
    cp += inst.a[static_cast<std::size_t>(i)] * pair.N.at(i, 0);
    cq += inst.a[static_cast<std::size_t>(i)] * pair.N.at(i, 1);
  }
  CHECK(cp == inst.p);
  CHECK(cq == inst.q);
  // the K decomposition identity (det form)
  CHECK(pair.K.determinant() == P("1") - pair.e * inst.q - pair.f * inst.p);
}

TEST_CASE("conversion identities hold on random instances") {
  Rng rng(404);
  for (int iter = 0; iter < 8; ++iter) {
    auto inst = syzt::random_instance_via_M(rng, 3 + iter % 3);
    auto pair = derive_conversion(inst);
    PolyMatrix K_expected(2, 2, 2);
    K_expected.at(0, 0) = P("1") - pair.e * inst.q;
    K_expected.at(0, 1) = pair.f * inst.q;
    K_expected.at(1, 0) = pair.e * inst.p;
    K_expected.at(1, 1) = P("1") - pair.f * inst.p;
    CHECK(pair.K == K_expected);
    // any valid N is unimodular
    CHECK(is_unimodular(pair.N.transpose()));
  }
}

TEST_CASE("extend_tilde_M") {
  syzt::Ex52 ex;
  auto inst = syzt::instance52();
  PolyMatrix Mt = extend_tilde_M(ex.Mmat, inst.p, inst.q);
  CHECK(Mt == M("s + t ; t ; s ; 1 ; s + 2*t\n-s + t ; s ; t ; 1 ; t + 2*s + 1"));
  CHECK(is_unimodular(Mt));

  auto inst1 = syzt::instance51();
  syzt::Ex51 ex1;
  PolyMatrix Mt1 = extend_tilde_M(ex1.Mmat, inst1.p, inst1.q);
  CHECK(Mt1.at(0, 4) == P("-s^2 - 1"));
  CHECK(Mt1.at(1, 4) == P("t - s + 2"));
  CHECK(is_unimodular(Mt1));
}

TEST_CASE("make_unimodular_M") {
  // e = f = 0: nothing to do
  auto inst1 = syzt::instance51();
  auto pair1 = derive_conversion(inst1);
  CHECK(make_unimodular_M(pair1, inst1.p, inst1.q, 0) == pair1.M);

  // the second data set needs the correction; binding check M' N = I_2
  auto inst2 = syzt::instance52();
  auto pair2 = derive_conversion(inst2);
  PolyMatrix Mp = make_unimodular_M(pair2, inst2.p, inst2.q, 0);
  CHECK(Mp * pair2.N == PolyMatrix::identity(2, 2));
  CHECK(is_unimodular(Mp));
  for (int j = 0; j < 4; ++j)
    CHECK(inst2.p * Mp.at(0, j) + inst2.q * Mp.at(1, j) == inst2.a[static_cast<std::size_t>(j)]);

  // the published correction x = (0, 0, 1, 0) is one valid choice
  PolyMatrix Mp_ref = M("s + t ; t ; -2*t ; 1\n-s + t ; s ; -2*s - 1 ; 1");
  CHECK(Mp_ref * pair2.N == PolyMatrix::identity(2, 2));

  // random instances: M' N = I_2 always
  Rng rng(515);
  for (int iter = 0; iter < 6; ++iter) {
    auto inst = syzt::random_instance_via_M(rng, 3 + iter % 3);
    auto pair = derive_conversion(inst);
    PolyMatrix fixed = make_unimodular_M(pair, inst.p, inst.q, static_cast<std::uint64_t>(iter));
    CHECK(fixed * pair.N == PolyMatrix::identity(2, 2));
  }
}

TEST_CASE("basis via the extended matrix") {
  auto inst = syzt::instance52();
  auto pair = derive_conversion(inst);
  auto basis = basis_via_tilde_M(inst, pair.M, 7);
  CHECK(basis.verification.all_ok());
  CHECK(basis.B.rows() == 4);
  CHECK(basis.B.cols() == 3);

  // the published basis matrix passes verification as well
  syzt::Ex52 ex;
  CHECK(verify_basis(inst.a, ex.Uhat).all_ok());

  // m = 2: the Koszul column up to a unit
  auto koszul = make_instance({P("t - s + 2"), P("s^2 + 1")}, P("t - s + 2"), P("s^2 + 1"));
  auto kb = basis_via_tilde_M(koszul, PolyMatrix::identity(2, 2), 0);
  CHECK(kb.verification.all_ok());
  auto qq = divide_exact(kb.B.at(0, 0), koszul.q);
  auto pp = divide_exact(kb.B.at(1, 0), koszul.p);
  REQUIRE(qq.has_value());
  REQUIRE(pp.has_value());
  CHECK(*qq == -*pp);
  CHECK(qq->is_constant());
}

TEST_CASE("basis via a unimodular M") {
  auto inst = syzt::instance51();
  auto pair = derive_conversion(inst);
  auto basis = basis_via_M(inst, pair.M, 3);
  CHECK(basis.verification.all_ok());
  // the worked bound: degree at most 15554, small in practice
  CHECK(basis.B.matrix_degree() <= 15554);
  CHECK(basis.B.matrix_degree() <= 4);

  // non-unimodular M is rejected with advice
  auto inst2 = syzt::instance52();
  auto pair2 = derive_conversion(inst2);
  CHECK_THROWS_WITH(basis_via_M(inst2, pair2.M, 0),
                    Catch::Matchers::ContainsSubstring("make_unimodular_M"));
  PolyMatrix Mp = make_unimodular_M(pair2, inst2.p, inst2.q, 0);
  auto b2 = basis_via_M(inst2, Mp, 0);
  CHECK(b2.verification.all_ok());
}

TEST_CASE("basis via N") {
  auto inst = syzt::instance51();
  auto pair = derive_conversion(inst);
  auto basis = basis_via_N(inst, pair, 11);
  CHECK(basis.verification.all_ok());

  auto inst2 = syzt::instance52();
  auto pair2 = derive_conversion(inst2);
  auto basis2 = basis_via_N(inst2, pair2, 11);
  CHECK(basis2.verification.all_ok());

  // the published N-route matrices verify too
  syzt::Ex51 ex1;
  CHECK(verify_basis(inst.a, ex1.Nhat).all_ok());
  syzt::Ex52 ex2;
  CHECK(verify_basis(inst2.a, ex2.Nhat).all_ok());
}

TEST_CASE("published N-route intermediates satisfy their postconditions") {
  // N* extends N with constant nonzero determinant; (a) N** = (p q 0 0)
  syzt::Ex51 ex;
  auto inst = syzt::instance51();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) CHECK(ex.Nstar.at(i, j) == ex.Nmat.at(i, j));
  Polynomial dstar = ex.Nstar.determinant();
  CHECK(dstar.is_constant());
  CHECK(dstar.constant_value() != 0);
  auto image = syz::syz_detail::row_times_matrix(inst.a, ex.Nstarstar);
  CHECK(image[0] == inst.p);
  CHECK(image[1] == inst.q);
  CHECK(image[2].is_zero());
  CHECK(image[3].is_zero());

  syzt::Ex52 ex2;
  auto inst2 = syzt::instance52();
  auto image2 = syz::syz_detail::row_times_matrix(inst2.a, ex2.Nstarstar);
  CHECK(image2[0] == inst2.p);
  CHECK(image2[1] == inst2.q);
  CHECK(image2[2].is_zero());
  CHECK(image2[3].is_zero());
}

TEST_CASE("build_tilde_N_star") {
  // e = f = 0: the bottom row is (0, 0, 1)
  auto inst1 = syzt::instance51();
  auto pair1 = derive_conversion(inst1);
  PolyMatrix nt1 = build_tilde_N_star(pair1, inst1.p, inst1.q);
  CHECK(nt1.at(4, 0).is_zero());
  CHECK(nt1.at(4, 1).is_zero());
  CHECK(nt1.at(4, 2) == P("1"));

  // e = f = 1 case: the postcondition is checked inside
  auto inst2 = syzt::instance52();
  auto pair2 = derive_conversion(inst2);
  PolyMatrix nt2 = build_tilde_N_star(pair2, inst2.p, inst2.q);
  CHECK(nt2.rows() == 5);
  CHECK(nt2.cols() == 3);
}

TEST_CASE("aligned bases") {
  auto inst1 = syzt::instance51();
  auto pair1 = derive_conversion(inst1);
  CHECK(aligned_bases_check(inst1, pair1, 2) == AlignedStatus::Aligned);

  // M N != I_2: skipped
  auto inst2 = syzt::instance52();
  auto pair2 = derive_conversion(inst2);
  CHECK(aligned_bases_check(inst2, pair2, 2) == AlignedStatus::Skipped);

  Rng rng(606);
  for (int iter = 0; iter < 5; ++iter) {
    auto inst = syzt::random_instance_mn_identity(rng, 3 + iter % 3);
    auto pair = derive_conversion(inst);
    REQUIRE(pair.K == PolyMatrix::identity(2, 2));
    CHECK(aligned_bases_check(inst, pair, static_cast<std::uint64_t>(iter)) == AlignedStatus::Aligned);
  }
}

TEST_CASE("unit ideal basis") {
  auto b1 = unit_ideal_basis({P("s"), P("1 - s")}, 0);
  CHECK(b1.verification.all_ok());
  CHECK(b1.B.at(0, 0) == P("s - 1"));
  CHECK(b1.B.at(1, 0) == P("s"));

  auto b2 = unit_ideal_basis({P("1"), P("s^2*t - 3")}, 0);
  CHECK(b2.verification.all_ok());
  auto q2 = divide_exact(b2.B.at(0, 0), P("s^2*t - 3"));
  REQUIRE(q2.has_value());
  CHECK(q2->is_constant());

  auto b3 = unit_ideal_basis({P("s"), P("t"), P("s*t + 1")}, 0);
  CHECK(b3.verification.all_ok());
  CHECK(b3.B.cols() == 2);

  CHECK_THROWS_WITH(unit_ideal_basis({P("s"), P("t")}, 0),
                    Catch::Matchers::ContainsSubstring("not unimodular"));
}

TEST_CASE("verify_basis rejects corrupted bases") {
  auto inst = syzt::instance52();
  syzt::Ex52 ex;
  PolyMatrix bad = ex.Uhat;
  bad.at(2, 1) += P("1");
  auto rep = verify_basis(inst.a, bad);
  CHECK_FALSE(rep.all_ok());
  CHECK_FALSE(rep.syzygy_ok[1]);

  // the first-data-set published basis passes
  syzt::Ex51 ex1;
  auto inst1 = syzt::instance51();
  CHECK(verify_basis(inst1.a, ex1.UhatStar).all_ok());

  CHECK_THROWS_AS(verify_basis(inst.a, PolyMatrix::identity(4, 2)), Error);
}

TEST_CASE("full pipeline on the fixtures") {
  for (Strategy s : {Strategy::ViaTildeM, Strategy::ViaM, Strategy::ViaN, Strategy::Auto}) {
    for (std::uint64_t seed : {0ull, 1ull}) {
      auto b1 = compute_syzygy_basis(syzt::instance51(), s, seed);
      CHECK(b1.verification.all_ok());
      auto b2 = compute_syzygy_basis(syzt::instance52(), s, seed);
      CHECK(b2.verification.all_ok());
    }
  }
}

TEST_CASE("pipeline handles the degenerate branches") {
  // common factor: hard error without the strip flag, stripped with it
  auto degen = make_instance({P("s*t*(s + 1)"), P("s*t*t")}, P("s*t*(s + 1)"), P("s*t*t"));
  CHECK_THROWS_WITH(compute_syzygy_basis(degen, Strategy::Auto, 0, false),
                    Catch::Matchers::ContainsSubstring("factor"));
  auto stripped = compute_syzygy_basis(degen, Strategy::Auto, 0, true);
  CHECK(stripped.verification.all_ok());
  CHECK(stripped.verification.warnings.size() == 1);

  // unit ideal: routed to the direct completion
  auto unit = make_instance({P("s"), P("1 - s")}, P("s"), P("1 - s"));
  auto ub = compute_syzygy_basis(unit, Strategy::Auto, 0);
  CHECK(ub.strategy == Strategy::UnitIdealDirect);
  CHECK(ub.verification.all_ok());

  // ideal inequality is an input error
  auto broken = make_instance({P("s^2"), P("s^3")}, P("s"), P("t"));
  CHECK_THROWS_AS(compute_syzygy_basis(broken, Strategy::Auto, 0), Error);
}

TEST_CASE("strategy independence via change of basis") {
  for (auto make : {&syzt::instance51, &syzt::instance52}) {
    auto inst = make(true);
    auto bm = compute_syzygy_basis(inst, Strategy::ViaM, 1);
    auto bn = compute_syzygy_basis(inst, Strategy::ViaN, 1);
    auto bt = compute_syzygy_basis(inst, Strategy::ViaTildeM, 1);
    for (const auto* other : {&bn, &bt}) {
      PolyMatrix X = change_of_basis(inst.a, other->B, bm.B);
      Polynomial det = X.determinant();
      CHECK(det.is_constant());
      CHECK(det.constant_value() != 0);
    }
  }
}

TEST_CASE("lemma regression on random instances") {
  Rng rng(9001);
  for (int iter = 0; iter < 6; ++iter) {
    auto inst = syzt::random_instance_via_M(rng, 3 + iter % 3);
    auto pair = derive_conversion(inst);
    CHECK(pair.K.at(0, 0) == P("1") - pair.e * inst.q);
    CHECK(pair.K.at(0, 1) == pair.f * inst.q);
    CHECK(pair.K.at(1, 0) == pair.e * inst.p);
    CHECK(pair.K.at(1, 1) == P("1") - pair.f * inst.p);
  }
}
