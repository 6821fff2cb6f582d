#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mgd/laurent.hpp>

#include <random>

using namespace mgd;

namespace {
const VarList T{"t"};
LaurentPoly tpow(int e, long long c = 1) { return LaurentPoly::monomial(T, "t", e, c); }
}  // namespace

TEST_CASE("polynomial arithmetic") {
  LaurentPoly one = LaurentPoly::one(T);
  CHECK((one - tpow(1)) * tpow(-1) == tpow(-1) - one);
  CHECK(tpow(2) + LaurentPoly::zero(T) == tpow(2));

  VarList tt{"t", "t1"};
  LaurentPoly t = LaurentPoly::monomial(tt, "t", 1);
  LaurentPoly t1 = LaurentPoly::monomial(tt, "t1", 1);
  LaurentPoly t1inv = LaurentPoly::monomial(tt, "t1", -1);
  CHECK((t * t1) * t1inv == t);

  CHECK_THROWS_AS(t + tpow(1), std::invalid_argument);
  CHECK(to_string(LaurentPoly::one(T) - tpow(1)) == "1 - t");
  CHECK(to_string(LaurentPoly::zero(T)) == "0");
}

TEST_CASE("matrix_of_letter blocks") {
  LaurentMatrix bl = matrix_of_letter(LinearRep::BurauLocal, sigma(1), 2);
  VarList v = bl.vars();
  CHECK(bl.at(0, 0) == LaurentPoly::one(v) - LaurentPoly::monomial(v, "t", 1));
  CHECK(bl.at(0, 1) ==
        LaurentPoly::monomial(v, "t", 1) * LaurentPoly::monomial(v, "t1", 1));
  CHECK(bl.at(1, 0) == LaurentPoly::monomial(v, "t1", -1));
  CHECK(bl.at(1, 1).is_zero());

  LaurentMatrix pr = matrix_of_letter(LinearRep::Psi, rho(1), 2);
  VarList pv = pr.vars();
  CHECK(pr.at(0, 0).is_zero());
  CHECK(pr.at(0, 1) == LaurentPoly::monomial(pv, "t1", 1));
  CHECK(pr.at(1, 0) == LaurentPoly::monomial(pv, "t1", -1));

  CHECK_THROWS_AS(matrix_of_letter(LinearRep::Burau, rho(1), 3), std::invalid_argument);
  CHECK_THROWS_AS(matrix_of_letter(LinearRep::BurauLocal, rho(1), 3),
                  std::invalid_argument);
}

TEST_CASE("generator inverses multiply to the identity") {
  for (LinearRep rep : {LinearRep::BurauLocal, LinearRep::Burau, LinearRep::Psi,
                        LinearRep::BF}) {
    for (int n = 2; n <= 4; ++n)
      for (int i = 1; i <= n - 1; ++i) {
        LaurentMatrix fwd = matrix_of_letter(rep, sigma(i), n);
        LaurentMatrix inv = matrix_of_letter(rep, sigma(i, -1), n);
        CHECK((fwd * inv).is_identity());
        CHECK((inv * fwd).is_identity());
      }
  }
}

TEST_CASE("defining relations hold as exact matrix identities") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& rel : vbn_relations(n)) {
      bool braid_only = true;
      for (const auto& l : rel.lhs.letters)
        if (l.kind == BraidLetter::Kind::Rho) braid_only = false;
      for (const auto& l : rel.rhs.letters)
        if (l.kind == BraidLetter::Kind::Rho) braid_only = false;
      for (LinearRep rep : {LinearRep::BurauLocal, LinearRep::Burau, LinearRep::Psi,
                            LinearRep::BF}) {
        if ((rep == LinearRep::BurauLocal || rep == LinearRep::Burau) && !braid_only)
          continue;
        INFO(rel.name << " n=" << n);
        CHECK(braid_matrix(rep, rel.lhs) == braid_matrix(rep, rel.rhs));
      }
    }
  }
}

TEST_CASE("braid_matrix basics") {
  CHECK(braid_matrix(LinearRep::Burau, parse_braid("s1 s2 s1", 3)) ==
        braid_matrix(LinearRep::Burau, parse_braid("s2 s1 s2", 3)));
  CHECK(braid_matrix(LinearRep::Psi, parse_braid("r1 r1", 2)).is_identity());
  CHECK(braid_matrix(LinearRep::Burau, parse_braid("", 3)).is_identity());
}

TEST_CASE("theta conjugation is position independent and matches the homogeneous block") {
  for (int n = 2; n <= 5; ++n) {
    VarList vars = linear_rep_vars(LinearRep::Psi, n);
    auto mono = [&](const std::string& v, int e) {
      return LaurentPoly::monomial(vars, v, e);
    };
    for (int i = 1; i <= n - 1; ++i) {
      LaurentMatrix s = theta_conjugate(matrix_of_letter(LinearRep::Psi, sigma(i), n), n);
      // block [[1-t, t l^-1], [l, 0]]: e_i -> (1-t) e_i + l e_{i+1}, e_{i+1} -> t l^-1 e_i
      CHECK(s.at(i - 1, i - 1) == LaurentPoly::one(vars) - mono("t", 1));
      CHECK(s.at(i - 1, i) == mono("t", 1) * mono("l", -1));
      CHECK(s.at(i, i - 1) == mono("l", 1));
      CHECK(s.at(i, i).is_zero());

      LaurentMatrix r = theta_conjugate(matrix_of_letter(LinearRep::Psi, rho(i), n), n);
      CHECK(r.at(i - 1, i - 1).is_zero());
      CHECK(r.at(i - 1, i) == LaurentPoly::one(vars));
      CHECK(r.at(i, i - 1) == LaurentPoly::one(vars));
    }
    LaurentMatrix id = LaurentMatrix::identity(n, vars);
    CHECK(theta_conjugate(id, n) == id);
  }
}

TEST_CASE("psi with all t_i := 1 equals the Bartholomew-Fenn matrices") {
  for (int n = 2; n <= 4; ++n)
    for (int i = 1; i <= n - 1; ++i)
      for (BraidLetter l : {sigma(i), sigma(i, -1), rho(i)}) {
        LaurentMatrix p = matrix_of_letter(LinearRep::Psi, l, n);
        for (int k = n - 1; k >= 1; --k) p = p.substitute_one("t" + std::to_string(k));
        CHECK(p == matrix_of_letter(LinearRep::BF, l, n));
      }
}

TEST_CASE("burau determinant") {
  for (int i = 1; i <= 3; ++i)
    CHECK(det(matrix_of_letter(LinearRep::Burau, sigma(i), 4)) == tpow(1, -1));

  std::mt19937 rng(31);
  std::uniform_int_distribution<int> idx(1, 3), pw(0, 1), len(0, 6);
  for (int trial = 0; trial < 20; ++trial) {
    BraidWord u{4, {}}, v{4, {}};
    for (int k = len(rng); k > 0; --k) u.push(sigma(idx(rng), pw(rng) ? 1 : -1));
    for (int k = len(rng); k > 0; --k) v.push(sigma(idx(rng), pw(rng) ? 1 : -1));
    CHECK(det(braid_matrix(LinearRep::Burau, u * v)) ==
          det(braid_matrix(LinearRep::Burau, u)) *
              det(braid_matrix(LinearRep::Burau, v)));
  }
}

TEST_CASE("bigelow words") {
  auto [b1, b2] = bigelow_words();
  CHECK(b1.strand_count == 5);
  CHECK(b2.strand_count == 6);
  CHECK(!b1.letters.empty());
  CHECK(!b2.letters.empty());
  // counted with multiplicity from the published displays:
  // |c1| = 10, |c2| = 16, middle words 1 and 8 letters
  CHECK(b1.letters.size() == 2 * (10 + 1 + 10) + 2 * (16 + 8 + 16));
  CHECK(b2.letters.size() == 2 * (4 + 1 + 4) + 2 * (6 + 1 + 6));
  int max_index = 0;
  for (const auto& l : b2.letters) max_index = std::max(max_index, l.index);
  CHECK(max_index == 5);
}

TEST_CASE("bigelow elements lie in the Burau kernel") {
  KernelReport rpt = kernel_check();
  CHECK(rpt.b1_identity);
  CHECK(rpt.b2_identity);
  CHECK(rpt.ok);
  CHECK_FALSE(braid_matrix(LinearRep::Burau, parse_braid("s1", 5)).is_identity());
}
