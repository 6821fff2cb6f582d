#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mgd/braid.hpp>

#include <random>

using namespace mgd;

TEST_CASE("parse_braid") {
  BraidWord w = parse_braid("s1 s1^-1", 2);
  REQUIRE(w.letters.size() == 2);
  CHECK(w.letters[0] == sigma(1));
  CHECK(w.letters[1] == sigma(1, -1));

  BraidWord r = parse_braid("r1 r2 r1", 3);
  REQUIRE(r.letters.size() == 3);
  CHECK(r.letters[0] == rho(1));
  CHECK(r.letters[1] == rho(2));

  CHECK(parse_braid("r1^-1", 2).letters[0] == rho(1));  // involution folds
  CHECK(parse_braid("s1^3", 2).letters.size() == 3);
  CHECK(parse_braid("", 2).letters.empty());

  CHECK_THROWS_AS(parse_braid("s3", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_braid("q1", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_braid("s1", 0), std::invalid_argument);
}

TEST_CASE("vbn_relations") {
  auto rels2 = vbn_relations(2);
  REQUIRE(rels2.size() == 1);
  CHECK(rels2[0].lhs == parse_braid("r1 r1", 2));
  CHECK(rels2[0].rhs == parse_braid("", 2));

  auto rels3 = vbn_relations(3);
  bool has_braid = false, has_mixed = false;
  for (const auto& rel : rels3) {
    if (rel.lhs == parse_braid("s1 s2 s1", 3) && rel.rhs == parse_braid("s2 s1 s2", 3))
      has_braid = true;
    if (rel.lhs == parse_braid("r1 r2 s1", 3) && rel.rhs == parse_braid("s2 r1 r2", 3))
      has_mixed = true;
  }
  CHECK(has_braid);
  CHECK(has_mixed);
  CHECK_THROWS_AS(vbn_relations(1), std::invalid_argument);
}

TEST_CASE("catalogue images match the published formulas") {
  // phiSW, n=2: sigma_1 sends x1 -> x1 x2^{u1} x1^{-v u2}
  Representation sw = get_representation("phiSW", 2);
  WordContext csw{2, 3};
  CHECK(sw.image(sigma(1)).image(xgen(1)) ==
        parse_word("x1 v1^-1 x2 v1 v2^-1 v3^-1 x1^-1 v2 v3", csw));
  CHECK(sw.image(sigma(1)).image(xgen(2)) == parse_word("v3^-1 x1 v3", csw));

  // phiBD, n=2: rho_1 sends x1 -> x2^{v^-1} with v = v2
  Representation bd = get_representation("phiBD", 2);
  WordContext cbd{2, 2};
  CHECK(bd.image(rho(1)).image(xgen(1)) == parse_word("v2 x2 v2^-1", cbd));
  CHECK(bd.image(rho(1)).image(xgen(2)) == parse_word("v2^-1 x1 v2", cbd));

  // w3, n=2: sigma_1 sends x1 -> x1^2 x2
  Representation w3 = get_representation("w3", 2);
  CHECK(w3.image(sigma(1)).image(xgen(1)) == parse_word("x1^2 x2", cbd));

  // phiM: sigma fixes generators away from i, i+1
  Representation m3 = get_representation("phiM", 3);
  WordContext cm3{3, 3};
  CHECK(m3.image(sigma(1)).image(xgen(3)) == Word::of(cm3, xgen(3)));
  CHECK(m3.image(sigma(1)).image(vgen(3)) == Word::of(cm3, vgen(3)));

  CHECK_THROWS_AS(get_representation("phiQ", 3), std::invalid_argument);
  CHECK_THROWS_AS(get_representation("phiM[2]", 3), std::invalid_argument);
}

TEST_CASE("braid_image") {
  Representation s2 = get_representation("phiS", 2);
  CHECK(braid_image(s2, parse_braid("s1 s1^-1", 2)).is_identity());

  Representation s3 = get_representation("phiS", 3);
  CHECK(braid_image(s3, parse_braid("r1 r2 r1", 3)) ==
        braid_image(s3, parse_braid("r2 r1 r2", 3)));

  Representation m2 = get_representation("phiM", 2);
  WordContext cm{2, 2};
  CHECK(braid_image(m2, parse_braid("r1", 2)).image(xgen(2)) ==
        parse_word("v2^-1 x1 v2", cm));

  CHECK(braid_image(s2, parse_braid("", 2)).is_identity());
}

TEST_CASE("braid_image is a monoid morphism") {
  std::mt19937 rng(23);
  Representation rep = get_representation("phiM", 3);
  std::uniform_int_distribution<int> len(0, 5), idx(1, 2), kind(0, 2);
  auto random_word = [&] {
    BraidWord w{3, {}};
    int L = len(rng);
    for (int i = 0; i < L; ++i) {
      int k = kind(rng);
      w.push(k == 0 ? sigma(idx(rng)) : k == 1 ? sigma(idx(rng), -1) : rho(idx(rng)));
    }
    return w;
  };
  for (int trial = 0; trial < 40; ++trial) {
    BraidWord u = random_word(), v = random_word();
    CHECK(braid_image(rep, u * v) == compose(braid_image(rep, u), braid_image(rep, v)));
  }
}

TEST_CASE("verify_representation holds for the whole catalogue") {
  for (const auto& name : catalogue_names()) {
    for (int n = 2; n <= 4; ++n) {
      Representation rep = get_representation(name, n);
      VerifyReport rpt = verify_representation(rep, n);
      INFO(name << " n=" << n);
      CHECK(rpt.ok);
    }
  }
}

TEST_CASE("a sign-flipped phiS mutant fails verification") {
  // phiS(sigma_1) with the v1 exponent flipped in the x1 image, together with
  // the matching inverse so the pair certifies.
  int n = 3;
  WordContext ctx{n, n};
  auto X = [&](int i) { return Word::of(ctx, xgen(i)); };
  auto V = [&](int i, long long e = 1) { return Word::of(ctx, vgen(i), e); };

  Endomap f(ctx);
  f.set_image(xgen(1), X(1) * conjugate(X(2), V(1, -1)) * X(1).inverse());
  f.set_image(xgen(2), conjugate(X(1), V(2, -1)));
  f.set_image(vgen(1), V(2));
  f.set_image(vgen(2), V(1));

  Endomap g(ctx);
  g.set_image(xgen(1), conjugate(X(2), V(1)));
  Word gb(ctx);
  gb.push(V(2, -1));
  gb.push(conjugate(X(2), V(1)).inverse());
  gb.push(X(1));
  gb.push(conjugate(X(2), V(1)));
  gb.push(V(2));
  g.set_image(xgen(2), gb);
  g.set_image(vgen(1), V(2));
  g.set_image(vgen(2), V(1));
  REQUIRE(verify_inverse_pair(f, g));

  Representation good = get_representation("phiS", n);
  std::vector<Endomap> sig, sig_inv, rhos;
  sig.push_back(f);
  sig_inv.push_back(g);
  rhos.push_back(good.image(rho(1)));
  for (int i = 2; i <= n - 1; ++i) {
    sig.push_back(good.image(sigma(i)));
    sig_inv.push_back(good.image(sigma(i, -1)));
    rhos.push_back(good.image(rho(i)));
  }
  Representation mutant("phiS_mutant", n, ctx, sig, sig_inv, rhos);
  VerifyReport rpt = verify_representation(mutant, n);
  CHECK_FALSE(rpt.ok);
  CHECK(!rpt.failures.empty());
  CHECK(!rpt.failures[0].relation.empty());
}

TEST_CASE("compose(phi_S(rho_1), phi_S(rho_1)) is the identity") {
  Representation s = get_representation("phiS", 2);
  CHECK(compose(s.image(rho(1)), s.image(rho(1))).is_identity());
}

TEST_CASE("conjugate_representation reproduces the tilde forms") {
  for (const char* base : {"phiM", "phiA", "phiBD", "w1[-1]", "w1[0]", "w1[1]",
                           "w1[2]", "w2", "w3"}) {
    for (int n = 2; n <= 4; ++n) {
      Representation b = get_representation(base, n);
      auto [phi, phi_inv] = catalogue_conjugator(base, n);
      Representation conj = conjugate_representation(b, phi, phi_inv);
      Representation target = get_representation(tilde_partner(base), n);
      INFO(base << " n=" << n);
      CHECK(images_equal(conj, target));
    }
  }
}

TEST_CASE("conjugating by the identity is a no-op") {
  Representation b = get_representation("phiM", 3);
  Endomap id = Endomap::identity(b.context());
  CHECK(images_equal(conjugate_representation(b, id, id), b));
}

TEST_CASE("is_virtually_symmetric matches the published flags") {
  for (const char* name : {"phiS", "phiSW", "phiA~", "phiBD~", "w1~[1]", "w2~", "w3~",
                           "phi0"})
    CHECK(is_virtually_symmetric(get_representation(name, 4)));
  for (const char* name : {"phiM", "phiA", "phiBD", "w1[1]", "w2", "w3"})
    CHECK_FALSE(is_virtually_symmetric(get_representation(name, 4)));
}
