#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mgd/words.hpp>

#include <random>

using namespace mgd;

namespace {

const WordContext ctx22{2, 2};

Word W(const char* s, WordContext c = ctx22) { return parse_word(s, c); }

std::vector<Syllable> random_raw(std::mt19937& rng, WordContext ctx, int len) {
  std::uniform_int_distribution<int> kind(0, 1);
  std::uniform_int_distribution<int> expo(-3, 3);
  std::vector<Syllable> raw;
  for (int i = 0; i < len; ++i) {
    GenKind k = kind(rng) ? GenKind::X : GenKind::V;
    int n = k == GenKind::X ? ctx.x_count : ctx.v_count;
    if (n == 0) {
      k = k == GenKind::X ? GenKind::V : GenKind::X;
      n = k == GenKind::X ? ctx.x_count : ctx.v_count;
    }
    std::uniform_int_distribution<int> idx(1, n);
    raw.push_back({Generator{k, idx(rng)}, expo(rng)});
  }
  return raw;
}

}  // namespace

TEST_CASE("normalize basics") {
  CHECK(normalize({{xgen(1), 1}, {xgen(1), -1}}, ctx22).empty());
  CHECK(normalize({{vgen(2), 1}, {vgen(1), 1}, {xgen(1), 1}, {vgen(1), -1}}, ctx22) ==
        W("v1 v2 x1 v1^-1"));
  CHECK(normalize({{vgen(1), 1}, {vgen(1), -1}, {xgen(2), 1}}, ctx22) == W("x2"));
  CHECK(to_string(Word::one(ctx22)) == "1");
}

TEST_CASE("normalize rejects out-of-range generators") {
  CHECK_THROWS_AS(normalize({{xgen(3), 1}}, ctx22), std::invalid_argument);
  CHECK_THROWS_AS(normalize({{vgen(1), 1}}, WordContext{2, 0}), std::invalid_argument);
}

TEST_CASE("normalize is idempotent on random raw sequences") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Word w = normalize(random_raw(rng, ctx22, 12), ctx22);
    CHECK(normalize(w.syllables(), ctx22) == w);
  }
}

TEST_CASE("v-run collapse merges the x-syllables around it") {
  // x1 v1 x1^-1 stays put, but killing the v-run cancels through.
  Word w(ctx22);
  w.push(xgen(1), 2);
  w.push(vgen(1), 1);
  w.push(xgen(2), 1);
  w.push(xgen(2), -1);
  w.push(vgen(1), -1);
  w.push(xgen(1), -2);
  CHECK(w.empty());
}

TEST_CASE("conjugate") {
  CHECK(conjugate(W("x1"), W("v1")) == W("v1^-1 x1 v1"));
  CHECK(conjugate(W("x1"), Word::one(ctx22)) == W("x1"));
  CHECK(conjugate(W("v1"), W("v2")) == W("v1"));
  CHECK_THROWS_AS(conjugate(W("x1"), Word::of(WordContext{3, 3}, xgen(1))),
                  std::invalid_argument);
}

TEST_CASE("conjugate round-trips with the inverse conjugator") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Word a = normalize(random_raw(rng, ctx22, 8), ctx22);
    Word b = normalize(random_raw(rng, ctx22, 8), ctx22);
    CHECK(conjugate(conjugate(a, b), b.inverse()) == a);
  }
}

TEST_CASE("word parse/print round trip") {
  CHECK(to_string(W("x1 v1^-1 x2 v1 x1^-1")) == "x1 v1^-1 x2 v1 x1^-1");
  CHECK(parse_word("1", ctx22).empty());
  CHECK(parse_word("x1^0", ctx22).empty());
  CHECK_THROWS_AS(parse_word("y1", ctx22), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("x", ctx22), std::invalid_argument);
}

namespace {

// phi_S(sigma_1) in the n-strand context F_n * Z^n.
Endomap phi_s_sigma1(int n) {
  WordContext ctx{n, n};
  Endomap f(ctx);
  Word im1(ctx);
  im1.push(xgen(1), 1);
  im1.push(conjugate(Word::of(ctx, xgen(2)), Word::of(ctx, vgen(1))));
  im1.push(xgen(1), -1);
  f.set_image(xgen(1), im1);
  f.set_image(xgen(2), conjugate(Word::of(ctx, xgen(1)), Word::of(ctx, vgen(2)).inverse()));
  f.set_image(vgen(1), Word::of(ctx, vgen(2)));
  f.set_image(vgen(2), Word::of(ctx, vgen(1)));
  return f;
}

// phi_S(sigma_1^-1)
Endomap phi_s_sigma1_inv(int n) {
  WordContext ctx{n, n};
  Endomap f(ctx);
  f.set_image(xgen(1), conjugate(Word::of(ctx, xgen(2)), Word::of(ctx, vgen(1))));
  Word c = Word::of(ctx, vgen(1)) * Word::of(ctx, vgen(2)).inverse();
  Word im2(ctx);
  im2.push(conjugate(Word::of(ctx, xgen(2)), c).inverse());
  im2.push(conjugate(Word::of(ctx, xgen(1)), Word::of(ctx, vgen(2)).inverse()));
  im2.push(conjugate(Word::of(ctx, xgen(2)), c));
  f.set_image(xgen(2), im2);
  f.set_image(vgen(1), Word::of(ctx, vgen(2)));
  f.set_image(vgen(2), Word::of(ctx, vgen(1)));
  return f;
}

}  // namespace

TEST_CASE("apply reproduces the phi_S action") {
  Endomap f = phi_s_sigma1(2);
  WordContext ctx{2, 2};
  CHECK(apply(f, Word::of(ctx, xgen(1))) == parse_word("x1 v1^-1 x2 v1 x1^-1", ctx));
  CHECK(apply(f, Word::of(ctx, vgen(1))) == Word::of(ctx, vgen(2)));

  Endomap f3 = phi_s_sigma1(3);
  WordContext c3{3, 3};
  CHECK(apply(f3, Word::of(c3, xgen(3))) == Word::of(c3, xgen(3)));
}

TEST_CASE("apply is multiplicative") {
  std::mt19937 rng(3);
  Endomap f = phi_s_sigma1(2);
  for (int trial = 0; trial < 100; ++trial) {
    Word u = normalize(random_raw(rng, ctx22, 6), ctx22);
    Word w = normalize(random_raw(rng, ctx22, 6), ctx22);
    CHECK(apply(f, u * w) == apply(f, u) * apply(f, w));
  }
}

TEST_CASE("compose and inverse pairs") {
  Endomap s = phi_s_sigma1(2);
  Endomap si = phi_s_sigma1_inv(2);
  CHECK(compose(s, si).is_identity());
  CHECK(compose(si, s).is_identity());
  CHECK(verify_inverse_pair(s, si));
  CHECK_FALSE(verify_inverse_pair(s, s));
  CHECK(verify_inverse_pair(Endomap::identity(ctx22), Endomap::identity(ctx22)));
  CHECK(compose(s, Endomap::identity(ctx22)) == s);
}

TEST_CASE("compose is associative") {
  std::mt19937 rng(5);
  Endomap maps[3] = {phi_s_sigma1(2), phi_s_sigma1_inv(2), Endomap::identity(ctx22)};
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const Endomap& f = maps[pick(rng)];
    const Endomap& g = maps[pick(rng)];
    const Endomap& h = maps[pick(rng)];
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
  }
}

TEST_CASE("is_generator_permutation") {
  WordContext ctx{2, 2};
  Endomap rho(ctx);  // phi_S(rho_1): swap x1,x2 and v1,v2
  rho.set_image(xgen(1), Word::of(ctx, xgen(2)));
  rho.set_image(xgen(2), Word::of(ctx, xgen(1)));
  rho.set_image(vgen(1), Word::of(ctx, vgen(2)));
  rho.set_image(vgen(2), Word::of(ctx, vgen(1)));
  CHECK(is_generator_permutation(rho));
  CHECK(is_generator_permutation(Endomap::identity(ctx)));

  Endomap rho_m(ctx);  // phi_M(rho_1): x1 -> x2^{v1^-1} is not a generator
  rho_m.set_image(xgen(1), conjugate(Word::of(ctx, xgen(2)), Word::of(ctx, vgen(1)).inverse()));
  rho_m.set_image(xgen(2), conjugate(Word::of(ctx, xgen(1)), Word::of(ctx, vgen(2))));
  rho_m.set_image(vgen(1), Word::of(ctx, vgen(2)));
  rho_m.set_image(vgen(2), Word::of(ctx, vgen(1)));
  CHECK_FALSE(is_generator_permutation(rho_m));

  Endomap squash(ctx);  // x1,x2 -> x1 is not injective
  squash.set_image(xgen(2), Word::of(ctx, xgen(1)));
  CHECK_FALSE(is_generator_permutation(squash));
}

TEST_CASE("generator permutations preserve letter length") {
  std::mt19937 rng(13);
  WordContext ctx{2, 2};
  Endomap rho(ctx);
  rho.set_image(xgen(1), Word::of(ctx, xgen(2)));
  rho.set_image(xgen(2), Word::of(ctx, xgen(1)));
  rho.set_image(vgen(1), Word::of(ctx, vgen(2)));
  rho.set_image(vgen(2), Word::of(ctx, vgen(1)));
  REQUIRE(is_generator_permutation(rho));
  for (int trial = 0; trial < 100; ++trial) {
    Word w = normalize(random_raw(rng, ctx, 10), ctx);
    CHECK(apply(rho, w).letter_length() == w.letter_length());
  }
}
