#pragma once

// Shared generators for the randomized suites.

#include <mgd/diagrams.hpp>
#include <mgd/presentations.hpp>

#include <random>

namespace mgd::testing {

inline MarkedGaussDiagram random_diagram(std::mt19937& rng, int max_circles = 2,
                                         int max_arrows = 2, int max_nodes = 3) {
  std::uniform_int_distribution<int> mc(1, max_circles);
  int m = mc(rng);
  MarkedGaussDiagram d;
  d.circles.assign(static_cast<std::size_t>(m), {});
  std::uniform_int_distribution<int> na(0, max_arrows), nn(0, max_nodes), coin(0, 1),
      cir(0, m - 1);
  int arrows = na(rng), nodes = nn(rng);
  for (int a = 1; a <= arrows; ++a) {
    int tc = cir(rng), hc = cir(rng);
    auto& t = d.circles[static_cast<std::size_t>(tc)];
    std::uniform_int_distribution<int> p1(0, static_cast<int>(t.size()));
    t.insert(t.begin() + p1(rng), Event::tail(a));
    auto& h = d.circles[static_cast<std::size_t>(hc)];
    std::uniform_int_distribution<int> p2(0, static_cast<int>(h.size()));
    h.insert(h.begin() + p2(rng), Event::head(a));
    d.arrows[a] = ArrowInfo{coin(rng) ? 1 : -1, tc, hc};
  }
  for (int k = 0; k < nodes; ++k) {
    int c = cir(rng);
    auto& s = d.circles[static_cast<std::size_t>(c)];
    std::uniform_int_distribution<int> p(0, static_cast<int>(s.size()));
    s.insert(s.begin() + p(rng), Event::node(coin(rng) ? 1 : -1));
  }
  d.validate();
  return d;
}

// A random 1-irreducible C_1-presentation of deficiency 1 or 2: a connected
// conjugation graph over n x-generators (a tree for deficiency 2, one extra
// edge for deficiency 1) with small random conjugator words.
inline Presentation random_c1_presentation(std::mt19937& rng, int max_x = 4,
                                           int max_conj_len = 2) {
  std::uniform_int_distribution<int> nx_dist(1, max_x), coin(0, 1);
  int n = nx_dist(rng);
  Presentation p = Presentation::with_counts(n, 1);
  WordContext ctx = p.context();
  std::uniform_int_distribution<int> len(0, max_conj_len), gen_kind(0, 2),
      xidx(1, n);
  auto random_conj = [&] {
    Word w(ctx);
    int L = len(rng);
    for (int i = 0; i < L; ++i) {
      int k = gen_kind(rng);
      long long e = coin(rng) ? 1 : -1;
      if (k == 0)
        w.push(vgen(1), e);
      else
        w.push(xgen(xidx(rng)), e);
    }
    return w;
  };
  auto add_edge = [&](int i, int j) {
    Word rel(ctx);
    rel.push(xgen(j), -1);
    rel.push(conjugate(Word::of(ctx, xgen(i)), random_conj()));
    if (rel.empty()) {  // degenerate cancellation; re-shape as x_j^-1 x_i^v
      rel.push(xgen(j), -1);
      rel.push(conjugate(Word::of(ctx, xgen(i)), Word::of(ctx, vgen(1))));
    }
    p.relators.push_back(std::move(rel));
  };
  // random spanning tree
  for (int v = 2; v <= n; ++v) {
    std::uniform_int_distribution<int> attach(1, v - 1);
    int u = attach(rng);
    if (coin(rng))
      add_edge(u, v);
    else
      add_edge(v, u);
  }
  bool deficiency_one = coin(rng) == 1;
  if (deficiency_one) add_edge(xidx(rng), xidx(rng));
  return p;
}

}  // namespace mgd::testing
