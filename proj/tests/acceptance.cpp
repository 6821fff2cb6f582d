// Acceptance suite: runs the ten gate criteria and prints one line each.
// Exit code 0 iff every criterion passes.

#include <mgd/laurent.hpp>
#include <mgd/realization.hpp>

#include "support.hpp"

#include <functional>
#include <iostream>

using namespace mgd;

namespace {

std::mt19937 rng(20240815);

bool representation_suite(std::string& detail) {
  int checked = 0;
  for (const auto& name : catalogue_names())
    for (int n = 2; n <= 5; ++n) {
      VerifyReport rpt = verify_representation(get_representation(name, n), n);
      if (!rpt.ok) {
        detail = name + " fails at n=" + std::to_string(n) + " (" +
                 rpt.failures[0].relation + ")";
        return false;
      }
      checked += rpt.relations_checked;
    }
  detail = "14 entries, n=2..5, " + std::to_string(checked) + " relation checks";
  return true;
}

bool equivalence_suite(std::string& detail) {
  std::vector<std::string> bases{"phiM", "phiA", "phiBD", "w1[-1]", "w1[0]",
                                 "w1[1]", "w1[2]", "w2", "w3"};
  int pairs = 0;
  for (const auto& base : bases)
    for (int n = 2; n <= 4; ++n) {
      Representation b = get_representation(base, n);
      auto [phi, phi_inv] = catalogue_conjugator(base, n);
      Representation conj = conjugate_representation(b, phi, phi_inv);
      Representation target = get_representation(tilde_partner(base), n);
      if (!images_equal(conj, target)) {
        detail = base + " -> " + target.name() + " mismatch at n=" + std::to_string(n);
        return false;
      }
      ++pairs;
    }
  detail = std::to_string(pairs) + " base/partner pairs word-exact";
  return true;
}

bool symmetry_flags(std::string& detail) {
  std::vector<std::string> expect_true{"phiS",   "phiSW",  "phiA~", "phiBD~",
                                       "w1~[-1]", "w1~[0]", "w1~[1]", "w1~[2]",
                                       "w2~",    "w3~",    "phi0"};
  std::vector<std::string> expect_false{"phiM",   "phiA",  "phiBD", "w1[-1]",
                                        "w1[0]",  "w1[1]", "w1[2]", "w2",
                                        "w3"};
  for (const auto& name : expect_true)
    if (!is_virtually_symmetric(get_representation(name, 4))) {
      detail = name + " should be virtually symmetric";
      return false;
    }
  for (const auto& name : expect_false)
    if (is_virtually_symmetric(get_representation(name, 4))) {
      detail = name + " should not be virtually symmetric";
      return false;
    }
  detail = std::to_string(expect_true.size() + expect_false.size()) + " flags match";
  return true;
}

bool burau_kernel(std::string& detail) {
  KernelReport rpt = kernel_check();
  if (!rpt.b1_identity || !rpt.b2_identity) {
    detail = "Bigelow image not the identity (b1=" +
             std::string(rpt.b1_identity ? "ok" : "FAIL") + ", b2=" +
             std::string(rpt.b2_identity ? "ok" : "FAIL") + ")";
    return false;
  }
  if (braid_matrix(LinearRep::Burau, parse_braid("s1", 5)).is_identity()) {
    detail = "sigma_1 image unexpectedly trivial";
    return false;
  }
  detail = "b1 (B_5) and b2 (B_6) map to the identity over Z[t^+-1]; sigma_1 does not";
  return true;
}

bool homogenization(std::string& detail) {
  for (int n = 2; n <= 5; ++n) {
    VarList vars = linear_rep_vars(LinearRep::Psi, n);
    auto mono = [&](const std::string& v, int e) {
      return LaurentPoly::monomial(vars, v, e);
    };
    LaurentPoly one = LaurentPoly::one(vars);
    for (int i = 1; i <= n - 1; ++i) {
      LaurentMatrix s = theta_conjugate(matrix_of_letter(LinearRep::Psi, sigma(i), n), n);
      bool block_ok = s.at(i - 1, i - 1) == one - mono("t", 1) &&
                      s.at(i - 1, i) == mono("t", 1) * mono("l", -1) &&
                      s.at(i, i - 1) == mono("l", 1) && s.at(i, i).is_zero();
      LaurentMatrix r = theta_conjugate(matrix_of_letter(LinearRep::Psi, rho(i), n), n);
      bool rho_ok = r.at(i - 1, i - 1).is_zero() && r.at(i - 1, i) == one &&
                    r.at(i, i - 1) == one && r.at(i, i).is_zero();
      if (!block_ok || !rho_ok) {
        detail = "theta block differs at n=" + std::to_string(n) +
                 " i=" + std::to_string(i);
        return false;
      }
      for (BraidLetter l : {sigma(i), sigma(i, -1), rho(i)}) {
        LaurentMatrix p = matrix_of_letter(LinearRep::Psi, l, n);
        for (int k = n - 1; k >= 1; --k) p = p.substitute_one("t" + std::to_string(k));
        if (p != matrix_of_letter(LinearRep::BF, l, n)) {
          detail = "psi|t_i=1 differs from Bartholomew-Fenn at n=" + std::to_string(n);
          return false;
        }
      }
    }
  }
  detail = "theta blocks position-independent and psi|t_i=1 equals bf, n=2..5";
  return true;
}

bool diagram_groups(std::string& detail) {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  Presentation d1 = presentation_of_diagram(parse_gauss_code("circle 1: N-\n"));
  Abelianization ab = abelianization(d1);
  long long h = hom_count(d1, s3);
  Presentation t = presentation_of_diagram(parse_gauss_code("circle 1:\n"));
  long long ht = hom_count(t, s3);
  if (!(ab == Abelianization{2, {}})) {
    detail = "Pi(N-) abelianization is not Z^2";
    return false;
  }
  if (h != 18 || ht != 36) {
    detail = "hom counts " + std::to_string(h) + "/" + std::to_string(ht) +
             " differ from 18/36";
    return false;
  }
  detail = "Pi(N-): (2,[]) and 18 homs to S3; Pi(T): 36 homs to S3";
  return true;
}

bool move_invariance(std::string& detail) {
  FiniteGroup s3 = FiniteGroup::symmetric(3), s4 = FiniteGroup::symmetric(4);
  std::uniform_int_distribution<int> coin(0, 1);
  auto triangle_diagram = [&] {  // R3-admitting chord triangle, randomized
    std::string s = coin(rng) ? "+" : "-";
    std::string node = coin(rng) ? " N" + std::string(coin(rng) ? "+" : "-") : "";
    bool flip = coin(rng) == 1;  // tails-first or heads-first variant
    std::string code =
        flip ? "circle 1: H1" + s + " H2" + s + node + " T1" + s + " H3" + s +
                   " T2" + s + " T3" + s + "\n"
             : "circle 1: T1" + s + " T2" + s + node + " H1" + s + " T3" + s +
                   " H2" + s + " H3" + s + "\n";
    return parse_gauss_code(code);
  };
  int diagrams = 0, instances = 0, r3_instances = 0;
  while (diagrams < 200) {
    MarkedGaussDiagram d = diagrams % 10 == 9 ? triangle_diagram()
                                              : testing::random_diagram(rng, 2, 2, 2);
    ++diagrams;
    Presentation p = presentation_of_diagram(d);
    NodeInvariants inv = node_invariants(d);
    Abelianization ab = abelianization(p);
    long long h3 = hom_count(p, s3), h4 = hom_count(p, s4);
    for (const auto& mv : find_moves(d, true, 16)) {
      MarkedGaussDiagram d2;
      try {
        d2 = apply_move(d, mv);
      } catch (const std::invalid_argument&) {
        continue;  // insertion samples may be inapplicable
      }
      ++instances;
      if (mv.kind == MoveSpec::Kind::R3) ++r3_instances;
      Presentation p2 = presentation_of_diagram(d2);
      if (!(node_invariants(d2) == inv) || !(abelianization(p2) == ab) ||
          hom_count(p2, s3) != h3 || hom_count(p2, s4) != h4) {
        detail = "invariant changed on " + serialize(d);
        return false;
      }
    }
  }
  detail = std::to_string(diagrams) + " diagrams, " + std::to_string(instances) +
           " move instances (" + std::to_string(r3_instances) +
           " R3), all invariants unchanged";
  return instances > 1000 && r3_instances > 0;
}

bool gm_gs_evidence(std::string& detail) {
  FiniteGroup s3 = FiniteGroup::symmetric(3), s4 = FiniteGroup::symmetric(4);
  std::uniform_int_distribution<int> n_dist(2, 3), len(0, 4), kind(0, 2);
  for (int trial = 0; trial < 50; ++trial) {
    int n = n_dist(rng);
    std::uniform_int_distribution<int> idx(1, n - 1);
    BraidWord b{n, {}};
    for (int k = len(rng); k > 0; --k) {
      int t = kind(rng);
      b.push(t == 0 ? sigma(idx(rng)) : t == 1 ? sigma(idx(rng), -1) : rho(idx(rng)));
    }
    Presentation gm = simplify(group_of_braid(get_representation("phiM", n), b));
    Presentation gs = simplify(group_of_braid(get_representation("phiS", n), b));
    if (!(abelianization(gm) == abelianization(gs)) ||
        hom_count(gm, s3) != hom_count(gs, s3) ||
        hom_count(gm, s4) != hom_count(gs, s4)) {
      detail = "G_M vs G_S invariants differ on " + to_string(b) +
               " (n=" + std::to_string(n) + ")";
      return false;
    }
  }
  detail = "50 random braids: equal abelianizations and S3/S4 hom counts";
  return true;
}

bool realization_pipeline(std::string& detail) {
  FiniteGroup s3 = FiniteGroup::symmetric(3), s4 = FiniteGroup::symmetric(4);
  int done = 0, attempts = 0;
  while (done < 100 && attempts < 2000) {
    ++attempts;
    Presentation p = testing::random_c1_presentation(rng, 4, 2);
    CmReport rep = classify_cm(p);
    if (!rep.is_cm || !rep.is_m_irreducible ||
        (rep.deficiency != 1 && rep.deficiency != 2))
      continue;
    RealizablePresentation rp = to_realizable(to_cyclic(p));
    MarkedGaussDiagram d = realize(rp);
    Presentation back = presentation_of_diagram(d);
    Presentation expect = rp.pres();
    if (back.relators != expect.relators ||
        back.x_names.size() != expect.x_names.size()) {
      detail = "roundtrip mismatch";
      return false;
    }
    if (!(abelianization(back) == abelianization(p)) ||
        hom_count(back, s3) != hom_count(p, s3) ||
        hom_count(back, s4) != hom_count(p, s4)) {
      detail = "pipeline changed the invariants of " + print_presentation(p);
      return false;
    }
    ++done;
  }
  if (done < 100) {
    detail = "only " + std::to_string(done) + " pipelines completed";
    return false;
  }
  detail = "100 presentations realized; roundtrip exact; invariants preserved";
  return true;
}

// a realizable homomorph input with nontrivial longitude image: mu in the
// centralizer of nu, all conjugators powers of nu
HomomorphRealization random_homomorph(const FiniteGroup& G, int mu, int nu, int n,
                                      std::vector<int>& signs) {
  WordContext ctx{n, 1};
  std::vector<Word> ws;
  std::uniform_int_distribution<int> sgn(0, 1);
  signs.clear();
  for (int i = 0; i < n; ++i) {
    int s = sgn(rng) ? 1 : -1;
    signs.push_back(s);
    ws.push_back(Word::of(ctx, vgen(1), s));
  }
  return realize_homomorph(n, ws, &G, mu, nu);
}

bool peripheral_suite(std::string& detail) {
  // every realized diagram passes check_peripheral
  int realized = 0, attempts = 0;
  while (realized < 40 && attempts < 1000) {
    ++attempts;
    Presentation p = testing::random_c1_presentation(rng, 3, 2);
    CmReport rep = classify_cm(p);
    if (!rep.is_cm || !rep.is_m_irreducible ||
        (rep.deficiency != 1 && rep.deficiency != 2))
      continue;
    MarkedGaussDiagram d = realize(to_realizable(to_cyclic(p)));
    PeripheralCheck chk = check_peripheral(presentation_of_diagram(d),
                                           meridian_longitude(d, 0));
    if (!chk.chain_ok || !chk.longitude_ok || !chk.finite_ok) {
      detail = "check_peripheral failed on a realized diagram";
      return false;
    }
    ++realized;
  }
  if (realized < 40) {
    detail = "too few realized diagrams";
    return false;
  }

  // connected-sum and reversal longitude identities in finite quotients
  FiniteGroup s3 = FiniteGroup::symmetric(3), s4 = FiniteGroup::symmetric(4);
  std::uniform_int_distribution<int> pick_group(0, 1), n_dist(1, 4);
  int pairs = 0;
  while (pairs < 20) {
    const FiniteGroup& G = pick_group(rng) ? s4 : s3;
    std::uniform_int_distribution<int> elem(0, G.order() - 1);
    int nu = elem(rng);
    // mu from the centralizer of nu so any closing power works
    std::vector<int> cent;
    for (int g = 0; g < G.order(); ++g)
      if (G.mul(g, nu) == G.mul(nu, g)) cent.push_back(g);
    std::uniform_int_distribution<int> cpick(0, static_cast<int>(cent.size()) - 1);
    int mu = cent[static_cast<std::size_t>(cpick(rng))];

    std::vector<int> s1v, s2v;
    HomomorphRealization h1 = random_homomorph(G, mu, nu, n_dist(rng), s1v);
    HomomorphRealization h2 = random_homomorph(G, mu, nu, n_dist(rng), s2v);
    ++pairs;

    // product: connected sum at the meridian arcs
    MarkedGaussDiagram sum = connected_sum(h1.diagram, 0, 0, h2.diagram, 0, 0);
    Presentation pi = presentation_of_diagram(sum);
    std::vector<int> ximg = h1.x_images;
    ximg.insert(ximg.end(), h2.x_images.begin(), h2.x_images.end());
    std::vector<int> vimg{nu};
    for (const auto& r : pi.relators)
      if (detail::eval_word_in_group(r, G, ximg, vimg) != 0) {
        detail = "connected-sum map is not a homomorphism";
        return false;
      }
    int expect = G.mul(h1.longitude_image, h2.longitude_image);
    if (detail::eval_word_in_group(meridian_longitude(sum, 0).longitude, G, ximg,
                                   vimg) != expect) {
      detail = "connected sum longitude is not the product of images";
      return false;
    }

    // inverse: orientation reversal with the transported assignment
    MarkedGaussDiagram rev = reverse(h1.diagram);
    int k = static_cast<int>(h1.diagram.circles[0].size());
    std::vector<int> rimg(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      rimg[static_cast<std::size_t>(i)] =
          h1.x_images[static_cast<std::size_t>((k - i) % k)];
    Presentation rpi = presentation_of_diagram(rev);
    for (const auto& r : rpi.relators)
      if (detail::eval_word_in_group(r, G, rimg, vimg) != 0) {
        detail = "reversal map is not a homomorphism";
        return false;
      }
    if (detail::eval_word_in_group(meridian_longitude(rev, 0).longitude, G, rimg,
                                   vimg) != G.inv(h1.longitude_image)) {
      detail = "reversal longitude is not the inverse image";
      return false;
    }
  }
  detail = "40 realized diagrams pass check_peripheral; 20 pairs verify the "
           "product/inverse longitude identities";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
  };
  std::vector<Criterion> criteria{
      {1, "representation-suite", representation_suite},
      {2, "equivalence-suite", equivalence_suite},
      {3, "virtual-symmetry-flags", symmetry_flags},
      {4, "burau-kernel", burau_kernel},
      {5, "homogenization", homogenization},
      {6, "diagram-groups", diagram_groups},
      {7, "move-invariance", move_invariance},
      {8, "gm-gs-evidence", gm_gs_evidence},
      {9, "realization-pipeline", realization_pipeline},
      {10, "peripheral-suite", peripheral_suite},
  };
  int failures = 0;
  for (auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << ": "
              << detail << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
