// mg — groups, invariants and peripheral structures of marked Gauss
// diagrams, plus the virtual braid representation catalogue.
//
// Exit codes: 0 success, 1 domain failure, 2 usage error.

#include <mgd/laurent.hpp>
#include <mgd/realization.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mgd;

bool porcelain = false;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const std::string& key, const std::string& value) {
  if (porcelain)
    std::cout << key << "=" << value << "\n";
  else
    std::cout << key << ": " << value << "\n";
}

std::string ab_to_string(const Abelianization& ab) {
  std::string t = "[";
  for (std::size_t i = 0; i < ab.torsion.size(); ++i) {
    if (i) t += ",";
    t += std::to_string(ab.torsion[i]);
  }
  t += "]";
  return "free_rank=" + std::to_string(ab.free_rank) + " torsion=" + t;
}

enum class InKind { Gauss, Pres, Braid };

InKind kind_of(const std::string& path, const std::string& forced) {
  if (forced == "gauss") return InKind::Gauss;
  if (forced == "pres") return InKind::Pres;
  if (forced == "braid") return InKind::Braid;
  if (!forced.empty()) throw std::invalid_argument("unknown input type: " + forced);
  if (path.size() >= 6 && path.substr(path.size() - 6) == ".gauss") return InKind::Gauss;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".pres") return InKind::Pres;
  if (path.size() >= 6 && path.substr(path.size() - 6) == ".braid") return InKind::Braid;
  throw std::invalid_argument("cannot infer input type of " + path +
                              "; pass --type gauss|pres|braid");
}

// .braid files: a "n=<k>" header line, then braid-word lines
BraidWord parse_braid_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  std::string word;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.rfind("n=", 0) == 0) {
      n = std::stoi(line.substr(2));
    } else {
      word += " " + line;
    }
  }
  if (n == 0) throw std::invalid_argument("braid file is missing its n= header");
  return parse_braid(word, n);
}

Presentation load_presentation(const std::string& path, const std::string& type) {
  InKind k = kind_of(path, type);
  std::string text = slurp(path);
  if (k == InKind::Gauss) return presentation_of_diagram(parse_gauss_code(text));
  if (k == InKind::Pres) return parse_presentation(text);
  throw std::invalid_argument("expected a .gauss or .pres input");
}

FiniteGroup load_target(const std::string& spec) {
  if (spec.rfind("table:", 0) == 0) {
    std::istringstream in(slurp(spec.substr(6)));
    int n;
    if (!(in >> n)) throw std::invalid_argument("table file must start with the order");
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n)));
    for (auto& row : table)
      for (auto& v : row)
        if (!(in >> v)) throw std::invalid_argument("truncated multiplication table");
    return FiniteGroup::from_table(std::move(table));
  }
  return target_from_name(spec);
}

void print_presentation_report(const Presentation& p) {
  std::cout << print_presentation(p);
}

void print_matrix(const LaurentMatrix& m) {
  for (int i = 0; i < m.size(); ++i) {
    std::string row;
    for (int j = 0; j < m.size(); ++j) {
      if (j) row += " | ";
      row += to_string(m.at(i, j));
    }
    if (porcelain)
      std::cout << "row." << i + 1 << "=" << row << "\n";
    else
      std::cout << "[ " << row << " ]\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"marked Gauss diagram and virtual braid representation toolkit"};
  app.require_subcommand(1);
  app.add_flag("--porcelain", porcelain, "stable key=value output");

  std::string in_path, in2_path, type, word_text, rep_name, target_spec, move_text;
  std::string x0_text, l_text, mu_text, nu_text, out_path;
  int n = 2, r_param = 1, arc = 0, circle = 1, pos1 = 0, circle2 = 1, pos2 = 0;
  bool want_ab = false, want_simplify = false, want_det = false, want_theta = false;
  bool r_set = false;
  unsigned long long max_steps = 200'000'000ULL;

  auto* cparse = app.add_subcommand("parse", "validate and echo the canonical form");
  cparse->add_option("--in", in_path)->required();
  cparse->add_option("--type", type, "gauss|pres|braid");

  auto* cgroup = app.add_subcommand("group", "group of a diagram or braid input");
  cgroup->add_option("--in", in_path)->required();
  cgroup->add_option("--type", type);
  cgroup->add_option("--rep", rep_name, "representation for .braid input");
  cgroup->add_flag("--abelianization", want_ab);
  cgroup->add_flag("--simplify", want_simplify);

  auto* cab = app.add_subcommand("abelianization", "free rank and invariant factors");
  cab->add_option("--in", in_path)->required();
  cab->add_option("--type", type);

  auto* chom = app.add_subcommand("homcount", "count homomorphisms into a finite group");
  chom->add_option("--in", in_path)->required();
  chom->add_option("--type", type);
  chom->add_option("--target", target_spec, "s3|s4|s5|table:<file>")->required();
  chom->add_option("--max-steps", max_steps);

  auto* cinv = app.add_subcommand("invariants", "node invariants of a diagram");
  cinv->add_option("--in", in_path)->required();

  auto* cmove = app.add_subcommand("move", "apply a marked Reidemeister move");
  cmove->add_option("--in", in_path)->required();
  cmove->add_option("--apply", move_text, "move spec, e.g. 'r1add 1 0 + th'")->required();

  auto* crep = app.add_subcommand("rep", "representation catalogue");
  crep->require_subcommand(1);
  auto* cverify = crep->add_subcommand("verify", "check all defining relations");
  cverify->add_option("--rep", rep_name)->required();
  cverify->add_option("--n", n)->required();
  cverify->add_option("--r", r_param)->each([&](const std::string&) { r_set = true; });
  auto* cimage = crep->add_subcommand("image", "images of the generators under a braid");
  cimage->add_option("--rep", rep_name)->required();
  cimage->add_option("--n", n)->required();
  cimage->add_option("--word", word_text);
  cimage->add_option("--r", r_param)->each([&](const std::string&) { r_set = true; });
  auto* cequiv = crep->add_subcommand("equiv", "conjugate a base entry onto its partner");
  cequiv->add_option("--base", rep_name, "phiM, phiA, phiBD, w1, w2 or w3")->required();
  cequiv->add_option("--n", n)->required();
  cequiv->add_option("--r", r_param)->each([&](const std::string&) { r_set = true; });
  auto* clist = crep->add_subcommand("list", "catalogue names");
  (void)clist;

  auto* cburau = app.add_subcommand("burau", "linear representations");
  auto* ceval = cburau->add_subcommand("eval", "evaluate a braid word");
  ceval->add_option("--rep", rep_name, "burau|burau_local|psi|bf")->required();
  ceval->add_option("--n", n)->required();
  ceval->add_option("--word", word_text)->required();
  ceval->add_flag("--det", want_det);
  ceval->add_flag("--theta", want_theta, "conjugate the result by theta");

  auto* cbig = app.add_subcommand("bigelow", "Burau kernel check");
  (void)cbig;

  auto* creal = app.add_subcommand("realize", "realize a presentation as a diagram");
  creal->add_option("--in", in_path);
  creal->add_option("--type", type);
  creal->add_option("--out", out_path);
  creal->add_option("--n", n, "homomorph mode: number of mu generators");
  std::vector<std::string> w_texts;
  creal->add_option("--w", w_texts, "homomorph mode: conjugator words (repeat n times)");
  creal->add_option("--target", target_spec, "homomorph mode: s3|s4|s5|table:<file>");
  creal->add_option("--mu", mu_text, "image of mu as a permutation, e.g. '(1 2)'");
  creal->add_option("--nu", nu_text, "image of nu as a permutation");

  auto* cperi = app.add_subcommand("peripheral", "meridian/longitude machinery");
  cperi->add_option("--in", in_path);
  cperi->add_option("--arc", arc, "meridian arc (0-based)");
  cperi->add_option("--circle", circle, "circle (1-based)");
  std::string peri_pres;
  cperi->add_option("--realize", peri_pres, "presentation file for the peripheral realization");
  cperi->add_option("--x0-conj", x0_text, "conjugator word defining x0 = x1^(w^-1)");
  cperi->add_option("--l", l_text, "longitude word");

  auto* csum = app.add_subcommand("connectsum", "splice two diagrams");
  csum->add_option("--in1", in_path)->required();
  csum->add_option("--in2", in2_path)->required();
  csum->add_option("--circle1", circle);
  csum->add_option("--pos1", pos1);
  csum->add_option("--circle2", circle2);
  csum->add_option("--pos2", pos2);

  auto* crev = app.add_subcommand("reverse", "reverse orientation and all signs");
  crev->add_option("--in", in_path)->required();

  // allow global flags like --porcelain after a subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough(true);
    for (auto* sub : a->get_subcommands({})) enable_fallthrough(sub);
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  std::optional<int> r_opt = r_set ? std::optional<int>(r_param) : std::nullopt;

  if (cparse->parsed()) {
    InKind k = kind_of(in_path, type);
    std::string text = slurp(in_path);
    if (k == InKind::Gauss)
      std::cout << serialize(parse_gauss_code(text));
    else if (k == InKind::Pres)
      std::cout << print_presentation(parse_presentation(text));
    else {
      BraidWord b = parse_braid_file(text);
      std::cout << "n=" << b.strand_count << "\n" << to_string(b) << "\n";
    }
    put("ok", "true");
    return 0;
  }

  if (cgroup->parsed()) {
    Presentation p;
    if (kind_of(in_path, type) == InKind::Braid) {
      BraidWord b = parse_braid_file(slurp(in_path));
      if (rep_name.empty()) rep_name = "phiS";
      p = group_of_braid(get_representation(rep_name, b.strand_count, r_opt), b);
    } else {
      p = load_presentation(in_path, type);
    }
    if (want_simplify) p = simplify(p);
    print_presentation_report(p);
    if (want_ab) put("abelianization", ab_to_string(abelianization(p)));
    return 0;
  }

  if (cab->parsed()) {
    put("abelianization", ab_to_string(abelianization(load_presentation(in_path, type))));
    return 0;
  }

  if (chom->parsed()) {
    FiniteGroup G = load_target(target_spec);
    HomOptions opt;
    opt.max_steps = max_steps;
    put("target", G.name());
    put("homs", std::to_string(hom_count(load_presentation(in_path, type), G, opt)));
    return 0;
  }

  if (cinv->parsed()) {
    NodeInvariants inv = node_invariants(parse_gauss_code(slurp(in_path)));
    put("nodes", std::to_string(inv.count));
    put("sign_sum", std::to_string(inv.sign_sum));
    put("sign_product", std::to_string(inv.sign_product));
    return 0;
  }

  if (cmove->parsed()) {
    MarkedGaussDiagram d = parse_gauss_code(slurp(in_path));
    std::cout << serialize(apply_move(d, parse_move_spec(move_text)));
    return 0;
  }

  if (cverify->parsed()) {
    Representation rep = get_representation(rep_name, n, r_opt);
    VerifyReport rpt = verify_representation(rep, n);
    put("rep", rep.name());
    put("relations", std::to_string(rpt.relations_checked));
    put("ok", rpt.ok ? "true" : "false");
    for (const auto& f : rpt.failures)
      put("failure",
          f.relation + " at " + Word::gen_name(f.gen) + ": " + to_string(f.lhs) +
              " != " + to_string(f.rhs));
    return rpt.ok ? 0 : 1;
  }

  if (cimage->parsed()) {
    Representation rep = get_representation(rep_name, n, r_opt);
    Endomap e = braid_image(rep, parse_braid(word_text, n));
    const WordContext& ctx = rep.context();
    for (int i = 1; i <= ctx.x_count; ++i)
      put(Word::gen_name(xgen(i)), to_string(e.image(xgen(i))));
    for (int i = 1; i <= ctx.v_count; ++i)
      put(Word::gen_name(vgen(i)), to_string(e.image(vgen(i))));
    return 0;
  }

  if (cequiv->parsed()) {
    Representation base = get_representation(rep_name, n, r_opt);
    auto [phi, phi_inv] = catalogue_conjugator(base.name(), n);
    Representation conj = conjugate_representation(base, phi, phi_inv);
    Representation target = get_representation(tilde_partner(base.name()), n, r_opt);
    bool ok = images_equal(conj, target);
    put("base", base.name());
    put("partner", target.name());
    put("ok", ok ? "true" : "false");
    return ok ? 0 : 1;
  }

  if (clist->parsed()) {
    for (const auto& name : catalogue_names()) std::cout << name << "\n";
    return 0;
  }

  if (ceval->parsed()) {
    LinearRep rep = linear_rep_from_name(rep_name);
    BraidWord b = parse_braid(word_text, n);
    LaurentMatrix m = braid_matrix(rep, b);
    if (want_theta) m = theta_conjugate(m, n);
    print_matrix(m);
    if (want_det) put("det", to_string(det(m)));
    put("identity", m.is_identity() ? "true" : "false");
    return 0;
  }

  if (cbig->parsed()) {
    KernelReport rpt = kernel_check();
    put("convention", rpt.convention);
    put("b1_identity", rpt.b1_identity ? "true" : "false");
    put("b2_identity", rpt.b2_identity ? "true" : "false");
    put("ok", rpt.ok ? "true" : "false");
    return rpt.ok ? 0 : 1;
  }

  if (creal->parsed()) {
    MarkedGaussDiagram d;
    if (!w_texts.empty()) {
      if (static_cast<int>(w_texts.size()) != n)
        throw std::invalid_argument("homomorph mode needs exactly n --w words");
      WordContext ctx{n, 1};
      std::vector<Word> ws;
      for (const auto& t : w_texts) ws.push_back(parse_word(t, ctx));
      HomomorphRealization hr;
      if (!target_spec.empty()) {
        FiniteGroup G = load_target(target_spec);
        int mu = G.parse_permutation(mu_text);
        int nu = G.parse_permutation(nu_text);
        hr = realize_homomorph(n, ws, &G, mu, nu);
        put("verified", hr.verified ? "true" : "false");
        put("longitude_image", std::to_string(hr.longitude_image));
      } else {
        hr = realize_homomorph(n, ws);
      }
      d = hr.diagram;
      for (int i = 0; i < hr.chain.size(); ++i)
        put("assign." + hr.chain.x_names[static_cast<std::size_t>(i)],
            to_string(hr.chain.definitions[static_cast<std::size_t>(i)]));
    } else {
      if (in_path.empty())
        throw std::invalid_argument("realize needs --in or homomorph-mode --w words");
      Presentation p = load_presentation(in_path, type);
      d = realize(to_realizable(to_cyclic(p)));
    }
    std::string code = serialize(d);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << code;
    }
    std::cout << code;
    return 0;
  }

  if (cperi->parsed()) {
    if (!peri_pres.empty()) {
      Presentation p = parse_presentation(slurp(peri_pres));
      WordContext ctx = p.context();
      PeripheralRealization pr = realize_with_peripheral(
          p, parse_word(x0_text, ctx), parse_word(l_text, ctx));
      std::cout << serialize(pr.diagram);
      put("meridian_arc", std::to_string(pr.meridian_arc));
      put("longitude", to_string(pr.pair.longitude));
      put("alpha", std::to_string(pr.pair.alpha));
      put("longitude_word_exact", pr.longitude_word_exact ? "true" : "false");
      put("warning", pr.warning);
      return 0;
    }
    if (in_path.empty()) throw std::invalid_argument("peripheral needs --in or --realize");
    MarkedGaussDiagram d = parse_gauss_code(slurp(in_path));
    PeripheralPair pair = d.circle_count() == 1 ? meridian_longitude(d, arc)
                                                : meridian_longitude(d, circle - 1, arc);
    put("meridian", to_string(pair.meridian));
    put("longitude", to_string(pair.longitude));
    put("alpha", std::to_string(pair.alpha));
    if (d.circle_count() == 1) {
      PeripheralCheck chk = check_peripheral(presentation_of_diagram(d), pair);
      put("chain_ok", chk.chain_ok ? "true" : "false");
      put("longitude_ok", chk.longitude_ok ? "true" : "false");
      put("finite_ok", chk.finite_ok ? "true" : "false");
      return chk.ok() ? 0 : 1;
    }
    return 0;
  }

  if (csum->parsed()) {
    MarkedGaussDiagram d1 = parse_gauss_code(slurp(in_path));
    MarkedGaussDiagram d2 = parse_gauss_code(slurp(in2_path));
    std::cout << serialize(connected_sum(d1, circle - 1, pos1, d2, circle2 - 1, pos2));
    return 0;
  }

  if (crev->parsed()) {
    std::cout << serialize(reverse(parse_gauss_code(slurp(in_path))));
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
