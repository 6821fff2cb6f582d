#pragma once

// Peripheral data of marked Gauss diagrams and the realization pipeline that
// turns a 1-irreducible C_1-presentation of deficiency 1 or 2 into a
// diagram: reroute the conjugation graph into a single cycle, shrink every
// conjugator to a node letter v^e or a paired head letter v^-e x_k^e, then
// read the chain off as a circle.
//
// The pipeline tracks, for every chain generator it introduces, a defining
// word over the input presentation's context.  That map is what
// realize_homomorph uses to push generators into a target group and what the
// peripheral machinery uses to pull the realized longitude back for an exact
// comparison.

#include <mgd/presentations.hpp>

namespace mgd {

struct PeripheralPair {
  Word meridian;   // a single x-generator of the diagram presentation
  Word longitude;  // traversal word times meridian^-alpha
  int alpha = 0;
};

// Meridian and longitude of `circle` read from the arc with local index
// `arc_index` (arcs are numbered from the base point as in
// presentation_of_diagram).  Words live in diagram_context(d).
inline PeripheralPair meridian_longitude(const MarkedGaussDiagram& d, int circle,
                                         int arc_index) {
  d.validate();
  if (circle < 0 || circle >= d.circle_count())
    throw std::invalid_argument("meridian_longitude: circle out of range");
  int len = static_cast<int>(d.circles[static_cast<std::size_t>(circle)].size());
  int arcs = d.arc_count(circle);
  if (arc_index < 0 || arc_index >= arcs)
    throw std::invalid_argument("meridian_longitude: arc index out of range");
  WordContext ctx = diagram_context(d);
  auto offsets = arc_offsets(d);
  PeripheralPair out;
  out.meridian = Word::of(ctx, xgen(offsets[static_cast<std::size_t>(circle)] + arc_index));
  Word l(ctx);
  for (int k = 0; k < len; ++k)
    l.push(event_conjugator(d, circle, (arc_index + k) % len, ctx, offsets));
  int alpha = 0;
  for (const auto& [id, info] : d.arrows)
    if (info.head_circle == circle) alpha += info.sign;
  out.alpha = alpha;
  l.push(out.meridian.pow(-alpha));
  out.longitude = std::move(l);
  return out;
}

// The 1-circle form the peripheral theorems are stated for.
inline PeripheralPair meridian_longitude(const MarkedGaussDiagram& d, int arc_index) {
  if (d.circle_count() != 1)
    throw std::invalid_argument(
        "meridian_longitude: peripheral pairs are taken on 1-circle diagrams; "
        "pass a circle index explicitly for the traversal of a component");
  return meridian_longitude(d, 0, arc_index);
}

struct PeripheralCheck {
  bool chain_ok = false;      // relators form a cycle through every x-generator
  bool longitude_ok = false;  // pair.longitude == w_1...w_n . m^-alpha
  int alpha = 0;
  bool finite_ok = false;     // meridian and longitude images commute in S3,S4,S5
  bool ok() const { return chain_ok && longitude_ok && finite_ok; }
};

inline PeripheralCheck check_peripheral(const Presentation& p,
                                        const PeripheralPair& pair) {
  PeripheralCheck rpt;
  WordContext ctx = p.context();
  if (pair.meridian.size() != 1 || pair.meridian.syllables()[0].gen.kind != GenKind::X ||
      pair.meridian.syllables()[0].exp != 1)
    throw std::invalid_argument("peripheral meridian must be a single x-generator");
  int m0 = pair.meridian.syllables()[0].gen.index;

  // (a) cyclic chain through all x-generators starting at the meridian
  int n = ctx.x_count;
  std::vector<int> succ(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Word> link(static_cast<std::size_t>(n) + 1, Word(ctx));
  bool shapes_ok = true;
  for (const auto& r : p.relators) {
    auto cd = detail::conjugation_data(r, ctx);
    if (!cd || succ[static_cast<std::size_t>(cd->i)] != 0) {
      shapes_ok = false;
      break;
    }
    succ[static_cast<std::size_t>(cd->i)] = cd->j;
    link[static_cast<std::size_t>(cd->i)] = cd->w;
  }
  if (shapes_ok && static_cast<int>(p.relators.size()) == n) {
    Word composite(ctx);
    int cur = m0;
    int steps = 0;
    for (; steps < n; ++steps) {
      if (succ[static_cast<std::size_t>(cur)] == 0) break;
      composite.push(link[static_cast<std::size_t>(cur)]);
      cur = succ[static_cast<std::size_t>(cur)];
    }
    if (steps == n && cur == m0) {
      rpt.chain_ok = true;  // x_m0^{w_1...w_n} = x_m0 follows by applying the chain
      // longitude must differ from the composite by a meridian power
      Word residue = composite.inverse() * pair.longitude;
      if (residue.empty()) {
        rpt.longitude_ok = true;
        rpt.alpha = 0;
      } else if (residue.size() == 1 && residue.syllables()[0].gen == xgen(m0)) {
        rpt.longitude_ok = true;
        rpt.alpha = static_cast<int>(-residue.syllables()[0].exp);
      }
    }
  }

  // (b) necessary condition in small symmetric quotients
  rpt.finite_ok = true;
  for (int k : {3, 4, 5}) {
    FiniteGroup G = FiniteGroup::symmetric(k);
    bool commutes = true;
    hom_foreach(p, G, [&](const HomAssignment& a) {
      int mi = detail::eval_word_in_group(pair.meridian, G, a.x_images, a.v_images);
      int li = detail::eval_word_in_group(pair.longitude, G, a.x_images, a.v_images);
      if (G.mul(mi, li) != G.mul(li, mi)) commutes = false;
    });
    if (!commutes) {
      rpt.finite_ok = false;
      break;
    }
  }
  return rpt;
}

// -------------------------------------------------------------------------
// Cyclic chains.

struct CyclicPresentation {
  Presentation pres;              // relators x_{j+1}^-1 x_j^{w_j}, j = 1..n cyclic
  std::vector<Word> conjugators;  // w_j over pres.context()
  std::vector<int> source_index;  // chain position (1-based) -> x index in the input
};

namespace detail {

inline Word remap_x(const Word& w, const std::vector<int>& x_map, WordContext to,
                    int v_shift = 0) {
  Word out(to);
  for (const auto& s : w.syllables()) {
    if (s.gen.kind == GenKind::X)
      out.push(xgen(x_map[static_cast<std::size_t>(s.gen.index)]), s.exp);
    else
      out.push(vgen(s.gen.index + v_shift), s.exp);
  }
  return out;
}

struct ChainEdge {
  int from = 0, to = 0;  // x_to = x_from^w
  Word w;
};

// Orders a connected multigraph with #edges == #vertices into a directed
// cycle through every vertex, using the edge rerouting operation
// (remove u->b, add z->b with word w2^-1 w1 after inserting u->z).
inline std::vector<std::pair<int, Word>> chain_from_edges(std::vector<ChainEdge> edges,
                                                          int n, WordContext ctx) {
  if (static_cast<int>(edges.size()) != n)
    throw std::logic_error("chain_from_edges: edge count mismatch");
  // peel leaves to isolate the unique cycle
  std::vector<int> degree(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : edges) {
    ++degree[static_cast<std::size_t>(e.from)];
    ++degree[static_cast<std::size_t>(e.to)];
  }
  std::vector<bool> stripped(edges.size(), false);
  std::vector<std::size_t> strip_order;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 1; v <= n; ++v) {
      if (degree[static_cast<std::size_t>(v)] != 1) continue;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (stripped[e]) continue;
        if (edges[e].from == v || edges[e].to == v) {
          stripped[e] = true;
          strip_order.push_back(e);
          --degree[static_cast<std::size_t>(edges[e].from)];
          --degree[static_cast<std::size_t>(edges[e].to)];
          changed = true;
          break;
        }
      }
    }
  }
  // walk the remaining cycle
  std::vector<std::pair<int, Word>> chain;  // (vertex, word to next)
  std::vector<bool> used = stripped;
  int start = -1;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (!used[e]) {
      start = edges[e].from;
      break;
    }
  if (start < 0) throw std::logic_error("chain_from_edges: no cycle found");
  int cur = start;
  do {
    bool advanced = false;
    for (std::size_t e = 0; e < edges.size() && !advanced; ++e) {
      if (used[e]) continue;
      if (edges[e].from == cur) {
        chain.push_back({cur, edges[e].w});
        cur = edges[e].to;
        used[e] = true;
        advanced = true;
      } else if (edges[e].to == cur) {
        chain.push_back({cur, edges[e].w.inverse()});
        cur = edges[e].from;
        used[e] = true;
        advanced = true;
      }
    }
    if (!advanced) throw std::logic_error("chain_from_edges: cycle walk stalled");
  } while (cur != start);

  // attach stripped tree edges, innermost last
  std::vector<bool> in_chain(static_cast<std::size_t>(n) + 1, false);
  for (const auto& [v, w] : chain) in_chain[static_cast<std::size_t>(v)] = true;
  for (auto it = strip_order.rbegin(); it != strip_order.rend(); ++it) {
    const ChainEdge& e = edges[*it];
    int u, z;
    Word w2(ctx);  // oriented x_z = x_u^{w2}
    if (in_chain[static_cast<std::size_t>(e.from)] &&
        !in_chain[static_cast<std::size_t>(e.to)]) {
      u = e.from;
      z = e.to;
      w2 = e.w;
    } else if (in_chain[static_cast<std::size_t>(e.to)] &&
               !in_chain[static_cast<std::size_t>(e.from)]) {
      u = e.to;
      z = e.from;
      w2 = e.w.inverse();
    } else {
      throw std::logic_error("chain_from_edges: tree edge does not touch the chain");
    }
    std::size_t pos = 0;
    while (chain[pos].first != u) ++pos;
    Word w1 = chain[pos].second;
    chain[pos].second = w2;
    chain.insert(chain.begin() + static_cast<long>(pos) + 1, {z, w2.inverse() * w1});
    in_chain[static_cast<std::size_t>(z)] = true;
  }
  if (static_cast<int>(chain.size()) != n)
    throw std::logic_error("chain_from_edges: chain misses vertices");
  return chain;
}

// Routes a spanning tree (nverts vertices, nverts-1 edges) into a directed
// path rooted at `root`, using the same rerouting operation.  Returns
// [(v_0 = root, w_0), ..., (v_{n-1}, w_{n-1}), (v_n, empty)] with
// x_{v_{k+1}} = x_{v_k}^{w_k}.
inline std::vector<std::pair<int, Word>> path_from_edges(std::vector<ChainEdge> edges,
                                                         int nverts, int root,
                                                         WordContext ctx) {
  if (static_cast<int>(edges.size()) != nverts - 1)
    throw std::logic_error("path_from_edges: edge count mismatch");
  std::vector<std::pair<int, Word>> path{{root, Word(ctx)}};
  std::vector<bool> used(edges.size(), false);
  std::vector<bool> on_path(static_cast<std::size_t>(nverts) + 1, false);
  on_path[static_cast<std::size_t>(root)] = true;
  std::size_t remaining = edges.size();
  while (remaining > 0) {
    bool advanced = false;
    for (std::size_t e = 0; e < edges.size() && !advanced; ++e) {
      if (used[e]) continue;
      bool f_on = on_path[static_cast<std::size_t>(edges[e].from)];
      bool t_on = on_path[static_cast<std::size_t>(edges[e].to)];
      if (f_on == t_on) {
        if (f_on && t_on)
          throw std::logic_error("path_from_edges: input is not a tree");
        continue;
      }
      int u = f_on ? edges[e].from : edges[e].to;
      int z = f_on ? edges[e].to : edges[e].from;
      Word w2 = f_on ? edges[e].w : edges[e].w.inverse();  // x_z = x_u^{w2}
      std::size_t pos = 0;
      while (path[pos].first != u) ++pos;
      if (pos + 1 == path.size()) {
        path[pos].second = w2;
        path.push_back({z, Word(ctx)});
      } else {
        Word w1 = path[pos].second;
        path[pos].second = w2;
        path.insert(path.begin() + static_cast<long>(pos) + 1,
                    {z, w2.inverse() * w1});
      }
      on_path[static_cast<std::size_t>(z)] = true;
      used[e] = true;
      --remaining;
      advanced = true;
    }
    if (!advanced) throw std::logic_error("path_from_edges: disconnected input");
  }
  return path;
}

}  // namespace detail

inline CyclicPresentation to_cyclic(const Presentation& p) {
  CmReport rep = classify_cm(p);
  if (!rep.is_cm || rep.m != 1 || !rep.is_m_irreducible ||
      (rep.deficiency != 1 && rep.deficiency != 2))
    throw std::invalid_argument(
        "to_cyclic requires a 1-irreducible C_1-presentation of deficiency 1 or 2");
  WordContext ctx = p.context();
  int n = ctx.x_count;
  std::vector<detail::ChainEdge> edges;
  for (const auto& r : p.relators) {
    if (r.empty())
      throw std::invalid_argument("to_cyclic: trivial relator present; simplify first");
    auto cd = detail::conjugation_data(r, ctx);
    if (!cd) throw std::logic_error("to_cyclic: relator lost its conjugation shape");
    edges.push_back({cd->i, cd->j, cd->w});
  }
  if (rep.deficiency == 2) {
    if (edges.empty())
      edges.push_back({1, 1, Word::one(ctx)});  // lone generator: trivial self-loop
    else
      edges.push_back(edges.back());
  }
  auto chain = detail::chain_from_edges(std::move(edges), n, ctx);

  // rotate so the chain starts at the smallest original index
  std::size_t best = 0;
  for (std::size_t k = 1; k < chain.size(); ++k)
    if (chain[k].first < chain[best].first) best = k;
  std::rotate(chain.begin(), chain.begin() + static_cast<long>(best), chain.end());

  CyclicPresentation out;
  out.pres.v_names = p.v_names;
  std::vector<int> x_map(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    out.pres.x_names.push_back(p.x_names[static_cast<std::size_t>(chain[k].first - 1)]);
    out.source_index.push_back(chain[k].first);
    x_map[static_cast<std::size_t>(chain[k].first)] = static_cast<int>(k) + 1;
  }
  WordContext cctx = out.pres.context();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    Word w = detail::remap_x(chain[k].second, x_map, cctx);
    out.conjugators.push_back(w);
    Word rel(cctx);
    rel.push(xgen(static_cast<int>((k + 1) % chain.size()) + 1), -1);
    rel.push(conjugate(Word::of(cctx, xgen(static_cast<int>(k) + 1)), w));
    out.pres.relators.push_back(std::move(rel));
  }
  return out;
}

// -------------------------------------------------------------------------
// Realizable chains.

struct RealizableLink {
  bool is_head = false;
  int sign = +1;
  int tail = 0;  // 1-based chain position of the tail arc (heads only)
};

struct RealizablePresentation {
  std::vector<RealizableLink> links;
  std::vector<std::string> x_names;
  std::vector<Word> definitions;  // chain position -> word over base_context
  WordContext base_context;

  int size() const { return static_cast<int>(links.size()); }

  Word conjugator_word(int j, WordContext ctx) const {  // w_j, 1-based j
    const RealizableLink& l = links[static_cast<std::size_t>(j - 1)];
    Word w(ctx);
    if (l.is_head) {
      w.push(vgen(1), -l.sign);
      w.push(xgen(l.tail), l.sign);
    } else {
      w.push(vgen(1), l.sign);
    }
    return w;
  }

  Presentation pres() const {
    int n = size();
    Presentation p;
    p.x_names = x_names;
    p.v_names = {"v1"};
    WordContext ctx = p.context();
    for (int j = 1; j <= n; ++j) {
      Word rel(ctx);
      rel.push(xgen(j % n + 1), -1);
      rel.push(conjugate(Word::of(ctx, xgen(j)), conjugator_word(j, ctx)));
      p.relators.push_back(std::move(rel));
    }
    return p;
  }

  void validate() const {
    int n = size();
    std::vector<int> referenced(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 1; j <= n; ++j) {
      const RealizableLink& l = links[static_cast<std::size_t>(j - 1)];
      if (!l.is_head) continue;
      if (l.tail < 1 || l.tail > n)
        throw std::invalid_argument("realizable chain: head letter tail out of range");
      const RealizableLink& t = links[static_cast<std::size_t>(l.tail - 1)];
      if (t.is_head)
        throw std::invalid_argument(
            "realizable chain: head letter points at another head position");
      if (t.sign != l.sign)
        throw std::invalid_argument(
            "realizable chain: tail letter sign does not match its chord");
      if (++referenced[static_cast<std::size_t>(l.tail)] > 1)
        throw std::invalid_argument("realizable chain: tail position referenced twice");
    }
    for (int j = 1; j <= n; ++j)
      if (links[static_cast<std::size_t>(j - 1)].is_head &&
          referenced[static_cast<std::size_t>(j)] > 0)
        throw std::invalid_argument(
            "realizable chain: a head position is also referenced as a tail");
  }
};

namespace detail {

// Working representation of a chain whose conjugators are unit letters over
// stable node ids; id -1 denotes the v-generator.
struct LetterRef {
  int id = -1;
  int e = +1;
};

struct WorkChain {
  WordContext base;
  std::vector<int> order;                    // stable ids in chain order
  std::vector<std::vector<LetterRef>> link;  // link[k]: order[k] -> order[k+1]
  std::map<int, Word> def;                   // id -> definition over base
  std::map<int, std::string> name;
  int next_id = 0;
  int fresh_counter = 0;

  int pos_of(int id) const {
    for (std::size_t k = 0; k < order.size(); ++k)
      if (order[k] == id) return static_cast<int>(k);
    throw std::logic_error("work chain: unknown node id");
  }

  int fresh(const Word& definition) {
    int id = next_id++;
    def[id] = definition;
    name[id] = "y" + std::to_string(++fresh_counter);
    return id;
  }

  Word letter_word(const LetterRef& l) const {
    if (l.id < 0) return Word::of(base, vgen(1), l.e);
    return def.at(l.id).pow(l.e);
  }
};

inline WorkChain work_chain_of(const CyclicPresentation& c) {
  WorkChain wc;
  wc.base = c.pres.context();
  int n = static_cast<int>(c.conjugators.size());
  for (int k = 0; k < n; ++k) {
    int id = wc.next_id++;
    wc.order.push_back(id);
    wc.def[id] = Word::of(wc.base, xgen(k + 1));
    wc.name[id] = c.pres.x_names[static_cast<std::size_t>(k)];
  }
  for (int k = 0; k < n; ++k) {
    std::vector<LetterRef> letters;
    for (const auto& s : c.conjugators[static_cast<std::size_t>(k)].syllables()) {
      long long reps = s.exp < 0 ? -s.exp : s.exp;
      int e = s.exp < 0 ? -1 : +1;
      for (long long r = 0; r < reps; ++r) {
        if (s.gen.kind == GenKind::V)
          letters.push_back({-1, e});
        else
          letters.push_back({s.gen.index - 1, e});  // id == chain index here
      }
    }
    wc.link.push_back(std::move(letters));
  }
  return wc;
}

inline void erase_self_letters(WorkChain& wc) {
  for (std::size_t k = 0; k < wc.order.size(); ++k) {
    auto& ls = wc.link[k];
    while (!ls.empty() && ls.front().id == wc.order[k]) ls.erase(ls.begin());
  }
}

// Step 1: one letter per link, inserting fresh generators between.
inline void split_links(WorkChain& wc) {
  for (std::size_t k = 0; k < wc.order.size(); ++k) {
    while (wc.link[k].size() > 1) {
      LetterRef first = wc.link[k].front();
      std::vector<LetterRef> rest(wc.link[k].begin() + 1, wc.link[k].end());
      wc.link[k] = {first};
      int src = wc.order[k];
      int id = wc.fresh(conjugate(wc.def.at(src), wc.letter_word(first)));
      wc.order.insert(wc.order.begin() + static_cast<long>(k) + 1, id);
      wc.link.insert(wc.link.begin() + static_cast<long>(k) + 1, std::move(rest));
      ++k;  // the remainder now hangs off the fresh node; continue there
    }
  }
}

// Empty conjugators (including erased self-letters) become a cancelling
// node pair through one fresh generator.
inline void fill_empty_links(WorkChain& wc) {
  for (std::size_t k = 0; k < wc.order.size(); ++k) {
    if (!wc.link[k].empty()) continue;
    int src = wc.order[k];
    int id = wc.fresh(conjugate(wc.def.at(src), Word::of(wc.base, vgen(1))));
    wc.order.insert(wc.order.begin() + static_cast<long>(k) + 1, id);
    wc.link[k] = {LetterRef{-1, +1}};
    wc.link.insert(wc.link.begin() + static_cast<long>(k) + 1,
                   {LetterRef{-1, -1}});
  }
}

// Step 2: pair every remaining x-letter with a fresh tail site.
inline void pair_x_letters(WorkChain& wc) {
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t j = 0; j < wc.order.size(); ++j) {
      if (wc.link[j].size() != 1 || wc.link[j][0].id < 0) continue;
      LetterRef letter = wc.link[j][0];
      int eps = letter.e;
      int K = letter.id;
      int A = wc.order[j];
      // j-side: A ->[v^eps] XJ ->[v^-eps x_K^eps] B
      Word v_eps = Word::of(wc.base, vgen(1), eps);
      int XJ = wc.fresh(conjugate(wc.def.at(A), v_eps));
      wc.link[j] = {LetterRef{-1, eps}};
      wc.order.insert(wc.order.begin() + static_cast<long>(j) + 1, XJ);
      wc.link.insert(wc.link.begin() + static_cast<long>(j) + 1,
                     {LetterRef{-1, -eps}, LetterRef{K, eps}});
      // K-side: K ->[v^eps] K1 ->[v^-eps] K2 ->[w_k] C
      int kpos = wc.pos_of(K);
      std::vector<LetterRef> wk = wc.link[static_cast<std::size_t>(kpos)];
      int K1 = wc.fresh(conjugate(wc.def.at(K), v_eps));
      int K2 = wc.fresh(wc.def.at(K));  // conjugation by v^eps v^-eps cancels
      wc.link[static_cast<std::size_t>(kpos)] = {LetterRef{-1, eps}};
      wc.order.insert(wc.order.begin() + kpos + 1, K2);
      wc.link.insert(wc.link.begin() + kpos + 1, std::move(wk));
      wc.order.insert(wc.order.begin() + kpos + 1, K1);
      wc.link.insert(wc.link.begin() + kpos + 1, {LetterRef{-1, -eps}});
      // rename x_K -> x_K2 everywhere except the freshly paired head letter
      for (std::size_t t = 0; t < wc.order.size(); ++t) {
        if (wc.order[t] == XJ) continue;
        for (auto& l : wc.link[t])
          if (l.id == K) l.id = K2;
      }
      again = true;
      break;
    }
  }
}

}  // namespace detail

inline RealizablePresentation to_realizable(const CyclicPresentation& c) {
  detail::WorkChain wc = detail::work_chain_of(c);
  detail::erase_self_letters(wc);
  detail::split_links(wc);
  detail::erase_self_letters(wc);
  detail::fill_empty_links(wc);
  detail::pair_x_letters(wc);

  RealizablePresentation rp;
  rp.base_context = wc.base;
  int n = static_cast<int>(wc.order.size());
  std::map<int, int> pos;  // id -> 1-based chain position
  for (int k = 0; k < n; ++k) pos[wc.order[static_cast<std::size_t>(k)]] = k + 1;
  for (int k = 0; k < n; ++k) {
    int id = wc.order[static_cast<std::size_t>(k)];
    rp.x_names.push_back(wc.name.at(id));
    rp.definitions.push_back(wc.def.at(id));
    const auto& ls = wc.link[static_cast<std::size_t>(k)];
    if (ls.size() == 1 && ls[0].id < 0) {
      rp.links.push_back({false, ls[0].e, 0});
    } else if (ls.size() == 2 && ls[0].id < 0 && ls[1].id >= 0 && ls[0].e == -ls[1].e) {
      rp.links.push_back({true, ls[1].e, pos.at(ls[1].id)});
    } else {
      throw std::logic_error("to_realizable: link did not reduce to a letter");
    }
  }
  rp.validate();
  return rp;
}

// Chain -> 1-circle diagram.  Arc j of the circle carries chain generator
// x_j, the event at the boundary after arc j comes from w_j, and
// presentation_of_diagram inverts this construction exactly.
inline MarkedGaussDiagram realize(const RealizablePresentation& rp) {
  rp.validate();
  int n = rp.size();
  std::map<int, std::pair<int, int>> chord_at_tail;  // tail pos -> (arrow id, sign)
  int next_arrow = 1;
  for (int j = 1; j <= n; ++j) {
    const RealizableLink& l = rp.links[static_cast<std::size_t>(j - 1)];
    if (l.is_head) chord_at_tail[l.tail] = {next_arrow++, l.sign};
  }
  MarkedGaussDiagram d;
  d.circles.emplace_back();
  auto& seq = d.circles[0];
  for (int j = 1; j <= n; ++j) {
    const RealizableLink& l = rp.links[static_cast<std::size_t>(j - 1)];
    if (l.is_head) {
      // find this head's arrow by its tail reference
      auto [id, sign] = chord_at_tail.at(l.tail);
      seq.push_back(Event::head(id));
      d.arrows[id] = ArrowInfo{sign, 0, 0};
    } else if (auto it = chord_at_tail.find(j); it != chord_at_tail.end()) {
      seq.push_back(Event::tail(it->second.first));
    } else {
      seq.push_back(Event::node(l.sign));
    }
  }
  d.validate();
  return d;
}

// -------------------------------------------------------------------------
// Peripherally specified realization.

struct PeripheralRealization {
  MarkedGaussDiagram diagram;
  RealizablePresentation chain;
  PeripheralPair pair;   // of the realized diagram, at the x0 arc
  int meridian_arc = 0;  // local arc index of x0 on the circle
  // true when the realized longitude pulls back to l verbatim; erasing
  // self-conjugating letters can twist it by a meridian conjugation, which
  // is invisible in the group (meridian and longitude commute) but not in
  // the word, so equality is then certified in finite quotients instead
  bool longitude_word_exact = false;
  std::string warning;  // the commutation hypothesis is only finitely checked
};

namespace detail {

// substitute chain definitions into a word over the diagram presentation
inline Word pull_back(const Word& w, const RealizablePresentation& rp) {
  Word out(rp.base_context);
  for (const auto& s : w.syllables()) {
    if (s.gen.kind == GenKind::X)
      out.push(rp.definitions[static_cast<std::size_t>(s.gen.index - 1)].pow(s.exp));
    else
      out.push(vgen(s.gen.index), s.exp);
  }
  return out;
}

}  // namespace detail

inline PeripheralRealization realize_with_peripheral(const Presentation& p,
                                                     const Word& x0_conjugator,
                                                     const Word& l) {
  CmReport rep = classify_cm(p);
  if (!rep.is_cm || rep.m != 1 || !rep.is_m_irreducible || rep.deficiency != 2)
    throw std::invalid_argument(
        "realize_with_peripheral requires a 1-irreducible C_1-presentation of "
        "deficiency 2");
  WordContext ctx = p.context();
  if (x0_conjugator.context() != ctx || l.context() != ctx)
    throw std::invalid_argument("realize_with_peripheral: word context mismatch");
  // decidable form of "l maps into the commutator subgroup of G_v": the
  // exponent-sum vector of l vanishes (total x-sum and v-sum zero)
  long long x_sum = 0;
  for (int i = 1; i <= ctx.x_count; ++i) x_sum += l.exponent_sum(xgen(i));
  if (x_sum != 0 || l.exponent_sum(vgen(1)) != 0)
    throw std::invalid_argument(
        "realize_with_peripheral: longitude exponent sums do not vanish");

  // finite-quotient check of the commutation hypothesis [x0, l] = 1
  Word x0 = conjugate(Word::of(ctx, xgen(1)), x0_conjugator.inverse());
  for (int k : {3, 4, 5}) {
    FiniteGroup G = FiniteGroup::symmetric(k);
    bool commutes = true;
    hom_foreach(p, G, [&](const HomAssignment& a) {
      int xi = detail::eval_word_in_group(x0, G, a.x_images, a.v_images);
      int li = detail::eval_word_in_group(l, G, a.x_images, a.v_images);
      if (G.mul(xi, li) != G.mul(li, xi)) commutes = false;
    });
    if (!commutes)
      throw std::invalid_argument(
          "realize_with_peripheral: [x0, l] fails in S" + std::to_string(k) +
          ", refuting the commutation hypothesis");
  }

  // extended presentation: x0 as generator n+1, relation x_1 = x0^{w0}
  int n = ctx.x_count;
  WordContext ectx{n + 1, 1};
  std::vector<int> idmap(static_cast<std::size_t>(n) + 1, 0);
  std::iota(idmap.begin(), idmap.end(), 0);
  auto lift = [&](const Word& w) { return detail::remap_x(w, idmap, ectx); };

  std::vector<detail::ChainEdge> edges;
  edges.push_back({n + 1, 1, lift(x0_conjugator)});  // x_1 = x0^{w0}
  for (const auto& r : p.relators) {
    if (r.empty())
      throw std::invalid_argument(
          "realize_with_peripheral: trivial relator present; simplify first");
    auto cd = detail::conjugation_data(r, ctx);
    if (!cd) throw std::logic_error("realize_with_peripheral: relator shape lost");
    edges.push_back({cd->i, cd->j, lift(cd->w)});
  }
  // the edges form a spanning tree on n+1 vertices; route it into a path
  // rooted at x0 and close the cycle with the redundant relation
  // x0 = x_path-end^{(w_0 ... w_{n-1})^-1 l}
  auto chain = detail::path_from_edges(std::move(edges), n + 1, n + 1, ectx);
  Word composite(ectx);
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) composite.push(chain[k].second);
  chain.back().second = composite.inverse() * lift(l);

  CyclicPresentation cyc;
  cyc.pres.v_names = {"v1"};
  std::vector<int> x_map(static_cast<std::size_t>(n) + 2, 0);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    cyc.pres.x_names.push_back(chain[k].first == n + 1
                                   ? "x0"
                                   : p.x_names[static_cast<std::size_t>(chain[k].first - 1)]);
    cyc.source_index.push_back(chain[k].first);
    x_map[static_cast<std::size_t>(chain[k].first)] = static_cast<int>(k) + 1;
  }
  WordContext cctx = cyc.pres.context();
  for (std::size_t k = 0; k < chain.size(); ++k) {
    Word w = detail::remap_x(chain[k].second, x_map, cctx);
    cyc.conjugators.push_back(w);
    Word rel(cctx);
    rel.push(xgen(static_cast<int>((k + 1) % chain.size()) + 1), -1);
    rel.push(conjugate(Word::of(cctx, xgen(static_cast<int>(k) + 1)), w));
    cyc.pres.relators.push_back(std::move(rel));
  }

  PeripheralRealization out;
  out.chain = to_realizable(cyc);
  out.diagram = realize(out.chain);
  // x0 sits at chain position 1, arc index 0; definitions are over cctx whose
  // x-indices are chain positions of cyc -- position 1 is x0 itself
  out.meridian_arc = 0;
  out.pair = meridian_longitude(out.diagram, 0, out.meridian_arc);
  out.warning =
      "commutation of l with x0 verified in S3, S4, S5 quotients only; the "
      "hypothesis itself is the caller's responsibility";

  // pull-back check: the realized longitude must reduce to l, verbatim or in
  // every small symmetric quotient
  Word pulled = detail::pull_back(out.pair.longitude, out.chain);
  Word expected = detail::remap_x(lift(l), x_map, cctx);
  out.longitude_word_exact = pulled == expected;
  if (!out.longitude_word_exact) {
    for (int k : {3, 4, 5}) {
      FiniteGroup G = FiniteGroup::symmetric(k);
      bool equal = true;
      hom_foreach(cyc.pres, G, [&](const HomAssignment& a) {
        if (detail::eval_word_in_group(pulled, G, a.x_images, a.v_images) !=
            detail::eval_word_in_group(expected, G, a.x_images, a.v_images))
          equal = false;
      });
      if (!equal)
        throw std::logic_error("realize_with_peripheral: longitude pull-back mismatch");
    }
  }
  return out;
}

// -------------------------------------------------------------------------
// Peripherally specified homomorphs (the Lambda_G construction).

struct HomomorphRealization {
  MarkedGaussDiagram diagram;
  RealizablePresentation chain;
  PeripheralPair pair;  // at the arc of x_1 (= mu_1)
  int meridian_arc = 0;
  // target data, when supplied
  bool verified = false;
  std::vector<int> x_images;  // per chain generator
  int v_image = 0;
  int longitude_image = 0;
};

// conjugators[j] carries mu_{j+1} = mu_j^{w_j} with mu_i written x<i> and nu
// written v1; the pipeline normalizes them to realizable shape internally.
inline HomomorphRealization realize_homomorph(
    int n, const std::vector<Word>& conjugators,
    const FiniteGroup* target = nullptr, int mu_image = 0, int nu_image = 0) {
  if (n < 1) throw std::invalid_argument("realize_homomorph: n must be >= 1");
  if (static_cast<int>(conjugators.size()) != n)
    throw std::invalid_argument("realize_homomorph: need exactly n conjugator words");
  WordContext ctx{n, 1};
  CyclicPresentation cyc;
  cyc.pres = Presentation::with_counts(n, 1);
  for (int j = 1; j <= n; ++j) {
    const Word& w = conjugators[static_cast<std::size_t>(j - 1)];
    if (w.context() != ctx)
      throw std::invalid_argument("realize_homomorph: conjugator context mismatch");
    cyc.conjugators.push_back(w);
    cyc.source_index.push_back(j);
    Word rel(ctx);
    rel.push(xgen(j % n + 1), -1);
    rel.push(conjugate(Word::of(ctx, xgen(j)), w));
    cyc.pres.relators.push_back(std::move(rel));
  }

  HomomorphRealization out;
  out.chain = to_realizable(cyc);
  out.diagram = realize(out.chain);
  out.meridian_arc = 0;  // chain position 1 carries x_1 = mu_1
  out.pair = meridian_longitude(out.diagram, 0, out.meridian_arc);

  if (target) {
    const FiniteGroup& G = *target;
    // derive mu_2..mu_n from mu_1 and nu by propagating mu_{i+1} = mu_i^{w_i}
    std::vector<int> mu(static_cast<std::size_t>(n) + 1, -1);
    mu[1] = mu_image;
    bool progress = true;
    while (progress) {
      progress = false;
      for (int i = 1; i <= n; ++i) {
        int next = i % n + 1;
        if (mu[static_cast<std::size_t>(i)] < 0 || mu[static_cast<std::size_t>(next)] >= 0)
          continue;
        const Word& w = conjugators[static_cast<std::size_t>(i - 1)];
        bool ready = true;
        for (const auto& s : w.syllables())
          if (s.gen.kind == GenKind::X && mu[static_cast<std::size_t>(s.gen.index)] < 0)
            ready = false;
        if (!ready) continue;
        int wi = 0;
        for (const auto& s : w.syllables()) {
          int g = s.gen.kind == GenKind::X ? mu[static_cast<std::size_t>(s.gen.index)]
                                           : nu_image;
          wi = G.mul(wi, G.pow(g, s.exp));
        }
        mu[static_cast<std::size_t>(next)] =
            G.mul(G.mul(G.inv(wi), mu[static_cast<std::size_t>(i)]), wi);
        progress = true;
      }
    }
    for (int i = 1; i <= n; ++i)
      if (mu[static_cast<std::size_t>(i)] < 0)
        throw std::invalid_argument(
            "realize_homomorph: cannot derive mu images (circular conjugator "
            "references)");
    // evaluate chain generators through their definitions and check relators
    auto eval_def = [&](const Word& w) {
      int acc = 0;
      for (const auto& s : w.syllables()) {
        int g = s.gen.kind == GenKind::X ? mu[static_cast<std::size_t>(s.gen.index)]
                                         : nu_image;
        acc = G.mul(acc, G.pow(g, s.exp));
      }
      return acc;
    };
    for (const auto& d : out.chain.definitions) out.x_images.push_back(eval_def(d));
    out.v_image = nu_image;
    Presentation pi = presentation_of_diagram(out.diagram);
    std::vector<int> vimg{nu_image};
    for (const auto& r : pi.relators)
      if (detail::eval_word_in_group(r, G, out.x_images, vimg) != 0)
        throw std::invalid_argument(
            "realize_homomorph: a relator fails in the target group, refuting "
            "mu_{i+1} = mu_i^{w_i}");
    out.verified = true;
    out.longitude_image =
        detail::eval_word_in_group(out.pair.longitude, G, out.x_images, vimg);
  }
  return out;
}

}  // namespace mgd
