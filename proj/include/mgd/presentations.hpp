#pragma once

// Finitely presented groups with x-generators and mutually commuting
// v-generators.  The v-commutators are implicit structure: word arithmetic
// already commutes v's, homomorphism counting enforces commuting v-images,
// and deficiency bookkeeping counts one commutator relator per v-pair once
// there are at least two v-generators.
//
// hom_count is the workhorse oracle: it counts homomorphisms into a small
// finite group by backtracking over generator images with relator
// propagation (a relator carrying exactly one unassigned generator, once,
// with exponent +-1 determines that generator).  Diagram and braid groups
// are conjugation chains, so the search usually collapses to |G|^(m+1).

#include <mgd/braid.hpp>
#include <mgd/diagrams.hpp>

#include <functional>
#include <numeric>

namespace mgd {

struct Presentation {
  std::vector<std::string> x_names;
  std::vector<std::string> v_names;
  std::vector<Word> relators;  // over context(); normal form; v-commutation implicit

  WordContext context() const {
    return WordContext{static_cast<int>(x_names.size()),
                       static_cast<int>(v_names.size())};
  }

  static Presentation with_counts(int nx, int nv) {
    Presentation p;
    for (int i = 1; i <= nx; ++i) p.x_names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= nv; ++i) p.v_names.push_back("v" + std::to_string(i));
    return p;
  }

  int commutator_count() const {
    int m = static_cast<int>(v_names.size());
    return m >= 2 ? m * (m - 1) / 2 : 0;
  }
  int relator_count() const {
    return static_cast<int>(relators.size()) + commutator_count();
  }
  int deficiency() const {
    return static_cast<int>(x_names.size() + v_names.size()) - relator_count();
  }

  const std::string& gen_name(Generator g) const {
    return g.kind == GenKind::X ? x_names[static_cast<std::size_t>(g.index - 1)]
                                : v_names[static_cast<std::size_t>(g.index - 1)];
  }
};

inline std::string relator_to_string(const Presentation& p, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += p.gen_name(s.gen);
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

inline std::string print_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& n : p.x_names) out += " " + n;
  for (const auto& n : p.v_names) out += " " + n;
  out += '\n';
  for (const auto& r : p.relators) out += "rel: " + relator_to_string(p, r) + '\n';
  return out;
}

// `gens:` line then one `rel:` line per relator; generators named v<k> are
// the commuting ones, everything else is free.
inline Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::map<std::string, Generator> by_name;
  std::istringstream in(text);
  std::string line;
  bool have_gens = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "gens:") {
      if (have_gens) throw std::invalid_argument("duplicate gens: line");
      have_gens = true;
      std::string name;
      while (ls >> name) {
        bool is_v = name.size() >= 2 && name[0] == 'v' &&
                    name.find_first_not_of("0123456789", 1) == std::string::npos;
        if (by_name.count(name))
          throw std::invalid_argument("duplicate generator name: " + name);
        if (is_v) {
          p.v_names.push_back(name);
          by_name[name] = vgen(static_cast<int>(p.v_names.size()));
        } else {
          p.x_names.push_back(name);
          by_name[name] = xgen(static_cast<int>(p.x_names.size()));
        }
      }
    } else if (kw == "rel:") {
      if (!have_gens) throw std::invalid_argument("rel: before gens:");
      Word w(p.context());
      std::string tok;
      while (ls >> tok) {
        if (tok == "1") continue;
        std::string name = tok;
        long long e = 1;
        if (auto caret = tok.find('^'); caret != std::string::npos) {
          name = tok.substr(0, caret);
          e = std::stoll(tok.substr(caret + 1));
        }
        auto it = by_name.find(name);
        if (it == by_name.end())
          throw std::invalid_argument("relator references undeclared generator: " + name);
        w.push(it->second, e);
      }
      p.relators.push_back(std::move(w));
    } else {
      throw std::invalid_argument("unexpected line in presentation: " + line);
    }
  }
  if (!have_gens) throw std::invalid_argument("presentation has no gens: line");
  return p;
}

// -------------------------------------------------------------------------
// Pi_D: one x-generator per arc, one v-generator per circle, one relation
// per event, v-commutators implicit.

inline Presentation presentation_of_diagram(const MarkedGaussDiagram& d) {
  d.validate();
  Presentation p = Presentation::with_counts(d.total_arcs(), d.circle_count());
  WordContext ctx = p.context();
  auto offsets = arc_offsets(d);
  for (int c = 0; c < d.circle_count(); ++c) {
    int len = static_cast<int>(d.circles[static_cast<std::size_t>(c)].size());
    for (int i = 0; i < len; ++i) {
      int cur = offsets[static_cast<std::size_t>(c)] + i;
      int next = offsets[static_cast<std::size_t>(c)] + (i + 1) % len;
      Word w = event_conjugator(d, c, i, ctx, offsets);
      Word rel(ctx);
      rel.push(xgen(next), -1);
      rel.push(conjugate(Word::of(ctx, xgen(cur)), w));
      p.relators.push_back(std::move(rel));
    }
  }
  return p;
}

// G_phi(beta): fixed points of the braid image.  Trivial relators (fixed
// generators) are dropped.
inline Presentation group_of_braid(const Representation& rep, const BraidWord& b) {
  Endomap e = braid_image(rep, b);
  const WordContext& ctx = rep.context();
  Presentation p = Presentation::with_counts(ctx.x_count, ctx.v_count);
  auto add = [&](Generator g) {
    Word rel(ctx);
    rel.push(g, -1);
    rel.push(e.image(g));
    if (!rel.empty()) p.relators.push_back(std::move(rel));
  };
  for (int i = 1; i <= ctx.x_count; ++i) add(xgen(i));
  for (int i = 1; i <= ctx.v_count; ++i) add(vgen(i));
  return p;
}

// -------------------------------------------------------------------------
// Abelianization via integer Smith normal form.

namespace detail {

inline long long ll_abs(long long v) { return v < 0 ? -v : v; }

inline long long snf_add(long long x, long long y) {
  long long r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("integer overflow in SNF");
  return r;
}
inline long long snf_mul(long long x, long long y) {
  long long r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("integer overflow in SNF");
  return r;
}

struct SmithResult {
  int rank = 0;
  std::vector<long long> factors;  // positive diagonal entries, divisibility chain
};

inline SmithResult smith_normal_form(std::vector<std::vector<long long>> a) {
  SmithResult res;
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int k = 0;
  auto add_row = [&](int dst, int src, long long f) {
    for (int j = 0; j < cols; ++j)
      a[static_cast<std::size_t>(dst)][static_cast<std::size_t>(j)] = snf_add(
          a[static_cast<std::size_t>(dst)][static_cast<std::size_t>(j)],
          snf_mul(f, a[static_cast<std::size_t>(src)][static_cast<std::size_t>(j)]));
  };
  auto add_col = [&](int dst, int src, long long f) {
    for (int i = 0; i < rows; ++i)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(dst)] = snf_add(
          a[static_cast<std::size_t>(i)][static_cast<std::size_t>(dst)],
          snf_mul(f, a[static_cast<std::size_t>(i)][static_cast<std::size_t>(src)]));
  };
  while (k < rows && k < cols) {
    // find the minimal nonzero entry in the remaining block
    int pi = -1, pj = -1;
    for (int i = k; i < rows; ++i)
      for (int j = k; j < cols; ++j) {
        long long v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (v != 0 && (pi < 0 || ll_abs(v) <
                                     ll_abs(a[static_cast<std::size_t>(pi)]
                                             [static_cast<std::size_t>(pj)])))
          pi = i, pj = j;
      }
    if (pi < 0) break;
    std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(pi)]);
    for (int i = 0; i < rows; ++i)
      std::swap(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(pj)]);
    bool clean = true;
    for (int i = k + 1; i < rows; ++i) {
      long long q = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] /
                    a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
      if (q != 0) add_row(i, k, -q);
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) clean = false;
    }
    for (int j = k + 1; j < cols; ++j) {
      long long q = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] /
                    a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
      if (q != 0) add_col(j, k, -q);
      if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; repick the pivot
    // divisibility: pivot must divide every remaining entry
    bool divides = true;
    for (int i = k + 1; i < rows && divides; ++i)
      for (int j = k + 1; j < cols && divides; ++j)
        if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] %
                a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] !=
            0) {
          add_row(k, i, 1);
          divides = false;
        }
    if (!divides) continue;
    ++k;
  }
  for (int i = 0; i < k; ++i) {
    long long v = ll_abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
    if (v != 0) res.factors.push_back(v);
  }
  res.rank = static_cast<int>(res.factors.size());
  return res;
}

}  // namespace detail

struct Abelianization {
  int free_rank = 0;
  std::vector<long long> torsion;  // invariant factors > 1

  friend bool operator==(const Abelianization& a, const Abelianization& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

inline Abelianization abelianization(const Presentation& p) {
  WordContext ctx = p.context();
  int cols = ctx.generator_count();
  std::vector<std::vector<long long>> m;
  for (const auto& r : p.relators) {
    std::vector<long long> row(static_cast<std::size_t>(cols), 0);
    for (const auto& s : r.syllables()) {
      int col = s.gen.kind == GenKind::X ? s.gen.index - 1 : ctx.x_count + s.gen.index - 1;
      row[static_cast<std::size_t>(col)] += s.exp;
    }
    m.push_back(std::move(row));
  }
  detail::SmithResult snf = detail::smith_normal_form(std::move(m));
  Abelianization ab;
  ab.free_rank = cols - snf.rank;
  for (long long f : snf.factors)
    if (f > 1) ab.torsion.push_back(f);
  std::sort(ab.torsion.begin(), ab.torsion.end());
  return ab;
}

// -------------------------------------------------------------------------
// Small finite groups as multiplication tables.

class FiniteGroup {
 public:
  static FiniteGroup symmetric(int k) {
    if (k < 1 || k > 7) throw std::invalid_argument("symmetric(k) supports 1 <= k <= 7");
    FiniteGroup g;
    g.name_ = "S" + std::to_string(k);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      g.perms_.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    int n = static_cast<int>(g.perms_.size());
    g.order_ = n;
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[g.perms_[static_cast<std::size_t>(i)]] = i;
    g.mul_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<int> c(static_cast<std::size_t>(k));
        for (int t = 0; t < k; ++t)
          c[static_cast<std::size_t>(t)] =
              g.perms_[static_cast<std::size_t>(j)][static_cast<std::size_t>(
                  g.perms_[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)])];
        g.mul_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(j)] = index.at(c);
      }
    g.fill_inverses();
    return g;
  }

  // table[i][j] = index of element i * element j; element 0 must be the identity.
  static FiniteGroup from_table(std::vector<std::vector<int>> table,
                                std::string name = "table") {
    FiniteGroup g;
    g.name_ = std::move(name);
    int n = static_cast<int>(table.size());
    if (n == 0) throw std::invalid_argument("empty multiplication table");
    g.order_ = n;
    g.mul_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(table[static_cast<std::size_t>(i)].size()) != n)
        throw std::invalid_argument("multiplication table is not square");
      for (int j = 0; j < n; ++j) {
        int v = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
        g.mul_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(j)] = v;
      }
    }
    for (int i = 0; i < n; ++i)
      if (g.mul(0, i) != i || g.mul(i, 0) != i)
        throw std::invalid_argument("element 0 is not an identity");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (g.mul(g.mul(i, j), k) != g.mul(i, g.mul(j, k)))
            throw std::invalid_argument("multiplication table is not associative");
    g.fill_inverses();
    return g;
  }

  int order() const { return order_; }
  const std::string& name() const { return name_; }
  int mul(int a, int b) const {
    return mul_[static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) +
                static_cast<std::size_t>(b)];
  }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int pow(int a, long long e) const {
    int base = e < 0 ? inv(a) : a;
    long long n = e < 0 ? -e : e;
    int acc = 0;
    for (long long i = 0; i < n; ++i) acc = mul(acc, base);
    return acc;
  }

  // one-line permutations when built via symmetric()
  const std::vector<std::vector<int>>& permutations() const { return perms_; }

  // "(1 2)(3 4)" -> element index; entries are 1-based points.
  int parse_permutation(const std::string& text) const {
    if (perms_.empty())
      throw std::invalid_argument("permutation input needs a symmetric-group target");
    int k = static_cast<int>(perms_[0].size());
    std::vector<int> p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
      if (i >= text.size()) break;
      if (text[i] != '(') throw std::invalid_argument("expected '(' in permutation");
      ++i;
      std::vector<int> cyc;
      while (i < text.size() && text[i] != ')') {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
        if (i < text.size() && text[i] == ')') break;
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (start == i) throw std::invalid_argument("expected point in permutation cycle");
        int pt = std::stoi(text.substr(start, i - start));
        if (pt < 1 || pt > k) throw std::invalid_argument("permutation point out of range");
        cyc.push_back(pt - 1);
      }
      if (i >= text.size()) throw std::invalid_argument("unclosed permutation cycle");
      ++i;  // ')'
      for (std::size_t t = 0; t < cyc.size(); ++t)
        p[static_cast<std::size_t>(cyc[t])] = cyc[(t + 1) % cyc.size()];
    }
    for (int idx = 0; idx < order_; ++idx)
      if (perms_[static_cast<std::size_t>(idx)] == p) return idx;
    throw std::logic_error("permutation lookup failed");
  }

 private:
  void fill_inverses() {
    inv_.assign(static_cast<std::size_t>(order_), -1);
    for (int i = 0; i < order_; ++i)
      for (int j = 0; j < order_; ++j)
        if (mul(i, j) == 0 && mul(j, i) == 0) {
          inv_[static_cast<std::size_t>(i)] = j;
          break;
        }
    for (int i = 0; i < order_; ++i)
      if (inv_[static_cast<std::size_t>(i)] < 0)
        throw std::invalid_argument("element without inverse in table");
  }

  int order_ = 0;
  std::string name_;
  std::vector<int> mul_, inv_;
  std::vector<std::vector<int>> perms_;
};

inline FiniteGroup target_from_name(const std::string& name) {
  if (name == "s3" || name == "S3") return FiniteGroup::symmetric(3);
  if (name == "s4" || name == "S4") return FiniteGroup::symmetric(4);
  if (name == "s5" || name == "S5") return FiniteGroup::symmetric(5);
  throw std::invalid_argument("unknown target group: " + name);
}

// -------------------------------------------------------------------------
// Homomorphism enumeration.

struct HomOptions {
  unsigned long long max_steps = 200'000'000;
};

struct HomAssignment {
  std::vector<int> x_images;
  std::vector<int> v_images;
};

namespace detail {

inline int eval_word_in_group(const Word& w, const FiniteGroup& G,
                              const std::vector<int>& ximg,
                              const std::vector<int>& vimg) {
  int acc = 0;
  for (const auto& s : w.syllables()) {
    int g = s.gen.kind == GenKind::X ? ximg[static_cast<std::size_t>(s.gen.index - 1)]
                                     : vimg[static_cast<std::size_t>(s.gen.index - 1)];
    acc = G.mul(acc, G.pow(g, s.exp));
  }
  return acc;
}

class HomSearch {
 public:
  HomSearch(const Presentation& p, const FiniteGroup& G, HomOptions opt,
            const std::function<void(const HomAssignment&)>* cb)
      : p_(p), G_(G), opt_(opt), cb_(cb) {
    nx_ = static_cast<int>(p.x_names.size());
    nv_ = static_cast<int>(p.v_names.size());
    x_.assign(static_cast<std::size_t>(nx_), -1);
    v_.assign(static_cast<std::size_t>(nv_), -1);
  }

  long long run() {
    count_ = 0;
    steps_ = 0;
    dfs();
    return count_;
  }

 private:
  bool assigned(Generator g) const {
    return g.kind == GenKind::X ? x_[static_cast<std::size_t>(g.index - 1)] >= 0
                                : v_[static_cast<std::size_t>(g.index - 1)] >= 0;
  }
  int value(Generator g) const {
    return g.kind == GenKind::X ? x_[static_cast<std::size_t>(g.index - 1)]
                                : v_[static_cast<std::size_t>(g.index - 1)];
  }
  void set(Generator g, int val) {
    (g.kind == GenKind::X ? x_[static_cast<std::size_t>(g.index - 1)]
                          : v_[static_cast<std::size_t>(g.index - 1)]) = val;
  }

  void bump() {
    if (++steps_ > opt_.max_steps)
      throw std::runtime_error("hom_count: search-space limit exceeded");
  }

  // -1 contradiction, 0 no change, 1 progressed
  int propagate(std::vector<Generator>& trail) {
    bool progressed = false;
    for (const auto& r : p_.relators) {
      bump();
      Generator unknown;
      int unassigned_syllables = 0;
      long long unknown_exp = 0;
      for (const auto& s : r.syllables()) {
        if (assigned(s.gen)) continue;
        ++unassigned_syllables;
        unknown = s.gen;
        unknown_exp = s.exp;
      }
      if (unassigned_syllables == 0) {
        int val = eval_word_in_group(r, G_, x_, v_);
        if (val != 0) return -1;
        continue;
      }
      if (unassigned_syllables != 1 || (unknown_exp != 1 && unknown_exp != -1)) continue;
      // r = A . unknown^e . B = 1  =>  unknown^e = A^-1 B^-1
      int a = 0, b = 0;
      bool before = true;
      for (const auto& s : r.syllables()) {
        if (!assigned(s.gen)) {
          before = false;
          continue;
        }
        int g = G_.pow(value(s.gen), s.exp);
        if (before)
          a = G_.mul(a, g);
        else
          b = G_.mul(b, g);
      }
      int rhs = G_.mul(G_.inv(a), G_.inv(b));
      int val = unknown_exp == 1 ? rhs : G_.inv(rhs);
      set(unknown, val);
      trail.push_back(unknown);
      progressed = true;
    }
    // commuting v-images
    for (int i = 1; i <= nv_; ++i)
      for (int j = i + 1; j <= nv_; ++j) {
        if (v_[static_cast<std::size_t>(i - 1)] < 0 || v_[static_cast<std::size_t>(j - 1)] < 0)
          continue;
        bump();
        int vi = v_[static_cast<std::size_t>(i - 1)], vj = v_[static_cast<std::size_t>(j - 1)];
        if (G_.mul(vi, vj) != G_.mul(vj, vi)) return -1;
      }
    return progressed ? 1 : 0;
  }

  void dfs() {
    std::vector<Generator> trail;
    int st;
    while ((st = propagate(trail)) == 1) {
    }
    if (st == -1) {
      for (auto g : trail) set(g, -1);
      return;
    }
    // branch on v-generators first, then on the unassigned generator sitting
    // in the relator with the fewest unknowns so propagation cascades
    Generator branch;
    bool found = false;
    for (int i = 1; i <= nv_ && !found; ++i)
      if (v_[static_cast<std::size_t>(i - 1)] < 0) {
        branch = vgen(i);
        found = true;
      }
    if (!found) {
      int best = -1;
      for (const auto& r : p_.relators) {
        int unknowns = 0;
        Generator first_unknown;
        for (const auto& s : r.syllables())
          if (!assigned(s.gen)) {
            if (unknowns == 0) first_unknown = s.gen;
            ++unknowns;
          }
        if (unknowns > 0 && (best < 0 || unknowns < best)) {
          best = unknowns;
          branch = first_unknown;
          found = true;
          if (best <= 2) break;
        }
      }
    }
    for (int i = 1; i <= nx_ && !found; ++i)
      if (x_[static_cast<std::size_t>(i - 1)] < 0) {
        branch = xgen(i);
        found = true;
      }
    if (!found) {
      ++count_;
      if (cb_ && *cb_) (*cb_)(HomAssignment{x_, v_});
      for (auto g : trail) set(g, -1);
      return;
    }
    for (int val = 0; val < G_.order(); ++val) {
      bump();
      set(branch, val);
      dfs();
      set(branch, -1);
    }
    for (auto g : trail) set(g, -1);
  }

  const Presentation& p_;
  const FiniteGroup& G_;
  HomOptions opt_;
  const std::function<void(const HomAssignment&)>* cb_;
  int nx_ = 0, nv_ = 0;
  std::vector<int> x_, v_;
  long long count_ = 0;
  unsigned long long steps_ = 0;
};

}  // namespace detail

inline long long hom_foreach(const Presentation& p, const FiniteGroup& G,
                             const std::function<void(const HomAssignment&)>& fn,
                             HomOptions opt = {}) {
  detail::HomSearch search(p, G, opt, &fn);
  return search.run();
}

inline long long hom_count(const Presentation& p, const FiniteGroup& G,
                           HomOptions opt = {}) {
  detail::HomSearch search(p, G, opt, nullptr);
  return search.run();
}

// -------------------------------------------------------------------------
// Tietze simplification: drop trivial relators, eliminate an x-generator
// that occurs exactly once (exponent +-1) in some relator, repeat.

inline Presentation simplify(const Presentation& p, int max_rounds = 200) {
  Presentation cur = p;
  for (int round = 0; round < max_rounds; ++round) {
    // drop trivial relators
    std::vector<Word> kept;
    for (const auto& r : cur.relators)
      if (!r.empty()) kept.push_back(r);
    cur.relators = std::move(kept);

    // find an eliminable x-generator
    int rel_idx = -1;
    Generator victim;
    long long victim_exp = 0;
    for (std::size_t ri = 0; ri < cur.relators.size() && rel_idx < 0; ++ri) {
      const Word& r = cur.relators[ri];
      for (const auto& s : r.syllables()) {
        if (s.gen.kind != GenKind::X) continue;
        if (s.exp != 1 && s.exp != -1) continue;
        int occurrences = 0;
        for (const auto& t : r.syllables())
          if (t.gen == s.gen) ++occurrences;
        if (occurrences != 1) continue;
        rel_idx = static_cast<int>(ri);
        victim = s.gen;
        victim_exp = s.exp;
        break;
      }
    }
    if (rel_idx < 0) break;

    // solve r = A . g^e . B = 1 for g
    WordContext ctx = cur.context();
    const Word& r = cur.relators[static_cast<std::size_t>(rel_idx)];
    Word a(ctx), b(ctx);
    bool before = true;
    for (const auto& s : r.syllables()) {
      if (s.gen == victim) {
        before = false;
        continue;
      }
      (before ? a : b).push(s.gen, s.exp);
    }
    Word solved(ctx);  // g^e = A^-1 B^-1
    solved.push_inverse(a);
    solved.push_inverse(b);
    if (victim_exp == -1) solved = solved.inverse();

    // substitute and drop the generator
    int gone = victim.index;
    WordContext nctx{ctx.x_count - 1, ctx.v_count};
    auto remap = [&](const Word& w) {
      Word out(nctx);
      for (const auto& s : w.syllables()) {
        Generator g = s.gen;
        if (g.kind == GenKind::X && g.index > gone) --g.index;
        out.push(g, s.exp);
      }
      return out;
    };
    std::vector<Word> next;
    for (std::size_t ri = 0; ri < cur.relators.size(); ++ri) {
      if (static_cast<int>(ri) == rel_idx) continue;
      const Word& w = cur.relators[ri];
      Word repl(ctx);
      for (const auto& s : w.syllables()) {
        if (s.gen == victim)
          repl.push(solved.pow(s.exp));
        else
          repl.push(s.gen, s.exp);
      }
      Word out = remap(repl);
      if (!out.empty()) next.push_back(std::move(out));
    }
    cur.x_names.erase(cur.x_names.begin() + (gone - 1));
    cur.relators = std::move(next);
  }
  return cur;
}

// -------------------------------------------------------------------------
// C_m classification.

struct CmReport {
  bool is_cm = false;
  int m = 0;
  std::vector<std::pair<int, int>> edges;  // (i, j): relator x_j^-1 x_i^w
  int components = 0;
  bool is_m_irreducible = false;
  int deficiency = 0;
};

namespace detail {

struct ConjData {
  int i = 0, j = 0;  // r ~ x_j^-1 x_i^w
  Word w;
};

// r is a conjugation relator iff x_j . r is conjugate to a generator x_i.
// Cyclic letter rotation is conjugation by the rotated-out prefix, so if
// rotation t of (x_j . r) normalizes to x_i then w = prefix^-1 does the job:
// r = x_j^-1 . prefix . x_i . prefix^-1 = x_j^-1 x_i^{prefix^-1}.
inline std::optional<ConjData> conjugation_data(const Word& r, const WordContext& ctx) {
  for (int i = 1; i <= ctx.v_count; ++i)
    if (r.exponent_sum(vgen(i)) != 0) return std::nullopt;
  for (int j = 1; j <= ctx.x_count; ++j) {
    if (r.exponent_sum(xgen(j)) > 0) continue;  // x_j^-1 contributes -1
    Word u(ctx);
    u.push(xgen(j), 1);
    u.push(r);
    std::vector<Syllable> letters;
    for (const auto& s : u.syllables()) {
      long long n = s.exp < 0 ? -s.exp : s.exp;
      for (long long t = 0; t < n; ++t) letters.push_back({s.gen, s.exp < 0 ? -1LL : 1LL});
    }
    std::size_t L = letters.size();
    for (std::size_t rot = 0; rot < std::max<std::size_t>(L, 1); ++rot) {
      Word cand(ctx);
      for (std::size_t t = 0; t < L; ++t) {
        const Syllable& s = letters[(rot + t) % L];
        cand.push(s.gen, s.exp);
      }
      if (cand.size() == 1 && cand.syllables()[0].gen.kind == GenKind::X &&
          cand.syllables()[0].exp == 1) {
        ConjData out;
        out.i = cand.syllables()[0].gen.index;
        out.j = j;
        Word prefix(ctx);
        for (std::size_t t = 0; t < rot; ++t) prefix.push(letters[t].gen, letters[t].exp);
        out.w = prefix.inverse();
        return out;
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline CmReport classify_cm(const Presentation& p) {
  CmReport rep;
  rep.m = static_cast<int>(p.v_names.size());
  rep.deficiency = p.deficiency();
  WordContext ctx = p.context();
  rep.is_cm = true;
  for (const auto& r : p.relators) {
    if (r.empty()) continue;
    auto edge = detail::conjugation_data(r, ctx);
    if (!edge) {
      rep.is_cm = false;
      break;
    }
    rep.edges.push_back({edge->i, edge->j});
  }
  if (!rep.is_cm) {
    rep.edges.clear();
    return rep;
  }
  // connected components of Gamma_m over the x-generators
  std::vector<int> parent(static_cast<std::size_t>(ctx.x_count));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const auto& [i, j] : rep.edges) parent[static_cast<std::size_t>(find(i - 1))] =
      find(j - 1);
  std::vector<bool> seen(static_cast<std::size_t>(ctx.x_count), false);
  for (int v = 0; v < ctx.x_count; ++v) {
    int root = find(v);
    if (!seen[static_cast<std::size_t>(root)]) {
      seen[static_cast<std::size_t>(root)] = true;
      ++rep.components;
    }
  }
  rep.is_m_irreducible = rep.components == rep.m;
  return rep;
}

}  // namespace mgd
