#pragma once

// Exact arithmetic for words in a free product F_x * Z^v: the free group on
// x-generators times a free abelian group on v-generators.  A word is kept in
// a unique normal form:
//
//   - no two adjacent syllables share a generator,
//   - inside a maximal run of v-syllables the generators are distinct and
//     sorted by ascending index,
//   - no zero exponents.
//
// Two words are equal iff their normal forms are identical, which is what the
// representation and presentation machinery relies on for decidable equality.
// Words are immutable in practice: every operation returns a fresh value.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mgd {

enum class GenKind : unsigned char { X, V };

struct Generator {
  GenKind kind = GenKind::X;
  int index = 1;  // 1-based

  friend bool operator==(const Generator& a, const Generator& b) {
    return a.kind == b.kind && a.index == b.index;
  }
  friend bool operator!=(const Generator& a, const Generator& b) { return !(a == b); }
  friend bool operator<(const Generator& a, const Generator& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.index < b.index;
  }
};

inline Generator xgen(int i) { return Generator{GenKind::X, i}; }
inline Generator vgen(int i) { return Generator{GenKind::V, i}; }

struct WordContext {
  int x_count = 0;
  int v_count = 0;

  bool contains(Generator g) const {
    int n = g.kind == GenKind::X ? x_count : v_count;
    return g.index >= 1 && g.index <= n;
  }
  int generator_count() const { return x_count + v_count; }

  friend bool operator==(const WordContext& a, const WordContext& b) {
    return a.x_count == b.x_count && a.v_count == b.v_count;
  }
  friend bool operator!=(const WordContext& a, const WordContext& b) { return !(a == b); }
};

struct Syllable {
  Generator gen;
  long long exp = 0;

  friend bool operator==(const Syllable& a, const Syllable& b) {
    return a.gen == b.gen && a.exp == b.exp;
  }
};

class Word {
 public:
  Word() = default;
  explicit Word(WordContext ctx) : ctx_(ctx) {}

  static Word one(WordContext ctx) { return Word(ctx); }
  static Word of(WordContext ctx, Generator g, long long e = 1) {
    Word w(ctx);
    w.push(g, e);
    return w;
  }

  const WordContext& context() const { return ctx_; }
  const std::vector<Syllable>& syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }
  std::size_t size() const { return syl_.size(); }

  // Total number of single-generator letters, exponents counted with
  // multiplicity.
  long long letter_length() const {
    long long n = 0;
    for (const auto& s : syl_) n += s.exp < 0 ? -s.exp : s.exp;
    return n;
  }

  // Appends g^e, restoring normal form.  This is the only mutation path, so
  // the stored sequence is a normal form at all times.
  void push(Generator g, long long e) {
    if (e == 0) return;
    if (!ctx_.contains(g))
      throw std::invalid_argument("generator index out of range for context: " +
                                  gen_name(g));
    if (g.kind == GenKind::X) {
      if (!syl_.empty() && syl_.back().gen == g) {
        syl_.back().exp += e;
        if (syl_.back().exp == 0) syl_.pop_back();
      } else {
        syl_.push_back({g, e});
      }
      return;
    }
    // v-syllable: merge into the trailing v-run, kept sorted by index.
    std::size_t run_begin = syl_.size();
    while (run_begin > 0 && syl_[run_begin - 1].gen.kind == GenKind::V) --run_begin;
    for (std::size_t i = run_begin; i < syl_.size(); ++i) {
      if (syl_[i].gen == g) {
        syl_[i].exp += e;
        if (syl_[i].exp == 0) syl_.erase(syl_.begin() + static_cast<long>(i));
        return;
      }
      if (syl_[i].gen.index > g.index) {
        syl_.insert(syl_.begin() + static_cast<long>(i), Syllable{g, e});
        return;
      }
    }
    syl_.push_back({g, e});
  }

  void push(const Word& w) {
    check_same_context(w);
    for (const auto& s : w.syl_) push(s.gen, s.exp);
  }

  void push_inverse(const Word& w) {
    check_same_context(w);
    for (auto it = w.syl_.rbegin(); it != w.syl_.rend(); ++it) push(it->gen, -it->exp);
  }

  Word inverse() const {
    Word r(ctx_);
    r.push_inverse(*this);
    return r;
  }

  Word operator*(const Word& rhs) const {
    Word r = *this;
    r.push(rhs);
    return r;
  }

  Word pow(long long k) const {
    Word r(ctx_);
    for (long long i = 0; i < (k < 0 ? -k : k); ++i) {
      if (k > 0)
        r.push(*this);
      else
        r.push_inverse(*this);
    }
    return r;
  }

  // Exponent sum of a single generator.
  long long exponent_sum(Generator g) const {
    long long n = 0;
    for (const auto& s : syl_)
      if (s.gen == g) n += s.exp;
    return n;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.ctx_ == b.ctx_ && a.syl_ == b.syl_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

  static std::string gen_name(Generator g) {
    return (g.kind == GenKind::X ? "x" : "v") + std::to_string(g.index);
  }

 private:
  void check_same_context(const Word& w) const {
    if (ctx_ != w.ctx_) throw std::invalid_argument("word context mismatch");
  }

  WordContext ctx_;
  std::vector<Syllable> syl_;
};

inline Word normalize(const std::vector<Syllable>& raw, WordContext ctx) {
  Word w(ctx);
  for (const auto& s : raw) w.push(s.gen, s.exp);
  return w;
}

// b^-1 a b
inline Word conjugate(const Word& a, const Word& b) {
  if (a.context() != b.context()) throw std::invalid_argument("word context mismatch");
  Word r(a.context());
  r.push_inverse(b);
  r.push(a);
  r.push(b);
  return r;
}

inline Word commutator(const Word& a, const Word& b) {
  Word r(a.context());
  r.push_inverse(a);
  r.push_inverse(b);
  r.push(a);
  r.push(b);
  return r;
}

// -------------------------------------------------------------------------
// Generator-image endomorphisms of a fixed context.

class Endomap {
 public:
  Endomap() = default;
  explicit Endomap(WordContext ctx) : ctx_(ctx) {
    images_.reserve(static_cast<std::size_t>(ctx.generator_count()));
    for (int i = 1; i <= ctx.x_count; ++i) images_.push_back(Word::of(ctx, xgen(i)));
    for (int i = 1; i <= ctx.v_count; ++i) images_.push_back(Word::of(ctx, vgen(i)));
  }

  static Endomap identity(WordContext ctx) { return Endomap(ctx); }

  const WordContext& context() const { return ctx_; }

  const Word& image(Generator g) const { return images_[slot(g)]; }

  void set_image(Generator g, Word w) {
    if (w.context() != ctx_) throw std::invalid_argument("image context mismatch");
    images_[slot(g)] = std::move(w);
  }

  bool is_identity() const {
    for (int i = 1; i <= ctx_.x_count; ++i)
      if (image(xgen(i)) != Word::of(ctx_, xgen(i))) return false;
    for (int i = 1; i <= ctx_.v_count; ++i)
      if (image(vgen(i)) != Word::of(ctx_, vgen(i))) return false;
    return true;
  }

  friend bool operator==(const Endomap& a, const Endomap& b) {
    return a.ctx_ == b.ctx_ && a.images_ == b.images_;
  }
  friend bool operator!=(const Endomap& a, const Endomap& b) { return !(a == b); }

 private:
  std::size_t slot(Generator g) const {
    if (!ctx_.contains(g))
      throw std::invalid_argument("generator index out of range for context: " +
                                  Word::gen_name(g));
    return g.kind == GenKind::X ? static_cast<std::size_t>(g.index - 1)
                                : static_cast<std::size_t>(ctx_.x_count + g.index - 1);
  }

  WordContext ctx_;
  std::vector<Word> images_;
};

inline Word apply(const Endomap& f, const Word& w) {
  if (f.context() != w.context()) throw std::invalid_argument("word context mismatch");
  Word r(w.context());
  for (const auto& s : w.syllables()) r.push(f.image(s.gen).pow(s.exp));
  return r;
}

// compose(f, g) applies f first, then g.  braid_reps maps braid words
// left-to-right through this convention.
inline Endomap compose(const Endomap& f, const Endomap& g) {
  if (f.context() != g.context()) throw std::invalid_argument("endomap context mismatch");
  WordContext ctx = f.context();
  Endomap r(ctx);
  for (int i = 1; i <= ctx.x_count; ++i) r.set_image(xgen(i), apply(g, f.image(xgen(i))));
  for (int i = 1; i <= ctx.v_count; ++i) r.set_image(vgen(i), apply(g, f.image(vgen(i))));
  return r;
}

inline bool is_generator_permutation(const Endomap& f) {
  const WordContext& ctx = f.context();
  std::vector<bool> hit(static_cast<std::size_t>(ctx.generator_count()), false);
  auto visit = [&](Generator g) {
    const Word& im = f.image(g);
    if (im.size() != 1) return false;
    const Syllable& s = im.syllables()[0];
    if (s.exp != 1) return false;
    std::size_t slot = s.gen.kind == GenKind::X
                           ? static_cast<std::size_t>(s.gen.index - 1)
                           : static_cast<std::size_t>(ctx.x_count + s.gen.index - 1);
    if (hit[slot]) return false;
    hit[slot] = true;
    return true;
  };
  for (int i = 1; i <= ctx.x_count; ++i)
    if (!visit(xgen(i))) return false;
  for (int i = 1; i <= ctx.v_count; ++i)
    if (!visit(vgen(i))) return false;
  return true;
}

// True iff f and g are mutually inverse on every generator.  The catalogue
// uses this to certify explicit inverse formulas instead of implementing
// general free-product automorphism inversion.
inline bool verify_inverse_pair(const Endomap& f, const Endomap& g) {
  if (f.context() != g.context()) throw std::invalid_argument("endomap context mismatch");
  return compose(f, g).is_identity() && compose(g, f).is_identity();
}

// -------------------------------------------------------------------------
// Shared word grammar: tokens x<k>, v<k>, optional ^<integer>, whitespace
// separated; "1" denotes the empty word.

inline Word parse_word(std::string_view text, WordContext ctx) {
  Word w(ctx);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r' ||
                               text[i] == '\n'))
      ++i;
  };
  auto parse_int = [&](const char* what) {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == start || (i == start + 1 && !(text[start] >= '0' && text[start] <= '9')))
      throw std::invalid_argument(std::string("expected integer after ") + what);
    return std::stoll(std::string(text.substr(start, i - start)));
  };
  skip_ws();
  while (i < text.size()) {
    char c = text[i];
    if (c == '1') {
      ++i;  // the empty word token; only legal standing alone, but harmless anywhere
      skip_ws();
      continue;
    }
    if (c != 'x' && c != 'v')
      throw std::invalid_argument("unknown token in word at '" + std::string(1, c) + "'");
    ++i;
    long long idx = parse_int("generator letter");
    long long e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      e = parse_int("'^'");
    }
    Generator g{c == 'x' ? GenKind::X : GenKind::V, static_cast<int>(idx)};
    w.push(g, e);
    skip_ws();
  }
  return w;
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += Word::gen_name(s.gen);
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

}  // namespace mgd
