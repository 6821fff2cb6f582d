#pragma once

// Virtual braid words, the defining relations of VB_n, and the catalogue of
// automorphism-valued representations.
//
// Catalogue names: phiM, phiS, phi0, phiA, phiA~, phiSW, phiBD, phiBD~,
// w1[r], w1~[r], w2, w2~, w3, w3~.  The w1 parameter r defaults to 1 and can
// be given inline ("w1[-2]") or through the API.
//
// Context conventions for the abelian part:
//   phiM/phiS/w* act on F_n * Z^n with v_i = v<i>;
//   phi0 acts on F_n (no v-generators);
//   phiA/phiA~ act on F_n * Z with v = v1;
//   phiSW acts on F_n * Z^{n+1} with u_i = v<i> and v = v<n+1>;
//   phiBD/phiBD~ act on F_n * Z^2 with u = v1 and v = v2.
//
// sigma_i^-1 images are transcribed where the source displays them (phiS) and
// otherwise come from closed-form solutions of the sigma_i images; every pair
// is certified with verify_inverse_pair at construction time, so a wrong
// inverse formula cannot load.

#include <mgd/words.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mgd {

struct BraidLetter {
  enum class Kind : unsigned char { Sigma, Rho };
  Kind kind = Kind::Sigma;
  int index = 1;
  int power = 1;  // +1 or -1; Rho letters always carry +1

  friend bool operator==(const BraidLetter& a, const BraidLetter& b) {
    return a.kind == b.kind && a.index == b.index && a.power == b.power;
  }
};

inline BraidLetter sigma(int i, int power = 1) {
  return BraidLetter{BraidLetter::Kind::Sigma, i, power};
}
inline BraidLetter rho(int i) { return BraidLetter{BraidLetter::Kind::Rho, i, 1}; }

struct BraidWord {
  int strand_count = 1;
  std::vector<BraidLetter> letters;

  void push(BraidLetter l) {
    if (l.index < 1 || l.index >= strand_count)
      throw std::invalid_argument("braid letter index out of range");
    if (l.kind == BraidLetter::Kind::Rho) l.power = 1;
    letters.push_back(l);
  }

  BraidWord inverse() const {
    BraidWord r{strand_count, {}};
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      BraidLetter l = *it;
      if (l.kind == BraidLetter::Kind::Sigma) l.power = -l.power;
      r.letters.push_back(l);
    }
    return r;
  }

  BraidWord operator*(const BraidWord& rhs) const {
    if (strand_count != rhs.strand_count)
      throw std::invalid_argument("braid strand count mismatch");
    BraidWord r = *this;
    r.letters.insert(r.letters.end(), rhs.letters.begin(), rhs.letters.end());
    return r;
  }

  friend bool operator==(const BraidWord& a, const BraidWord& b) {
    return a.strand_count == b.strand_count && a.letters == b.letters;
  }
};

// Tokens: s<i>, r<i>, optional ^<integer>.  Powers expand letter by letter;
// rho^-1 folds to rho (rho_i is an involution in VB_n).
inline BraidWord parse_braid(std::string_view text, int n) {
  if (n < 1) throw std::invalid_argument("strand count must be >= 1");
  BraidWord w{n, {}};
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '\r'))
      ++i;
  };
  auto parse_int = [&] {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == digits) throw std::invalid_argument("expected integer in braid word");
    return std::stoll(std::string(text.substr(start, i - start)));
  };
  skip_ws();
  while (i < text.size()) {
    char c = text[i];
    if (c != 's' && c != 'r')
      throw std::invalid_argument("unknown braid token at '" + std::string(1, c) + "'");
    ++i;
    long long idx = parse_int();
    long long e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      e = parse_int();
    }
    if (idx < 1 || idx >= n)
      throw std::invalid_argument("braid letter index out of range: " +
                                  std::string(1, c) + std::to_string(idx));
    long long count = e < 0 ? -e : e;
    for (long long k = 0; k < count; ++k) {
      if (c == 's')
        w.letters.push_back(sigma(static_cast<int>(idx), e < 0 ? -1 : 1));
      else
        w.letters.push_back(rho(static_cast<int>(idx)));
    }
    skip_ws();
  }
  return w;
}

inline std::string to_string(const BraidWord& w) {
  std::string out;
  for (const auto& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += l.kind == BraidLetter::Kind::Sigma ? 's' : 'r';
    out += std::to_string(l.index);
    if (l.power == -1) out += "^-1";
  }
  return out;
}

// -------------------------------------------------------------------------
// Defining relations of VB_n as pairs of equal words.

struct BraidRelation {
  std::string name;
  BraidWord lhs;
  BraidWord rhs;
};

inline std::vector<BraidRelation> vbn_relations(int n) {
  if (n < 2) throw std::invalid_argument("vbn_relations requires n >= 2");
  std::vector<BraidRelation> rels;
  auto word = [n](std::vector<BraidLetter> ls) {
    BraidWord w{n, {}};
    for (auto l : ls) w.push(l);
    return w;
  };
  for (int i = 1; i + 1 <= n - 1; ++i)
    rels.push_back({"braid(" + std::to_string(i) + ")",
                    word({sigma(i), sigma(i + 1), sigma(i)}),
                    word({sigma(i + 1), sigma(i), sigma(i + 1)})});
  for (int i = 1; i <= n - 1; ++i)
    for (int j = i + 2; j <= n - 1; ++j)
      rels.push_back({"sigma_comm(" + std::to_string(i) + "," + std::to_string(j) + ")",
                      word({sigma(i), sigma(j)}), word({sigma(j), sigma(i)})});
  for (int i = 1; i <= n - 1; ++i)
    rels.push_back({"rho_invol(" + std::to_string(i) + ")", word({rho(i), rho(i)}),
                    word({})});
  for (int i = 1; i <= n - 1; ++i)
    for (int j = i + 2; j <= n - 1; ++j)
      rels.push_back({"rho_comm(" + std::to_string(i) + "," + std::to_string(j) + ")",
                      word({rho(i), rho(j)}), word({rho(j), rho(i)})});
  for (int i = 1; i + 1 <= n - 1; ++i)
    rels.push_back({"rho_braid(" + std::to_string(i) + ")",
                    word({rho(i), rho(i + 1), rho(i)}),
                    word({rho(i + 1), rho(i), rho(i + 1)})});
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= n - 1; ++j)
      if (j - i >= 2 || i - j >= 2)
        rels.push_back({"mixed_comm(" + std::to_string(i) + "," + std::to_string(j) + ")",
                        word({sigma(i), rho(j)}), word({rho(j), sigma(i)})});
  for (int i = 1; i + 1 <= n - 1; ++i)
    rels.push_back({"mixed(" + std::to_string(i) + ")",
                    word({rho(i), rho(i + 1), sigma(i)}),
                    word({sigma(i + 1), rho(i), rho(i + 1)})});
  return rels;
}

// -------------------------------------------------------------------------
// Representation catalogue.

class Representation {
 public:
  Representation() = default;
  Representation(std::string name, int n, WordContext ctx, std::vector<Endomap> sig,
                 std::vector<Endomap> sig_inv, std::vector<Endomap> rho_images)
      : name_(std::move(name)),
        n_(n),
        ctx_(ctx),
        sigma_(std::move(sig)),
        sigma_inv_(std::move(sig_inv)),
        rho_(std::move(rho_images)) {
    for (std::size_t i = 0; i < sigma_.size(); ++i)
      if (!verify_inverse_pair(sigma_[i], sigma_inv_[i]))
        throw std::logic_error("catalogue entry " + name_ + ": sigma_" +
                               std::to_string(i + 1) + " inverse certification failed");
  }

  const std::string& name() const { return name_; }
  int strand_count() const { return n_; }
  const WordContext& context() const { return ctx_; }

  const Endomap& image(BraidLetter l) const {
    if (l.index < 1 || l.index >= n_)
      throw std::invalid_argument("letter index out of range for representation");
    std::size_t k = static_cast<std::size_t>(l.index - 1);
    if (l.kind == BraidLetter::Kind::Rho) return rho_[k];
    return l.power == 1 ? sigma_[k] : sigma_inv_[k];
  }

  friend bool images_equal(const Representation& a, const Representation& b) {
    return a.n_ == b.n_ && a.ctx_ == b.ctx_ && a.sigma_ == b.sigma_ &&
           a.sigma_inv_ == b.sigma_inv_ && a.rho_ == b.rho_;
  }

 private:
  std::string name_;
  int n_ = 1;
  WordContext ctx_;
  std::vector<Endomap> sigma_, sigma_inv_, rho_;
};

namespace detail {

inline Word xw(WordContext ctx, int i, long long e = 1) {
  return Word::of(ctx, xgen(i), e);
}
inline Word vw(WordContext ctx, int i, long long e = 1) {
  return Word::of(ctx, vgen(i), e);
}

inline void vswap(Endomap& f, WordContext ctx, int i) {
  f.set_image(vgen(i), vw(ctx, i + 1));
  f.set_image(vgen(i + 1), vw(ctx, i));
}

inline void xswap(Endomap& f, WordContext ctx, int i) {
  f.set_image(xgen(i), xw(ctx, i + 1));
  f.set_image(xgen(i + 1), xw(ctx, i));
}

// x_i -> x_{i+1}^{p^-1}, x_{i+1} -> x_i^{q}: the rho shape shared by phiM,
// the extended Wada representations (p = v_i, q = v_{i+1}) and phiA/phiBD
// (p = q = v).
inline void rho_conjugated(Endomap& f, WordContext ctx, int i, const Word& p,
                           const Word& q) {
  f.set_image(xgen(i), conjugate(xw(ctx, i + 1), p.inverse()));
  f.set_image(xgen(i + 1), conjugate(xw(ctx, i), q));
}

struct LetterImages {
  Endomap sig, sig_inv, rho;
};

enum class Family { PhiM, PhiS, Phi0, PhiA, PhiATilde, PhiSW, PhiBD, PhiBDTilde,
                    W1, W1Tilde, W2, W2Tilde, W3, W3Tilde };

inline WordContext family_context(Family fam, int n) {
  switch (fam) {
    case Family::Phi0: return WordContext{n, 0};
    case Family::PhiA:
    case Family::PhiATilde: return WordContext{n, 1};
    case Family::PhiBD:
    case Family::PhiBDTilde: return WordContext{n, 2};
    case Family::PhiSW: return WordContext{n, n + 1};
    default: return WordContext{n, n};
  }
}

inline LetterImages family_images(Family fam, int i, int n, int r) {
  WordContext ctx = family_context(fam, n);
  LetterImages out{Endomap(ctx), Endomap(ctx), Endomap(ctx)};
  Endomap& s = out.sig;
  Endomap& si = out.sig_inv;
  Endomap& rh = out.rho;
  const Word a = xw(ctx, i), b = xw(ctx, i + 1);

  switch (fam) {
    case Family::PhiM: {
      s.set_image(xgen(i), a * b * a.inverse());
      s.set_image(xgen(i + 1), a);
      vswap(s, ctx, i);
      si.set_image(xgen(i), b);
      si.set_image(xgen(i + 1), conjugate(a, b));
      vswap(si, ctx, i);
      rho_conjugated(rh, ctx, i, vw(ctx, i), vw(ctx, i + 1));
      vswap(rh, ctx, i);
      break;
    }
    case Family::PhiS: {
      s.set_image(xgen(i), a * conjugate(b, vw(ctx, i)) * a.inverse());
      s.set_image(xgen(i + 1), conjugate(a, vw(ctx, i + 1, -1)));
      vswap(s, ctx, i);
      si.set_image(xgen(i), conjugate(b, vw(ctx, i)));
      Word c = vw(ctx, i) * vw(ctx, i + 1, -1);
      si.set_image(xgen(i + 1), conjugate(b, c).inverse() *
                                    conjugate(a, vw(ctx, i + 1, -1)) * conjugate(b, c));
      vswap(si, ctx, i);
      xswap(rh, ctx, i);
      vswap(rh, ctx, i);
      break;
    }
    case Family::Phi0: {
      s.set_image(xgen(i), a * b * a.inverse());
      s.set_image(xgen(i + 1), a);
      si.set_image(xgen(i), b);
      si.set_image(xgen(i + 1), conjugate(a, b));
      xswap(rh, ctx, i);
      break;
    }
    case Family::PhiA: {
      s.set_image(xgen(i), a * b * a.inverse());
      s.set_image(xgen(i + 1), a);
      si.set_image(xgen(i), b);
      si.set_image(xgen(i + 1), conjugate(a, b));
      rho_conjugated(rh, ctx, i, vw(ctx, 1), vw(ctx, 1));
      break;
    }
    case Family::PhiATilde: {
      const Word v = vw(ctx, 1);
      s.set_image(xgen(i), a * conjugate(b, v) * a.inverse());
      s.set_image(xgen(i + 1), conjugate(a, v.inverse()));
      si.set_image(xgen(i), conjugate(b, v));
      si.set_image(xgen(i + 1), conjugate(conjugate(a, v.inverse()), b));
      xswap(rh, ctx, i);
      break;
    }
    case Family::PhiSW: {
      const Word u1 = vw(ctx, i), u2 = vw(ctx, i + 1), v = vw(ctx, n + 1);
      s.set_image(xgen(i),
                  a * conjugate(b, u1) * conjugate(a, v * u2).inverse());
      s.set_image(xgen(i + 1), conjugate(a, v));
      vswap(s, ctx, i);  // swaps u_i and u_{i+1}
      si.set_image(xgen(i), conjugate(b, v.inverse()));
      Word im(ctx);
      im.push(u2);
      im.push(v);
      im.push_inverse(b);
      im.push_inverse(v);
      im.push(a);
      im.push_inverse(u1);
      im.push(b);
      im.push(u1);
      im.push_inverse(u2);
      si.set_image(xgen(i + 1), im);
      vswap(si, ctx, i);
      xswap(rh, ctx, i);
      vswap(rh, ctx, i);
      break;
    }
    case Family::PhiBD: {
      const Word u = vw(ctx, 1), v = vw(ctx, 2);
      s.set_image(xgen(i), a * b * conjugate(a, u).inverse());
      s.set_image(xgen(i + 1), conjugate(a, u));
      si.set_image(xgen(i), conjugate(b, u.inverse()));
      Word im(ctx);
      im.push(u);
      im.push_inverse(b);
      im.push_inverse(u);
      im.push(a);
      im.push(b);
      si.set_image(xgen(i + 1), im);
      rho_conjugated(rh, ctx, i, v, v);
      break;
    }
    case Family::PhiBDTilde: {
      const Word u = vw(ctx, 1), v = vw(ctx, 2);
      s.set_image(xgen(i), a * conjugate(b, v) * conjugate(a, u).inverse());
      s.set_image(xgen(i + 1), conjugate(a, u * v.inverse()));
      // inverse derived by conjugating the phiBD inverse with the tilde
      // conjugator phi(x_j) = x_j^{v^{n-j}}
      Endomap phi = Endomap::identity(ctx), phi_inv = Endomap::identity(ctx);
      for (int j = 1; j <= n; ++j) {
        phi.set_image(xgen(j), conjugate(xw(ctx, j), vw(ctx, 2, n - j)));
        phi_inv.set_image(xgen(j), conjugate(xw(ctx, j), vw(ctx, 2, -(n - j))));
      }
      LetterImages base = family_images(Family::PhiBD, i, n, r);
      si = compose(compose(phi, base.sig_inv), phi_inv);
      xswap(rh, ctx, i);
      break;
    }
    case Family::W1: {
      s.set_image(xgen(i), a.pow(r) * b * a.pow(-r));
      s.set_image(xgen(i + 1), a);
      vswap(s, ctx, i);
      si.set_image(xgen(i), b);
      si.set_image(xgen(i + 1), b.pow(-r) * a * b.pow(r));
      vswap(si, ctx, i);
      rho_conjugated(rh, ctx, i, vw(ctx, i), vw(ctx, i + 1));
      vswap(rh, ctx, i);
      break;
    }
    case Family::W2: {
      s.set_image(xgen(i), a * b.inverse() * a);
      s.set_image(xgen(i + 1), a);
      vswap(s, ctx, i);
      si.set_image(xgen(i), b);
      si.set_image(xgen(i + 1), b * a.inverse() * b);
      vswap(si, ctx, i);
      rho_conjugated(rh, ctx, i, vw(ctx, i), vw(ctx, i + 1));
      vswap(rh, ctx, i);
      break;
    }
    case Family::W3: {
      s.set_image(xgen(i), a.pow(2) * b);
      s.set_image(xgen(i + 1), b.inverse() * a.inverse() * b);
      vswap(s, ctx, i);
      si.set_image(xgen(i), a * b.inverse() * a.inverse());
      si.set_image(xgen(i + 1), a * b.pow(2));
      vswap(si, ctx, i);
      rho_conjugated(rh, ctx, i, vw(ctx, i), vw(ctx, i + 1));
      vswap(rh, ctx, i);
      break;
    }
    case Family::W1Tilde:
    case Family::W2Tilde:
    case Family::W3Tilde: {
      const Word vi = vw(ctx, i), vj = vw(ctx, i + 1);
      if (fam == Family::W1Tilde) {
        s.set_image(xgen(i), a.pow(r) * conjugate(b, vi) * a.pow(-r));
        s.set_image(xgen(i + 1), conjugate(a, vj.inverse()));
      } else if (fam == Family::W2Tilde) {
        s.set_image(xgen(i), a * conjugate(b, vi).inverse() * a);
        s.set_image(xgen(i + 1), conjugate(a, vj.inverse()));
      } else {
        Word c = vi * vj.inverse();
        s.set_image(xgen(i), a.pow(2) * conjugate(b, vi));
        s.set_image(xgen(i + 1), conjugate(b, c).inverse() *
                                     conjugate(a, vj.inverse()).inverse() *
                                     conjugate(b, c));
      }
      vswap(s, ctx, i);
      // inverse derived by conjugating the base inverse with
      // phi(x_j) = x_j^{v_j v_{j+1} ... v_n}
      Endomap phi = Endomap::identity(ctx), phi_inv = Endomap::identity(ctx);
      for (int j = 1; j <= n; ++j) {
        Word tail(ctx);
        for (int k = j; k <= n; ++k) tail.push(vgen(k), 1);
        phi.set_image(xgen(j), conjugate(xw(ctx, j), tail));
        phi_inv.set_image(xgen(j), conjugate(xw(ctx, j), tail.inverse()));
      }
      Family base_fam = fam == Family::W1Tilde  ? Family::W1
                        : fam == Family::W2Tilde ? Family::W2
                                                 : Family::W3;
      LetterImages base = family_images(base_fam, i, n, r);
      si = compose(compose(phi, base.sig_inv), phi_inv);
      xswap(rh, ctx, i);
      vswap(rh, ctx, i);
      break;
    }
  }
  return out;
}

struct ParsedName {
  Family fam;
  bool takes_r = false;
  int r = 1;
  std::string canonical;
};

inline ParsedName parse_rep_name(const std::string& name, std::optional<int> r_param) {
  ParsedName p{};
  std::string base = name;
  std::optional<int> inline_r;
  if (auto lb = name.find('['); lb != std::string::npos) {
    auto rb = name.find(']', lb);
    if (rb == std::string::npos) throw std::invalid_argument("malformed representation name: " + name);
    inline_r = std::stoi(name.substr(lb + 1, rb - lb - 1));
    base = name.substr(0, lb);
  }
  if (base == "phiM") p.fam = Family::PhiM;
  else if (base == "phiS") p.fam = Family::PhiS;
  else if (base == "phi0") p.fam = Family::Phi0;
  else if (base == "phiA") p.fam = Family::PhiA;
  else if (base == "phiA~") p.fam = Family::PhiATilde;
  else if (base == "phiSW") p.fam = Family::PhiSW;
  else if (base == "phiBD") p.fam = Family::PhiBD;
  else if (base == "phiBD~") p.fam = Family::PhiBDTilde;
  else if (base == "w1") { p.fam = Family::W1; p.takes_r = true; }
  else if (base == "w1~") { p.fam = Family::W1Tilde; p.takes_r = true; }
  else if (base == "w2") p.fam = Family::W2;
  else if (base == "w2~") p.fam = Family::W2Tilde;
  else if (base == "w3") p.fam = Family::W3;
  else if (base == "w3~") p.fam = Family::W3Tilde;
  else throw std::invalid_argument("unknown representation name: " + name);
  if (inline_r && !p.takes_r)
    throw std::invalid_argument("representation " + base + " takes no parameter");
  if (p.takes_r) p.r = r_param ? *r_param : (inline_r ? *inline_r : 1);
  p.canonical = p.takes_r ? base + "[" + std::to_string(p.r) + "]" : base;
  return p;
}

}  // namespace detail

inline Representation get_representation(const std::string& name, int n,
                                         std::optional<int> r = std::nullopt) {
  if (n < 1) throw std::invalid_argument("strand count must be >= 1");
  detail::ParsedName p = detail::parse_rep_name(name, r);
  WordContext ctx = detail::family_context(p.fam, n);
  std::vector<Endomap> sig, sig_inv, rho_images;
  for (int i = 1; i <= n - 1; ++i) {
    detail::LetterImages im = detail::family_images(p.fam, i, n, p.r);
    sig.push_back(std::move(im.sig));
    sig_inv.push_back(std::move(im.sig_inv));
    rho_images.push_back(std::move(im.rho));
  }
  return Representation(p.canonical, n, ctx, std::move(sig), std::move(sig_inv),
                        std::move(rho_images));
}

// Names of every catalogue entry, w1 variants at their default r = 1.
inline std::vector<std::string> catalogue_names() {
  return {"phiM", "phiS",  "phi0", "phiA", "phiA~", "phiSW", "phiBD",
          "phiBD~", "w1[1]", "w1~[1]", "w2", "w2~", "w3", "w3~"};
}

inline Endomap braid_image(const Representation& rep, const BraidWord& b) {
  if (b.strand_count != rep.strand_count())
    throw std::invalid_argument("braid word strand count does not match representation");
  Endomap acc = Endomap::identity(rep.context());
  for (const auto& l : b.letters) acc = compose(acc, rep.image(l));
  return acc;
}

struct VerifyFailure {
  std::string relation;
  Generator gen;
  Word lhs, rhs;
};

struct VerifyReport {
  bool ok = true;
  int relations_checked = 0;
  std::vector<VerifyFailure> failures;
};

inline VerifyReport verify_representation(const Representation& rep, int n) {
  if (n != rep.strand_count())
    throw std::invalid_argument("verify_representation: n does not match representation");
  VerifyReport report;
  const WordContext& ctx = rep.context();
  for (const auto& rel : vbn_relations(n)) {
    ++report.relations_checked;
    Endomap lhs = braid_image(rep, rel.lhs);
    Endomap rhs = braid_image(rep, rel.rhs);
    auto check = [&](Generator g) {
      if (lhs.image(g) != rhs.image(g)) {
        report.ok = false;
        report.failures.push_back({rel.name, g, lhs.image(g), rhs.image(g)});
      }
    };
    for (int i = 1; i <= ctx.x_count; ++i) check(xgen(i));
    for (int i = 1; i <= ctx.v_count; ++i) check(vgen(i));
  }
  return report;
}

// New representation beta -> phi^-1 . rep(beta) . phi.
inline Representation conjugate_representation(const Representation& rep,
                                               const Endomap& phi,
                                               const Endomap& phi_inv) {
  if (!verify_inverse_pair(phi, phi_inv))
    throw std::invalid_argument("conjugate_representation: maps are not mutually inverse");
  int n = rep.strand_count();
  auto conj = [&](const Endomap& f) { return compose(compose(phi, f), phi_inv); };
  std::vector<Endomap> sig, sig_inv, rho_images;
  for (int i = 1; i <= n - 1; ++i) {
    sig.push_back(conj(rep.image(sigma(i))));
    sig_inv.push_back(conj(rep.image(sigma(i, -1))));
    rho_images.push_back(conj(rep.image(rho(i))));
  }
  return Representation(rep.name() + "^phi", n, rep.context(), std::move(sig),
                        std::move(sig_inv), std::move(rho_images));
}

inline bool is_virtually_symmetric(const Representation& rep) {
  for (int i = 1; i <= rep.strand_count() - 1; ++i)
    if (!is_generator_permutation(rep.image(rho(i)))) return false;
  return true;
}

// The conjugator the source supplies for each base/tilde pair, as an
// inverse-certified pair of endomaps.  Valid base names: phiM (target phiS),
// phiA, phiBD, w1[r], w2, w3.
inline std::pair<Endomap, Endomap> catalogue_conjugator(const std::string& base_name,
                                                        int n) {
  detail::ParsedName p = detail::parse_rep_name(base_name, std::nullopt);
  WordContext ctx = detail::family_context(p.fam, n);
  Endomap phi = Endomap::identity(ctx), phi_inv = Endomap::identity(ctx);
  using detail::Family;
  switch (p.fam) {
    case Family::PhiM:
    case Family::W1:
    case Family::W2:
    case Family::W3:
      for (int j = 1; j <= n; ++j) {
        Word tail(ctx);
        for (int k = j; k <= n; ++k) tail.push(vgen(k), 1);
        phi.set_image(xgen(j), conjugate(Word::of(ctx, xgen(j)), tail));
        phi_inv.set_image(xgen(j), conjugate(Word::of(ctx, xgen(j)), tail.inverse()));
      }
      break;
    case Family::PhiA:
      for (int j = 1; j <= n; ++j) {
        phi.set_image(xgen(j),
                      conjugate(Word::of(ctx, xgen(j)), Word::of(ctx, vgen(1), n - j)));
        phi_inv.set_image(
            xgen(j), conjugate(Word::of(ctx, xgen(j)), Word::of(ctx, vgen(1), -(n - j))));
      }
      break;
    case Family::PhiBD:
      for (int j = 1; j <= n; ++j) {
        phi.set_image(xgen(j),
                      conjugate(Word::of(ctx, xgen(j)), Word::of(ctx, vgen(2), n - j)));
        phi_inv.set_image(
            xgen(j), conjugate(Word::of(ctx, xgen(j)), Word::of(ctx, vgen(2), -(n - j))));
      }
      break;
    default:
      throw std::invalid_argument("no catalogue conjugator for " + base_name);
  }
  if (!verify_inverse_pair(phi, phi_inv))
    throw std::logic_error("catalogue conjugator certification failed");
  return {phi, phi_inv};
}

// base -> tilde partner in the catalogue; phiM pairs with phiS.
inline std::string tilde_partner(const std::string& base_name) {
  detail::ParsedName p = detail::parse_rep_name(base_name, std::nullopt);
  using detail::Family;
  switch (p.fam) {
    case Family::PhiM: return "phiS";
    case Family::PhiA: return "phiA~";
    case Family::PhiBD: return "phiBD~";
    case Family::W1: return "w1~[" + std::to_string(p.r) + "]";
    case Family::W2: return "w2~";
    case Family::W3: return "w3~";
    default: throw std::invalid_argument("no tilde partner for " + base_name);
  }
}

}  // namespace mgd
