#pragma once

// Exact linear representations over multivariate integer Laurent polynomial
// rings: the local Burau-type representation and its virtual extensions,
// theta-conjugation, and the Bigelow kernel elements.
//
// Coefficients are 64-bit integers with overflow checks; an overflow throws
// instead of wrapping, so every result that comes back is exact.

#include <mgd/braid.hpp>

#include <map>
#include <string>
#include <vector>

namespace mgd {

using VarList = std::vector<std::string>;

namespace detail {
inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("Laurent coefficient overflow");
  return r;
}
inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("Laurent coefficient overflow");
  return r;
}
}  // namespace detail

class LaurentPoly {
 public:
  using Expo = std::vector<int>;

  LaurentPoly() = default;
  explicit LaurentPoly(VarList vars) : vars_(std::move(vars)) {}

  static LaurentPoly zero(VarList vars) { return LaurentPoly(std::move(vars)); }
  static LaurentPoly constant(VarList vars, long long c) {
    LaurentPoly p(std::move(vars));
    if (c != 0) p.terms_[Expo(p.vars_.size(), 0)] = c;
    return p;
  }
  static LaurentPoly one(VarList vars) { return constant(std::move(vars), 1); }
  // c * var^e
  static LaurentPoly monomial(VarList vars, const std::string& var, int e,
                              long long c = 1) {
    LaurentPoly p(vars);
    if (c == 0) return p;
    Expo key(vars.size(), 0);
    key[p.var_index(var)] = e;
    p.terms_[key] = c;
    return p;
  }

  const VarList& vars() const { return vars_; }
  const std::map<Expo, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant(long long c) const {
    if (c == 0) return is_zero();
    return terms_.size() == 1 && terms_.begin()->second == c &&
           terms_.begin()->first == Expo(vars_.size(), 0);
  }

  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw std::invalid_argument("unknown Laurent variable: " + name);
  }

  LaurentPoly operator+(const LaurentPoly& q) const {
    check_vars(q);
    LaurentPoly r = *this;
    for (const auto& [e, c] : q.terms_) r.add_term(e, c);
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  LaurentPoly operator-(const LaurentPoly& q) const { return *this + (-q); }
  LaurentPoly operator*(const LaurentPoly& q) const {
    check_vars(q);
    LaurentPoly r(vars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : q.terms_) {
        Expo e = e1;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
        r.add_term(e, detail::checked_mul(c1, c2));
      }
    return r;
  }

  // Substitute 1 for the variable at slot `slot`, dropping it from the list.
  LaurentPoly substitute_one(std::size_t slot) const {
    VarList nv = vars_;
    nv.erase(nv.begin() + static_cast<long>(slot));
    LaurentPoly r(nv);
    for (const auto& [e, c] : terms_) {
      Expo ne = e;
      ne.erase(ne.begin() + static_cast<long>(slot));
      r.add_term(ne, c);
    }
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

 private:
  void check_vars(const LaurentPoly& q) const {
    if (vars_ != q.vars_) throw std::invalid_argument("Laurent variable list mismatch");
  }
  void add_term(const Expo& e, long long c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = c;
    } else {
      it->second = detail::checked_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  VarList vars_;
  std::map<Expo, long long> terms_;
};

inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    long long a = c;
    if (out.empty()) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += p.vars()[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      out += std::to_string(a);
    else if (a == 1)
      out += mono;
    else
      out += std::to_string(a) + "*" + mono;
  }
  return out;
}

class LaurentMatrix {
 public:
  LaurentMatrix() = default;
  LaurentMatrix(int n, VarList vars)
      : n_(n), vars_(std::move(vars)),
        entries_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                 LaurentPoly::zero(vars_)) {}

  static LaurentMatrix identity(int n, VarList vars) {
    LaurentMatrix m(n, vars);
    for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::one(m.vars_);
    return m;
  }

  int size() const { return n_; }
  const VarList& vars() const { return vars_; }

  LaurentPoly& at(int i, int j) {
    return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(j)];
  }
  const LaurentPoly& at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(j)];
  }

  LaurentMatrix operator*(const LaurentMatrix& rhs) const {
    if (n_ != rhs.n_ || vars_ != rhs.vars_)
      throw std::invalid_argument("Laurent matrix size or variable mismatch");
    LaurentMatrix r(n_, vars_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        if (at(i, k).is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
          if (rhs.at(k, j).is_zero()) continue;
          r.at(i, j) = r.at(i, j) + at(i, k) * rhs.at(k, j);
        }
      }
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (!at(i, j).is_constant(i == j ? 1 : 0)) return false;
    return true;
  }

  LaurentMatrix substitute_one(const std::string& var) const {
    std::size_t slot = entries_.empty() ? LaurentPoly(vars_).var_index(var)
                                        : entries_[0].var_index(var);
    VarList nv = vars_;
    nv.erase(nv.begin() + static_cast<long>(slot));
    LaurentMatrix r(n_, nv);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j).substitute_one(slot);
    return r;
  }

  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
    return a.n_ == b.n_ && a.vars_ == b.vars_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const LaurentMatrix& a, const LaurentMatrix& b) {
    return !(a == b);
  }

 private:
  int n_ = 0;
  VarList vars_;
  std::vector<LaurentPoly> entries_;
};

// Laplace expansion; fine for the sizes this library handles.
inline LaurentPoly det(const LaurentMatrix& m) {
  int n = m.size();
  if (n == 0) return LaurentPoly::one(m.vars());
  if (n == 1) return m.at(0, 0);
  LaurentPoly acc = LaurentPoly::zero(m.vars());
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    LaurentMatrix minor(n - 1, m.vars());
    for (int i = 1; i < n; ++i) {
      int jj = 0;
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        minor.at(i - 1, jj++) = m.at(i, k);
      }
    }
    LaurentPoly term = m.at(0, j) * det(minor);
    acc = j % 2 == 0 ? acc + term : acc - term;
  }
  return acc;
}

// -------------------------------------------------------------------------
// The four linear representations.

enum class LinearRep { BurauLocal, Burau, Psi, BF };

inline LinearRep linear_rep_from_name(const std::string& name) {
  if (name == "burau_local") return LinearRep::BurauLocal;
  if (name == "burau") return LinearRep::Burau;
  if (name == "psi") return LinearRep::Psi;
  if (name == "bf") return LinearRep::BF;
  throw std::invalid_argument("unknown linear representation: " + name);
}

inline VarList linear_rep_vars(LinearRep rep, int n) {
  VarList v;
  switch (rep) {
    case LinearRep::BurauLocal: v.push_back("t"); break;
    case LinearRep::Burau: return {"t"};
    case LinearRep::Psi: v.push_back("t"); v.push_back("l"); break;
    case LinearRep::BF: return {"t", "l"};
  }
  for (int i = 1; i <= n - 1; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

inline LaurentMatrix matrix_of_letter(LinearRep rep, BraidLetter letter, int n) {
  if (n < 2) throw std::invalid_argument("matrix_of_letter requires n >= 2");
  if (letter.index < 1 || letter.index >= n)
    throw std::invalid_argument("letter index out of range");
  bool virtual_rep = rep == LinearRep::Psi || rep == LinearRep::BF;
  if (!virtual_rep && letter.kind == BraidLetter::Kind::Rho)
    throw std::invalid_argument("rho letter passed to a B_n-only representation");

  VarList vars = linear_rep_vars(rep, n);
  auto mono = [&](const std::string& v, int e, long long c = 1) {
    return LaurentPoly::monomial(vars, v, e, c);
  };
  auto cnst = [&](long long c) { return LaurentPoly::constant(vars, c); };
  std::string ti = "t" + std::to_string(letter.index);

  LaurentMatrix m = LaurentMatrix::identity(n, vars);
  int i = letter.index - 1;  // block rows/cols i, i+1
  LaurentPoly a, b, c, d;    // block [[a, b], [c, d]]

  if (letter.kind == BraidLetter::Kind::Rho) {
    if (rep == LinearRep::Psi) {
      a = cnst(0); b = mono(ti, 1); c = mono(ti, -1); d = cnst(0);
    } else {
      a = cnst(0); b = cnst(1); c = cnst(1); d = cnst(0);
    }
  } else if (letter.power == 1) {
    switch (rep) {
      case LinearRep::BurauLocal:
        a = cnst(1) - mono("t", 1); b = mono("t", 1) * mono(ti, 1);
        c = mono(ti, -1); d = cnst(0);
        break;
      case LinearRep::Burau:
        a = cnst(1) - mono("t", 1); b = mono("t", 1); c = cnst(1); d = cnst(0);
        break;
      case LinearRep::Psi:
        a = cnst(1) - mono("t", 1);
        b = mono("t", 1) * mono(ti, 1) * mono("l", -1);
        c = mono("l", 1) * mono(ti, -1);
        d = cnst(0);
        break;
      case LinearRep::BF:
        a = cnst(1) - mono("t", 1); b = mono("l", -1) * mono("t", 1);
        c = mono("l", 1); d = cnst(0);
        break;
    }
  } else {
    // closed-form block inverses, certified below
    switch (rep) {
      case LinearRep::BurauLocal:
        a = cnst(0); b = mono(ti, 1);
        c = mono("t", -1) * mono(ti, -1); d = cnst(1) - mono("t", -1);
        break;
      case LinearRep::Burau:
        a = cnst(0); b = cnst(1); c = mono("t", -1); d = cnst(1) - mono("t", -1);
        break;
      case LinearRep::Psi:
        a = cnst(0); b = mono(ti, 1) * mono("l", -1);
        c = mono("t", -1) * mono("l", 1) * mono(ti, -1);
        d = cnst(1) - mono("t", -1);
        break;
      case LinearRep::BF:
        a = cnst(0); b = mono("l", -1);
        c = mono("l", 1) * mono("t", -1); d = cnst(1) - mono("t", -1);
        break;
    }
  }

  m.at(i, i) = a;
  m.at(i, i + 1) = b;
  m.at(i + 1, i) = c;
  m.at(i + 1, i + 1) = d;

  if (letter.kind == BraidLetter::Kind::Sigma && letter.power == -1) {
    BraidLetter fwd = letter;
    fwd.power = 1;
    if (!(matrix_of_letter(rep, fwd, n) * m).is_identity())
      throw std::logic_error("inverse block certification failed");
  }
  return m;
}

inline LaurentMatrix braid_matrix(LinearRep rep, const BraidWord& b) {
  int n = b.strand_count;
  LaurentMatrix acc = LaurentMatrix::identity(n, linear_rep_vars(rep, n));
  for (const auto& l : b.letters) acc = acc * matrix_of_letter(rep, l, n);
  return acc;
}

// theta = diag(1, t_1, t_1 t_2, ..., t_1...t_{n-1}); returns theta m theta^-1.
inline LaurentMatrix theta_conjugate(const LaurentMatrix& m, int n) {
  if (m.size() != n) throw std::invalid_argument("theta_conjugate size mismatch");
  const VarList& vars = m.vars();
  LaurentMatrix r(n, vars);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (m.at(i, j).is_zero()) continue;
      // scale by prod_{k<=i-1} t_k * prod_{k<=j-1} t_k^-1
      LaurentPoly scale = LaurentPoly::one(vars);
      for (int k = 1; k <= i; ++k)
        scale = scale * LaurentPoly::monomial(vars, "t" + std::to_string(k), 1);
      for (int k = 1; k <= j; ++k)
        scale = scale * LaurentPoly::monomial(vars, "t" + std::to_string(k), -1);
      r.at(i, j) = scale * m.at(i, j);
    }
  return r;
}

// -------------------------------------------------------------------------
// Bigelow's kernel elements of the Burau representation, b_1 in B_5 and
// b_2 in B_6, expanded into letters with the commutator convention
// [a, b] = a^-1 b^-1 a b.

inline BraidWord braid_commutator(const BraidWord& a, const BraidWord& b) {
  return a.inverse() * b.inverse() * a * b;
}

inline std::pair<BraidWord, BraidWord> bigelow_words() {
  BraidWord c1 = parse_braid("s3^-1 s2 s1^2 s2 s4^3 s3 s2", 5);
  BraidWord c2 = parse_braid("s4^-1 s3 s2 s1^-2 s2 s1^2 s2^2 s1 s4^5", 5);
  BraidWord b1 = braid_commutator(c1.inverse() * parse_braid("s4", 5) * c1,
                                  c2.inverse() *
                                      parse_braid("s4 s3 s2 s1^2 s2 s3 s4", 5) * c2);

  BraidWord d1 = parse_braid("s4 s5^-1 s2^-1 s1", 6);
  BraidWord d2 = parse_braid("s4^-1 s5^2 s2 s1^-2", 6);
  BraidWord b2 = braid_commutator(d1.inverse() * parse_braid("s3", 6) * d1,
                                  d2.inverse() * parse_braid("s3", 6) * d2);
  return {b1, b2};
}

struct KernelReport {
  bool b1_identity = false;
  bool b2_identity = false;
  bool ok = false;
  std::string convention = "[a,b] = a^-1 b^-1 a b";
};

inline KernelReport kernel_check() {
  KernelReport rpt;
  auto [b1, b2] = bigelow_words();
  rpt.b1_identity = braid_matrix(LinearRep::Burau, b1).is_identity();
  rpt.b2_identity = braid_matrix(LinearRep::Burau, b2).is_identity();
  rpt.ok = rpt.b1_identity && rpt.b2_identity;
  return rpt;
}

}  // namespace mgd
