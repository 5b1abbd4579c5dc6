#include "knotheta/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace knotheta {

// ---------------------------------------------------------------------------
// LaurentPoly1
// ---------------------------------------------------------------------------

void LaurentPoly1::trim() {
  size_t a = 0, b = c_.size();
  while (b > a && c_[b - 1] == 0) --b;
  while (a < b && c_[a] == 0) ++a;
  if (a == b) {
    c_.clear();
    lo_ = 0;
    return;
  }
  if (a > 0 || b < c_.size()) c_ = std::vector<Int>(c_.begin() + a, c_.begin() + b);
  lo_ += (int)a;
}

LaurentPoly1 LaurentPoly1::monomial(Int c, int e) {
  LaurentPoly1 p;
  if (c != 0) {
    p.lo_ = e;
    p.c_ = {std::move(c)};
  }
  return p;
}

int LaurentPoly1::lo() const {
  if (is_zero()) throw std::logic_error("lo() of zero polynomial");
  return lo_;
}

int LaurentPoly1::hi() const {
  if (is_zero()) throw std::logic_error("hi() of zero polynomial");
  return lo_ + (int)c_.size() - 1;
}

Int LaurentPoly1::coeff(int e) const {
  if (is_zero() || e < lo_ || e >= lo_ + (int)c_.size()) return 0;
  return c_[e - lo_];
}

int LaurentPoly1::term_count() const {
  int n = 0;
  for (const auto& x : c_)
    if (x != 0) n++;
  return n;
}

LaurentPoly1& LaurentPoly1::operator+=(const LaurentPoly1& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int lo = std::min(lo_, o.lo_);
  int hi = std::max(lo_ + (int)c_.size(), o.lo_ + (int)o.c_.size());
  std::vector<Int> out((size_t)(hi - lo));
  for (size_t i = 0; i < c_.size(); i++) out[lo_ - lo + i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); i++) out[o.lo_ - lo + i] += o.c_[i];
  lo_ = lo;
  c_ = std::move(out);
  trim();
  return *this;
}

LaurentPoly1& LaurentPoly1::operator-=(const LaurentPoly1& o) { return *this += -o; }

LaurentPoly1 LaurentPoly1::operator-() const {
  LaurentPoly1 r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

LaurentPoly1 operator*(const LaurentPoly1& a, const LaurentPoly1& b) {
  if (a.is_zero() || b.is_zero()) return {};
  LaurentPoly1 r;
  r.lo_ = a.lo_ + b.lo_;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Int(0));
  for (size_t i = 0; i < a.c_.size(); i++) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); j++) {
      if (b.c_[j] == 0) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

LaurentPoly1 LaurentPoly1::scaled(const Int& k) const {
  if (k == 0) return {};
  LaurentPoly1 r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

LaurentPoly1 LaurentPoly1::shifted(int e) const {
  LaurentPoly1 r = *this;
  if (!r.is_zero()) r.lo_ += e;
  return r;
}

Rat LaurentPoly1::eval(const Rat& at) const {
  if (at == 0) throw std::invalid_argument("evaluation at 0 is not defined for Laurent polynomials");
  // Horner over the window, then shift by at^lo
  Rat acc(0);
  for (size_t i = c_.size(); i-- > 0;) {
    acc *= at;
    acc += Rat(c_[i]);
  }
  if (is_zero()) return Rat(0);
  Rat shift(1);
  Rat base = lo_ >= 0 ? at : Rat(1) / at;
  for (int k = 0; k < std::abs(lo_); k++) shift *= base;
  return acc * shift;
}

LaurentPoly1 LaurentPoly1::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  LaurentPoly1 p = *this;
  for (int k = 0; k < order; k++) {
    if (p.is_zero()) return p;
    LaurentPoly1 d;
    d.lo_ = p.lo_ - 1;
    d.c_.assign(p.c_.size(), Int(0));
    for (size_t i = 0; i < p.c_.size(); i++) d.c_[i] = p.c_[i] * (p.lo_ + (int)i);
    d.trim();
    p = std::move(d);
  }
  return p;
}

LaurentPoly1 LaurentPoly1::normalized_symmetric() const {
  if (is_zero()) throw std::runtime_error("normalize_symmetric: zero polynomial");
  Int at1(0);
  for (const auto& x : c_) at1 += x;
  if (at1 != 1 && at1 != -1)
    throw std::runtime_error("normalize_symmetric: value at T=1 is not +-1");
  LaurentPoly1 p = *this;
  if (at1 == -1)
    for (auto& x : p.c_) x = -x;
  // the only unit T^m that can center the support
  int span = (int)p.c_.size() - 1;
  if (span % 2 != 0)
    throw std::runtime_error("normalize_symmetric: no unit makes the support symmetric");
  p.lo_ = -span / 2;
  for (size_t i = 0; i < p.c_.size(); i++)
    if (p.c_[i] != p.c_[p.c_.size() - 1 - i])
      throw std::runtime_error("normalize_symmetric: polynomial is not +-T^k symmetric");
  return p;
}

std::optional<LaurentPoly1> LaurentPoly1::exact_div(const LaurentPoly1& den) const {
  if (den.is_zero()) throw std::invalid_argument("exact_div by zero");
  if (is_zero()) return LaurentPoly1{};
  if (c_.size() < den.c_.size()) return std::nullopt;
  std::vector<Int> rem = c_;
  std::vector<Int> q(c_.size() - den.c_.size() + 1);
  const Int& lead = den.c_.back();
  for (int i = (int)rem.size() - 1; i >= (int)den.c_.size() - 1; --i) {
    if (rem[i] == 0) continue;
    Int f, r;
    mpz_tdiv_qr(f.get_mpz_t(), r.get_mpz_t(), rem[i].get_mpz_t(), lead.get_mpz_t());
    if (r != 0) return std::nullopt;
    q[i - (int)den.c_.size() + 1] = f;
    for (size_t j = 0; j < den.c_.size(); j++) rem[i - den.c_.size() + 1 + j] -= f * den.c_[j];
  }
  for (const auto& x : rem)
    if (x != 0) return std::nullopt;
  LaurentPoly1 out;
  out.lo_ = lo_ - den.lo_;
  out.c_ = std::move(q);
  out.trim();
  return out;
}

LaurentPoly2 LaurentPoly1::substituted(SubstTarget target) const {
  std::vector<LaurentPoly2::Term> terms;
  terms.reserve(c_.size());
  for (size_t i = 0; i < c_.size(); i++) {
    if (c_[i] == 0) continue;
    int e = lo_ + (int)i;
    int e1 = 0, e2 = 0;
    switch (target) {
      case SubstTarget::T1: e1 = e; break;
      case SubstTarget::T2: e2 = e; break;
      case SubstTarget::T1T2: e1 = e2 = e; break;
    }
    terms.push_back({e1, e2, Rat(c_[i])});
  }
  // ascending e gives ascending (e1,e2) lex for all three targets
  return LaurentPoly2::from_sorted_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// text grammar, shared by both arities
// ---------------------------------------------------------------------------
namespace {

void append_rat(std::string& s, const Rat& c) {
  s += c.get_num().get_str();
  if (c.get_den() != 1) {
    s += "/";
    s += c.get_den().get_str();
  }
}

// one term: sign handled by caller; prints |c| and variable factors
void append_term(std::string& s, const Rat& cabs, std::initializer_list<std::pair<const char*, int>> vars) {
  bool havevar = false;
  for (auto& [name, e] : vars)
    if (e != 0) havevar = true;
  if (!havevar || cabs != 1) append_rat(s, cabs);
  bool first = !havevar || cabs != 1;
  for (auto& [name, e] : vars) {
    if (e == 0) continue;
    if (!first) s += "*";
    s += name;
    s += "^";
    s += std::to_string(e);
    first = false;
  }
}

struct Tok {
  enum Kind { Num, Var, Caret, Star, Plus, Minus, End } kind;
  Rat num;
  std::string var;
  int exp = 0;
};

struct Lexer {
  std::string_view s;
  size_t i = 0;
  void skipws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
  }
  Tok next() {
    skipws();
    if (i >= s.size()) return {Tok::End};
    char ch = s[i];
    if (ch == '+') { i++; return {Tok::Plus}; }
    if (ch == '-') { i++; return {Tok::Minus}; }
    if (ch == '*') { i++; return {Tok::Star}; }
    if (ch == '^') { i++; return {Tok::Caret}; }
    if (std::isdigit((unsigned char)ch)) {
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) j++;
      std::string nums(s.substr(i, j - i));
      i = j;
      skipws();
      if (i < s.size() && s[i] == '/') {
        size_t k = i + 1;
        while (k < s.size() && std::isspace((unsigned char)s[k])) k++;
        size_t j2 = k;
        while (j2 < s.size() && std::isdigit((unsigned char)s[j2])) j2++;
        if (j2 > k) {
          nums += "/" + std::string(s.substr(k, j2 - k));
          i = j2;
        }
      }
      Tok t{Tok::Num};
      t.num = Rat(nums);
      t.num.canonicalize();
      return t;
    }
    if (ch == 'T') {
      size_t j = i + 1;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) j++;
      Tok t{Tok::Var};
      t.var = std::string(s.substr(i, j - i));
      i = j;
      return t;
    }
    throw std::runtime_error("polynomial parse error at position " + std::to_string(i));
  }
  // signed integer after '^'
  int parse_exp() {
    skipws();
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      i++;
    }
    skipws();
    if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
      throw std::runtime_error("polynomial parse error: exponent expected at position " +
                               std::to_string(i));
    long v = 0;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
    return (int)(neg ? -v : v);
  }
};

struct ParsedTerm {
  Rat c;
  int e1 = 0, e2 = 0;  // for univariate only e1 is used (variable "T")
};

std::vector<ParsedTerm> parse_terms(std::string_view text, bool bivariate) {
  std::vector<ParsedTerm> out;
  Lexer lx{text};
  Tok t = lx.next();
  if (t.kind == Tok::End) throw std::runtime_error("polynomial parse error: empty input");
  bool negate = false;
  if (t.kind == Tok::Plus || t.kind == Tok::Minus) {
    negate = t.kind == Tok::Minus;
    t = lx.next();
  }
  while (true) {
    ParsedTerm term;
    term.c = negate ? Rat(-1) : Rat(1);
    bool sawfactor = false, sawcoeff = false;
    while (true) {
      if (t.kind == Tok::Num) {
        if (sawcoeff) throw std::runtime_error("polynomial parse error: two coefficients in term");
        term.c *= t.num;
        sawcoeff = sawfactor = true;
      } else if (t.kind == Tok::Var) {
        int e = 1;
        std::string var = t.var;
        size_t save = lx.i;
        Tok nt = lx.next();
        if (nt.kind == Tok::Caret) {
          e = lx.parse_exp();
        } else {
          lx.i = save;
        }
        if (!bivariate) {
          if (var != "T") throw std::runtime_error("polynomial parse error: expected variable T");
          term.e1 += e;
        } else {
          if (var == "T1")
            term.e1 += e;
          else if (var == "T2")
            term.e2 += e;
          else
            throw std::runtime_error("polynomial parse error: expected variable T1 or T2");
        }
        sawfactor = true;
      } else {
        break;
      }
      size_t save = lx.i;
      Tok nt = lx.next();
      if (nt.kind == Tok::Star) {
        t = lx.next();
        continue;
      }
      lx.i = save;
      t = lx.next();
      break;
    }
    if (!sawfactor) throw std::runtime_error("polynomial parse error: empty term");
    out.push_back(term);
    if (t.kind == Tok::End) break;
    if (t.kind == Tok::Plus)
      negate = false;
    else if (t.kind == Tok::Minus)
      negate = true;
    else
      throw std::runtime_error("polynomial parse error: expected + or - between terms");
    t = lx.next();
  }
  return out;
}

}  // namespace

std::string LaurentPoly1::str() const {
  if (is_zero()) return "0";
  std::string s;
  bool first = true;
  for (size_t i = 0; i < c_.size(); i++) {
    if (c_[i] == 0) continue;
    Rat c(c_[i]);
    bool neg = c < 0;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    Rat cabs = neg ? Rat(-c) : c;
    append_term(s, cabs, {{"T", lo_ + (int)i}});
    first = false;
  }
  return s;
}

LaurentPoly1 LaurentPoly1::parse(std::string_view text) {
  LaurentPoly1 p;
  if (text == "0") return p;
  for (const auto& t : parse_terms(text, false)) {
    if (t.c.get_den() != 1)
      throw std::runtime_error("polynomial parse error: integer coefficient expected");
    p += monomial(t.c.get_num(), t.e1);
  }
  return p;
}

// ---------------------------------------------------------------------------
// LaurentPoly2
// ---------------------------------------------------------------------------

void LaurentPoly2::normalize() {
  std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) {
    return a.e1 != b.e1 ? a.e1 < b.e1 : a.e2 < b.e2;
  });
  std::vector<Term> out;
  out.reserve(t_.size());
  for (auto& t : t_) {
    if (!out.empty() && out.back().e1 == t.e1 && out.back().e2 == t.e2)
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
    if (!out.empty() && out.back().c == 0) out.pop_back();
  }
  t_ = std::move(out);
}

LaurentPoly2 LaurentPoly2::monomial(Rat c, int e1, int e2) {
  LaurentPoly2 p;
  if (c != 0) p.t_.push_back({e1, e2, std::move(c)});
  return p;
}

LaurentPoly2 LaurentPoly2::from_sorted_terms(std::vector<Term> terms) {
  LaurentPoly2 p;
  p.t_ = std::move(terms);
  return p;
}

Rat LaurentPoly2::coeff(int e1, int e2) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), std::pair<int, int>{e1, e2},
                             [](const Term& a, const std::pair<int, int>& k) {
                               return a.e1 != k.first ? a.e1 < k.first : a.e2 < k.second;
                             });
  if (it != t_.end() && it->e1 == e1 && it->e2 == e2) return it->c;
  return Rat(0);
}

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& o) {
  if (o.is_zero()) return *this;
  std::vector<Term> merged;
  merged.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    bool takeA;
    if (i >= t_.size())
      takeA = false;
    else if (j >= o.t_.size())
      takeA = true;
    else {
      const Term &a = t_[i], &b = o.t_[j];
      if (a.e1 == b.e1 && a.e2 == b.e2) {
        Rat c = a.c + b.c;
        if (c != 0) merged.push_back({a.e1, a.e2, std::move(c)});
        i++;
        j++;
        continue;
      }
      takeA = a.e1 != b.e1 ? a.e1 < b.e1 : a.e2 < b.e2;
    }
    merged.push_back(takeA ? t_[i++] : o.t_[j++]);
  }
  t_ = std::move(merged);
  return *this;
}

LaurentPoly2& LaurentPoly2::operator-=(const LaurentPoly2& o) { return *this += -o; }

LaurentPoly2 LaurentPoly2::operator-() const {
  LaurentPoly2 r = *this;
  for (auto& t : r.t_) t.c = -t.c;
  return r;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::map<std::pair<int, int>, Rat> acc;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) acc[{x.e1 + y.e1, x.e2 + y.e2}] += x.c * y.c;
  std::vector<LaurentPoly2::Term> terms;
  terms.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (c != 0) terms.push_back({k.first, k.second, std::move(c)});
  return LaurentPoly2::from_sorted_terms(std::move(terms));
}

LaurentPoly2 LaurentPoly2::scaled(const Rat& k) const {
  if (k == 0) return {};
  LaurentPoly2 r = *this;
  for (auto& t : r.t_) t.c *= k;
  return r;
}

LaurentPoly2 LaurentPoly2::mono_mul(const Rat& c, int e1, int e2) const {
  if (c == 0) return {};
  LaurentPoly2 r = *this;
  for (auto& t : r.t_) {
    t.c *= c;
    t.e1 += e1;
    t.e2 += e2;
  }
  return r;
}

Rat LaurentPoly2::eval(const Rat& at1, const Rat& at2) const {
  if (at1 == 0 || at2 == 0) throw std::invalid_argument("evaluation at 0");
  auto power = [](const Rat& b, int e) {
    Rat r(1), base = e >= 0 ? b : Rat(1) / b;
    for (int k = 0; k < std::abs(e); k++) r *= base;
    return r;
  };
  Rat acc(0);
  for (const auto& t : t_) acc += t.c * power(at1, t.e1) * power(at2, t.e2);
  return acc;
}

bool LaurentPoly2::all_integer_coeffs() const {
  for (const auto& t : t_)
    if (t.c.get_den() != 1) return false;
  return true;
}

std::optional<LaurentPoly2> LaurentPoly2::exact_div(const LaurentPoly2& den) const {
  if (den.is_zero()) throw std::invalid_argument("exact_div by zero");
  if (is_zero()) return LaurentPoly2{};
  // shift both operands to nonnegative exponents, divide with lex leading terms
  auto mins = [](const LaurentPoly2& p) {
    int m1 = p.t_[0].e1, m2 = p.t_[0].e2;
    for (const auto& t : p.t_) {
      m1 = std::min(m1, t.e1);
      m2 = std::min(m2, t.e2);
    }
    return std::pair<int, int>{m1, m2};
  };
  auto [n1, n2] = mins(*this);
  auto [d1, d2] = mins(den);
  LaurentPoly2 r = this->mono_mul(1, -n1, -n2);
  LaurentPoly2 d = den.mono_mul(1, -d1, -d2);
  const Term& dl = d.t_.back();  // lex-leading
  LaurentPoly2 q;
  while (!r.is_zero()) {
    const Term& rl = r.t_.back();
    if (rl.e1 < dl.e1 || rl.e2 < dl.e2) return std::nullopt;
    Rat c = rl.c / dl.c;
    int e1 = rl.e1 - dl.e1, e2 = rl.e2 - dl.e2;
    q += monomial(c, e1, e2);
    r -= d.mono_mul(c, e1, e2);
  }
  return q.mono_mul(1, n1 - d1, n2 - d2);
}

std::string LaurentPoly2::str() const {
  if (is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : t_) {
    bool neg = t.c < 0;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    Rat cabs = neg ? Rat(-t.c) : t.c;
    append_term(s, cabs, {{"T1", t.e1}, {"T2", t.e2}});
    first = false;
  }
  return s;
}

LaurentPoly2 LaurentPoly2::parse(std::string_view text) {
  LaurentPoly2 p;
  if (text == "0") return p;
  for (const auto& t : parse_terms(text, true)) p += monomial(t.c, t.e1, t.e2);
  return p;
}

LaurentPoly2 try_exact_divide_or_throw(const LaurentPoly2& num, const LaurentPoly2& den,
                                       const char* what) {
  auto q = num.exact_div(den);
  if (!q) throw std::runtime_error(std::string("denominator did not clear: ") + what);
  return *q;
}

// ---------------------------------------------------------------------------
// RatFun
// ---------------------------------------------------------------------------

RatFun::RatFun(LaurentPoly2 num, std::vector<LaurentPoly2> den)
    : num_(std::move(num)), den_(std::move(den)) {
  for (const auto& f : den_)
    if (f.is_zero()) throw std::invalid_argument("RatFun: zero denominator factor");
  if (num_.is_zero()) den_.clear();
}

static std::vector<LaurentPoly2> multiset_diff(const std::vector<LaurentPoly2>& a,
                                               const std::vector<LaurentPoly2>& b) {
  std::vector<LaurentPoly2> out = a;
  for (const auto& f : b) {
    auto it = std::find(out.begin(), out.end(), f);
    if (it != out.end()) out.erase(it);
  }
  return out;
}

RatFun RatFun::operator+(const RatFun& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  // common denominator: multiset max = den_ + (o.den_ \ den_)
  std::vector<LaurentPoly2> extraMine = multiset_diff(o.den_, den_);   // multiply my num
  std::vector<LaurentPoly2> extraTheirs = multiset_diff(den_, o.den_); // multiply their num
  LaurentPoly2 a = num_;
  for (const auto& f : extraMine) a *= f;
  LaurentPoly2 b = o.num_;
  for (const auto& f : extraTheirs) b *= f;
  std::vector<LaurentPoly2> den = den_;
  for (const auto& f : extraMine) den.push_back(f);
  RatFun r(a + b, std::move(den));
  r.simplify();
  return r;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::operator*(const RatFun& o) const {
  if (is_zero() || o.is_zero()) return RatFun();
  std::vector<LaurentPoly2> den = den_;
  den.insert(den.end(), o.den_.begin(), o.den_.end());
  RatFun r(num_ * o.num_, std::move(den));
  r.simplify();
  return r;
}

RatFun RatFun::operator/(const RatFun& o) const {
  if (o.is_zero()) throw std::invalid_argument("RatFun division by zero");
  if (is_zero()) return RatFun();
  LaurentPoly2 num = num_;
  for (const auto& f : o.den_) num *= f;
  std::vector<LaurentPoly2> den = den_;
  den.push_back(o.num_);
  RatFun r(std::move(num), std::move(den));
  r.simplify();
  return r;
}

bool RatFun::equals(const RatFun& o) const {
  LaurentPoly2 a = num_;
  for (const auto& f : o.den_) a *= f;
  LaurentPoly2 b = o.num_;
  for (const auto& f : den_) b *= f;
  return a == b;
}

void RatFun::simplify() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < den_.size(); i++) {
      auto q = num_.exact_div(den_[i]);
      if (q) {
        num_ = std::move(*q);
        den_.erase(den_.begin() + i);
        progress = true;
        break;
      }
    }
  }
}

std::optional<LaurentPoly2> RatFun::as_polynomial() const {
  RatFun r = *this;
  r.simplify();
  if (!r.den_.empty()) return std::nullopt;
  return r.num_;
}

}  // namespace knotheta
