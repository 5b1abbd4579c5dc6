#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace knotheta {

using Int = mpz_class;
using Rat = mpq_class;

class LaurentPoly2;

enum class SubstTarget { T1, T2, T1T2 };

// Integer-coefficient Laurent polynomial in one variable T.
// Stored as a dense window; the exponent map is the contract, the window is
// an implementation detail.  Canonical form never stores leading/trailing
// zeros.
class LaurentPoly1 {
 public:
  LaurentPoly1() = default;  // zero
  static LaurentPoly1 constant(long v) { return monomial(Int(v), 0); }
  static LaurentPoly1 monomial(Int c, int e);
  static LaurentPoly1 variable() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  int lo() const;  // lowest exponent; requires non-zero
  int hi() const;
  Int coeff(int e) const;
  int term_count() const;

  LaurentPoly1& operator+=(const LaurentPoly1& o);
  LaurentPoly1& operator-=(const LaurentPoly1& o);
  LaurentPoly1 operator-() const;
  friend LaurentPoly1 operator+(LaurentPoly1 a, const LaurentPoly1& b) { return a += b; }
  friend LaurentPoly1 operator-(LaurentPoly1 a, const LaurentPoly1& b) { return a -= b; }
  friend LaurentPoly1 operator*(const LaurentPoly1& a, const LaurentPoly1& b);
  LaurentPoly1& operator*=(const LaurentPoly1& o) { return *this = *this * o; }
  LaurentPoly1 scaled(const Int& k) const;
  LaurentPoly1 shifted(int e) const;  // multiply by T^e
  bool operator==(const LaurentPoly1& o) const { return lo_ == o.lo_ && c_ == o.c_; }

  Rat eval(const Rat& at) const;  // exact; rejects at == 0
  LaurentPoly1 derivative(int order = 1) const;

  // The unique +-T^m multiple that is symmetric under T <-> 1/T with value
  // +1 at T=1.  Throws if no such unit exists or the value at 1 is not +-1.
  LaurentPoly1 normalized_symmetric() const;

  std::optional<LaurentPoly1> exact_div(const LaurentPoly1& den) const;

  LaurentPoly2 substituted(SubstTarget target) const;

  std::string str() const;  // canonical grammar, variable "T"
  static LaurentPoly1 parse(std::string_view text);

 private:
  int lo_ = 0;
  std::vector<Int> c_;  // c_[k] = coeff of T^(lo_+k)
  void trim();
  friend class TrafficSolver;
};

// Rational-coefficient Laurent polynomial in T1, T2 (T3 := T1*T2 is the
// monomial (1,1)).  Terms kept sorted by (e1,e2) lexicographic.
class LaurentPoly2 {
 public:
  struct Term {
    int e1, e2;
    Rat c;
    bool operator==(const Term& o) const { return e1 == o.e1 && e2 == o.e2 && c == o.c; }
  };

  LaurentPoly2() = default;  // zero
  static LaurentPoly2 constant(const Rat& c) { return monomial(c, 0, 0); }
  static LaurentPoly2 monomial(Rat c, int e1, int e2);

  bool is_zero() const { return t_.empty(); }
  const std::vector<Term>& terms() const { return t_; }
  Rat coeff(int e1, int e2) const;
  int term_count() const { return (int)t_.size(); }

  LaurentPoly2& operator+=(const LaurentPoly2& o);
  LaurentPoly2& operator-=(const LaurentPoly2& o);
  LaurentPoly2 operator-() const;
  friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
  friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
  friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);
  LaurentPoly2& operator*=(const LaurentPoly2& o) { return *this = *this * o; }
  LaurentPoly2 scaled(const Rat& k) const;
  LaurentPoly2 mono_mul(const Rat& c, int e1, int e2) const;
  bool operator==(const LaurentPoly2& o) const { return t_ == o.t_; }

  Rat eval(const Rat& at1, const Rat& at2) const;

  // quotient q with q*den == *this, or nullopt
  std::optional<LaurentPoly2> exact_div(const LaurentPoly2& den) const;

  bool all_integer_coeffs() const;

  std::string str() const;  // canonical grammar, variables "T1","T2"
  static LaurentPoly2 parse(std::string_view text);

  // construction helper used by substitution and the theta pipeline
  static LaurentPoly2 from_sorted_terms(std::vector<Term> terms);

 private:
  std::vector<Term> t_;
  void normalize();
};

LaurentPoly2 try_exact_divide_or_throw(const LaurentPoly2& num, const LaurentPoly2& den,
                                       const char* what);

// Quotient of Laurent polynomials with the denominator kept as a multiset of
// tracked factors; empty denominator means the value is a polynomial.
class RatFun {
 public:
  RatFun() = default;  // zero
  RatFun(LaurentPoly2 num) : num_(std::move(num)) {}
  RatFun(LaurentPoly2 num, std::vector<LaurentPoly2> den);

  const LaurentPoly2& num() const { return num_; }
  const std::vector<LaurentPoly2>& den_factors() const { return den_; }
  bool is_polynomial() const { return den_.empty(); }
  bool is_zero() const { return num_.is_zero(); }

  RatFun operator+(const RatFun& o) const;
  RatFun operator-() const;
  RatFun operator-(const RatFun& o) const { return *this + (-o); }
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;  // throws on zero divisor
  bool equals(const RatFun& o) const;       // exact equality as rational functions

  // cancel denominator factors that divide the numerator exactly
  void simplify();
  // polynomial value after full cancellation, or nullopt
  std::optional<LaurentPoly2> as_polynomial() const;

 private:
  LaurentPoly2 num_;
  std::vector<LaurentPoly2> den_;
};

}  // namespace knotheta
