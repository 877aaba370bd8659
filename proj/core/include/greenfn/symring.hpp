#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace greenfn {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string rational_string(const Rational& r);  // always "num/den"

class RationalPoly {
 public:
  RationalPoly() = default;
  RationalPoly(const Rational& c);
  RationalPoly(long c) : RationalPoly(Rational(c)) {}

  static RationalPoly monomial(const Rational& c, unsigned k);
  static RationalPoly q(unsigned k = 1) { return monomial(1, k); }
  static RationalPoly cyclotomic(unsigned n);

  const std::map<unsigned, Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }
  int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.rbegin()->first); }
  unsigned low_degree() const { return c_.empty() ? 0 : c_.begin()->first; }
  Rational coeff(unsigned k) const;
  Rational leading() const { return c_.empty() ? Rational(0) : c_.rbegin()->second; }
  Rational content() const;  // positive; numerator gcd over denominator lcm

  RationalPoly operator-() const;
  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& c);
  RationalPoly& operator/=(const Rational& c);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
  friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
  friend RationalPoly operator/(RationalPoly a, const Rational& c) { return a /= c; }
  bool operator==(const RationalPoly& o) const;
  bool operator!=(const RationalPoly& o) const { return !(*this == o); }

  Rational operator()(const Rational& x) const;
  RationalPoly derivative() const;
  RationalPoly compose_linear(const Rational& a, const Rational& b) const;  // p(a*q + b)
  RationalPoly monic() const;

  static std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);
  static RationalPoly gcd(RationalPoly a, RationalPoly b);  // monic, gcd(0,0) = 0

 private:
  std::map<unsigned, Rational> c_;
};

std::string expanded_string(const RationalPoly& p);

// Rational function num/den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const RationalPoly& p) : num_(p), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}
  RatFunc(RationalPoly num, RationalPoly den);

  const RationalPoly& num() const { return num_; }
  const RationalPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  RationalPoly as_polynomial() const;  // throws unless is_polynomial()

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  Rational operator()(const Rational& x) const;

 private:
  RationalPoly num_, den_;
};

std::string ratfunc_string(const RatFunc& f);

// Sorted set of sign indeterminate names; a_i^2 = 1.
using SignMonomial = std::vector<std::string>;
SignMonomial sign_product(const SignMonomial& a, const SignMonomial& b);

template <class C>
class SignLinear {
 public:
  using Terms = std::map<SignMonomial, C>;
  SignLinear() = default;
  SignLinear(const C& c) { add_term({}, c); }
  SignLinear(long c) : SignLinear(C(c)) {}
  static SignLinear indeterminate(const std::string& name) {
    SignLinear s;
    s.add_term({name}, C(1));
    return s;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_sign_free() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
  C sign_free_part() const {
    auto it = t_.find({});
    return it == t_.end() ? C() : it->second;
  }
  std::vector<std::string> indeterminates() const {
    std::vector<std::string> out;
    for (auto& [m, c] : t_)
      for (auto& n : m)
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
  }

  void add_term(const SignMonomial& m, const C& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  SignLinear operator-() const {
    SignLinear r;
    for (auto& [m, c] : t_) r.t_.emplace(m, -c);
    return r;
  }
  SignLinear& operator+=(const SignLinear& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  SignLinear& operator-=(const SignLinear& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend SignLinear operator+(SignLinear a, const SignLinear& b) { return a += b; }
  friend SignLinear operator-(SignLinear a, const SignLinear& b) { return a -= b; }
  friend SignLinear operator*(const SignLinear& a, const SignLinear& b) {
    SignLinear r;
    for (auto& [m1, c1] : a.t_)
      for (auto& [m2, c2] : b.t_) r.add_term(sign_product(m1, m2), c1 * c2);
    return r;
  }
  SignLinear& operator*=(const SignLinear& o) { return *this = *this * o; }
  SignLinear scaled(const C& c) const {
    SignLinear r;
    for (auto& [m, x] : t_) r.add_term(m, x * c);
    return r;
  }
  bool operator==(const SignLinear& o) const { return t_ == o.t_; }
  bool operator!=(const SignLinear& o) const { return !(*this == o); }

 private:
  Terms t_;
};

using SignExpr = SignLinear<RationalPoly>;
using SignFrac = SignLinear<RatFunc>;

SignFrac to_frac(const SignExpr& x);
SignExpr to_poly(const SignFrac& x);  // throws if some coefficient is not a polynomial

inline constexpr int kModulus = 4;
inline constexpr int kResidues[2] = {1, 3};
int residue_slot(int r);  // 1 -> 0, 3 -> 1

class SymExpr {
 public:
  SymExpr() : b_(1) {}
  SymExpr(const SignExpr& x) : b_{x} {}
  SymExpr(const RationalPoly& p) : b_{SignExpr(p)} {}
  SymExpr(long c) : b_{SignExpr(c)} {}
  SymExpr(const SignExpr& r1, const SignExpr& r3);

  bool is_split() const { return b_.size() == 2; }
  const SignExpr& branch(int r) const { return b_.size() == 1 ? b_[0] : b_[residue_slot(r)]; }
  const SignExpr& single() const;
  bool is_zero() const { return !is_split() && b_[0].is_zero(); }
  bool is_sign_free() const;
  std::vector<std::string> indeterminates() const;

  SymExpr operator-() const;
  friend SymExpr operator+(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator-(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
  SymExpr& operator+=(const SymExpr& o) { return *this = *this + o; }
  SymExpr& operator-=(const SymExpr& o) { return *this = *this - o; }
  SymExpr& operator*=(const SymExpr& o) { return *this = *this * o; }
  SymExpr scalar_div(const Rational& c) const;
  bool operator==(const SymExpr& o) const { return b_ == o.b_; }
  bool operator!=(const SymExpr& o) const { return !(*this == o); }

 private:
  void normalize();
  std::vector<SignExpr> b_;
};

class SignAssignment {
 public:
  void set(const std::string& name, int value);
  void set(const std::string& name, int residue, int value);
  bool has(const std::string& name, int residue) const;
  int value(const std::string& name, int residue) const;
  bool residue_dependent(const std::string& name) const;
  std::vector<std::string> names() const;
  bool operator==(const SignAssignment& o) const {
    return common_ == o.common_ && by_residue_ == o.by_residue_;
  }

 private:
  std::map<std::string, int> common_;
  std::map<int, std::map<std::string, int>> by_residue_;
};

// All indeterminates must be assigned.
SymExpr substitute(const SymExpr& x, const SignAssignment& s);
// Only the assigned indeterminates are replaced.
SymExpr specialize(const SymExpr& x, const SignAssignment& s);
SignExpr specialize(const SignExpr& x, const std::map<std::string, int>& values);

Rational eval_at(const SymExpr& x, long q0);

std::string cyclotomic_display(const SymExpr& x);
std::string cyclotomic_display(const SignExpr& x);
std::string cyclotomic_display(const RationalPoly& p);
SymExpr parse_display(const std::string& s);

bool check_nonneg(const RationalPoly& p, const Rational& q_min);
bool check_nonneg(const SymExpr& x, long q_min);
bool check_integral(const RationalPoly& p, int residue);
bool check_integral(const SymExpr& x);
bool check_integral(const SymExpr& x, int residue);

nlohmann::json to_json(const RationalPoly& p);
RationalPoly poly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SymExpr& x);
SymExpr symexpr_from_json(const nlohmann::json& j);

}  // namespace greenfn
