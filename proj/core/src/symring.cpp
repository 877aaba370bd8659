#include "greenfn/symring.hpp"

#include <cctype>
#include <sstream>

namespace greenfn {

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

std::string rational_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// ---------------------------------------------------------------- RationalPoly

// GMP arithmetic assumes canonical operands, and mpq_class(n, d) does not reduce.
RationalPoly::RationalPoly(const Rational& c) {
  if (c != 0) c_.emplace(0u, c).first->second.canonicalize();
}

RationalPoly RationalPoly::monomial(const Rational& c, unsigned k) {
  RationalPoly p;
  if (c != 0) p.c_.emplace(k, c).first->second.canonicalize();
  return p;
}

RationalPoly RationalPoly::cyclotomic(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic index 0");
  // q^n - 1 divided by the cyclotomic factors of the proper divisors
  RationalPoly p = q(n) - RationalPoly(1);
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) p = divmod(p, cyclotomic(d)).first;
  return p;
}

Rational RationalPoly::coeff(unsigned k) const {
  auto it = c_.find(k);
  return it == c_.end() ? Rational(0) : it->second;
}

Rational RationalPoly::content() const {
  if (c_.empty()) return 0;
  mpz_class g = 0, l = 1;
  for (auto& [k, c] : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational r(g, l);
  r.canonicalize();
  return abs(r);
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly r;
  for (auto& [k, c] : c_) r.c_.emplace_hint(r.c_.end(), k, -c);
  return r;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  for (auto& [k, c] : o.c_) {
    auto [it, fresh] = c_.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  for (auto& [k, c] : o.c_) {
    auto [it, fresh] = c_.emplace(k, -c);
    if (!fresh) {
      it->second -= c;
      if (it->second == 0) c_.erase(it);
    }
  }
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  std::vector<Rational> acc(a.degree() + b.degree() + 1);
  std::vector<bool> touched(acc.size(), false);
  for (auto& [i, x] : a.c_)
    for (auto& [j, y] : b.c_) {
      acc[i + j] += x * y;
      touched[i + j] = true;
    }
  for (size_t k = 0; k < acc.size(); ++k)
    if (touched[k] && acc[k] != 0) r.c_.emplace_hint(r.c_.end(), static_cast<unsigned>(k), acc[k]);
  return r;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& o) { return *this = *this * o; }

RationalPoly& RationalPoly::operator*=(const Rational& c) {
  if (c == 0) {
    c_.clear();
    return *this;
  }
  for (auto& [k, x] : c_) x *= c;
  return *this;
}

RationalPoly& RationalPoly::operator/=(const Rational& c) {
  if (c == 0) throw std::domain_error("division by zero rational");
  for (auto& [k, x] : c_) x /= c;
  return *this;
}

bool RationalPoly::operator==(const RationalPoly& o) const { return c_ == o.c_; }

Rational RationalPoly::operator()(const Rational& x0) const {
  Rational x = x0, acc = 0;
  x.canonicalize();
  int d = degree();
  for (int k = d; k >= 0; --k) {
    acc *= x;
    acc += coeff(static_cast<unsigned>(k));
  }
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  RationalPoly r;
  for (auto& [k, c] : c_)
    if (k > 0) r.c_.emplace_hint(r.c_.end(), k - 1, c * k);
  return r;
}

RationalPoly RationalPoly::compose_linear(const Rational& a, const Rational& b) const {
  RationalPoly lin = monomial(a, 1) + RationalPoly(b);
  RationalPoly r;
  for (int k = degree(); k >= 0; --k) {
    r = r * lin;
    r += RationalPoly(coeff(static_cast<unsigned>(k)));
  }
  return r;
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return *this;
  return *this / leading();
}

std::pair<RationalPoly, RationalPoly> RationalPoly::divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  RationalPoly quo, rem = a;
  const int db = b.degree();
  const Rational lb = b.leading();
  while (!rem.is_zero() && rem.degree() >= db) {
    unsigned shift = static_cast<unsigned>(rem.degree() - db);
    Rational f = rem.leading() / lb;
    quo.c_.emplace(shift, f);
    for (auto& [k, c] : b.c_) {
      auto [it, fresh] = rem.c_.emplace(k + shift, -f * c);
      if (!fresh) {
        it->second -= f * c;
        if (it->second == 0) rem.c_.erase(it);
      }
    }
  }
  return {quo, rem};
}

RationalPoly RationalPoly::gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    RationalPoly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::string expanded_string(const RationalPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    auto [k, c] = *it;
    if (c < 0)
      out += "-";
    else if (!first)
      out += "+";
    first = false;
    Rational a = abs(c);
    if (k == 0) {
      out += a.get_str();
      continue;
    }
    if (a != 1) out += a.get_str() + "*";
    out += k == 1 ? "q" : "q^" + std::to_string(k);
  }
  return out;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(RationalPoly num, RationalPoly den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = RationalPoly(1);
    return;
  }
  if (!den.is_constant()) {
    RationalPoly g = RationalPoly::gcd(num, den);
    if (g.degree() > 0) {
      num = RationalPoly::divmod(num, g).first;
      den = RationalPoly::divmod(den, g).first;
    }
  }
  Rational l = den.leading();
  num_ = num / l;
  den_ = den / l;
}

RationalPoly RatFunc::as_polynomial() const {
  if (!is_polynomial()) throw std::domain_error("not a polynomial: " + ratfunc_string(*this));
  return num_;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

Rational RatFunc::operator()(const Rational& x) const {
  Rational d = den_(x);
  if (d == 0) throw std::domain_error("pole at evaluation point");
  return num_(x) / d;
}

std::string ratfunc_string(const RatFunc& f) {
  if (f.is_polynomial()) return cyclotomic_display(f.num());
  return cyclotomic_display(f.num()) + " / " + cyclotomic_display(f.den());
}

// ---------------------------------------------------------------- signs

SignMonomial sign_product(const SignMonomial& a, const SignMonomial& b) {
  SignMonomial r;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

SignFrac to_frac(const SignExpr& x) {
  SignFrac r;
  for (auto& [m, c] : x.terms()) r.add_term(m, RatFunc(c));
  return r;
}

SignExpr to_poly(const SignFrac& x) {
  SignExpr r;
  for (auto& [m, c] : x.terms()) r.add_term(m, c.as_polynomial());
  return r;
}

int residue_slot(int r) {
  if (r == 1) return 0;
  if (r == 3) return 1;
  throw std::invalid_argument("residue must be 1 or 3 modulo 4, got " + std::to_string(r));
}

// ---------------------------------------------------------------- SymExpr

SymExpr::SymExpr(const SignExpr& r1, const SignExpr& r3) : b_{r1, r3} { normalize(); }

void SymExpr::normalize() {
  if (b_.size() == 2 && b_[0] == b_[1]) b_.resize(1);
}

const SignExpr& SymExpr::single() const {
  if (is_split()) throw std::logic_error("expression is split by residue");
  return b_[0];
}

bool SymExpr::is_sign_free() const {
  for (auto& b : b_)
    if (!b.is_sign_free()) return false;
  return true;
}

std::vector<std::string> SymExpr::indeterminates() const {
  std::vector<std::string> out;
  for (auto& b : b_)
    for (auto& n : b.indeterminates())
      if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

SymExpr SymExpr::operator-() const {
  SymExpr r = *this;
  for (auto& b : r.b_) b = -b;
  return r;
}

namespace {
template <class F>
SymExpr combine(const SymExpr& a, const SymExpr& b, F f) {
  if (!a.is_split() && !b.is_split()) return SymExpr(f(a.single(), b.single()));
  return SymExpr(f(a.branch(1), b.branch(1)), f(a.branch(3), b.branch(3)));
}
}  // namespace

SymExpr operator+(const SymExpr& a, const SymExpr& b) {
  return combine(a, b, [](const SignExpr& x, const SignExpr& y) { return x + y; });
}
SymExpr operator-(const SymExpr& a, const SymExpr& b) {
  return combine(a, b, [](const SignExpr& x, const SignExpr& y) { return x - y; });
}
SymExpr operator*(const SymExpr& a, const SymExpr& b) {
  return combine(a, b, [](const SignExpr& x, const SignExpr& y) { return x * y; });
}

SymExpr SymExpr::scalar_div(const Rational& c) const {
  if (c == 0) throw std::domain_error("division by zero rational");
  SymExpr r = *this;
  for (auto& b : r.b_) b = b.scaled(RationalPoly(1 / c));
  return r;
}

// ---------------------------------------------------------------- assignments

void SignAssignment::set(const std::string& name, int value) {
  if (value != 1 && value != -1) throw std::invalid_argument("sign value must be +1 or -1");
  common_[name] = value;
}

void SignAssignment::set(const std::string& name, int residue, int value) {
  residue_slot(residue);
  if (value != 1 && value != -1) throw std::invalid_argument("sign value must be +1 or -1");
  by_residue_[residue][name] = value;
}

bool SignAssignment::has(const std::string& name, int residue) const {
  auto it = by_residue_.find(residue);
  if (it != by_residue_.end() && it->second.count(name)) return true;
  return common_.count(name) > 0;
}

int SignAssignment::value(const std::string& name, int residue) const {
  auto it = by_residue_.find(residue);
  if (it != by_residue_.end()) {
    auto jt = it->second.find(name);
    if (jt != it->second.end()) return jt->second;
  }
  auto jt = common_.find(name);
  if (jt == common_.end()) throw std::invalid_argument("unassigned sign indeterminate " + name);
  return jt->second;
}

bool SignAssignment::residue_dependent(const std::string& name) const {
  if (!has(name, 1) || !has(name, 3)) return false;
  return value(name, 1) != value(name, 3);
}

std::vector<std::string> SignAssignment::names() const {
  std::vector<std::string> out;
  for (auto& [n, v] : common_) out.push_back(n);
  for (auto& [r, m] : by_residue_)
    for (auto& [n, v] : m)
      if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

SignExpr specialize(const SignExpr& x, const std::map<std::string, int>& values) {
  SignExpr r;
  for (auto& [m, c] : x.terms()) {
    SignMonomial rest;
    int s = 1;
    for (auto& n : m) {
      auto it = values.find(n);
      if (it == values.end())
        rest.push_back(n);
      else
        s *= it->second;
    }
    r.add_term(rest, s == 1 ? c : -c);
  }
  return r;
}

namespace {
std::map<std::string, int> values_for(const SignAssignment& s, int residue) {
  std::map<std::string, int> v;
  for (auto& n : s.names())
    if (s.has(n, residue)) v[n] = s.value(n, residue);
  return v;
}

SymExpr specialize_impl(const SymExpr& x, const SignAssignment& s, bool strict) {
  SignExpr out[2];
  for (int i = 0; i < 2; ++i) {
    int r = kResidues[i];
    auto vals = values_for(s, r);
    if (strict)
      for (auto& n : x.branch(r).indeterminates())
        if (!vals.count(n)) throw std::invalid_argument("unassigned sign indeterminate " + n);
    out[i] = specialize(x.branch(r), vals);
  }
  return SymExpr(out[0], out[1]);
}
}  // namespace

SymExpr substitute(const SymExpr& x, const SignAssignment& s) { return specialize_impl(x, s, true); }
SymExpr specialize(const SymExpr& x, const SignAssignment& s) { return specialize_impl(x, s, false); }

Rational eval_at(const SymExpr& x, long q0) {
  if (!x.is_sign_free())
    throw std::invalid_argument("cannot evaluate: remaining indeterminate " + x.indeterminates().front());
  if (x.is_split()) {
    if (q0 % 2 == 0) throw std::invalid_argument("even q against a residue-split value");
    int r = static_cast<int>(((q0 % kModulus) + kModulus) % kModulus);
    return x.branch(r).sign_free_part()(Rational(q0));
  }
  return x.single().sign_free_part()(Rational(q0));
}

// ---------------------------------------------------------------- display

namespace {
constexpr unsigned kDisplayCyclotomics[] = {1, 2, 3, 4, 6};

std::string qpow(unsigned k) { return k == 1 ? "q" : "q^" + std::to_string(k); }

Rational content_of(const std::vector<Rational>& xs) {
  mpz_class g = 0, l = 1;
  for (auto& c : xs) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational r(g, l);
  r.canonicalize();
  return r;
}
}  // namespace

std::string cyclotomic_display(const RationalPoly& p) {
  if (p.is_zero()) return ".";
  unsigned k = p.low_degree();
  RationalPoly r;
  for (auto& [d, c] : p.coeffs()) r += RationalPoly::monomial(c, d - k);
  std::string factors = k > 0 ? qpow(k) : "";
  for (unsigned n : kDisplayCyclotomics) {
    RationalPoly phi = RationalPoly::cyclotomic(n);
    unsigned e = 0;
    while (r.degree() >= phi.degree()) {
      auto [quo, rem] = RationalPoly::divmod(r, phi);
      if (!rem.is_zero()) break;
      r = quo;
      ++e;
    }
    if (e > 0) factors += "P" + std::to_string(n) + (e > 1 ? "^" + std::to_string(e) : "");
  }
  Rational c = r.degree() == 0 ? r.leading() : (r.leading() < 0 ? -r.content() : r.content());
  std::string sign = c < 0 ? "-" : "";
  Rational a = abs(c);
  std::string astr = a.get_str();
  if (r.degree() == 0) {
    if (factors.empty()) return sign + astr;
    return sign + (a == 1 ? "" : astr + "*") + factors;
  }
  RationalPoly res = r / c;
  if (factors.empty() && a == 1) return expanded_string(c < 0 ? -res : res);
  return sign + (a == 1 ? "" : astr + "*") + factors + (factors.empty() ? "" : "*") + "(" +
         expanded_string(res) + ")";
}

std::string cyclotomic_display(const SignExpr& x) {
  if (x.is_sign_free()) return cyclotomic_display(x.sign_free_part());
  struct Term {
    unsigned deg;
    SignMonomial m;
    Rational c;
  };
  std::vector<Term> terms;
  std::vector<Rational> cs;
  for (auto& [m, p] : x.terms())
    for (auto& [d, c] : p.coeffs()) {
      terms.push_back({d, m, c});
      cs.push_back(c);
    }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.deg != b.deg) return a.deg > b.deg;
    if (a.m.empty() != b.m.empty()) return !a.m.empty();
    return a.m < b.m;
  });
  Rational content = content_of(cs);
  std::string body;
  bool first = true;
  for (auto& t : terms) {
    Rational n = t.c / content;
    if (n < 0)
      body += "-";
    else if (!first)
      body += "+";
    first = false;
    std::vector<std::string> f(t.m.begin(), t.m.end());
    if (t.deg > 0) f.push_back(qpow(t.deg));
    Rational a = abs(n);
    std::string s;
    if (a != 1 || f.empty()) s = a.get_str();
    for (auto& x : f) s += (s.empty() ? "" : "*") + x;
    body += s;
  }
  if (content == 1) return body;
  return content.get_str() + "*(" + body + ")";
}

std::string cyclotomic_display(const SymExpr& x) {
  if (!x.is_split()) return cyclotomic_display(x.single());
  return "{1:" + cyclotomic_display(x.branch(1)) + ";3:" + cyclotomic_display(x.branch(3)) + "}";
}

// ---------------------------------------------------------------- parsing

namespace {
class DisplayParser {
 public:
  explicit DisplayParser(const std::string& s) : s_(s) {}

  SignExpr parse_all() {
    SignExpr e = expr();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse '" + s_ + "' at " + std::to_string(pos_) + ": " + what);
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  bool starts_factor() const {
    char c = peek();
    return c == 'q' || c == 'P' || c == '(' || (std::islower(static_cast<unsigned char>(c)) != 0);
  }

  SignExpr expr() {
    SignExpr acc;
    bool first = true;
    while (true) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      SignExpr t = term();
      acc += sign > 0 ? t : -t;
      first = false;
      if (peek() != '+' && peek() != '-') break;
    }
    return acc;
  }

  SignExpr term() {
    SignExpr t = factor();
    while (true) {
      if (peek() == '*') {
        ++pos_;
        t *= factor();
      } else if (starts_factor()) {
        t *= factor();
      } else {
        break;
      }
    }
    return t;
  }

  unsigned integer() {
    size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    return static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
  }

  SignExpr factor() {
    SignExpr base = atom();
    if (peek() == '^') {
      ++pos_;
      unsigned e = integer();
      SignExpr r(1);
      for (unsigned i = 0; i < e; ++i) r *= base;
      return r;
    }
    return base;
  }

  SignExpr atom() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (peek() == '/') {
        ++pos_;
        integer();
      }
      return SignExpr(RationalPoly(parse_rational(s_.substr(start, pos_ - start))));
    }
    if (c == 'q') {
      ++pos_;
      return SignExpr(RationalPoly::q());
    }
    if (c == 'P') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected cyclotomic index");
      unsigned n = static_cast<unsigned>(peek() - '0');
      ++pos_;
      if (n == 0) fail("cyclotomic index 0");
      return SignExpr(RationalPoly::cyclotomic(n));
    }
    if (c == '(') {
      ++pos_;
      SignExpr e = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (std::islower(static_cast<unsigned char>(peek())) || std::isdigit(static_cast<unsigned char>(peek())) ||
             peek() == '_')
        ++pos_;
      return SignExpr::indeterminate(s_.substr(start, pos_ - start));
    }
    fail("unexpected character");
  }

  std::string s_;
  size_t pos_ = 0;
};

SignExpr parse_branch(const std::string& s) {
  if (s == ".") return SignExpr();
  return DisplayParser(s).parse_all();
}
}  // namespace

SymExpr parse_display(const std::string& s) {
  if (!s.empty() && s.front() == '{') {
    auto semi = s.find(";3:");
    if (s.rfind("{1:", 0) != 0 || semi == std::string::npos || s.back() != '}')
      throw std::invalid_argument("bad residue-split expression: " + s);
    return SymExpr(parse_branch(s.substr(3, semi - 3)), parse_branch(s.substr(semi + 3, s.size() - semi - 4)));
  }
  return SymExpr(parse_branch(s));
}

// ---------------------------------------------------------------- constraint checks

namespace {
int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Product of the square-free factors of odd multiplicity (Yun).
RationalPoly odd_multiplicity_part(const RationalPoly& p) {
  RationalPoly dp = p.derivative();
  RationalPoly a = RationalPoly::gcd(p, dp);
  RationalPoly b = RationalPoly::divmod(p, a).first;
  RationalPoly c = RationalPoly::divmod(dp, a).first;
  RationalPoly d = c - b.derivative();
  RationalPoly out(1);
  for (unsigned i = 1; b.degree() > 0; ++i) {
    RationalPoly f = RationalPoly::gcd(b, d);
    b = RationalPoly::divmod(b, f).first;
    c = RationalPoly::divmod(d, f).first;
    d = c - b.derivative();
    if (i % 2 == 1) out *= f;
  }
  return out;
}

int sign_changes(const std::vector<int>& signs) {
  int n = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++n;
    last = s;
  }
  return n;
}

// Distinct real roots of p in (a, +inf), assuming p(a) != 0.
int roots_above(const RationalPoly& p, const Rational& a) {
  std::vector<RationalPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    RationalPoly r = RationalPoly::divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  std::vector<int> at_a, at_inf;
  for (auto& s : seq) {
    at_a.push_back(sign_of(s(a)));
    at_inf.push_back(sign_of(s.leading()));
  }
  return sign_changes(at_a) - sign_changes(at_inf);
}

const SignExpr& sign_free_branch(const SymExpr& x, int r) {
  const SignExpr& b = x.branch(r);
  if (!b.is_sign_free()) throw std::invalid_argument("remaining indeterminate " + b.indeterminates().front());
  return b;
}
}  // namespace

bool check_nonneg(const RationalPoly& p, const Rational& q_min) {
  if (p.is_zero()) return true;
  RationalPoly shifted = p.compose_linear(1, q_min);
  bool all_nonneg = true;
  for (auto& [k, c] : shifted.coeffs())
    if (c < 0) all_nonneg = false;
  if (all_nonneg) return true;
  if (p.leading() < 0 || p(q_min) < 0) return false;
  RationalPoly odd = odd_multiplicity_part(p);
  RationalPoly lin = RationalPoly::q() - RationalPoly(q_min);
  while (odd.degree() > 0 && odd(q_min) == 0) odd = RationalPoly::divmod(odd, lin).first;
  if (odd.degree() <= 0) return true;
  return roots_above(odd, q_min) == 0;
}

bool check_nonneg(const SymExpr& x, long q_min) {
  for (int r : kResidues)
    if (!check_nonneg(sign_free_branch(x, r).sign_free_part(), Rational(q_min))) return false;
  return true;
}

bool check_integral(const RationalPoly& p, int residue) {
  residue_slot(residue);
  RationalPoly t = p.compose_linear(kModulus, residue);
  int n = std::max(t.degree(), 0);
  std::vector<Rational> v;
  for (int i = 0; i <= n; ++i) v.push_back(t(Rational(i)));
  // integer-valued iff all forward differences at 0 are integers
  for (int k = 0; k <= n; ++k) {
    if (v[0].get_den() != 1) return false;
    for (size_t i = 0; i + 1 < v.size(); ++i) v[i] = v[i + 1] - v[i];
    v.pop_back();
  }
  return true;
}

bool check_integral(const SymExpr& x, int residue) {
  return check_integral(sign_free_branch(x, residue).sign_free_part(), residue);
}

bool check_integral(const SymExpr& x) {
  for (int r : kResidues)
    if (!check_integral(x, r)) return false;
  return true;
}

// ---------------------------------------------------------------- json

nlohmann::json to_json(const RationalPoly& p) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& [k, c] : p.coeffs()) j.push_back({k, rational_string(c)});
  return j;
}

RationalPoly poly_from_json(const nlohmann::json& j) {
  RationalPoly p;
  for (auto& t : j) p += RationalPoly::monomial(parse_rational(t.at(1).get<std::string>()), t.at(0).get<unsigned>());
  return p;
}

namespace {
nlohmann::json terms_json(const SignExpr& x) {
  nlohmann::json j = nlohmann::json::array();
  for (auto& [m, p] : x.terms()) j.push_back({m, to_json(p)});
  return j;
}

SignExpr terms_from_json(const nlohmann::json& j) {
  SignExpr x;
  for (auto& t : j) {
    SignMonomial m = t.at(0).get<SignMonomial>();
    std::sort(m.begin(), m.end());
    if (std::adjacent_find(m.begin(), m.end()) != m.end()) throw std::invalid_argument("repeated indeterminate");
    x.add_term(m, poly_from_json(t.at(1)));
  }
  return x;
}
}  // namespace

nlohmann::json to_json(const SymExpr& x) {
  if (!x.is_split()) return terms_json(x.single());
  return {{"cases", {{"1", terms_json(x.branch(1))}, {"3", terms_json(x.branch(3))}}}};
}

SymExpr symexpr_from_json(const nlohmann::json& j) {
  if (j.is_object()) {
    auto& c = j.at("cases");
    return SymExpr(terms_from_json(c.at("1")), terms_from_json(c.at("3")));
  }
  return SymExpr(terms_from_json(j));
}

}  // namespace greenfn
