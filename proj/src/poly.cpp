#include "frobdesc/poly.hpp"

#include <sstream>

namespace frobdesc {

UniPoly::UniPoly(const FqField* F, std::vector<FqElem> coeffs)
    : F_(F), c_(std::move(coeffs)) {
  trim();
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::constant(const FqElem& c) {
  return UniPoly(c.F, std::vector<FqElem>{c});
}

UniPoly UniPoly::from_ints(const FqField* F, const std::vector<long long>& cs) {
  std::vector<FqElem> v;
  v.reserve(cs.size());
  for (long long x : cs) v.push_back(F->from_int(x));
  return UniPoly(F, std::move(v));
}

UniPoly UniPoly::monomial(const FqElem& c, int d) {
  std::vector<FqElem> v(d + 1, c.F->zero());
  v[d] = c;
  return UniPoly(c.F, std::move(v));
}

FqElem UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return F_->zero();
  return c_[i];
}

FqElem UniPoly::lc() const {
  if (is_zero()) throw DomainError("leading coefficient of zero polynomial");
  return c_.back();
}

bool UniPoly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

UniPoly UniPoly::operator-() const {
  std::vector<FqElem> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(-x);
  return UniPoly(F_, std::move(v));
}

UniPoly UniPoly::operator+(const UniPoly& b) const {
  const FqField* F = F_ ? F_ : b.F_;
  std::vector<FqElem> v(std::max(c_.size(), b.c_.size()), F->zero());
  for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] + b.c_[i];
  return UniPoly(F, std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& b) const { return *this + (-b); }

UniPoly UniPoly::operator*(const UniPoly& b) const {
  const FqField* F = F_ ? F_ : b.F_;
  if (is_zero() || b.is_zero()) return UniPoly(F);
  std::vector<FqElem> v(c_.size() + b.c_.size() - 1, F->zero());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      v[i + j] = v[i + j] + c_[i] * b.c_[j];
  }
  return UniPoly(F, std::move(v));
}

UniPoly UniPoly::operator*(const FqElem& s) const {
  std::vector<FqElem> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(x * s);
  return UniPoly(F_ ? F_ : s.F, std::move(v));
}

bool UniPoly::operator==(const UniPoly& b) const {
  if (c_.size() != b.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != b.c_[i]) return false;
  return true;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& b) const {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const FqField* F = b.F_;
  if (is_zero() || degree() < b.degree()) return {UniPoly(F), *this};
  std::vector<FqElem> rem = c_;
  std::vector<FqElem> quo(degree() - b.degree() + 1, F->zero());
  FqElem lcinv = b.lc().inv();
  for (int d = degree(); d >= b.degree(); --d) {
    FqElem top = rem[d];
    if (top.is_zero()) continue;
    FqElem f = top * lcinv;
    quo[d - b.degree()] = f;
    for (int i = 0; i <= b.degree(); ++i)
      rem[d - b.degree() + i] = rem[d - b.degree() + i] - f * b.c_[i];
  }
  return {UniPoly(F, std::move(quo)), UniPoly(F, std::move(rem))};
}

UniPoly UniPoly::derivative() const {
  if (degree() < 1) return UniPoly(F_);
  std::vector<FqElem> v;
  v.reserve(c_.size() - 1);
  for (int i = 1; i <= degree(); ++i) v.push_back(c_[i] * F_->from_int(i));
  return UniPoly(F_, std::move(v));
}

FqElem UniPoly::eval(const FqElem& x) const {
  FqElem acc = x.F->zero();
  for (int i = degree(); i >= 0; --i) acc = acc * x + F_->embed(c_[i], x.F);
  return acc;
}

UniPoly UniPoly::pow(int e) const {
  UniPoly acc = UniPoly::constant(F_->one());
  UniPoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return *this * lc().inv();
}

std::optional<UniPoly> UniPoly::sqrt() const {
  if (is_zero()) return UniPoly(F_);
  if (degree() % 2 != 0) return std::nullopt;
  int p = F_->p();
  if (p == 2) {
    // x -> x^2 is coefficientwise in characteristic 2
    std::vector<FqElem> v((degree() / 2) + 1, F_->zero());
    for (int i = 0; i <= degree(); ++i) {
      if (c_[i].is_zero()) continue;
      if (i % 2 != 0) return std::nullopt;
      v[i / 2] = c_[i].pth_root();
    }
    UniPoly r(F_, std::move(v));
    if (r * r == *this) return r;
    return std::nullopt;
  }
  auto lead = lc().sqrt();
  if (!lead) return std::nullopt;
  int m = degree() / 2;
  std::vector<FqElem> r(m + 1, F_->zero());
  r[m] = *lead;
  FqElem two_lead_inv = (F_->from_int(2) * *lead).inv();
  // match coefficients from the top: coeff of t^{m+i} in r^2
  for (int i = m - 1; i >= 0; --i) {
    FqElem acc = coeff(m + i);
    for (int a = i + 1; a <= m; ++a) {
      int b = m + i - a;
      if (b <= i || b > m) continue;
      if (b < a) break;
      FqElem term = r[a] * r[b];
      if (a != b) term = term + term;
      acc = acc - term;
    }
    r[i] = acc * two_lead_inv;
  }
  UniPoly cand(F_, std::move(r));
  if (cand * cand == *this) return cand;
  return std::nullopt;
}

std::optional<UniPoly> UniPoly::pth_root() const {
  if (is_zero()) return UniPoly(F_);
  int p = F_->p();
  if (degree() % p != 0) return std::nullopt;
  std::vector<FqElem> v(degree() / p + 1, F_->zero());
  for (int i = 0; i <= degree(); ++i) {
    if (c_[i].is_zero()) continue;
    if (i % p != 0) return std::nullopt;
    v[i / p] = c_[i].pth_root();
  }
  return UniPoly(F_, std::move(v));
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = c_[i].is_one();
    if (!unit || i == 0) os << c_[i].str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x % y;
    x = y;
    y = r;
  }
  return x.is_zero() ? x : x.monic();
}

RatFunc::RatFunc(const UniPoly& num)
    : num_(num), den_(UniPoly::constant(num.field()->one())) {}

RatFunc::RatFunc(const UniPoly& num, const UniPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

RatFunc RatFunc::one(const FqField* F) { return RatFunc(UniPoly::constant(F->one())); }

void RatFunc::normalize() {
  const FqField* F = den_.field();
  if (num_.is_zero()) {
    den_ = UniPoly::constant(F->one());
    return;
  }
  UniPoly g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  FqElem l = den_.lc();
  if (!l.is_one()) {
    FqElem li = l.inv();
    num_ = num_ * li;
    den_ = den_ * li;
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& b) const {
  return RatFunc(num_ * b.den_ + b.num_ * den_, den_ * b.den_);
}

RatFunc RatFunc::operator-(const RatFunc& b) const { return *this + (-b); }

RatFunc RatFunc::operator*(const RatFunc& b) const {
  return RatFunc(num_ * b.num_, den_ * b.den_);
}

RatFunc RatFunc::operator/(const RatFunc& b) const {
  if (b.is_zero()) throw DomainError("rational function division by zero");
  return RatFunc(num_ * b.den_, den_ * b.num_);
}

bool RatFunc::operator==(const RatFunc& b) const {
  return num_ == b.num_ && den_ == b.den_;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw DomainError("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::derivative() const {
  // (n/d)' = (n'd - nd')/d^2
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  RatFunc acc = RatFunc::one(field());
  RatFunc base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

int RatFunc::height() const {
  return std::max(num_.degree() < 0 ? 0 : num_.degree(), den_.degree());
}

std::optional<RatFunc> RatFunc::sqrt() const {
  // canonical form has coprime num/den, so both parts must be squares
  auto n = num_.sqrt();
  if (!n) return std::nullopt;
  auto d = den_.sqrt();
  if (!d) return std::nullopt;
  return RatFunc(*n, *d);
}

std::optional<RatFunc> RatFunc::pth_root() const {
  auto n = num_.pth_root();
  if (!n) return std::nullopt;
  auto d = den_.pth_root();
  if (!d) return std::nullopt;
  return RatFunc(*n, *d);
}

std::string RatFunc::str(const std::string& var) const {
  if (den_.is_one()) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace frobdesc
