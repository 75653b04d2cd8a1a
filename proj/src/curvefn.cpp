#include "frobdesc/curvefn.hpp"

#include <algorithm>
#include <sstream>

namespace frobdesc {

namespace {

// polynomial-in-y with RatFunc coefficients (variable length, trimmed)
using SPol = std::vector<RatFunc>;

void strim(SPol& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

SPol smul(const SPol& a, const SPol& b, const FqField* F) {
  if (a.empty() || b.empty()) return {};
  SPol out(a.size() + b.size() - 1, RatFunc::zero(F));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = out[i + j] + a[i] * b[j];
  }
  strim(out);
  return out;
}

SPol ssub(const SPol& a, const SPol& b, const FqField* F) {
  SPol out(std::max(a.size(), b.size()), RatFunc::zero(F));
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = out[i] - b[i];
  strim(out);
  return out;
}

// division with remainder in F_q(x)[y]
std::pair<SPol, SPol> sdivmod(const SPol& a, const SPol& b, const FqField* F) {
  if (b.empty()) throw DomainError("division by zero polynomial in y");
  SPol rem = a, quo;
  if (a.size() >= b.size()) quo.assign(a.size() - b.size() + 1, RatFunc::zero(F));
  RatFunc lcinv = b.back().inv();
  while (rem.size() >= b.size()) {
    RatFunc f = rem.back() * lcinv;
    size_t shift = rem.size() - b.size();
    quo[shift] = quo[shift] + f;
    for (size_t i = 0; i < b.size(); ++i)
      rem[shift + i] = rem[shift + i] - f * b[i];
    // the top coefficient cancels exactly
    rem.pop_back();
    strim(rem);
    if (rem.size() < b.size()) break;
  }
  strim(quo);
  return {quo, rem};
}

SPol curve_eq_spol(const PlaneCurve* C) {
  SPol E;
  E.reserve(C->affine_eq().size());
  for (const auto& cj : C->affine_eq()) E.push_back(RatFunc(cj));
  strim(E);
  return E;
}

}  // namespace

CurveFn::CurveFn(const PlaneCurve* C)
    : C_(C), c_(static_cast<size_t>(C->ydeg()), RatFunc::zero(C->base())) {}

CurveFn::CurveFn(const PlaneCurve* C, std::vector<RatFunc> ycoeffs) : C_(C) {
  if (static_cast<int>(ycoeffs.size()) > C->ydeg()) {
    reduce_high_powers(ycoeffs);
  }
  ycoeffs.resize(static_cast<size_t>(C->ydeg()), RatFunc::zero(C->base()));
  c_ = std::move(ycoeffs);
}

void CurveFn::reduce_high_powers(std::vector<RatFunc>& v) const {
  const FqField* F = C_->base();
  int m = C_->ydeg();
  // y^m = -(sum_{j<m} E_j y^j)/E_m
  const auto& E = C_->affine_eq();
  RatFunc lead_inv = RatFunc(E[m]).inv();
  for (int d = static_cast<int>(v.size()) - 1; d >= m; --d) {
    if (v[d].is_zero()) continue;
    RatFunc f = v[d] * lead_inv;
    for (int j = 0; j < m; ++j) {
      v[d - m + j] = v[d - m + j] - f * RatFunc(E[j]);
    }
    v[d] = RatFunc::zero(F);
  }
  while (static_cast<int>(v.size()) > m) v.pop_back();
}

CurveFn CurveFn::constant(const PlaneCurve* C, const FqElem& c) {
  CurveFn f(C);
  f.c_[0] = RatFunc(UniPoly::constant(c));
  return f;
}

CurveFn CurveFn::from_int(const PlaneCurve* C, long long v) {
  return constant(C, C->base()->from_int(v));
}

CurveFn CurveFn::coordinate_x(const PlaneCurve* C) {
  CurveFn f(C);
  f.c_[0] = RatFunc(UniPoly::monomial(C->base()->one(), 1));
  return f;
}

CurveFn CurveFn::coordinate_y(const PlaneCurve* C) {
  CurveFn f(C);
  if (C->ydeg() < 2)
    throw UnsupportedError("coordinate y is rational in x for this model");
  f.c_[1] = RatFunc::one(C->base());
  return f;
}

CurveFn CurveFn::from_ratfunc(const PlaneCurve* C, const RatFunc& r) {
  CurveFn f(C);
  f.c_[0] = r;
  return f;
}

bool CurveFn::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

bool CurveFn::is_constant() const {
  if (!c_[0].is_constant()) return false;
  for (size_t j = 1; j < c_.size(); ++j)
    if (!c_[j].is_zero()) return false;
  return true;
}

std::optional<FqElem> CurveFn::as_constant() const {
  if (!is_constant()) return std::nullopt;
  if (c_[0].is_zero()) return base()->zero();
  return c_[0].num().coeff(0);
}

CurveFn CurveFn::operator-() const {
  CurveFn r(C_);
  for (size_t j = 0; j < c_.size(); ++j) r.c_[j] = -c_[j];
  return r;
}

CurveFn CurveFn::operator+(const CurveFn& b) const {
  if (C_ != b.C_) throw DomainError("function field elements on different curves");
  CurveFn r(C_);
  for (size_t j = 0; j < c_.size(); ++j) r.c_[j] = c_[j] + b.c_[j];
  return r;
}

CurveFn CurveFn::operator-(const CurveFn& b) const { return *this + (-b); }

CurveFn CurveFn::operator*(const CurveFn& b) const {
  if (C_ != b.C_) throw DomainError("function field elements on different curves");
  const FqField* F = base();
  std::vector<RatFunc> prod(2 * c_.size(), RatFunc::zero(F));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      prod[i + j] = prod[i + j] + c_[i] * b.c_[j];
    }
  }
  return CurveFn(C_, std::move(prod));
}

CurveFn CurveFn::inv() const {
  if (is_zero()) throw DomainError("inverse of zero function");
  const FqField* F = base();
  // extended Euclid in F_q(x)[y] against the curve equation
  SPol a = curve_eq_spol(C_);
  SPol b(c_.begin(), c_.end());
  strim(b);
  SPol s0{}, s1{RatFunc::one(F)};  // coefficients of b in the Bezout identity
  while (true) {
    auto [q, r] = sdivmod(a, b, F);
    if (r.empty()) break;
    // s_new = s0 - q*s1
    SPol snew = ssub(s0, smul(q, s1, F), F);
    a = b;
    b = r;
    s0 = s1;
    s1 = snew;
  }
  // b is the gcd; the curve equation is irreducible so deg_y gcd = 0
  if (b.size() != 1)
    throw DomainError("curve equation is reducible over F_q(x)");
  RatFunc ginv = b[0].inv();
  SPol out;
  out.reserve(s1.size());
  for (const auto& ce : s1) out.push_back(ce * ginv);
  return CurveFn(C_, std::move(out));
}

CurveFn CurveFn::operator/(const CurveFn& b) const { return *this * b.inv(); }

bool CurveFn::operator==(const CurveFn& b) const {
  if (C_ != b.C_) throw DomainError("function field elements on different curves");
  for (size_t j = 0; j < c_.size(); ++j)
    if (c_[j] != b.c_[j]) return false;
  return true;
}

CurveFn CurveFn::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  CurveFn acc = CurveFn::from_int(C_, 1);
  CurveFn b = *this;
  while (e > 0) {
    if (e & 1) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

void CurveFn::common_den_form(std::vector<UniPoly>* nums, UniPoly* den) const {
  const FqField* F = base();
  UniPoly D = UniPoly::constant(F->one());
  for (const auto& cj : c_) {
    if (cj.is_zero()) continue;
    UniPoly g = poly_gcd(D, cj.den());
    D = (D / g) * cj.den();
  }
  D = D.monic();
  nums->clear();
  for (const auto& cj : c_) {
    if (cj.is_zero())
      nums->push_back(UniPoly(F));
    else
      nums->push_back(cj.num() * (D / cj.den()));
  }
  *den = D;
}

int CurveFn::height() const {
  std::vector<UniPoly> nums;
  UniPoly den;
  common_den_form(&nums, &den);
  int h = den.degree();
  for (const auto& n : nums) h = std::max(h, n.degree());
  return std::max(h, 0);
}

std::string CurveFn::str() const {
  if (is_zero()) return "0";
  std::vector<UniPoly> nums;
  UniPoly den;
  common_den_form(&nums, &den);
  std::ostringstream os;
  bool first = true;
  os << "(";
  for (int j = static_cast<int>(nums.size()) - 1; j >= 0; --j) {
    if (nums[j].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    bool needs_paren = j > 0 && (nums[j].degree() > 0 ||
                                 !nums[j].coeff(0).is_one());
    if (j == 0) {
      os << nums[j].str("x");
    } else {
      if (nums[j].is_one()) {
      } else if (needs_paren && nums[j].degree() > 0) {
        os << "(" << nums[j].str("x") << ")*";
      } else {
        os << nums[j].str("x") << "*";
      }
      os << "y";
      if (j > 1) os << "^" << j;
    }
  }
  os << ")";
  if (!den.is_one()) os << " / (" << den.str("x") << ")";
  return os.str();
}

// --- tower square roots ----------------------------------------------------
//
// Square roots descend through the tower of quadratic subfields. To keep the
// (dominant) failing case cheap, the chain works on denominator-cleared
// polynomial data with fail-fast polynomial square-root tests only; rational
// output is assembled for the rare successes and verified by squaring.

namespace {

// level 1: polynomial pairs a + b sigma, sigma^2 = g (g a polynomial)
struct P1 {
  UniPoly a, b;
};

bool p1_zero(const P1& u) { return u.a.is_zero() && u.b.is_zero(); }

P1 p1_mul(const P1& u, const P1& v, const UniPoly& g) {
  return P1{u.a * v.a + u.b * v.b * g, u.a * v.b + u.b * v.a};
}

P1 p1_sub(const P1& u, const P1& v) { return P1{u.a - v.a, u.b - v.b}; }

// multiply by sigma
P1 p1_mul_sigma(const P1& u, const UniPoly& g) { return P1{u.b * g, u.a}; }

// rational level-1 element (num pair over a common denominator)
struct R1 {
  P1 num;
  UniPoly den;
};

// all square roots of the polynomial element u = a + b sigma in M(F_q(x)):
// roots can be rational, returned cleared over a denominator
std::optional<R1> p1_sqrt(const P1& u, const UniPoly& g, const FqField* F) {
  UniPoly zero(F), one = UniPoly::constant(F->one());
  if (p1_zero(u)) return R1{P1{zero, zero}, one};
  FqElem half = F->from_int(2).inv();
  if (u.b.is_zero()) {
    if (auto r = u.a.sqrt()) return R1{P1{*r, zero}, one};
    // (w/g sigma)^2 = w^2/g = a when w^2 = a g
    if (auto w = (u.a * g).sqrt()) return R1{P1{zero, *w}, g};
    return std::nullopt;
  }
  // norm to F_q(x): a^2 - b^2 g must be a square
  auto w = (u.a * u.a - u.b * u.b * g).sqrt();
  if (!w) return std::nullopt;
  for (int sign = 0; sign < 2; ++sign) {
    UniPoly ww = sign ? -*w : *w;
    // c^2 = (a + w)/2; a square rational with polynomial square is polynomial
    auto c = ((u.a + ww) * half).sqrt();
    if (!c || c->is_zero()) continue;
    // root = c + (b/(2c)) sigma; polynomial identity check:
    // (c + b/(2c) sigma)^2 = u  <=>  4c^4 + b^2 g = 4 a c^2  and  b = b
    UniPoly c2 = *c * *c;
    UniPoly four = UniPoly::constant(F->from_int(4));
    if (four * c2 * c2 + u.b * u.b * g == four * u.a * c2) {
      UniPoly twoc = *c + *c;
      return R1{P1{c2 + c2, u.b}, twoc};  // (2c^2 + b sigma) / (2c)
    }
  }
  return std::nullopt;
}

// level 2: polynomial pairs A + B s over M, s^2 = sigma
struct P2 {
  P1 a, b;
};

struct R2 {
  P2 num;
  UniPoly den;
};

std::optional<R2> p2_sqrt(const P2& u, const UniPoly& g, const FqField* F) {
  UniPoly zero(F), one = UniPoly::constant(F->one());
  P1 zero1{zero, zero};
  if (p1_zero(u.a) && p1_zero(u.b)) return R2{P2{zero1, zero1}, one};
  if (p1_zero(u.b)) {
    if (auto r = p1_sqrt(u.a, g, F)) return R2{P2{r->num, zero1}, r->den};
    // (w/sigma s)^2 = w^2/sigma = a when w^2 = a sigma; sigma^2 = g so
    // w^2 = a sigma gives root (w/g) sigma s ... assemble as (w sigma)/g s
    P1 asigma = p1_mul_sigma(u.a, g);
    if (auto w = p1_sqrt(asigma, g, F)) {
      // root r = (w / sigma) s with w^2 = a sigma: r = (w sigma / g) s
      P1 wsig = p1_mul_sigma(w->num, g);
      return R2{P2{zero1, wsig}, w->den * g};
    }
    return std::nullopt;
  }
  // norm to M: a^2 - b^2 sigma must be a square in M
  P1 norm2 = p1_sub(p1_mul(u.a, u.a, g), p1_mul_sigma(p1_mul(u.b, u.b, g), g));
  auto w = p1_sqrt(norm2, g, F);
  if (!w) return std::nullopt;
  for (int sign = 0; sign < 2; ++sign) {
    P1 ww = sign ? P1{-w->num.a, -w->num.b} : w->num;
    // c^2 = (a + w/wden)/2 = (a wden + w) / (2 wden)
    // clear: (c')^2 = (a wden + w) * 2 wden with c = c'/(2 wden)
    UniPoly two_wden = w->den + w->den;
    P1 csq_num{(u.a.a * w->den + ww.a) * two_wden,
               (u.a.b * w->den + ww.b) * two_wden};
    auto c = p1_sqrt(csq_num, g, F);
    if (!c || p1_zero(c->num)) continue;
    // c = cnum / (cden * 2 wden); root = c + (b / (2c)) s
    // assemble over a common denominator and verify by the identity
    // (c + d s)^2 = (c^2 + d^2 sigma) + 2 c d s = u
    // d = b / (2c) = b * cden * 2wden / (2 cnum)
    // common denominator: 2 * cnum * cden * 2wden
    const P1& cn = c->num;
    UniPoly cd = c->den * two_wden;  // c = cn / cd
    // d = b cd / (2 cn): check c^2 + d^2 sigma = a and 2 c d = b over M
    // c^2 = cn^2 / cd^2 ; d^2 = b^2 cd^2 / (4 cn^2)
    // multiply the first identity by 4 cn^2 cd^2:
    //   4 cn^4 + b^2 cd^4 sigma = 4 a cn^2 cd^2
    P1 cn2 = p1_mul(cn, cn, g);
    UniPoly cd2 = cd * cd;
    FqElem fourc = F->from_int(4);
    P1 lhs = p1_mul(cn2, cn2, g);
    lhs = P1{lhs.a * fourc, lhs.b * fourc};
    P1 bsq = p1_mul(u.b, u.b, g);
    P1 rhs2 = p1_mul_sigma(bsq, g);
    lhs = P1{lhs.a + rhs2.a * (cd2 * cd2), lhs.b + rhs2.b * (cd2 * cd2)};
    P1 rhs = p1_mul(u.a, cn2, g);
    rhs = P1{rhs.a * fourc * cd2, rhs.b * fourc * cd2};
    if (!(lhs.a == rhs.a) || !(lhs.b == rhs.b)) continue;
    // 2 c d = b holds by construction of d
    // root = (2 cn^2 + b cd^2 s) / (2 cn cd): the denominator 2 cn cd is a
    // level-1 element, so normalize by the conjugate of cn, whose norm
    // N = cn.a^2 - cn.b^2 g is a polynomial
    P1 re{cn2.a + cn2.a, cn2.b + cn2.b};
    P1 im{u.b.a * cd2, u.b.b * cd2};
    P1 cn_conj{cn.a, -cn.b};
    UniPoly N = cn.a * cn.a - cn.b * cn.b * g;
    if (N.is_zero()) continue;  // degenerate representative; try other sign
    P1 re2 = p1_mul(re, cn_conj, g);
    P1 im2 = p1_mul(im, cn_conj, g);
    UniPoly final_den = (N + N) * cd;
    return R2{P2{re2, im2}, final_den};
  }
  return std::nullopt;
}

}  // namespace

std::optional<CurveFn> CurveFn::sqrt() const {
  if (!C_->is_power_tower())
    throw UnsupportedError(
        "square roots require a y^m = g(x) model with m in {1,2,4}");
  const FqField* F = base();
  const UniPoly& g = C_->tower_g();
  int m = C_->ydeg();
  if (m == 1) {
    auto r = c_[0].sqrt();
    if (!r) return std::nullopt;
    return CurveFn(C_, {*r});
  }
  // clear denominators: this = U / den with U polynomial; sqrt(this) =
  // sqrt(U * den) / den
  std::vector<UniPoly> nums;
  UniPoly den;
  common_den_form(&nums, &den);
  for (auto& n : nums) n = n * den;
  std::optional<CurveFn> result;
  if (m == 2) {
    auto r = p1_sqrt(P1{nums[0], nums[1]}, g, F);
    if (!r) return std::nullopt;
    UniPoly dd = r->den * den;
    result = CurveFn(C_, {RatFunc(r->num.a, dd), RatFunc(r->num.b, dd)});
  } else {
    // m == 4: K = M(y), y^2 = sigma, M = F_q(x)(sigma), sigma = y^2
    P2 u{P1{nums[0], nums[2]}, P1{nums[1], nums[3]}};
    auto r = p2_sqrt(u, g, F);
    if (!r) return std::nullopt;
    UniPoly dd = r->den * den;
    result = CurveFn(C_, {RatFunc(r->num.a.a, dd), RatFunc(r->num.b.a, dd),
                          RatFunc(r->num.a.b, dd), RatFunc(r->num.b.b, dd)});
  }
  if (!((*result) * (*result) == *this))
    throw FrobdescError("tower square root verification failed (internal)");
  return result;
}

std::optional<CurveFn> CurveFn::pth_root() const {
  if (!C_->is_power_tower())
    throw UnsupportedError(
        "p-th roots require a y^m = g(x) model with m in {1,2,4}");
  int p = base()->p();
  int m = C_->ydeg();
  if (m % 2 == 0 && p == 2)
    throw UnsupportedError("p-th roots on even towers need odd characteristic");
  RatFunc g(C_->tower_g());
  // (sum_i B_i y^i)^p = sum_i B_i^p y^{(ip mod m)} g^{floor(ip/m)}
  std::vector<RatFunc> B(static_cast<size_t>(m), RatFunc::zero(base()));
  for (int i = 0; i < m; ++i) {
    int ell = (i * p) % m;
    int e = (i * p) / m;
    RatFunc target = c_[static_cast<size_t>(ell)] / g.pow(e);
    auto r = target.pth_root();
    if (!r) return std::nullopt;
    B[static_cast<size_t>(i)] = *r;
  }
  return CurveFn(C_, std::move(B));
}

// --- series expansion and reduction at places -------------------------------

namespace {

// truncated power series over E, length N
struct Series {
  const FqField* E;
  int N;
  std::vector<FqElem> c;

  static Series zero(const FqField* E, int N) {
    return Series{E, N, std::vector<FqElem>(static_cast<size_t>(N), E->zero())};
  }
  static Series constant(const FqField* E, int N, const FqElem& v) {
    Series s = zero(E, N);
    s.c[0] = v;
    return s;
  }
};

Series ser_add(const Series& a, const Series& b) {
  Series r = a;
  for (int i = 0; i < a.N; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

Series ser_sub(const Series& a, const Series& b) {
  Series r = a;
  for (int i = 0; i < a.N; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

Series ser_mul(const Series& a, const Series& b) {
  Series r = Series::zero(a.E, a.N);
  for (int i = 0; i < a.N; ++i) {
    if (a.c[i].is_zero()) continue;
    for (int j = 0; i + j < a.N; ++j) {
      if (b.c[j].is_zero()) continue;
      r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
  }
  return r;
}

// inverse of a unit series (nonzero constant term)
Series ser_inv(const Series& a) {
  if (a.c[0].is_zero()) throw DomainError("series inverse of non-unit");
  Series r = Series::zero(a.E, a.N);
  FqElem c0inv = a.c[0].inv();
  r.c[0] = c0inv;
  for (int n = 1; n < a.N; ++n) {
    FqElem acc = a.E->zero();
    for (int i = 1; i <= n; ++i) acc = acc + a.c[i] * r.c[n - i];
    r.c[n] = -acc * c0inv;
  }
  return r;
}

int ser_val(const Series& a) {
  for (int i = 0; i < a.N; ++i)
    if (!a.c[i].is_zero()) return i;
  return a.N;
}

Series ser_eval_unipoly(const UniPoly& f, const Series& x, const FqField* base) {
  Series acc = Series::zero(x.E, x.N);
  for (int d = f.degree(); d >= 0; --d) {
    acc = ser_mul(acc, x);
    acc.c[0] = acc.c[0] + base->embed(f.coeff(d), x.E);
  }
  return acc;
}

struct PlaceChart {
  const FqField* E;  // residue field F_{q^deg}
  Series x;          // x(u)
  Series y;          // y(u)
};

// local parametrization of C at an affine smooth place, to precision N
PlaceChart expand_place(const PlaneCurve& C, const Place& v, int N) {
  if (!v.rep.is_affine())
    throw UnsupportedError("series reduction at an infinite place");
  const FqField* E = v.rep.field();
  FqElem x0 = v.rep.affine_x();
  FqElem y0 = v.rep.affine_y();
  // partials of the affine equation at the point
  const FqField* base = C.base();
  auto eval_aff = [&](const std::vector<UniPoly>& cs, const FqElem& xx,
                      const FqElem& yy) {
    FqElem acc = E->zero();
    FqElem yp = E->one();
    for (size_t j = 0; j < cs.size(); ++j) {
      acc = acc + cs[j].eval(xx) * yp;
      yp = yp * yy;
    }
    return acc;
  };
  FqElem Ex = eval_aff(C.affine_eq_dx(), x0, y0);
  FqElem Ey = eval_aff(C.affine_eq_dy(), x0, y0);
  bool param_by_x = !Ey.is_zero();
  if (Ey.is_zero() && Ex.is_zero())
    throw DomainError("place at a singular point");

  Series u = Series::zero(E, N);
  if (N > 1) u.c[1] = E->one();

  auto eval_eq_series = [&](const std::vector<UniPoly>& cs, const Series& sx,
                            const Series& sy) {
    Series acc = Series::zero(E, N);
    Series yp = Series::constant(E, N, E->one());
    for (size_t j = 0; j < cs.size(); ++j) {
      acc = ser_add(acc, ser_mul(ser_eval_unipoly(cs[j], sx, base), yp));
      yp = ser_mul(yp, sy);
    }
    return acc;
  };

  if (param_by_x) {
    // x = x0 + u, solve E(x(u), y) = 0 by Newton from y0
    Series sx = u;
    sx.c[0] = x0;
    Series sy = Series::constant(E, N, y0);
    int steps = 1;
    while ((1 << steps) < N + 1) ++steps;
    for (int it = 0; it < steps + 2; ++it) {
      Series val = eval_eq_series(C.affine_eq(), sx, sy);
      Series dval = eval_eq_series(C.affine_eq_dy(), sx, sy);
      sy = ser_sub(sy, ser_mul(val, ser_inv(dval)));
    }
    return PlaceChart{E, sx, sy};
  }
  // ramified over x: y = y0 + u, solve for x by Newton from x0
  Series sy = u;
  sy.c[0] = y0;
  Series sx = Series::constant(E, N, x0);
  int steps = 1;
  while ((1 << steps) < N + 1) ++steps;
  for (int it = 0; it < steps + 2; ++it) {
    Series val = eval_eq_series(C.affine_eq(), sx, sy);
    Series dval = eval_eq_series(C.affine_eq_dx(), sx, sy);
    sx = ser_sub(sx, ser_mul(val, ser_inv(dval)));
  }
  return PlaceChart{E, sx, sy};
}

// series of f along the place chart, as (numerator series, denominator series)
std::pair<Series, Series> fn_series(const CurveFn& f, const PlaneCurve& C,
                                    const PlaceChart& ch) {
  std::vector<UniPoly> nums;
  UniPoly den;
  f.common_den_form(&nums, &den);
  const FqField* base = C.base();
  Series num = Series::zero(ch.E, ch.x.N);
  Series yp = Series::constant(ch.E, ch.x.N, ch.E->one());
  for (size_t j = 0; j < nums.size(); ++j) {
    if (!nums[j].is_zero())
      num = ser_add(num, ser_mul(ser_eval_unipoly(nums[j], ch.x, base), yp));
    yp = ser_mul(yp, ch.y);
  }
  Series dens = ser_eval_unipoly(den, ch.x, base);
  return {num, dens};
}

int default_precision(const CurveFn& f, const PlaneCurve& C) {
  int h = f.height();
  return 4 * (h + 2) * std::max(C.ydeg(), 1) + 16;
}

}  // namespace

FqElem reduce_fn_at_place(const CurveFn& f, const PlaneCurve& C, const Place& v) {
  if (f.curve() != &C) throw DomainError("function does not live on this curve");
  if (f.is_zero()) return v.rep.field()->zero();
  int N = default_precision(f, C);
  for (int attempt = 0; attempt < 3; ++attempt, N *= 2) {
    PlaceChart ch = expand_place(C, v, N);
    auto [num, den] = fn_series(f, C, ch);
    int vn = ser_val(num), vd = ser_val(den);
    if (vn >= N || vd >= N) continue;  // precision too low, retry
    if (vn < vd) throw DomainError("pole of function at place " + v.str());
    if (vn > vd) return ch.E->zero();
    return num.c[vn] / den.c[vd];
  }
  throw FrobdescError("series precision exhausted at place " + v.str());
}

int valuation_at_place(const CurveFn& f, const PlaneCurve& C, const Place& v) {
  if (f.is_zero()) throw DomainError("valuation of the zero function");
  int N = default_precision(f, C);
  for (int attempt = 0; attempt < 3; ++attempt, N *= 2) {
    PlaceChart ch = expand_place(C, v, N);
    auto [num, den] = fn_series(f, C, ch);
    int vn = ser_val(num), vd = ser_val(den);
    if (vn >= N || vd >= N) continue;
    return vn - vd;
  }
  throw FrobdescError("series precision exhausted at place " + v.str());
}

FqElem series_lead_at_place(const CurveFn& f, const PlaneCurve& C,
                            const Place& v) {
  if (f.is_zero()) throw DomainError("series lead of the zero function");
  int N = default_precision(f, C);
  for (int attempt = 0; attempt < 3; ++attempt, N *= 2) {
    PlaceChart ch = expand_place(C, v, N);
    auto [num, den] = fn_series(f, C, ch);
    int vn = ser_val(num), vd = ser_val(den);
    if (vn >= N || vd >= N) continue;
    return num.c[vn] / den.c[vd];
  }
  throw FrobdescError("series precision exhausted at place " + v.str());
}

// --- CoverFn ----------------------------------------------------------------

CoverFn::CoverFn(CurveFn eps, CurveFn a, CurveFn b)
    : eps_(std::move(eps)), a_(std::move(a)), b_(std::move(b)) {
  if (eps_.is_zero()) throw DomainError("quadratic cover over eps = 0");
}

CoverFn CoverFn::from_k(const CurveFn& eps, const CurveFn& a) {
  return CoverFn(eps, a, CurveFn(a.curve()));
}

CoverFn CoverFn::gen(const CurveFn& eps) {
  return CoverFn(eps, CurveFn(eps.curve()), CurveFn::from_int(eps.curve(), 1));
}

void CoverFn::check_compatible(const CoverFn& o) const {
  if (curve() != o.curve() || eps_ != o.eps_)
    throw DomainError("cover elements from different quadratic covers");
}

CurveFn CoverFn::norm() const { return a_ * a_ - b_ * b_ * eps_; }

CoverFn CoverFn::operator+(const CoverFn& o) const {
  check_compatible(o);
  return CoverFn(eps_, a_ + o.a_, b_ + o.b_);
}

CoverFn CoverFn::operator-(const CoverFn& o) const {
  check_compatible(o);
  return CoverFn(eps_, a_ - o.a_, b_ - o.b_);
}

CoverFn CoverFn::operator*(const CoverFn& o) const {
  check_compatible(o);
  return CoverFn(eps_, a_ * o.a_ + b_ * o.b_ * eps_, a_ * o.b_ + b_ * o.a_);
}

CoverFn CoverFn::inv() const {
  CurveFn n = norm();
  if (n.is_zero()) {
    if (is_zero()) throw DomainError("inverse of zero cover element");
    throw DomainError("cover splits: eps is a square in the base field");
  }
  CurveFn ninv = n.inv();
  return CoverFn(eps_, a_ * ninv, -b_ * ninv);
}

CoverFn CoverFn::operator/(const CoverFn& o) const { return *this * o.inv(); }

bool CoverFn::operator==(const CoverFn& o) const {
  check_compatible(o);
  return a_ == o.a_ && b_ == o.b_;
}

CoverFn CoverFn::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  CoverFn acc = CoverFn::from_k(eps_, CurveFn::from_int(curve(), 1));
  CoverFn b = *this;
  while (e > 0) {
    if (e & 1) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

std::optional<CoverFn> CoverFn::sqrt() const {
  // quadratic-extension square root over K, using K's tower square root
  const PlaneCurve* C = curve();
  CurveFn zero(C);
  if (is_zero()) return CoverFn(eps_, zero, zero);
  CurveFn two = CurveFn::from_int(C, 2);
  if (b_.is_zero()) {
    if (auto r = a_.sqrt()) return CoverFn(eps_, *r, zero);
    if (auto r = (a_ / eps_).sqrt()) return CoverFn(eps_, zero, *r);
    return std::nullopt;
  }
  auto w = (a_ * a_ - b_ * b_ * eps_).sqrt();
  if (!w) return std::nullopt;
  for (int sign = 0; sign < 2; ++sign) {
    CurveFn ww = sign ? -*w : *w;
    auto c = ((a_ + ww) / two).sqrt();
    if (!c || c->is_zero()) continue;
    CurveFn d = b_ / (two * *c);
    CoverFn cand(eps_, *c, d);
    if (cand * cand == *this) return cand;
  }
  return std::nullopt;
}

std::optional<CoverFn> CoverFn::pth_root() const {
  int p = curve()->base()->p();
  if (p == 2) throw UnsupportedError("cover p-th roots need odd characteristic");
  // (B0 + B1 w)^p = B0^p + B1^p eps^{(p-1)/2} w
  auto r0 = a_.pth_root();
  if (!r0) return std::nullopt;
  CurveFn shift = eps_.pow((p - 1) / 2);
  auto r1 = (b_ / shift).pth_root();
  if (!r1) return std::nullopt;
  return CoverFn(eps_, *r0, *r1);
}

std::string CoverFn::str() const {
  return a_.str() + " + (" + b_.str() + ")*w   [w^2 = " + eps_.str() + "]";
}

}  // namespace frobdesc
