// Elements of the function field F_q(x)[y]/(E) of a plane curve, in the
// canonical representation sum_j c_j(x) y^j with j < deg_y(E) and each c_j a
// reduced rational function. Equality is decidable componentwise.
//
// Square roots and p-th roots are supported on 2-power superelliptic models
// y^m = g(x) (m in {1, 2, 4}) by descending through the tower of quadratic
// subfields; other models refuse those operations explicitly.
#pragma once

#include <optional>

#include "frobdesc/curve.hpp"

namespace frobdesc {

class CurveFn {
 public:
  CurveFn() : C_(nullptr) {}
  explicit CurveFn(const PlaneCurve* C);  // zero
  CurveFn(const PlaneCurve* C, std::vector<RatFunc> ycoeffs);

  static CurveFn constant(const PlaneCurve* C, const FqElem& c);
  static CurveFn from_int(const PlaneCurve* C, long long v);
  static CurveFn coordinate_x(const PlaneCurve* C);
  static CurveFn coordinate_y(const PlaneCurve* C);
  static CurveFn from_ratfunc(const PlaneCurve* C, const RatFunc& r);

  const PlaneCurve* curve() const { return C_; }
  const FqField* base() const { return C_->base(); }
  int ylen() const { return static_cast<int>(c_.size()); }
  const RatFunc& ycoeff(int j) const { return c_[j]; }

  bool is_zero() const;
  bool is_constant() const;  // in the constant field F_q
  std::optional<FqElem> as_constant() const;

  CurveFn operator-() const;
  CurveFn operator+(const CurveFn& b) const;
  CurveFn operator-(const CurveFn& b) const;
  CurveFn operator*(const CurveFn& b) const;
  CurveFn operator/(const CurveFn& b) const;
  bool operator==(const CurveFn& b) const;
  bool operator!=(const CurveFn& b) const { return !(*this == b); }

  CurveFn inv() const;
  CurveFn pow(long long e) const;

  // max degree of the numerator coefficients / common denominator
  int height() const;
  // common-denominator form: (a_0(x), ..., a_{m-1}(x); den(x)), den monic,
  // no common factor across all parts
  void common_den_form(std::vector<UniPoly>* nums, UniPoly* den) const;

  // exact square root (tower models only)
  std::optional<CurveFn> sqrt() const;
  // exact p-th root (tower models only); nullopt = "not a p-th power"
  std::optional<CurveFn> pth_root() const;
  bool is_pth_power() const { return pth_root().has_value(); }

  std::string str() const;  // "(bivariate numerator) / (denominator)"

 private:
  void reduce_high_powers(std::vector<RatFunc>& v) const;
  const PlaneCurve* C_;
  std::vector<RatFunc> c_;  // length = ydeg of the curve equation
};

// --- evaluation / reduction at places ------------------------------------

// value of f at an affine place v (embedding into F_v); throws DomainError on
// a pole, UnsupportedError at infinite places
FqElem reduce_fn_at_place(const CurveFn& f, const PlaneCurve& C, const Place& v);
// valuation ord_v(f) for f != 0 at an affine place
int valuation_at_place(const CurveFn& f, const PlaneCurve& C, const Place& v);
// leading coefficient of the local expansion of f at v (f != 0)
FqElem series_lead_at_place(const CurveFn& f, const PlaneCurve& C, const Place& v);

// --- quadratic covers ------------------------------------------------------
// Elements a + b w of K' = K[w]/(w^2 - eps), eps a non-square in K.
// Non-squareness is not decided eagerly: if arithmetic ever witnesses a
// splitting (a zero divisor), a DomainError reports it.
class CoverFn {
 public:
  CoverFn() = default;
  CoverFn(CurveFn eps, CurveFn a, CurveFn b);
  static CoverFn from_k(const CurveFn& eps, const CurveFn& a);
  static CoverFn gen(const CurveFn& eps);  // w itself

  const CurveFn& eps() const { return eps_; }
  const CurveFn& re() const { return a_; }  // coefficient of 1
  const CurveFn& im() const { return b_; }  // coefficient of w
  const PlaneCurve* curve() const { return eps_.curve(); }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool in_base_field() const { return b_.is_zero(); }

  CoverFn conj() const { return CoverFn(eps_, a_, -b_); }
  CurveFn trace() const { return a_ + a_; }
  CurveFn norm() const;

  CoverFn operator-() const { return CoverFn(eps_, -a_, -b_); }
  CoverFn operator+(const CoverFn& o) const;
  CoverFn operator-(const CoverFn& o) const;
  CoverFn operator*(const CoverFn& o) const;
  CoverFn operator/(const CoverFn& o) const;
  bool operator==(const CoverFn& o) const;
  bool operator!=(const CoverFn& o) const { return !(*this == o); }

  CoverFn inv() const;
  CoverFn pow(long long e) const;
  std::optional<CoverFn> sqrt() const;
  std::optional<CoverFn> pth_root() const;

  std::string str() const;

 private:
  void check_compatible(const CoverFn& o) const;
  CurveFn eps_, a_, b_;
};

}  // namespace frobdesc
