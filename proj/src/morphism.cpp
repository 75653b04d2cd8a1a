#include "frobdesc/morphism.hpp"

#include <sstream>

namespace frobdesc {

CurveMorphism CurveMorphism::from_affine(const PlaneCurve* src,
                                         const PlaneCurve* tgt,
                                         const CurveFn& x, const CurveFn& y) {
  CurveMorphism m;
  m.source = src;
  m.target = tgt;
  m.h = {x, y, CurveFn::from_int(src, 1)};
  return m;
}

CurveMorphism CurveMorphism::constant_point(const PlaneCurve* src,
                                            const PlaneCurve* tgt,
                                            const CurvePoint& P) {
  if (P.field() != src->base())
    throw DomainError("constant morphism needs a base-field point");
  CurveMorphism m;
  m.source = src;
  m.target = tgt;
  for (int i = 0; i < 3; ++i) m.h[i] = CurveFn::constant(src, P.h[i]);
  return m;
}

CurveMorphism CurveMorphism::identity(const PlaneCurve* C) {
  return from_affine(C, C, CurveFn::coordinate_x(C), CurveFn::coordinate_y(C));
}

bool CurveMorphism::is_constant() const {
  // all cross ratios constant: h_i * c_j == h_j * c_i for the constant parts
  // simplest test: normalize by the first nonzero coordinate
  int k = -1;
  for (int i = 0; i < 3; ++i) {
    if (!h[i].is_zero()) {
      k = i;
      break;
    }
  }
  if (k < 0) throw DomainError("morphism with all coordinates zero");
  CurveFn inv = h[k].inv();
  for (int i = 0; i < 3; ++i) {
    if (i == k) continue;
    if (!(h[i] * inv).is_constant()) return false;
  }
  return true;
}

CurveFn CurveMorphism::aff_x() const {
  if (lands_at_infinity())
    throw DomainError("morphism lands on the line at infinity");
  return h[0] / h[2];
}

CurveFn CurveMorphism::aff_y() const {
  if (lands_at_infinity())
    throw DomainError("morphism lands on the line at infinity");
  return h[1] / h[2];
}

CurveMorphism CurveMorphism::coordinate_power(long long e) const {
  CurveMorphism m = *this;
  for (int i = 0; i < 3; ++i) m.h[i] = h[i].pow(e);
  return m;
}

bool CurveMorphism::proj_equal(const CurveMorphism& o) const {
  if (source != o.source || target != o.target) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (h[i] * o.h[j] != h[j] * o.h[i]) return false;
  return true;
}

std::string CurveMorphism::key() const {
  int k = -1;
  for (int i = 0; i < 3; ++i) {
    if (!h[i].is_zero()) {
      k = i;
      break;
    }
  }
  if (k < 0) throw DomainError("morphism with all coordinates zero");
  CurveFn inv = h[k].inv();
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    if (i) os << " : ";
    os << (h[i] * inv).str();
  }
  os << "]";
  return os.str();
}

bool verify_morphism(const CurveMorphism& m) {
  bool any = false;
  for (int i = 0; i < 3; ++i)
    if (!m.h[i].is_zero()) any = true;
  if (!any) return false;
  const PlaneForm& F = m.target->form();
  CurveFn acc(m.source);
  for (const auto& t : F.terms()) {
    CurveFn term = CurveFn::constant(m.source, t.coeff);
    for (int i = 0; i < t.ex; ++i) term = term * m.h[0];
    for (int i = 0; i < t.ey; ++i) term = term * m.h[1];
    for (int i = 0; i < t.ez; ++i) term = term * m.h[2];
    acc = acc + term;
  }
  return acc.is_zero();
}

CurveFn pull_function(const CurveFn& f_on_target, const CurveMorphism& m) {
  if (f_on_target.curve() != m.target)
    throw DomainError("function does not live on the morphism target");
  CurveFn a = m.aff_x();
  CurveFn b = m.aff_y();
  const PlaneCurve* src = m.source;
  auto eval_ratfunc = [&](const RatFunc& r) {
    CurveFn num(src), den(src);
    // Horner in a
    num = CurveFn(src);
    for (int d = r.num().degree(); d >= 0; --d)
      num = num * a + CurveFn::constant(src, r.num().coeff(d));
    den = CurveFn(src);
    for (int d = r.den().degree(); d >= 0; --d)
      den = den * a + CurveFn::constant(src, r.den().coeff(d));
    return num / den;  // throws on identically vanishing denominator
  };
  CurveFn acc(src);
  CurveFn bp = CurveFn::from_int(src, 1);
  for (int j = 0; j < f_on_target.ylen(); ++j) {
    if (!f_on_target.ycoeff(j).is_zero())
      acc = acc + eval_ratfunc(f_on_target.ycoeff(j)) * bp;
    bp = bp * b;
  }
  return acc;
}

CurveMorphism compose(const CurveMorphism& outer, const CurveMorphism& inner) {
  if (inner.target != outer.source)
    throw DomainError("composition type mismatch");
  if (inner.lands_at_infinity())
    throw UnsupportedError("composition through the line at infinity");
  CurveMorphism m;
  m.source = inner.source;
  m.target = outer.target;
  for (int i = 0; i < 3; ++i) m.h[i] = pull_function(outer.h[i], inner);
  return m;
}

CurvePoint reduce_morphism_at_place(const CurveMorphism& m, const Place& v) {
  const PlaneCurve* D = m.source;
  const FqField* E = v.rep.field();
  // constant coordinates: direct base change
  bool all_const = true;
  for (int i = 0; i < 3; ++i)
    if (!m.h[i].is_constant()) all_const = false;
  if (all_const) {
    std::array<FqElem, 3> val;
    for (int i = 0; i < 3; ++i) {
      auto c = m.h[i].as_constant();
      val[i] = D->base()->embed(*c, E);
    }
    return CurvePoint::normalized(val[0], val[1], val[2]);
  }
  // clear to a common denominator, then strip the minimal local valuation
  UniPoly common = UniPoly::constant(D->base()->one());
  for (int i = 0; i < 3; ++i) {
    std::vector<UniPoly> nums;
    UniPoly den;
    m.h[i].common_den_form(&nums, &den);
    UniPoly g = poly_gcd(common, den);
    common = (common / g) * den;
  }
  CurveFn cd = CurveFn::from_ratfunc(D, RatFunc(common));
  std::array<CurveFn, 3> num;
  for (int i = 0; i < 3; ++i) num[i] = m.h[i] * cd;

  std::array<int, 3> val{};
  int minval = -1;
  for (int i = 0; i < 3; ++i) {
    if (num[i].is_zero()) {
      val[i] = -1;  // infinite
      continue;
    }
    val[i] = valuation_at_place(num[i], *D, v);
    if (minval < 0 || val[i] < minval) minval = val[i];
  }
  if (minval < 0)
    throw DomainError("indeterminate at place " + v.str() +
                      ": all coordinates vanish identically");
  // coordinate values of (num_i / u^minval) at the place: zero when the local
  // order exceeds the minimum, otherwise the leading series coefficient
  std::array<FqElem, 3> out;
  for (int i = 0; i < 3; ++i) {
    if (num[i].is_zero() || val[i] > minval)
      out[i] = E->zero();
    else
      out[i] = series_lead_at_place(num[i], *D, v);
  }
  CurvePoint P = CurvePoint::normalized(out[0], out[1], out[2]);
  if (!m.target->form().eval(P.h[0], P.h[1], P.h[2]).is_zero())
    throw FrobdescError("reduced point is off the target curve (internal)");
  return P;
}

// --- cover morphisms ---------------------------------------------------------

CoverMorphism CoverMorphism::from_affine(const PlaneCurve* src,
                                         const PlaneCurve* tgt,
                                         const CurveFn& eps, const CoverFn& x,
                                         const CoverFn& y) {
  CoverMorphism m;
  m.source = src;
  m.target = tgt;
  m.eps = eps;
  m.h = {x, y, CoverFn::from_k(eps, CurveFn::from_int(src, 1))};
  return m;
}

CoverMorphism CoverMorphism::conj() const {
  CoverMorphism m = *this;
  for (int i = 0; i < 3; ++i) m.h[i] = h[i].conj();
  return m;
}

CoverFn CoverMorphism::aff_x() const {
  if (lands_at_infinity())
    throw DomainError("branch lands on the line at infinity");
  return h[0] / h[2];
}

CoverFn CoverMorphism::aff_y() const {
  if (lands_at_infinity())
    throw DomainError("branch lands on the line at infinity");
  return h[1] / h[2];
}

bool CoverMorphism::is_proper() const { return !proj_equal(conj()); }

bool CoverMorphism::proj_equal(const CoverMorphism& o) const {
  if (source != o.source || target != o.target || eps != o.eps) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (h[i] * o.h[j] != h[j] * o.h[i]) return false;
  return true;
}

CoverMorphism CoverMorphism::coordinate_power(long long e) const {
  CoverMorphism m = *this;
  for (int i = 0; i < 3; ++i) m.h[i] = h[i].pow(e);
  return m;
}

std::string CoverMorphism::key() const {
  int k = -1;
  for (int i = 0; i < 3; ++i) {
    if (!h[i].is_zero()) {
      k = i;
      break;
    }
  }
  if (k < 0) throw DomainError("branch with all coordinates zero");
  CoverFn inv = h[k].inv();
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    if (i) os << " : ";
    os << (h[i] * inv).str();
  }
  os << "]";
  return os.str();
}

bool verify_cover_morphism(const CoverMorphism& m) {
  bool any = false;
  for (int i = 0; i < 3; ++i)
    if (!m.h[i].is_zero()) any = true;
  if (!any) return false;
  const PlaneForm& F = m.target->form();
  CoverFn acc = CoverFn::from_k(m.eps, CurveFn(m.source));
  for (const auto& t : F.terms()) {
    CoverFn term =
        CoverFn::from_k(m.eps, CurveFn::constant(m.source, t.coeff));
    for (int i = 0; i < t.ex; ++i) term = term * m.h[0];
    for (int i = 0; i < t.ey; ++i) term = term * m.h[1];
    for (int i = 0; i < t.ez; ++i) term = term * m.h[2];
    acc = acc + term;
  }
  return acc.is_zero();
}

CoverFn pull_function_cover(const CurveFn& f_on_target, const CoverMorphism& m) {
  if (f_on_target.curve() != m.target)
    throw DomainError("function does not live on the branch target");
  CoverFn a = m.aff_x();
  CoverFn b = m.aff_y();
  const PlaneCurve* src = m.source;
  auto lift_const = [&](const FqElem& c) {
    return CoverFn::from_k(m.eps, CurveFn::constant(src, c));
  };
  auto eval_ratfunc = [&](const RatFunc& r) {
    CoverFn num = lift_const(src->base()->zero());
    for (int d = r.num().degree(); d >= 0; --d)
      num = num * a + lift_const(r.num().coeff(d));
    CoverFn den = lift_const(src->base()->zero());
    for (int d = r.den().degree(); d >= 0; --d)
      den = den * a + lift_const(r.den().coeff(d));
    return num / den;
  };
  CoverFn acc = lift_const(src->base()->zero());
  CoverFn bp = lift_const(src->base()->one());
  for (int j = 0; j < f_on_target.ylen(); ++j) {
    if (!f_on_target.ycoeff(j).is_zero())
      acc = acc + eval_ratfunc(f_on_target.ycoeff(j)) * bp;
    bp = bp * b;
  }
  return acc;
}

}  // namespace frobdesc
