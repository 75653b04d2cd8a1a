// Morphisms between plane curves, given by projective coordinate functions in
// the function field of the source, plus branch morphisms defined over a
// quadratic cover of the source.
#pragma once

#include "frobdesc/curvefn.hpp"

namespace frobdesc {

struct CurveMorphism {
  const PlaneCurve* source = nullptr;
  const PlaneCurve* target = nullptr;
  std::array<CurveFn, 3> h;  // (X : Y : Z) of the target

  static CurveMorphism from_affine(const PlaneCurve* src, const PlaneCurve* tgt,
                                   const CurveFn& x, const CurveFn& y);
  // constant morphism onto a base-field point of the target
  static CurveMorphism constant_point(const PlaneCurve* src,
                                      const PlaneCurve* tgt,
                                      const CurvePoint& P);
  static CurveMorphism identity(const PlaneCurve* C);

  bool is_constant() const;
  bool lands_at_infinity() const { return h[2].is_zero(); }
  CurveFn aff_x() const;  // h0/h2
  CurveFn aff_y() const;  // h1/h2

  // coordinates raised to the e-th power (composition with a power Frobenius
  // when e is a power of the characteristic)
  CurveMorphism coordinate_power(long long e) const;

  bool proj_equal(const CurveMorphism& o) const;
  // canonical serialization of the projectively normalized coordinates
  std::string key() const;
};

// true iff the target's form vanishes identically on the coordinates
bool verify_morphism(const CurveMorphism& m);

// outer: B -> C composed with inner: A -> B (inner must not be constant or
// land on the line at infinity of B)
CurveMorphism compose(const CurveMorphism& outer, const CurveMorphism& inner);

// f in F(target) pulled back through m, i.e. f o m in F(source)
CurveFn pull_function(const CurveFn& f_on_target, const CurveMorphism& m);

// reduction of the morphism at a place of the source: renormalizes by the
// local valuation, so it is defined wherever the source is smooth and affine
CurvePoint reduce_morphism_at_place(const CurveMorphism& m, const Place& v);

// --- branch morphisms over a quadratic cover --------------------------------

struct CoverMorphism {
  const PlaneCurve* source = nullptr;  // D; the cover is D' : w^2 = eps
  const PlaneCurve* target = nullptr;
  CurveFn eps;
  std::array<CoverFn, 3> h;

  static CoverMorphism from_affine(const PlaneCurve* src, const PlaneCurve* tgt,
                                   const CurveFn& eps, const CoverFn& x,
                                   const CoverFn& y);
  CoverMorphism conj() const;  // composition with the cover involution w -> -w
  bool lands_at_infinity() const { return h[2].is_zero(); }
  CoverFn aff_x() const;
  CoverFn aff_y() const;
  // genuinely conjugate: differs projectively from its involution composite
  bool is_proper() const;
  bool proj_equal(const CoverMorphism& o) const;
  CoverMorphism coordinate_power(long long e) const;
  std::string key() const;
};

bool verify_cover_morphism(const CoverMorphism& m);
CoverFn pull_function_cover(const CurveFn& f_on_target, const CoverMorphism& m);

}  // namespace frobdesc
