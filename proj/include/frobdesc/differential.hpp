// Kahler differentials: every differential on a curve is written f * dx
// against the fixed separating coordinate x of the affine chart. Differentials
// on a quadratic cover carry a CoverFn coefficient and descend by trace.
#pragma once

#include "frobdesc/morphism.hpp"

namespace frobdesc {

struct Differential {
  const PlaneCurve* C = nullptr;
  CurveFn f;  // the differential f dx

  bool is_zero() const { return f.is_zero(); }
  bool operator==(const Differential& o) const {
    return C == o.C && f == o.f;
  }
  Differential operator+(const Differential& o) const;
  Differential operator*(const CurveFn& s) const { return {C, f * s}; }
  std::string str() const;  // "numerator / denominator dx"
};

// dy/dx = -E_x/E_y through the curve equation; throws when x fails to be
// separating (E_y = 0 in the function field)
CurveFn implicit_dy_dx(const PlaneCurve& C);

// exterior derivative d(g) = g' dx
Differential differentiate(const CurveFn& g);

// Basis of holomorphic differentials of a smooth plane curve of degree d:
// x^i y^j dx / E_y for i + j <= d - 3, ordered by ascending j then i, scaled
// by the constant leading y-coefficient of E_y so that Fermat-type models
// yield the classically written basis (e.g. dx/y^3, x dx/y^3, dx/y^2 for
// x^4 + y^4 = 1). Genus 0 returns an empty basis.
std::vector<Differential> holomorphic_basis(const PlaneCurve& C);

// phi^*(f dx) = (f o phi) d(x o phi); pullback along a morphism
Differential pullback(const Differential& w, const CurveMorphism& phi);

// differential on the quadratic cover K(w), w^2 = eps
struct CoverDifferential {
  CurveFn eps;
  CoverFn f;  // f dx with f in K'
};

CoverFn differentiate_cover(const CoverFn& g);
CoverDifferential pullback_cover(const Differential& w, const CoverMorphism& psi);
// coefficientwise trace Tr_{K'/K}: (a + b w) dx -> 2a dx
Differential trace_to_base(const CoverDifferential& w, const PlaneCurve* D);

// equality of spans over the constant field F_q (exact linear algebra)
bool span_equal(const std::vector<Differential>& A,
                const std::vector<Differential>& B);

}  // namespace frobdesc
