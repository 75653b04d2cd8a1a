// Shared test fixtures: the curves exercised throughout the suite.
#pragma once

#include "frobdesc/curve.hpp"

namespace fixtures {

using namespace frobdesc;

// C: x^4 + y^4 = 1, projectively X^4 + Y^4 - Z^4 = 0 (smooth, genus 3)
inline PlaneCurve fermat_quartic(int p) {
  const FqField* F = FqField::get(p, 1);
  std::vector<PlaneForm::Term> terms = {
      {F->from_int(1), 4, 0, 0},
      {F->from_int(1), 0, 4, 0},
      {F->from_int(-1), 0, 0, 4},
  };
  return PlaneCurve(PlaneForm(F, terms), /*smooth=*/true);
}

// D: x^4 + z^2 = 1 in affine coordinates (x, z); projectively
// X^4 + Y^2 Z^2 - Z^4 = 0 with one singular point at infinity
inline PlaneCurve dee_curve(int p) {
  const FqField* F = FqField::get(p, 1);
  std::vector<PlaneForm::Term> terms = {
      {F->from_int(1), 4, 0, 0},
      {F->from_int(1), 0, 2, 2},
      {F->from_int(-1), 0, 0, 4},
  };
  return PlaneCurve(PlaneForm(F, terms), /*smooth=*/false);
}

// smooth cubic Y^2 Z - X^3 + X Z^2 (genus 1)
inline PlaneCurve smooth_cubic_f5() {
  const FqField* F = FqField::get(5, 1);
  std::vector<PlaneForm::Term> terms = {
      {F->from_int(1), 0, 2, 1},
      {F->from_int(-1), 3, 0, 0},
      {F->from_int(1), 1, 0, 2},
  };
  return PlaneCurve(PlaneForm(F, terms), /*smooth=*/true);
}

// smooth conic X^2 + Y^2 - Z^2 (genus 0)
inline PlaneCurve conic_f5() {
  const FqField* F = FqField::get(5, 1);
  std::vector<PlaneForm::Term> terms = {
      {F->from_int(1), 2, 0, 0},
      {F->from_int(1), 0, 2, 0},
      {F->from_int(-1), 0, 0, 2},
  };
  return PlaneCurve(PlaneForm(F, terms), /*smooth=*/true);
}

}  // namespace fixtures
