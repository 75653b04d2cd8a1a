#include "frobdesc/differential.hpp"

#include "frobdesc/matrix.hpp"

namespace frobdesc {

Differential Differential::operator+(const Differential& o) const {
  if (C != o.C) throw DomainError("differentials on different curves");
  return {C, f + o.f};
}

std::string Differential::str() const { return f.str() + " dx"; }

CurveFn implicit_dy_dx(const PlaneCurve& C) {
  CurveFn Ex(&C), Ey(&C);
  {
    std::vector<RatFunc> cx, cy;
    for (const auto& c : C.affine_eq_dx()) cx.push_back(RatFunc(c));
    for (const auto& c : C.affine_eq_dy()) cy.push_back(RatFunc(c));
    Ex = CurveFn(&C, cx);
    Ey = CurveFn(&C, cy);
  }
  if (Ey.is_zero())
    throw DomainError("non-separating coordinate: E_y vanishes identically");
  return -Ex / Ey;
}

Differential differentiate(const CurveFn& g) {
  const PlaneCurve* C = g.curve();
  const FqField* F = g.base();
  std::vector<RatFunc> dpart, ypart;
  for (int j = 0; j < g.ylen(); ++j) dpart.push_back(g.ycoeff(j).derivative());
  for (int j = 1; j < g.ylen(); ++j)
    ypart.push_back(g.ycoeff(j) * RatFunc::constant(F->from_int(j)));
  CurveFn dg(C, dpart);
  CurveFn gy(C, ypart);
  if (!gy.is_zero()) dg = dg + gy * implicit_dy_dx(*C);
  return Differential{C, dg};
}

std::vector<Differential> holomorphic_basis(const PlaneCurve& C) {
  if (!C.smooth_flag())
    throw DomainError("holomorphic basis requires a smooth plane model");
  int d = C.degree();
  std::vector<Differential> basis;
  if (d < 3) return basis;  // genus 0
  // E_y as a function; adjoint denominators
  std::vector<RatFunc> cy;
  for (const auto& c : C.affine_eq_dy()) cy.push_back(RatFunc(c));
  CurveFn Ey(&C, cy);
  if (Ey.is_zero()) throw DomainError("non-separating coordinate on this model");
  // unit normalization: constant leading y-coefficient of E_y when nonzero
  const auto& dy = C.affine_eq_dy();
  FqElem scale = C.base()->one();
  if (!dy.empty() && !dy.back().is_zero() && dy.back().degree() == 0)
    scale = dy.back().coeff(0);
  if (scale.is_zero()) scale = C.base()->one();
  CurveFn denom_inv = CurveFn::constant(&C, scale) / Ey;
  CurveFn x = CurveFn::coordinate_x(&C);
  CurveFn y = CurveFn::coordinate_y(&C);
  for (int j = 0; j <= d - 3; ++j) {
    for (int i = 0; i + j <= d - 3; ++i) {
      basis.push_back(Differential{&C, x.pow(i) * y.pow(j) * denom_inv});
    }
  }
  return basis;
}

Differential pullback(const Differential& w, const CurveMorphism& phi) {
  if (w.C != phi.target)
    throw DomainError("differential does not live on the morphism target");
  const PlaneCurve* D = phi.source;
  // d of a constant is zero (this also covers constant maps to infinity,
  // the only way a morphism meets the line at infinity identically)
  if (phi.is_constant()) return Differential{D, CurveFn(D)};
  CurveFn a = phi.aff_x();
  Differential da = differentiate(a);
  if (da.is_zero()) return Differential{D, CurveFn(D)};
  CurveFn fcomp;
  try {
    fcomp = pull_function(w.f, phi);
  } catch (const DomainError& e) {
    throw DomainError(std::string("pole-normalization failure in pullback: ") +
                      e.what());
  }
  return Differential{D, fcomp * da.f};
}

CoverFn differentiate_cover(const CoverFn& g) {
  const PlaneCurve* D = g.curve();
  if (D->base()->p() == 2)
    throw UnsupportedError("cover differentials need odd characteristic");
  // (a + b w)' = a' + (b' + b eps'/(2 eps)) w, using w' = eps' w / (2 eps)
  CurveFn epsp = differentiate(g.eps()).f;
  CurveFn two = CurveFn::from_int(D, 2);
  return CoverFn(g.eps(), differentiate(g.re()).f,
                 differentiate(g.im()).f + g.im() * epsp / (two * g.eps()));
}

CoverDifferential pullback_cover(const Differential& w, const CoverMorphism& psi) {
  if (w.C != psi.target)
    throw DomainError("differential does not live on the branch target");
  CoverFn a = psi.aff_x();
  CoverFn da = differentiate_cover(a);
  if (da.is_zero())
    return CoverDifferential{psi.eps, CoverFn::from_k(psi.eps, CurveFn(psi.source))};
  CoverFn fcomp;
  try {
    fcomp = pull_function_cover(w.f, psi);
  } catch (const DomainError& e) {
    throw DomainError(std::string("pole-normalization failure in pullback: ") +
                      e.what());
  }
  return CoverDifferential{psi.eps, fcomp * da};
}

Differential trace_to_base(const CoverDifferential& w, const PlaneCurve* D) {
  if (D->base()->p() == 2)
    throw UnsupportedError("trace descent needs a separable quadratic cover");
  return Differential{D, w.f.trace()};
}

bool span_equal(const std::vector<Differential>& A,
                const std::vector<Differential>& B) {
  if (A.empty() && B.empty()) return true;
  const PlaneCurve* C = !A.empty() ? A[0].C : B[0].C;
  const FqField* F = C->base();
  // common denominator across all coefficients of both lists
  UniPoly common = UniPoly::constant(F->one());
  auto fold = [&](const std::vector<Differential>& L) {
    for (const auto& w : L) {
      if (w.C != C) throw DomainError("span over mixed curves");
      std::vector<UniPoly> nums;
      UniPoly den;
      w.f.common_den_form(&nums, &den);
      UniPoly g = poly_gcd(common, den);
      common = (common / g) * den;
    }
  };
  fold(A);
  fold(B);
  // coefficient vectors of f * common as bivariate polynomials
  int m = C->ydeg();
  int maxdeg = 0;
  auto vectorize = [&](const std::vector<Differential>& L,
                       std::vector<std::vector<UniPoly>>* out) {
    for (const auto& w : L) {
      CurveFn scaled = w.f * CurveFn::from_ratfunc(C, RatFunc(common));
      std::vector<UniPoly> nums;
      UniPoly den;
      scaled.common_den_form(&nums, &den);
      if (!den.is_one())
        throw FrobdescError("common denominator was not cleared (internal)");
      for (const auto& n : nums) maxdeg = std::max(maxdeg, n.degree());
      out->push_back(nums);
    }
  };
  std::vector<std::vector<UniPoly>> va, vb;
  vectorize(A, &va);
  vectorize(B, &vb);
  int ncols = m * (maxdeg + 1);
  auto fill = [&](const std::vector<std::vector<UniPoly>>& rowsrc, FqMatrix* M,
                  int row0) {
    for (size_t r = 0; r < rowsrc.size(); ++r)
      for (int j = 0; j < static_cast<int>(rowsrc[r].size()); ++j)
        for (int dg = 0; dg <= rowsrc[r][j].degree(); ++dg)
          M->at(row0 + static_cast<int>(r), j * (maxdeg + 1) + dg) =
              rowsrc[r][j].coeff(dg);
  };
  FqMatrix MA(F, static_cast<int>(va.size()), ncols);
  FqMatrix MB(F, static_cast<int>(vb.size()), ncols);
  FqMatrix MAB(F, static_cast<int>(va.size() + vb.size()), ncols);
  fill(va, &MA, 0);
  fill(vb, &MB, 0);
  fill(va, &MAB, 0);
  fill(vb, &MAB, static_cast<int>(va.size()));
  int ra = MA.rank(), rb = MB.rank(), rab = MAB.rank();
  return ra == rb && rb == rab;
}

}  // namespace frobdesc
