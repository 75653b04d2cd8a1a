// The Frobenius descent map mu on points of the symmetric square, the
// projectivized class gamma, and iterated Frobenius divisibility testing.
//
// mu of a K-point of C^(2) is the componentwise pullback of a holomorphic
// basis of C along the two branches of the corresponding degree-2 divisor,
// descended by trace when the branches are conjugate over a quadratic cover.
#pragma once

#include "frobdesc/differential.hpp"

namespace frobdesc {

struct MuValue {
  const PlaneCurve* D = nullptr;     // components live in F(D), against dx
  std::vector<CurveFn> comp;

  bool is_zero() const;
  bool operator==(const MuValue& o) const;
  bool operator!=(const MuValue& o) const { return !(*this == o); }
  MuValue operator+(const MuValue& o) const;
  // serialization: header naming dx, then one "num / den" line per component
  std::string str() const;
};

// MuValue up to scaling by nonzero elements of K: first nonzero component
// normalized to 1.
struct ProjMuClass {
  std::vector<CurveFn> comp;

  static ProjMuClass from(const MuValue& m);  // throws on m = 0
  bool operator==(const ProjMuClass& o) const;
  bool operator!=(const ProjMuClass& o) const { return !(*this == o); }
  std::string str() const;
};

// rational map D -> P^{g-1} given by coordinate functions
struct ProjMap {
  const PlaneCurve* source = nullptr;
  std::vector<CurveFn> coords;
};

// reduction of a projective coordinate tuple at a place (strips the minimal
// local valuation); used for gamma(v) and shared with morphism reduction
std::vector<FqElem> reduce_proj_tuple_at_place(const std::vector<CurveFn>& h,
                                               const PlaneCurve& D,
                                               const Place& v);

// --- points of the symmetric square ------------------------------------

enum class SymSqKind { Split, Conjugate, ConstantPair };

// A K-point of C^(2): an effective degree-2 divisor on C rational over
// K = F(D). Split points carry two branch morphisms D -> C; conjugate points
// carry one branch over a quadratic cover w^2 = eps together with its
// implicit involution; constant conjugate pairs are stored as a degree-2
// place of C.
struct SymSqPoint {
  SymSqKind kind;
  const PlaneCurve* source = nullptr;  // D
  const PlaneCurve* target = nullptr;  // C
  // Split
  CurveMorphism phi1, phi2;
  // Conjugate
  CoverMorphism psi;
  // ConstantPair
  Place const_place{0, CurvePoint{}};

  static SymSqPoint split(const CurveMorphism& a, const CurveMorphism& b);
  static SymSqPoint conjugate(const CoverMorphism& psi);
  static SymSqPoint constant_pair(const PlaneCurve* D, const PlaneCurve* C,
                                  const Place& v);

  // canonical identity of the underlying divisor (symmetric functions of the
  // two branch coordinates); equal keys = equal divisors, across kinds
  std::string divisor_key() const;
  bool same_divisor(const SymSqPoint& o) const {
    return divisor_key() == o.divisor_key();
  }
  std::string describe() const;
};

// mu of a single morphism: x -> x^*(omega_1, ..., omega_g)
MuValue mu_point(const CurveMorphism& phi, const std::vector<Differential>& basis);
// mu of a degree-2 divisor: sum over the two branches (trace for conjugate)
MuValue mu_sym2(const SymSqPoint& P, const std::vector<Differential>& basis);

// gamma = [mu] as a projective class with its coordinate map
std::pair<ProjMuClass, ProjMap> gamma_of(const MuValue& m);

// largest n <= N with all branch coordinate functions in K^{p^n}
int frobenius_divisibility_depth(const SymSqPoint& P, int N);

}  // namespace frobdesc
