// Canonical-embedding geometry: secant and tangent lines, geometric
// Riemann-Roch via adjoint evaluation matrices, the open set U where the
// pointwise Gauss map inverts, and brute-force g^1_d detection.
//
// The default build supports plane quartics (genus 3), where the canonical
// model is the curve itself with coordinates reordered to match the basis
// order of holomorphic_basis: U = (1 : x : y), i.e. (U0, U1, U2) = (Z, X, Y).
// The projective-line primitives work in any dimension so that higher-genus
// span computations can be tested directly on synthetic point data.
#pragma once

#include "frobdesc/descent.hpp"
#include "frobdesc/matrix.hpp"

namespace frobdesc {

struct ProjPoint {
  std::vector<FqElem> h;  // normalized: first nonzero coordinate = 1

  static ProjPoint normalized(std::vector<FqElem> v);
  const FqField* field() const { return h[0].F; }
  int dim() const { return static_cast<int>(h.size()) - 1; }
  ProjPoint embedded(const FqField* E) const;
  bool operator==(const ProjPoint& o) const;
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  std::vector<int64_t> key() const;
  bool operator<(const ProjPoint& o) const { return key() < o.key(); }
  std::string str() const;
};

// line in P^n stored as the canonical reduced row basis of its 2-dim span
class ProjLine {
 public:
  static ProjLine through(const ProjPoint& P, const ProjPoint& Q);
  const FqField* field() const { return rows_[0][0].F; }
  int ambient_dim() const { return static_cast<int>(rows_[0].size()) - 1; }
  const std::vector<std::vector<FqElem>>& rows() const { return rows_; }
  bool contains(const ProjPoint& R) const;
  bool operator==(const ProjLine& o) const;
  bool operator!=(const ProjLine& o) const { return !(*this == o); }
  // all F-rational points on the line (for line-section scans in P^2)
  std::vector<ProjPoint> rational_points() const;
  std::string str() const;

 private:
  std::vector<std::vector<FqElem>> rows_;  // 2 x (n+1), RREF
};

enum class LineMeet { Same, Point, Disjoint };
struct LineMeetResult {
  LineMeet kind;
  std::optional<ProjPoint> point;  // for kind == Point
};
LineMeetResult meet_lines(const ProjLine& a, const ProjLine& b);

// --- canonical model ---------------------------------------------------

struct CanonicalModel {
  const PlaneCurve* C;
  int g;
  // adjoint monomials (i, j) ordered as in holomorphic_basis
  std::vector<std::array<int, 2>> monomials;
  // defining forms of the canonical image in the coordinates dual to the
  // monomial order (for d = 4: F(U1, U2, U0))
  std::vector<PlaneForm> forms;

  ProjPoint embed_point(const CurvePoint& P) const;
  bool contains(const ProjPoint& U) const;
  // a point spanning the embedded tangent line together with embed_point(P)
  ProjPoint tangent_direction(const CurvePoint& P) const;
};

// plane-model canonical embedding; genus 3 (d = 4) in the default build
CanonicalModel canonical_model(const PlaneCurve& C);

// secant line through the two points of a degree-2 divisor on the canonical
// curve; the embedded tangent line when the points coincide
ProjLine secant_or_tangent_line(const CanonicalModel& can, const CurvePoint& P,
                                const CurvePoint& Q);

// true iff every defining form of the canonical model vanishes identically on
// the coordinate tuple (gamma(D) contained in the canonical curve)
bool gamma_image_in_curve(const ProjMap& gamma, const CanonicalModel& can);

// --- geometric Riemann-Roch ----------------------------------------------

// l(D) for an effective divisor with multiplicities <= 2 supported at smooth
// points: deg D - g + 1 + dim{adjoint forms vanishing on D}, the tangency
// condition realized as a directional-derivative row
int riemann_roch_dim(const PlaneCurve& C, const Divisor& D);
// same, on an explicit list of geometric points with multiplicities over a
// common field
int riemann_roch_dim_points(
    const PlaneCurve& C,
    const std::vector<std::pair<CurvePoint, int>>& pts);

// --- lemma-level checks ------------------------------------------------

struct SecantMeetReport {
  LineMeet kind;
  std::optional<ProjPoint> meeting_point;
  int l_value = -1;  // riemann_roch_dim of P1+P2+P3+P4 when lines are not skew
};

// if the secants P1P2 and P3P4 meet, the degree-4 divisor has l >= 2
SecantMeetReport secants_meet_report(const CanonicalModel& can,
                                     const std::array<CurvePoint, 4>& P);

enum class InUVerdict { InU, OnC, MultiplePairs, NoPairFound };
struct InUReport {
  InUVerdict verdict;
  int bound;  // extension-degree bound of the pair scan
  std::vector<std::pair<CurvePoint, CurvePoint>> pairs;  // witnesses found
};

// scans all pairs of distinct geometric points of C of degree <= B for secant
// lines through R; uniqueness is relative to the declared bound
InUReport is_in_U(const CanonicalModel& can, const ProjPoint& R, int B);

// --- line sections and gonality -----------------------------------------

struct LineSection {
  std::vector<std::pair<CurvePoint, int>> points;  // with multiplicities
  int degree_found;  // sum of deg(point) * mult within the extension bound
};
// intersection divisor of a line with C, scanning extensions up to ext_bound
LineSection line_section(const PlaneCurve& C, const ProjLine& line,
                         int ext_bound);
// true iff the line cuts exactly the given divisor (full multiplicity)
bool line_cuts_divisor(const PlaneCurve& C, const ProjLine& line,
                       const Divisor& D);

struct GonalityReport {
  int d = 0;
  bool found = false;
  Divisor witness;
  int witness_l = 0;
  int place_degree_bound = 0;
  long long divisors_scanned = 0;
  std::optional<bool> trisecant_crosscheck;  // for d = 3
  std::string str() const;
};

// brute force over effective divisors of degree d (multiplicities <= 2)
// supported on places of degree <= place_bound
GonalityReport has_g1d(const PlaneCurve& C, int d, int place_bound,
                       ExecMode mode = ExecMode::Parallel);

// all effective divisors of degree n, multiplicities <= 2, supported on the
// given places, in deterministic order
std::vector<Divisor> effective_divisors(const std::vector<Place>& places, int n);

}  // namespace frobdesc
