// K-points of the symmetric square: bounded-height enumeration, the
// classifier (horizontal / Frobenius-divisible / counted / double), local
// reductions of degree-2 divisors, and the mu-class counting report.
#pragma once

#include "frobdesc/secant.hpp"

namespace frobdesc {

// --- shared classification context -------------------------------------

struct ClassifyContext {
  const PlaneCurve* C;
  const PlaneCurve* D;
  std::vector<Differential> basis;  // holomorphic basis of C
  CanonicalModel can;
  int depth_bound = 4;  // F^N-divisibility cap
};

ClassifyContext make_context(const PlaneCurve& C, const PlaneCurve& D,
                             int depth_bound = 4);

// --- classification -------------------------------------------------------

enum class PointClass { Horizontal, FrobeniusDivisible, Counted, Double };

std::string point_class_name(PointClass c);

struct ClassLabel {
  PointClass cls;
  MuValue mu;
  int depth = -1;                            // FrobeniusDivisible only
  std::optional<ProjMuClass> gamma_class;    // when mu != 0
  bool gamma_in_curve = false;               // when mu != 0
  std::optional<CurveMorphism> recovered_q;  // Double / Horizontal
  bool recovered_on_branches = false;        // spot-check evidence
  std::string str() const;
};

ClassLabel classify(const SymSqPoint& P, const ClassifyContext& ctx);

// --- local reductions -------------------------------------------------------

// degree-2 divisor over the residue field of a place: an unordered pair of
// geometric points (equal for a double point), Galois-stable over F_v
struct LocalDivisor {
  std::vector<CurvePoint> pts;  // size 2, sorted by key; common field
  std::string key() const;
  bool contains(const CurvePoint& P) const;
};

LocalDivisor reduce_sym2_at_place(const SymSqPoint& P, const Place& v);

// --- tangency diagnostic ----------------------------------------------------

// Per-place tangency data for a point with mu != 0. At every place where the
// reductions exist, gamma(v) lies on the secant line of the localized divisor
// (that is the Riemann-Kempf consistency of mu and is expected to always
// hold); the point is tangent to a horizontal curve at v exactly when
// gamma(v) coincides with one of the two localized branch points.
struct TangencyDiagnostic {
  struct Verdict {
    bool on_secant_line;
    bool at_branch_point;
  };
  std::vector<std::pair<Place, std::optional<Verdict>>> per_place;
  int line_failures = 0;  // Riemann-Kempf consistency violations (expect 0)
  int tangent_count = 0;  // gamma(v) is a localized branch point
  int failed_count = 0;   // gamma(v) is not a branch point
  int skipped_count = 0;  // reduction undecidable at the place
  bool everywhere_tangent_where_decided() const { return failed_count == 0; }
};

TangencyDiagnostic tangency_diagnostic(const SymSqPoint& P,
                                       const ClassifyContext& ctx,
                                       int place_degree_bound);

// --- enumeration -------------------------------------------------------

struct EnumerationResult {
  std::vector<SymSqPoint> points;  // deduplicated, sorted by divisor key
  int height_bound = 0;
  long long candidates_scanned = 0;
  std::vector<std::string> strata_notes;  // declared scan limitations
};

// Complete over the declared strata: constant pairs (split and conjugate),
// split points whose branch morphisms have coordinate height <= H, and
// conjugate points with K-rational x-coordinate of height <= H over covers
// discovered from the radical chain. Both curves must carry 2-power
// superelliptic models for the radical solving to apply.
EnumerationResult enumerate_points(const PlaneCurve& C, const PlaneCurve& D,
                                   int H, ExecMode mode = ExecMode::Parallel);

// all K-rational branch morphisms D -> C of height <= H (the scan behind the
// split stratum); exposed for the global-point searches of the adelic layer
std::vector<CurveMorphism> enumerate_branch_morphisms(const PlaneCurve& C,
                                                      const PlaneCurve& D,
                                                      int H,
                                                      ExecMode mode,
                                                      long long* scanned);

// --- bound report ------------------------------------------------------

struct CollisionRecord {
  size_t i, j;  // indices into the classified list
  std::string divisor_i, divisor_j;
  std::string class_key;
  // the two ways a collision on a hypothesis-violating curve is explained:
  // the points are related by a monomial automorphism of the base curve, or
  // both divisors are fibers of a quotient by an order-2 automorphism of the
  // target curve (the bielliptic mechanism)
  bool automorphism_related = false;
  bool shared_fiber_involution = false;
  bool explained() const { return automorphism_related || shared_fiber_involution; }
};

struct BoundReport {
  std::vector<size_t> counted, doubles;
  std::vector<std::string> distinct_classes;
  std::vector<CollisionRecord> collisions;
  bool injective_on_counted = true;
  bool injective_on_doubles = true;
  std::optional<int> rank;
  std::optional<long long> bound_value;  // (p^r - 1)/(p - 1)
  bool bound_exceeded = false;
  std::string str() const;
};

BoundReport bound_check(const std::vector<SymSqPoint>& pts,
                        const std::vector<ClassLabel>& labels,
                        std::optional<int> rank, const ClassifyContext& ctx);

// monomial automorphisms (x, y) -> (zeta x, eta y) of a curve
std::vector<std::pair<FqElem, FqElem>> monomial_automorphisms(const PlaneCurve& C);

}  // namespace frobdesc
