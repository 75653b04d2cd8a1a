// Truncated adelic machinery: finite place families with provenance-tagged
// local degree-2 divisors, construction of non-global points surviving
// Frobenius descent, survival certificates, the Z-set membership search, and
// the global/reduced/Z trichotomy report.
//
// The truncation model: a local component at v is the reduction at v of a
// known global point (provenance) or raw residue-field data. Survival is
// decided through provenance by global equality in Omega^{g}; raw components
// are honestly undecidable here.
#pragma once

#include "frobdesc/symsq.hpp"

namespace frobdesc {

enum class ComponentProvenance { GlobalPoint, RawResidue };

struct AdelicComponent {
  Place place;
  LocalDivisor divisor;
  ComponentProvenance provenance;
  // index into the owning point's provenance pool when GlobalPoint
  int provenance_index = -1;
};

struct TruncAdelicPoint {
  const PlaneCurve* C = nullptr;
  const PlaneCurve* D = nullptr;
  std::vector<SymSqPoint> provenance_pool;
  std::vector<AdelicComponent> components;  // sorted by place

  const SymSqPoint* provenance_of(const AdelicComponent& c) const {
    return c.provenance_index >= 0 ? &provenance_pool[static_cast<size_t>(
                                         c.provenance_index)]
                                   : nullptr;
  }
};

// Builds the alternating point P_v := P1 on S1, P2 on S2 over the places of
// degree <= place_bound. Requires mu(P1) = mu(P2), P1 != P2 as divisors, and
// both parts nonempty; partition is by index parity in the sorted place list
// unless explicit parts are given.
TruncAdelicPoint construct_unobstructed(
    const SymSqPoint& P1, const SymSqPoint& P2, const ClassifyContext& ctx,
    int place_bound,
    const std::vector<int>* part_of_place = nullptr);

struct PlaceVerdict {
  Place place;
  bool mu_matches;           // provenance mu equals xi (global equality)
  int divisibility_depth;    // checked when xi = 0
};

struct SurvivalCertificate {
  MuValue xi;
  int depth;  // requested F^N depth for the xi = 0 path
  std::vector<PlaceVerdict> verdicts;
  bool passed = false;
  std::string str() const;
};

// per place: does the provenance point's global mu equal xi; for xi = 0 the
// iterated divisibility depth is recorded as well. Raw residue components
// throw: survival is undecidable in the truncation model.
SurvivalCertificate check_survival(const TruncAdelicPoint& x, const MuValue& xi,
                                   int depth, const ClassifyContext& ctx);

struct ZMembership {
  bool found = false;
  std::optional<CurveMorphism> witness;  // y in C(K)
  int height_bound = 0;
  long long branches_scanned = 0;
};

// searches global y: D -> C up to the height bound such that every component
// divisor contains the reduction of y with an F_v-rational residual point
ZMembership z_membership(const TruncAdelicPoint& x, const ClassifyContext& ctx,
                         int height_bound, ExecMode mode = ExecMode::Parallel);

enum class TrichotomyOutcome { Global, Reduced, Z, Unclassified };

struct TrichotomyReport {
  TrichotomyOutcome outcome;
  std::optional<SymSqPoint> global_witness;
  std::optional<CurveMorphism> z_witness;
  int height_bound = 0;
  int place_bound = 0;
  int depth = 0;
  std::string str() const;
};

// tests, in order: (a) some enumerated global point reduces to every
// component; (b) every component is constant data (constant provenance or raw
// residue); (c) the Z-set search; otherwise Unclassified with bounds echoed.
TrichotomyReport trichotomy_report(const TruncAdelicPoint& x,
                                   const ClassifyContext& ctx, int height_bound,
                                   int depth,
                                   ExecMode mode = ExecMode::Parallel);

}  // namespace frobdesc
