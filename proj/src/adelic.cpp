#include "frobdesc/adelic.hpp"

#include <sstream>

namespace frobdesc {

TruncAdelicPoint construct_unobstructed(
    const SymSqPoint& P1, const SymSqPoint& P2, const ClassifyContext& ctx,
    int place_bound, const std::vector<int>* part_of_place) {
  if (P1.same_divisor(P2))
    throw DomainError(
        "construction refused: the two points coincide, the family would be "
        "global");
  MuValue m1 = mu_sym2(P1, ctx.basis);
  MuValue m2 = mu_sym2(P2, ctx.basis);
  if (!(m1 == m2))
    throw DomainError(
        "construction refused: mu values differ, the family would not "
        "survive descent");
  auto places = places_up_to(*ctx.D, place_bound);
  if (places.size() < 2)
    throw DomainError("need at least two places to split into nonempty parts");
  if (part_of_place && part_of_place->size() != places.size())
    throw DomainError("partition length does not match the place list");
  TruncAdelicPoint x;
  x.C = ctx.C;
  x.D = ctx.D;
  x.provenance_pool = {P1, P2};
  bool part1_used = false, part2_used = false;
  for (size_t i = 0; i < places.size(); ++i) {
    int part = part_of_place ? (*part_of_place)[i] : static_cast<int>(i % 2);
    if (part != 0 && part != 1) throw DomainError("partition entries must be 0 or 1");
    const SymSqPoint& P = part == 0 ? P1 : P2;
    (part == 0 ? part1_used : part2_used) = true;
    AdelicComponent c{places[i], reduce_sym2_at_place(P, places[i]),
                      ComponentProvenance::GlobalPoint, part};
    x.components.push_back(std::move(c));
  }
  if (!part1_used || !part2_used)
    throw DomainError("construction refused: one part of the partition is empty");
  return x;
}

SurvivalCertificate check_survival(const TruncAdelicPoint& x, const MuValue& xi,
                                   int depth, const ClassifyContext& ctx) {
  SurvivalCertificate cert{xi, depth, {}, true};
  for (const auto& c : x.components) {
    const SymSqPoint* prov = x.provenance_of(c);
    if (!prov)
      throw UnsupportedError(
          "survival undecidable in truncation model: component at " +
          c.place.str() + " carries raw residue data only");
    PlaceVerdict v{c.place, false, -1};
    MuValue mu = mu_sym2(*prov, ctx.basis);
    v.mu_matches = (mu == xi);
    if (xi.is_zero()) v.divisibility_depth = frobenius_divisibility_depth(*prov, depth);
    if (!v.mu_matches || (xi.is_zero() && v.divisibility_depth < depth))
      cert.passed = false;
    cert.verdicts.push_back(std::move(v));
  }
  return cert;
}

std::string SurvivalCertificate::str() const {
  std::ostringstream os;
  os << "survival certificate (" << (passed ? "PASS" : "FAIL") << ") with xi "
     << (xi.is_zero() ? std::string("= 0") : "!= 0") << ", depth " << depth
     << "\n";
  for (const auto& v : verdicts) {
    os << "  " << v.place.str() << ": mu "
       << (v.mu_matches ? "matches" : "DIFFERS");
    if (v.divisibility_depth >= 0)
      os << ", divisibility depth " << v.divisibility_depth;
    os << "\n";
  }
  return os.str();
}

ZMembership z_membership(const TruncAdelicPoint& x, const ClassifyContext& ctx,
                         int height_bound, ExecMode mode) {
  ZMembership out;
  out.height_bound = height_bound;
  std::vector<CurveMorphism> ys = enumerate_branch_morphisms(
      *ctx.C, *ctx.D, height_bound, mode, &out.branches_scanned);
  for (const auto& y : ys) {
    bool all = true;
    for (const auto& c : x.components) {
      CurvePoint yv;
      try {
        yv = reduce_morphism_at_place(y, c.place);
      } catch (const FrobdescError&) {
        all = false;
        break;
      }
      if (!c.divisor.contains(yv)) {
        all = false;
        break;
      }
      // residual point must be F_v-rational: with y(v) in the divisor, this
      // means both points are rational over the residue field
      const FqField* Ediv = c.divisor.pts[0].field();
      const FqField* Fv = c.place.rep.field();
      if (Ediv != Fv) {
        // divisor over a proper extension: the pair is conjugate, so removing
        // the rational point y(v) is impossible unless both are rational
        all = false;
        break;
      }
    }
    if (all) {
      out.found = true;
      out.witness = y;
      return out;
    }
  }
  return out;
}

TrichotomyReport trichotomy_report(const TruncAdelicPoint& x,
                                   const ClassifyContext& ctx, int height_bound,
                                   int depth, ExecMode mode) {
  TrichotomyReport rep;
  rep.height_bound = height_bound;
  rep.depth = depth;
  int place_bound = 0;
  for (const auto& c : x.components)
    place_bound = std::max(place_bound, c.place.degree);
  rep.place_bound = place_bound;
  // (a) a single enumerated global point matching every component
  EnumerationResult en = enumerate_points(*ctx.C, *ctx.D, height_bound, mode);
  for (const auto& P : en.points) {
    bool all = true;
    for (const auto& c : x.components) {
      try {
        LocalDivisor div = reduce_sym2_at_place(P, c.place);
        if (!(div.key() == c.divisor.key())) {
          all = false;
          break;
        }
      } catch (const FrobdescError&) {
        all = false;
        break;
      }
    }
    if (all) {
      rep.outcome = TrichotomyOutcome::Global;
      rep.global_witness = P;
      return rep;
    }
  }
  // (b) all components constant: constant provenance or raw residue data
  bool all_const = true;
  for (const auto& c : x.components) {
    if (c.provenance == ComponentProvenance::RawResidue) continue;
    const SymSqPoint* prov = x.provenance_of(c);
    bool const_prov = prov->kind == SymSqKind::ConstantPair;
    if (prov->kind == SymSqKind::Split)
      const_prov = prov->phi1.is_constant() && prov->phi2.is_constant();
    if (!const_prov) all_const = false;
  }
  if (all_const) {
    rep.outcome = TrichotomyOutcome::Reduced;
    return rep;
  }
  // (c) Z-set: a global point of C plus a residue-field point
  ZMembership z = z_membership(x, ctx, height_bound, mode);
  if (z.found) {
    rep.outcome = TrichotomyOutcome::Z;
    rep.z_witness = z.witness;
    return rep;
  }
  rep.outcome = TrichotomyOutcome::Unclassified;
  return rep;
}

std::string TrichotomyReport::str() const {
  std::ostringstream os;
  os << "trichotomy: ";
  switch (outcome) {
    case TrichotomyOutcome::Global:
      os << "Global(" << global_witness->describe() << ")";
      break;
    case TrichotomyOutcome::Reduced:
      os << "Reduced (all components constant)";
      break;
    case TrichotomyOutcome::Z:
      os << "Z(witness " << z_witness->key() << ")";
      break;
    case TrichotomyOutcome::Unclassified:
      os << "Unclassified at the declared bounds (truncation caveat, not a "
            "theorem violation)";
      break;
  }
  os << " [height <= " << height_bound << ", places <= " << place_bound
     << ", depth " << depth << "]";
  return os.str();
}

}  // namespace frobdesc
