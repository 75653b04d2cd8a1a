#include "frobdesc/symsq.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <set>
#include <sstream>

namespace frobdesc {

ClassifyContext make_context(const PlaneCurve& C, const PlaneCurve& D,
                             int depth_bound) {
  ClassifyContext ctx{&C, &D, holomorphic_basis(C), canonical_model(C),
                      depth_bound};
  return ctx;
}

std::string point_class_name(PointClass c) {
  switch (c) {
    case PointClass::Horizontal:
      return "Horizontal";
    case PointClass::FrobeniusDivisible:
      return "FrobeniusDivisible";
    case PointClass::Counted:
      return "Counted";
    case PointClass::Double:
      return "Double";
  }
  return "?";
}

std::string ClassLabel::str() const {
  std::ostringstream os;
  os << point_class_name(cls);
  if (cls == PointClass::FrobeniusDivisible) os << "(depth " << depth << ")";
  if (gamma_class) os << " gamma=" << gamma_class->str();
  return os.str();
}

// --- local reductions --------------------------------------------------

namespace {

// lower an element of F_{q^2m} fixed by Frob_{q^m} into F_{q^m}
FqElem descend_constant(const FqElem& e, const FqField* sub) {
  const FqField* big = e.F;
  if (big == sub) return e;
  for (int32_t i = 0; i < sub->q(); ++i) {
    FqElem cand = sub->from_index(i);
    if (sub->embed(cand, big) == e) return cand;
  }
  throw FrobdescError("element does not descend to the subfield");
}

LocalDivisor make_local(std::vector<CurvePoint> pts, const PlaneCurve& C,
                        long long qv) {
  if (pts.size() != 2) throw FrobdescError("local divisor needs two points");
  // use the smallest field containing both points
  const FqField* E = pts[0].field();
  if (pts[1].field() != E) throw FrobdescError("local points on mixed fields");
  bool both_rational = true;
  for (const auto& P : pts) {
    if (!(P.frobenius_q(qv) == P)) both_rational = false;
  }
  long long esize = E->q();
  if (both_rational && esize != qv) {
    // descend coordinates to F_v
    const FqField* sub = nullptr;
    // find the field with q() == qv and same characteristic
    int p = E->p();
    int kk = 1;
    long long acc = p;
    while (acc != qv) {
      acc *= p;
      ++kk;
    }
    sub = FqField::get(p, kk);
    for (auto& P : pts) {
      P = CurvePoint{{descend_constant(P.h[0], sub), descend_constant(P.h[1], sub),
                      descend_constant(P.h[2], sub)}};
    }
  } else if (!both_rational) {
    // the pair must be swapped by Frob_v
    if (!(pts[0].frobenius_q(qv) == pts[1] && pts[1].frobenius_q(qv) == pts[0]))
      throw FrobdescError("local divisor is not Galois stable over F_v");
  }
  for (const auto& P : pts)
    if (!C.on_curve(P)) throw FrobdescError("local divisor point off the curve");
  std::sort(pts.begin(), pts.end());
  return LocalDivisor{std::move(pts)};
}

}  // namespace

std::string LocalDivisor::key() const {
  return "q" + std::to_string(pts[0].field()->q()) + "|" + pts[0].str() + "|" +
         pts[1].str();
}

bool LocalDivisor::contains(const CurvePoint& P) const {
  if (P.field() == pts[0].field()) return P == pts[0] || P == pts[1];
  // allow comparing a point over a subfield
  if (pts[0].field()->k() % P.field()->k() == 0) {
    CurvePoint lifted = P.embedded(pts[0].field());
    return lifted == pts[0] || lifted == pts[1];
  }
  return false;
}

LocalDivisor reduce_sym2_at_place(const SymSqPoint& P, const Place& v) {
  const PlaneCurve& C = *P.target;
  const PlaneCurve& D = *P.source;
  long long qv = 1;
  for (int i = 0; i < v.degree; ++i) qv *= D.base()->q();
  switch (P.kind) {
    case SymSqKind::Split: {
      CurvePoint A = reduce_morphism_at_place(P.phi1, v);
      CurvePoint B = reduce_morphism_at_place(P.phi2, v);
      return make_local({A, B}, C, qv);
    }
    case SymSqKind::ConstantPair: {
      auto orbit = place_orbit(C, P.const_place);
      // embed the conjugate pair into the compositum with F_v
      int kv = v.rep.field()->k();
      int kpair = orbit[0].field()->k();
      int kcomp = std::lcm(kv, kpair);
      if (kcomp > 4)
        throw UnsupportedError("constant pair reduction beyond desk scale");
      const FqField* E = FqField::get(D.base()->p(), kcomp);
      return make_local({orbit[0].embedded(E), orbit[1].embedded(E)}, C, qv);
    }
    case SymSqKind::Conjugate: {
      // symmetric invariants of the two branches are K-rational; reduce them
      CoverFn a = P.psi.aff_x();
      CoverFn b = P.psi.aff_y();
      CurveFn e1x = a.trace(), e2x = a.norm();
      CurveFn e1y = b.trace(), e2y = b.norm();
      CurveFn mixed = (a * b.conj()).trace();
      const FqField* Fv = v.rep.field();
      FqElem s1x = reduce_fn_at_place(e1x, D, v);
      FqElem s2x = reduce_fn_at_place(e2x, D, v);
      FqElem s1y = reduce_fn_at_place(e1y, D, v);
      FqElem s2y = reduce_fn_at_place(e2y, D, v);
      FqElem smix = reduce_fn_at_place(mixed, D, v);
      // roots of T^2 - s1 T + s2 over F_v or its quadratic extension
      FqElem four = Fv->from_int(4);
      FqElem dx = s1x * s1x - four * s2x;
      FqElem dy = s1y * s1y - four * s2y;
      bool need_ext = !dx.sqrt().has_value() || !dy.sqrt().has_value();
      const FqField* E = Fv;
      if (need_ext) {
        if (Fv->k() * 2 > 4)
          throw UnsupportedError("local divisor needs an extension beyond desk scale");
        E = FqField::get(Fv->p(), Fv->k() * 2);
      }
      auto lift = [&](const FqElem& e) { return Fv->embed(e, E); };
      FqElem two_inv = E->from_int(2).inv();
      FqElem rx = *lift(dx).sqrt();
      FqElem ry = *lift(dy).sqrt();
      FqElem x1 = (lift(s1x) + rx) * two_inv;
      FqElem x2 = (lift(s1x) - rx) * two_inv;
      FqElem y1 = (lift(s1y) + ry) * two_inv;
      FqElem y2 = (lift(s1y) - ry) * two_inv;
      // choose the pairing consistent with the mixed invariant
      FqElem m12 = x1 * y2 + x2 * y1;
      FqElem m11 = x1 * y1 + x2 * y2;
      FqElem target = lift(smix);
      std::array<std::pair<FqElem, FqElem>, 2> pair;
      if (m12 == target && !(m11 == target)) {
        pair = {std::make_pair(x1, y2), std::make_pair(x2, y1)};
      } else if (m11 == target && !(m12 == target)) {
        pair = {std::make_pair(x1, y1), std::make_pair(x2, y2)};
      } else {
        // degenerate (x1 = x2 or y1 = y2): either pairing is the divisor
        pair = {std::make_pair(x1, y1), std::make_pair(x2, y2)};
      }
      std::vector<CurvePoint> pts;
      for (const auto& [px, py] : pair)
        pts.push_back(CurvePoint::normalized(px, py, E->one()));
      return make_local(std::move(pts), C, qv);
    }
  }
  throw FrobdescError("unreachable");
}

// --- classification -------------------------------------------------------

namespace {

bool recovered_point_on_branches(const SymSqPoint& P, const CurveMorphism& Q,
                                 const ClassifyContext& ctx) {
  int checked = 0;
  for (const auto& v : places_up_to(*ctx.D, 1)) {
    if (checked >= 4) break;
    try {
      LocalDivisor div = reduce_sym2_at_place(P, v);
      CurvePoint qv = reduce_morphism_at_place(Q, v);
      if (!div.contains(qv)) return false;
      ++checked;
    } catch (const FrobdescError&) {
      continue;  // undecidable at this place; try another
    }
  }
  return checked > 0;
}

}  // namespace

ClassLabel classify(const SymSqPoint& P, const ClassifyContext& ctx) {
  ClassLabel L;
  L.cls = PointClass::FrobeniusDivisible;
  L.mu = mu_sym2(P, ctx.basis);
  if (L.mu.is_zero()) {
    L.cls = PointClass::FrobeniusDivisible;
    L.depth = frobenius_divisibility_depth(P, ctx.depth_bound);
    return L;
  }
  auto [cls, gmap] = gamma_of(L.mu);
  L.gamma_class = cls;
  L.gamma_in_curve = gamma_image_in_curve(gmap, ctx.can);
  if (!L.gamma_in_curve) {
    L.cls = PointClass::Counted;
    return L;
  }
  // gamma lands in the canonical curve: recover the global point Q of C(K)
  // (canonical coordinates (U0, U1, U2) = (Z, X, Y), so native = (U1, U2, U0))
  CurveMorphism Q;
  Q.source = ctx.D;
  Q.target = ctx.C;
  Q.h = {gmap.coords[1], gmap.coords[2], gmap.coords[0]};
  if (!verify_morphism(Q))
    throw FrobdescError("gamma lies on the curve but fails verification");
  L.recovered_q = Q;
  bool is_double = P.kind == SymSqKind::Split && P.phi1.proj_equal(Q) &&
                   P.phi2.proj_equal(Q);
  L.cls = is_double ? PointClass::Double : PointClass::Horizontal;
  L.recovered_on_branches = recovered_point_on_branches(P, Q, ctx);
  return L;
}

// --- tangency diagnostic ------------------------------------------------

TangencyDiagnostic tangency_diagnostic(const SymSqPoint& P,
                                       const ClassifyContext& ctx,
                                       int place_degree_bound) {
  TangencyDiagnostic out;
  MuValue mu = mu_sym2(P, ctx.basis);
  if (mu.is_zero())
    throw DomainError("tangency diagnostic needs a nonzero mu");
  auto [cls, gmap] = gamma_of(mu);
  for (const auto& v : places_up_to(*ctx.D, place_degree_bound)) {
    std::optional<TangencyDiagnostic::Verdict> verdict;
    try {
      LocalDivisor div = reduce_sym2_at_place(P, v);
      std::vector<FqElem> gv = reduce_proj_tuple_at_place(gmap.coords, *ctx.D, v);
      const FqField* E = div.pts[0].field();
      std::vector<FqElem> lifted;
      for (const auto& c : gv) lifted.push_back(c.F->embed(c, E));
      ProjPoint R = ProjPoint::normalized(lifted);
      TangencyDiagnostic::Verdict vd{};
      ProjLine line = secant_or_tangent_line(ctx.can, div.pts[0], div.pts[1]);
      vd.on_secant_line = line.contains(R);
      vd.at_branch_point = (R == ctx.can.embed_point(div.pts[0]) ||
                            R == ctx.can.embed_point(div.pts[1]));
      verdict = vd;
    } catch (const FrobdescError&) {
      verdict = std::nullopt;
    }
    if (!verdict.has_value())
      ++out.skipped_count;
    else {
      if (!verdict->on_secant_line) ++out.line_failures;
      if (verdict->at_branch_point)
        ++out.tangent_count;
      else
        ++out.failed_count;
    }
    out.per_place.emplace_back(v, verdict);
  }
  return out;
}

// --- enumeration -------------------------------------------------------

namespace {

struct ScanHit {
  // either a K-rational branch morphism or a conjugate point
  std::optional<CurveMorphism> morphism;
  std::optional<SymSqPoint> conj;
};

// solve b^m = v in K and its quadratic covers (m = y-degree of the target)
void solve_for_y(const PlaneCurve* C, const PlaneCurve* D, const CurveFn& a,
                 const CurveFn& v, std::vector<CurveFn>* k_roots,
                 std::vector<std::pair<CurveFn, CoverFn>>* cover_roots) {
  int m = C->ydeg();
  if (v.is_zero()) {
    k_roots->push_back(CurveFn(D));
    return;
  }
  if (m == 1) {
    k_roots->push_back(v);
    return;
  }
  if (m == 2) {
    if (auto r = v.sqrt()) {
      k_roots->push_back(*r);
      k_roots->push_back(-*r);
    } else {
      cover_roots->emplace_back(v, CoverFn::gen(v));
    }
    return;
  }
  // m == 4: b^2 is a square root of v
  if (auto r = v.sqrt()) {
    for (int sign = 0; sign < 2; ++sign) {
      CurveFn s = sign ? -*r : *r;
      if (auto b = s.sqrt()) {
        k_roots->push_back(*b);
        k_roots->push_back(-*b);
      } else {
        cover_roots->emplace_back(s, CoverFn::gen(s));
      }
    }
  } else {
    // v has no square root in K: b lives in the cover w^2 = v with b^2 = +-w
    for (int sign = 0; sign < 2; ++sign) {
      CoverFn target = sign ? -CoverFn::gen(v) : CoverFn::gen(v);
      if (auto b = target.sqrt()) {
        if (b->im().is_zero())
          k_roots->push_back(b->re());  // defensive; should not occur
        else
          cover_roots->emplace_back(v, *b);
      }
    }
  }
  (void)a;
}

struct ScanCore {
  std::vector<CurveMorphism> morphisms;   // deduplicated, scan order
  std::vector<SymSqPoint> conj_points;    // deduplicated, scan order
  long long scanned = 0;
};

// Residue gate: if b^m = v has a solution in K or in a quadratic cover, then
// at every place w of D where the candidate x-coordinate is finite, the
// specialization v(w) must be an m-th power in the quadratic extension of the
// residue field (or zero). Degree-2 places make this sharp; evaluating the
// raw coefficient polynomials there rejects almost every candidate before any
// function-field arithmetic happens.
struct ResidueGate {
  struct Spot {
    const FqField* E;              // residue field of the place
    FqElem t0;                     // x-coordinate of the place
    std::vector<FqElem> t0pow;     // its powers (for Horner-free evaluation)
    std::vector<FqElem> s0pow;     // powers of the y-coordinate
    std::vector<bool> allowed;     // by index over E
    std::vector<FqElem> gc_lifted; // target g coefficients embedded into E
    std::vector<FqElem> base_lift; // base-field elements embedded into E
  };
  std::vector<Spot> spots;
  int maxdeg = 0;  // degree bound of the candidate polynomials

  static ResidueGate build(const PlaneCurve& C, const PlaneCurve& D, int H) {
    ResidueGate gate;
    gate.maxdeg = H;
    const FqField* F = D.base();
    int m = C.ydeg();
    const UniPoly& gC = C.tower_g();
    auto add_spot = [&](const Place& v) {
      const FqField* E = v.rep.field();
      if (F->k() * (2 * v.degree) > 4) return false;  // no room for the test
      const FqField* E2 = FqField::get(F->p(), E->k() * 2);
      // membership table: x in E allowed iff x = 0 or x = e^m for some e in E2
      std::vector<int32_t> e2_to_e(static_cast<size_t>(E2->q()), -1);
      for (int32_t i = 0; i < E->q(); ++i)
        e2_to_e[static_cast<size_t>(E->embed(E->from_index(i), E2).index())] = i;
      Spot s;
      s.E = E;
      s.allowed.assign(static_cast<size_t>(E->q()), false);
      s.allowed[0] = true;
      for (int32_t i = 1; i < E2->q(); ++i) {
        int32_t down = e2_to_e[static_cast<size_t>(
            E2->from_index(i).pow(m).index())];
        if (down >= 0) s.allowed[static_cast<size_t>(down)] = true;
      }
      s.t0 = v.rep.affine_x();
      FqElem y0 = v.rep.affine_y();
      FqElem tp = E->one(), sp = E->one();
      for (int i = 0; i <= gate.maxdeg; ++i) {
        s.t0pow.push_back(tp);
        tp = tp * s.t0;
      }
      for (int j = 0; j < D.ydeg(); ++j) {
        s.s0pow.push_back(sp);
        sp = sp * y0;
      }
      for (int i = 0; i <= gC.degree(); ++i)
        s.gc_lifted.push_back(F->embed(gC.coeff(i), E));
      for (int32_t i = 0; i < F->q(); ++i)
        s.base_lift.push_back(F->embed(F->from_index(i), E));
      gate.spots.push_back(std::move(s));
      return true;
    };
    int added = 0;
    for (const auto& v : places_up_to(D, 2)) {
      if (v.degree != 2 || !v.rep.is_affine()) continue;
      if (add_spot(v)) ++added;
      if (added >= 12) break;
    }
    if (added == 0) {
      for (const auto& v : places_up_to(D, 1)) {
        if (!v.rep.is_affine()) continue;
        if (add_spot(v)) ++added;
        if (added >= 12) break;
      }
    }
    return gate;
  }

  // sound rejection on raw base-q digit arrays (no allocation): false means
  // no branch solution can exist for this candidate
  bool pass_digits(const int32_t* den_digits, int den_deg,
                   const int32_t* num_digits, int mD, int stride) const {
    for (const auto& s : spots) {
      const FqField* E = s.E;
      FqElem d0 = E->zero();
      for (int i = 0; i <= den_deg; ++i) {
        int32_t c = den_digits[i];
        if (c) d0 = d0 + s.base_lift[static_cast<size_t>(c)] * s.t0pow[i];
      }
      if (d0.is_zero()) continue;  // pole of the candidate here; no verdict
      FqElem a0 = E->zero();
      for (int j = 0; j < mD; ++j) {
        FqElem acc = E->zero();
        for (int i = 0; i < stride; ++i) {
          int32_t c = num_digits[j * stride + i];
          if (c) acc = acc + s.base_lift[static_cast<size_t>(c)] * s.t0pow[i];
        }
        a0 = a0 + acc * s.s0pow[j];
      }
      a0 = a0 / d0;
      FqElem v0 = E->zero();
      for (int dg = static_cast<int>(s.gc_lifted.size()) - 1; dg >= 0; --dg)
        v0 = v0 * a0 + s.gc_lifted[static_cast<size_t>(dg)];
      if (!s.allowed[static_cast<size_t>(v0.index())]) return false;
    }
    return true;
  }
};

ScanCore scan_k_points(const PlaneCurve& C, const PlaneCurve& D, int H,
                       ExecMode mode) {
  if (!C.is_power_tower() || !D.is_power_tower())
    throw UnsupportedError(
        "K-point scans need y^m = g(x) models (m in {1,2,4}) on both curves");
  const FqField* F = D.base();
  long long q = F->q();
  int mD = D.ydeg();
  ResidueGate gate = ResidueGate::build(C, D, H);
  // candidate space: monic denominators of degree <= H and mD numerator
  // polynomials of degree <= H
  long long nden = 0, pw = 1;
  for (int d = 0; d <= H; ++d) {
    nden += pw;
    pw *= q;
  }
  long long percoeff = 1;
  for (int i = 0; i <= H; ++i) percoeff *= q;
  long long ncoef = 1;
  for (int j = 0; j < mD; ++j) {
    if (ncoef > (1LL << 42) / percoeff)
      throw UnsupportedError("height bound too large for this base curve");
    ncoef *= percoeff;
  }
  long long total = nden * ncoef;
  if (total > 40'000'000LL)
    throw UnsupportedError("K-point scan beyond desk scale: " +
                           std::to_string(total) + " candidates");

  if (H > 6) throw UnsupportedError("height bound too large");
  const int stride = H + 1;

  ScanCore out;
  out.scanned = total;
  std::vector<ScanHit> hits = indexed_scan<ScanHit>(
      static_cast<size_t>(total),
      [&](size_t idx, std::vector<ScanHit>& sink) {
        long long di = static_cast<long long>(idx) / ncoef;
        long long ci = static_cast<long long>(idx) % ncoef;
        // decode raw digit arrays first; the gate runs before any allocation
        int32_t dd[8] = {0};
        int den_deg = 0;
        {
          long long count = 1;
          while (di >= count) {
            di -= count;
            count *= q;
            ++den_deg;
          }
          for (int i = 0; i < den_deg; ++i) {
            dd[i] = static_cast<int32_t>(di % q);
            di /= q;
          }
          dd[den_deg] = 1;  // monic: index 1 encodes the unit
        }
        int32_t nd[4 * 8] = {0};
        for (int j = 0; j < mD; ++j) {
          long long c = ci % percoeff;
          ci /= percoeff;
          for (int i = 0; i < stride; ++i) {
            nd[j * stride + i] = static_cast<int32_t>(c % q);
            c /= q;
          }
        }
        if (!gate.pass_digits(dd, den_deg, nd, mD, stride)) return;
        std::vector<FqElem> dcs;
        for (int i = 0; i <= den_deg; ++i) dcs.push_back(F->from_index(dd[i]));
        UniPoly den(F, dcs);
        std::vector<UniPoly> nums;
        nums.reserve(static_cast<size_t>(mD));
        for (int j = 0; j < mD; ++j) {
          std::vector<FqElem> cs;
          for (int i = 0; i < stride; ++i)
            cs.push_back(F->from_index(nd[j * stride + i]));
          nums.emplace_back(F, cs);
        }
        // canonical representatives only: gcd(all numerators, den) = 1
        UniPoly gall(F);
        for (const auto& nj : nums) gall = poly_gcd(gall, nj);
        UniPoly g = poly_gcd(gall, den);
        if (g.degree() > 0) return;
        std::vector<RatFunc> coeffs;
        coeffs.reserve(nums.size());
        for (const auto& nj : nums) coeffs.push_back(RatFunc(nj, den));
        CurveFn a(&D, coeffs);
        // v = g_C(a)
        const UniPoly& gC = C.tower_g();
        CurveFn v(&D);
        for (int dg = gC.degree(); dg >= 0; --dg)
          v = v * a + CurveFn::constant(&D, gC.coeff(dg));
        std::vector<CurveFn> k_roots;
        std::vector<std::pair<CurveFn, CoverFn>> cover_roots;
        solve_for_y(&C, &D, a, v, &k_roots, &cover_roots);
        for (const auto& b : k_roots) {
          if (b.height() > H) continue;
          ScanHit hit;
          hit.morphism = CurveMorphism::from_affine(&D, &C, a, b);
          sink.push_back(hit);
        }
        for (const auto& [eps, b] : cover_roots) {
          CoverMorphism psi =
              CoverMorphism::from_affine(&D, &C, eps, CoverFn::from_k(eps, a), b);
          if (!psi.is_proper()) continue;
          ScanHit hit;
          hit.conj = SymSqPoint::conjugate(psi);
          sink.push_back(hit);
        }
      },
      mode);
  std::set<std::string> seen_m, seen_c;
  for (const auto& h : hits) {
    if (h.morphism) {
      if (seen_m.insert(h.morphism->key()).second) out.morphisms.push_back(*h.morphism);
    } else if (h.conj) {
      if (seen_c.insert(h.conj->divisor_key()).second)
        out.conj_points.push_back(*h.conj);
    }
  }
  return out;
}

}  // namespace

namespace {

std::vector<CurveMorphism> branches_from_core(const ScanCore& core,
                                              const PlaneCurve& C,
                                              const PlaneCurve& D) {
  // constants are branch morphisms too
  std::set<std::string> seen;
  std::vector<CurveMorphism> out;
  for (const auto& P : points_over(C, 1)) {
    CurveMorphism m = CurveMorphism::constant_point(&D, &C, P);
    if (seen.insert(m.key()).second) out.push_back(m);
  }
  for (const auto& m : core.morphisms)
    if (seen.insert(m.key()).second) out.push_back(m);
  return out;
}

}  // namespace

std::vector<CurveMorphism> enumerate_branch_morphisms(const PlaneCurve& C,
                                                      const PlaneCurve& D,
                                                      int H, ExecMode mode,
                                                      long long* scanned) {
  ScanCore core = scan_k_points(C, D, H, mode);
  if (scanned) *scanned = core.scanned;
  return branches_from_core(core, C, D);
}

EnumerationResult enumerate_points(const PlaneCurve& C, const PlaneCurve& D,
                                   int H, ExecMode mode) {
  EnumerationResult res;
  res.height_bound = H;
  ScanCore core = scan_k_points(C, D, H, mode);
  res.candidates_scanned = core.scanned;
  std::vector<CurveMorphism> branches = branches_from_core(core, C, D);

  std::set<std::string> seen;
  auto push = [&](const SymSqPoint& P) {
    if (seen.insert(P.divisor_key()).second) res.points.push_back(P);
  };
  // split stratum: unordered pairs of branch morphisms (with repetition)
  for (size_t i = 0; i < branches.size(); ++i)
    for (size_t j = i; j < branches.size(); ++j)
      push(SymSqPoint::split(branches[i], branches[j]));
  // constant conjugate pairs: degree-2 places of C
  for (const auto& v : places_up_to(C, 2)) {
    if (v.degree == 2) push(SymSqPoint::constant_pair(&D, &C, v));
  }
  // conjugate stratum from the radical chains
  for (const auto& P : core.conj_points) push(P);

  std::sort(res.points.begin(), res.points.end(),
            [](const SymSqPoint& a, const SymSqPoint& b) {
              return a.divisor_key() < b.divisor_key();
            });
  res.strata_notes = {
      "split branches: all morphisms with coordinate height <= " +
          std::to_string(H) + " (complete)",
      "conjugate points: K-rational x-coordinate of height <= " +
          std::to_string(H) + " over covers from the radical chain",
      "constants: all of C^(2)(F_q)"};
  return res;
}

// --- bound report -----------------------------------------------------------

std::vector<std::pair<FqElem, FqElem>> monomial_automorphisms(
    const PlaneCurve& C) {
  const FqField* F = C.base();
  std::vector<std::pair<FqElem, FqElem>> out;
  for (int32_t zi = 1; zi < F->q(); ++zi) {
    for (int32_t ei = 1; ei < F->q(); ++ei) {
      FqElem zeta = F->from_index(zi);
      FqElem eta = F->from_index(ei);
      // F(zeta X, eta Y, Z) must be proportional to F
      std::optional<FqElem> ratio;
      bool ok = true;
      for (const auto& t : C.form().terms()) {
        FqElem r = zeta.pow(t.ex) * eta.pow(t.ey);
        if (!ratio)
          ratio = r;
        else if (!(*ratio == r)) {
          ok = false;
          break;
        }
      }
      if (ok) out.emplace_back(zeta, eta);
    }
  }
  return out;
}

namespace {

CurveFn substitute_monomial(const CurveFn& f, const FqElem& zeta,
                            const FqElem& eta) {
  const PlaneCurve* D = f.curve();
  const FqField* F = f.base();
  auto sub_poly = [&](const UniPoly& p) {
    std::vector<FqElem> cs;
    FqElem zp = F->one();
    for (int i = 0; i <= p.degree(); ++i) {
      cs.push_back(p.coeff(i) * zp);
      zp = zp * zeta;
    }
    return UniPoly(F, cs);
  };
  std::vector<RatFunc> out;
  FqElem ep = F->one();
  for (int j = 0; j < f.ylen(); ++j) {
    const RatFunc& c = f.ycoeff(j);
    if (c.is_zero())
      out.push_back(RatFunc::zero(F));
    else
      out.push_back(RatFunc(sub_poly(c.num()) * ep, sub_poly(c.den())));
    ep = ep * eta;
  }
  return CurveFn(D, out);
}

// post-compose the branches with the monomial automorphism (x, y) ->
// (zeta x, eta y) of the TARGET curve: scales the affine coordinate functions
SymSqPoint postcompose_with_target_automorphism(const SymSqPoint& P,
                                                const FqElem& zeta,
                                                const FqElem& eta) {
  switch (P.kind) {
    case SymSqKind::Split: {
      CurveMorphism a = P.phi1, b = P.phi2;
      a.h[0] = P.phi1.h[0] * CurveFn::constant(P.source, zeta);
      a.h[1] = P.phi1.h[1] * CurveFn::constant(P.source, eta);
      b.h[0] = P.phi2.h[0] * CurveFn::constant(P.source, zeta);
      b.h[1] = P.phi2.h[1] * CurveFn::constant(P.source, eta);
      return SymSqPoint::split(a, b);
    }
    case SymSqKind::Conjugate: {
      CoverMorphism psi = P.psi;
      CoverFn zl = CoverFn::from_k(psi.eps, CurveFn::constant(P.source, zeta));
      CoverFn el = CoverFn::from_k(psi.eps, CurveFn::constant(P.source, eta));
      psi.h[0] = P.psi.h[0] * zl;
      psi.h[1] = P.psi.h[1] * el;
      return SymSqPoint::conjugate(psi);
    }
    case SymSqKind::ConstantPair: {
      const PlaneCurve* C = P.target;
      auto orbit = place_orbit(*C, P.const_place);
      const FqField* E = orbit[0].field();
      FqElem ze = C->base()->embed(zeta, E);
      FqElem ee = C->base()->embed(eta, E);
      CurvePoint moved = CurvePoint::normalized(orbit[0].h[0] * ze,
                                                orbit[0].h[1] * ee,
                                                orbit[0].h[2]);
      CurvePoint rep = moved;
      CurvePoint other = moved.frobenius_q(C->base()->q());
      if (other < rep) rep = other;
      return SymSqPoint::constant_pair(P.source, C, Place{2, rep});
    }
  }
  throw FrobdescError("unreachable");
}

// both divisors invariant under a common nontrivial order-2 monomial
// automorphism of the target: they are fibers of the same degree-2 quotient
bool shared_fiber_witness(const SymSqPoint& A, const SymSqPoint& B) {
  const PlaneCurve* C = A.target;
  const FqField* F = C->base();
  for (const auto& [zeta, eta] : monomial_automorphisms(*C)) {
    if (zeta.is_one() && eta.is_one()) continue;
    if (!((zeta * zeta).is_one() && (eta * eta).is_one())) continue;
    try {
      if (postcompose_with_target_automorphism(A, zeta, eta).same_divisor(A) &&
          postcompose_with_target_automorphism(B, zeta, eta).same_divisor(B))
        return true;
    } catch (const FrobdescError&) {
    }
  }
  (void)F;
  return false;
}

SymSqPoint precompose_with_automorphism(const SymSqPoint& P, const FqElem& zeta,
                                        const FqElem& eta) {
  switch (P.kind) {
    case SymSqKind::Split: {
      CurveMorphism a = P.phi1, b = P.phi2;
      for (int i = 0; i < 3; ++i) {
        a.h[i] = substitute_monomial(P.phi1.h[i], zeta, eta);
        b.h[i] = substitute_monomial(P.phi2.h[i], zeta, eta);
      }
      return SymSqPoint::split(a, b);
    }
    case SymSqKind::Conjugate: {
      CoverMorphism psi = P.psi;
      psi.eps = substitute_monomial(P.psi.eps, zeta, eta);
      for (int i = 0; i < 3; ++i) {
        psi.h[i] = CoverFn(psi.eps,
                           substitute_monomial(P.psi.h[i].re(), zeta, eta),
                           substitute_monomial(P.psi.h[i].im(), zeta, eta));
      }
      return SymSqPoint::conjugate(psi);
    }
    case SymSqKind::ConstantPair:
      return P;  // constants are unmoved as a stratum; keys handle equality
  }
  throw FrobdescError("unreachable");
}

}  // namespace

BoundReport bound_check(const std::vector<SymSqPoint>& pts,
                        const std::vector<ClassLabel>& labels,
                        std::optional<int> rank, const ClassifyContext& ctx) {
  if (pts.size() != labels.size())
    throw DomainError("bound_check: points and labels differ in length");
  BoundReport rep;
  std::map<std::string, std::vector<size_t>> by_class_counted, by_class_double;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (labels[i].cls == PointClass::Counted) {
      rep.counted.push_back(i);
      by_class_counted[labels[i].gamma_class->str()].push_back(i);
    } else if (labels[i].cls == PointClass::Double) {
      rep.doubles.push_back(i);
      by_class_double[labels[i].gamma_class->str()].push_back(i);
    }
  }
  std::set<std::string> classes;
  auto autos = monomial_automorphisms(*ctx.D);
  auto record_collisions = [&](const std::map<std::string, std::vector<size_t>>& by,
                               bool counted_side) {
    for (const auto& [cls, idxs] : by) {
      classes.insert(cls);
      if (idxs.size() < 2) continue;
      if (counted_side)
        rep.injective_on_counted = false;
      else
        rep.injective_on_doubles = false;
      for (size_t a = 0; a < idxs.size(); ++a) {
        for (size_t b = a + 1; b < idxs.size(); ++b) {
          CollisionRecord rec;
          rec.i = idxs[a];
          rec.j = idxs[b];
          rec.divisor_i = pts[idxs[a]].divisor_key();
          rec.divisor_j = pts[idxs[b]].divisor_key();
          rec.class_key = cls;
          for (const auto& [zeta, eta] : autos) {
            try {
              SymSqPoint moved = precompose_with_automorphism(pts[idxs[a]], zeta, eta);
              if (moved.divisor_key() == rec.divisor_j) {
                rec.automorphism_related = true;
                break;
              }
            } catch (const FrobdescError&) {
            }
          }
          if (!rec.automorphism_related)
            rec.shared_fiber_involution =
                shared_fiber_witness(pts[idxs[a]], pts[idxs[b]]);
          rep.collisions.push_back(std::move(rec));
        }
      }
    }
  };
  record_collisions(by_class_counted, true);
  record_collisions(by_class_double, false);
  rep.distinct_classes.assign(classes.begin(), classes.end());
  if (rank) {
    rep.rank = rank;
    long long p = ctx.C->base()->p();
    long long pr = 1;
    for (int i = 0; i < *rank; ++i) pr *= p;
    rep.bound_value = (pr - 1) / (p - 1);
    rep.bound_exceeded =
        static_cast<long long>(rep.distinct_classes.size()) > *rep.bound_value;
  }
  return rep;
}

std::string BoundReport::str() const {
  std::ostringstream os;
  os << "counted points: " << counted.size() << ", double points: "
     << doubles.size() << ", distinct mu-classes: " << distinct_classes.size()
     << "\n";
  os << "injective on counted: " << (injective_on_counted ? "yes" : "NO")
     << ", injective on doubles: " << (injective_on_doubles ? "yes" : "NO")
     << "\n";
  for (const auto& c : collisions) {
    os << "collision at class " << c.class_key << ":\n    " << c.divisor_i
       << "\n    " << c.divisor_j << "\n    "
       << (c.automorphism_related
               ? "related by a base-curve automorphism"
               : c.shared_fiber_involution
                     ? "both are fibers of a degree-2 quotient of the target"
                     : "UNEXPLAINED")
       << "\n";
  }
  if (bound_value) {
    os << "rank " << *rank << " bound (p^r-1)/(p-1) = " << *bound_value << ": "
       << (bound_exceeded ? "EXCEEDED" : "respected") << "\n";
  }
  return os.str();
}

}  // namespace frobdesc
