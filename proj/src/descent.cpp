#include "frobdesc/descent.hpp"

#include <sstream>

namespace frobdesc {

bool MuValue::is_zero() const {
  for (const auto& c : comp)
    if (!c.is_zero()) return false;
  return true;
}

bool MuValue::operator==(const MuValue& o) const {
  if (D != o.D || comp.size() != o.comp.size()) return false;
  for (size_t i = 0; i < comp.size(); ++i)
    if (comp[i] != o.comp[i]) return false;
  return true;
}

MuValue MuValue::operator+(const MuValue& o) const {
  if (D != o.D || comp.size() != o.comp.size())
    throw DomainError("mu values of different shapes");
  MuValue r{D, {}};
  r.comp.reserve(comp.size());
  for (size_t i = 0; i < comp.size(); ++i) r.comp.push_back(comp[i] + o.comp[i]);
  return r;
}

std::string MuValue::str() const {
  std::ostringstream os;
  os << "against dx, " << comp.size() << " components\n";
  for (const auto& c : comp) {
    if (c.is_zero()) {
      os << "0\n";
      continue;
    }
    std::vector<UniPoly> nums;
    UniPoly den;
    c.common_den_form(&nums, &den);
    os << c.str() << "\n";
  }
  return os.str();
}

ProjMuClass ProjMuClass::from(const MuValue& m) {
  if (m.is_zero()) throw DomainError("gamma undefined for xi = 0");
  int k = -1;
  for (size_t i = 0; i < m.comp.size(); ++i) {
    if (!m.comp[i].is_zero()) {
      k = static_cast<int>(i);
      break;
    }
  }
  CurveFn inv = m.comp[static_cast<size_t>(k)].inv();
  ProjMuClass out;
  out.comp.reserve(m.comp.size());
  for (const auto& c : m.comp) out.comp.push_back(c * inv);
  return out;
}

bool ProjMuClass::operator==(const ProjMuClass& o) const {
  if (comp.size() != o.comp.size()) return false;
  for (size_t i = 0; i < comp.size(); ++i)
    if (comp[i] != o.comp[i]) return false;
  return true;
}

std::string ProjMuClass::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < comp.size(); ++i) {
    if (i) os << " : ";
    os << comp[i].str();
  }
  os << ")";
  return os.str();
}

std::vector<FqElem> reduce_proj_tuple_at_place(const std::vector<CurveFn>& h,
                                               const PlaneCurve& D,
                                               const Place& v) {
  const FqField* E = v.rep.field();
  bool all_const = true;
  for (const auto& c : h)
    if (!c.is_constant()) all_const = false;
  if (all_const) {
    std::vector<FqElem> out;
    for (const auto& c : h) out.push_back(D.base()->embed(*c.as_constant(), E));
    return out;
  }
  UniPoly common = UniPoly::constant(D.base()->one());
  for (const auto& c : h) {
    std::vector<UniPoly> nums;
    UniPoly den;
    c.common_den_form(&nums, &den);
    UniPoly g = poly_gcd(common, den);
    common = (common / g) * den;
  }
  CurveFn cd = CurveFn::from_ratfunc(&D, RatFunc(common));
  std::vector<CurveFn> num;
  num.reserve(h.size());
  for (const auto& c : h) num.push_back(c * cd);
  std::vector<int> val(h.size(), -1);
  int minval = -1;
  for (size_t i = 0; i < h.size(); ++i) {
    if (num[i].is_zero()) continue;
    val[i] = valuation_at_place(num[i], D, v);
    if (minval < 0 || val[i] < minval) minval = val[i];
  }
  if (minval < 0)
    throw DomainError("indeterminate at place " + v.str() +
                      ": all coordinates vanish identically");
  std::vector<FqElem> out(h.size(), E->zero());
  for (size_t i = 0; i < h.size(); ++i) {
    if (num[i].is_zero() || val[i] > minval) continue;
    out[i] = series_lead_at_place(num[i], D, v);
  }
  return out;
}

// --- SymSqPoint ---------------------------------------------------------

SymSqPoint SymSqPoint::split(const CurveMorphism& a, const CurveMorphism& b) {
  if (a.source != b.source || a.target != b.target)
    throw DomainError("split point branches must share source and target");
  SymSqPoint P;
  P.kind = SymSqKind::Split;
  P.source = a.source;
  P.target = a.target;
  // canonical branch order for unordered pairs
  if (a.key() <= b.key()) {
    P.phi1 = a;
    P.phi2 = b;
  } else {
    P.phi1 = b;
    P.phi2 = a;
  }
  return P;
}

SymSqPoint SymSqPoint::conjugate(const CoverMorphism& psi) {
  if (!psi.is_proper())
    throw DomainError(
        "branch is invariant under the cover involution; store it as a split "
        "point");
  SymSqPoint P;
  P.kind = SymSqKind::Conjugate;
  P.source = psi.source;
  P.target = psi.target;
  P.psi = psi;
  return P;
}

SymSqPoint SymSqPoint::constant_pair(const PlaneCurve* D, const PlaneCurve* C,
                                     const Place& v) {
  if (v.degree != 2)
    throw DomainError("constant conjugate pairs come from degree-2 places");
  SymSqPoint P;
  P.kind = SymSqKind::ConstantPair;
  P.source = D;
  P.target = C;
  P.const_place = v;
  return P;
}

namespace {

// symmetric functions of the two branch points, as canonical strings;
// the five invariants determine the unordered pair of affine points
std::string invariant_key(const CurveFn& e1x, const CurveFn& e2x,
                          const CurveFn& e1y, const CurveFn& e2y,
                          const CurveFn& mixed) {
  return "x2-(" + e1x.str() + ")x+(" + e2x.str() + "); y2-(" + e1y.str() +
         ")y+(" + e2y.str() + "); m=" + mixed.str();
}

}  // namespace

std::string SymSqPoint::divisor_key() const {
  switch (kind) {
    case SymSqKind::Split: {
      bool inf1 = phi1.lands_at_infinity(), inf2 = phi2.lands_at_infinity();
      if (inf1 || inf2) {
        std::string k1 = phi1.key(), k2 = phi2.key();
        if (k2 < k1) std::swap(k1, k2);
        return "INFPAIR:" + k1 + "|" + k2;
      }
      CurveFn a1 = phi1.aff_x(), b1 = phi1.aff_y();
      CurveFn a2 = phi2.aff_x(), b2 = phi2.aff_y();
      return invariant_key(a1 + a2, a1 * a2, b1 + b2, b1 * b2,
                           a1 * b2 + a2 * b1);
    }
    case SymSqKind::Conjugate: {
      if (psi.lands_at_infinity())
        return "INFCONJ:" + psi.key();
      CoverFn a = psi.aff_x(), b = psi.aff_y();
      // invariants of {(a, b), (sigma a, sigma b)}
      CurveFn e1x = a.trace();
      CurveFn e2x = a.norm();
      CurveFn e1y = b.trace();
      CurveFn e2y = b.norm();
      // a sigma(b) + sigma(a) b = Tr(a sigma(b))
      CurveFn mixed = (a * b.conj()).trace();
      return invariant_key(e1x, e2x, e1y, e2y, mixed);
    }
    case SymSqKind::ConstantPair: {
      const PlaneCurve* C = target;
      auto orbit = place_orbit(*C, const_place);
      if (!orbit[0].is_affine()) {
        std::string k1 = orbit[0].str(), k2 = orbit[1].str();
        if (k2 < k1) std::swap(k1, k2);
        return "INFPAIR:" + k1 + "|" + k2;
      }
      FqElem x1 = orbit[0].affine_x(), y1 = orbit[0].affine_y();
      FqElem x2 = orbit[1].affine_x(), y2 = orbit[1].affine_y();
      // symmetric functions land in the base field
      const FqField* Fbig = x1.F;
      auto down = [&](const FqElem& e) {
        // element of F_{q^2} fixed by Frobenius lies in F_q
        FqElem fr = e.pow(source->base()->q());
        if (!(fr == e))
          throw FrobdescError("constant-pair invariant not Galois stable");
        // match against base field elements through the embedding
        for (int32_t i = 0; i < source->base()->q(); ++i) {
          FqElem cand = source->base()->from_index(i);
          if (source->base()->embed(cand, Fbig) == e)
            return CurveFn::constant(source, cand);
        }
        throw FrobdescError("descent of constant failed");
      };
      return invariant_key(down(x1 + x2), down(x1 * x2), down(y1 + y2),
                           down(y1 * y2), down(x1 * y2 + x2 * y1));
    }
  }
  throw FrobdescError("unreachable");
}

std::string SymSqPoint::describe() const {
  switch (kind) {
    case SymSqKind::Split:
      return "split{" + phi1.key() + ", " + phi2.key() + "}";
    case SymSqKind::Conjugate:
      return "conjugate{" + psi.key() + " over w^2 = " + psi.eps.str() + "}";
    case SymSqKind::ConstantPair:
      return "constant-pair{" + const_place.str() + "}";
  }
  return "";
}

// --- mu -------------------------------------------------------------------

MuValue mu_point(const CurveMorphism& phi, const std::vector<Differential>& basis) {
  MuValue m{phi.source, {}};
  m.comp.reserve(basis.size());
  for (const auto& w : basis) m.comp.push_back(pullback(w, phi).f);
  return m;
}

MuValue mu_sym2(const SymSqPoint& P, const std::vector<Differential>& basis) {
  switch (P.kind) {
    case SymSqKind::Split:
      return mu_point(P.phi1, basis) + mu_point(P.phi2, basis);
    case SymSqKind::Conjugate: {
      MuValue m{P.source, {}};
      m.comp.reserve(basis.size());
      for (const auto& w : basis) {
        CoverDifferential pb = pullback_cover(w, P.psi);
        m.comp.push_back(trace_to_base(pb, P.source).f);
      }
      return m;
    }
    case SymSqKind::ConstantPair: {
      // both branches are constant, so every pullback vanishes
      MuValue m{P.source, {}};
      for (size_t i = 0; i < basis.size(); ++i)
        m.comp.push_back(CurveFn(P.source));
      return m;
    }
  }
  throw FrobdescError("unreachable");
}

std::pair<ProjMuClass, ProjMap> gamma_of(const MuValue& m) {
  ProjMuClass cls = ProjMuClass::from(m);  // throws for m = 0
  ProjMap map;
  map.source = m.D;
  map.coords = cls.comp;
  return {cls, map};
}

// --- Frobenius divisibility -------------------------------------------------

namespace {

// coordinates of one branch in the affine chart, or empty for constants
std::vector<CurveFn> branch_coords(const CurveMorphism& phi) {
  if (phi.is_constant()) return {};
  return {phi.aff_x(), phi.aff_y()};
}

bool all_pth_roots(std::vector<CurveFn>& v) {
  for (auto& f : v) {
    auto r = f.pth_root();
    if (!r) return false;
    f = *r;
  }
  return true;
}

bool all_pth_roots_cover(std::vector<CoverFn>& v) {
  for (auto& f : v) {
    auto r = f.pth_root();
    if (!r) return false;
    f = *r;
  }
  return true;
}

}  // namespace

int frobenius_divisibility_depth(const SymSqPoint& P, int N) {
  if (N < 0 || N > 8)
    throw UnsupportedError("divisibility depth bound outside [0, 8]");
  switch (P.kind) {
    case SymSqKind::ConstantPair:
      return N;  // constants are p-divisible at every depth over a perfect field
    case SymSqKind::Split: {
      std::vector<CurveFn> coords = branch_coords(P.phi1);
      std::vector<CurveFn> more = branch_coords(P.phi2);
      coords.insert(coords.end(), more.begin(), more.end());
      if (coords.empty()) return N;
      int n = 0;
      while (n < N && all_pth_roots(coords)) ++n;
      return n;
    }
    case SymSqKind::Conjugate: {
      std::vector<CoverFn> coords{P.psi.aff_x(), P.psi.aff_y()};
      bool all_const = true;
      for (const auto& c : coords)
        if (!(c.re().is_constant() && c.im().is_constant())) all_const = false;
      if (all_const) return N;
      int n = 0;
      while (n < N && all_pth_roots_cover(coords)) ++n;
      return n;
    }
  }
  throw FrobdescError("unreachable");
}

}  // namespace frobdesc
