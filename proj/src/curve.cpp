#include "frobdesc/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace frobdesc {

PlaneForm::PlaneForm(const FqField* F, std::vector<Term> terms) : F_(F) {
  // combine duplicates, drop zeros, check homogeneity
  std::map<std::array<int, 3>, FqElem> acc;
  for (const auto& t : terms) {
    if (t.ex < 0 || t.ey < 0 || t.ez < 0)
      throw DomainError("negative exponent in form");
    std::array<int, 3> key{t.ex, t.ey, t.ez};
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, t.coeff);
    else
      it->second = it->second + t.coeff;
  }
  degree_ = -1;
  for (const auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    int d = key[0] + key[1] + key[2];
    if (degree_ < 0) degree_ = d;
    if (d != degree_) throw DomainError("form is not homogeneous");
    terms_.push_back(Term{c, key[0], key[1], key[2]});
  }
  if (degree_ < 0) degree_ = 0;
}

FqElem PlaneForm::eval(const FqElem& x, const FqElem& y, const FqElem& z) const {
  const FqField* E = x.F;
  FqElem acc = E->zero();
  for (const auto& t : terms_) {
    FqElem m = F_->embed(t.coeff, E);
    for (int i = 0; i < t.ex; ++i) m = m * x;
    for (int i = 0; i < t.ey; ++i) m = m * y;
    for (int i = 0; i < t.ez; ++i) m = m * z;
    acc = acc + m;
  }
  return acc;
}

PlaneForm PlaneForm::partial(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int e = var == 0 ? t.ex : var == 1 ? t.ey : t.ez;
    if (e == 0) continue;
    Term d = t;
    d.coeff = t.coeff * F_->from_int(e);
    if (var == 0)
      --d.ex;
    else if (var == 1)
      --d.ey;
    else
      --d.ez;
    out.push_back(d);
  }
  return PlaneForm(F_, out);
}

PlaneForm PlaneForm::permuted(int px, int py, int pz) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    std::array<int, 3> e{t.ex, t.ey, t.ez};
    Term n = t;
    n.ex = e[px];
    n.ey = e[py];
    n.ez = e[pz];
    out.push_back(n);
  }
  return PlaneForm(F_, out);
}

std::string PlaneForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff.str();
    const char* names[3] = {"X", "Y", "Z"};
    int exps[3] = {t.ex, t.ey, t.ez};
    for (int v = 0; v < 3; ++v) {
      if (exps[v] == 0) continue;
      os << "*" << names[v];
      if (exps[v] > 1) os << "^" << exps[v];
    }
  }
  return os.str();
}

CurvePoint CurvePoint::normalized(const FqElem& x, const FqElem& y,
                                  const FqElem& z) {
  if (!x.is_zero()) {
    FqElem i = x.inv();
    return CurvePoint{{x.F->one(), y * i, z * i}};
  }
  if (!y.is_zero()) {
    FqElem i = y.inv();
    return CurvePoint{{x.F->zero(), y.F->one(), z * i}};
  }
  if (z.is_zero()) throw DomainError("projective point (0:0:0)");
  return CurvePoint{{x.F->zero(), y.F->zero(), z.F->one()}};
}

FqElem CurvePoint::affine_x() const {
  if (!is_affine()) throw DomainError("point at infinity has no affine chart");
  return h[0] / h[2];
}

FqElem CurvePoint::affine_y() const {
  if (!is_affine()) throw DomainError("point at infinity has no affine chart");
  return h[1] / h[2];
}

CurvePoint CurvePoint::frobenius_q(long long q) const {
  return CurvePoint{{h[0].pow(q), h[1].pow(q), h[2].pow(q)}};
}

CurvePoint CurvePoint::embedded(const FqField* E) const {
  const FqField* F = field();
  return CurvePoint{{F->embed(h[0], E), F->embed(h[1], E), F->embed(h[2], E)}};
}

std::array<int64_t, 3> CurvePoint::key() const {
  return {h[0].index(), h[1].index(), h[2].index()};
}

bool CurvePoint::operator==(const CurvePoint& o) const {
  return h[0] == o.h[0] && h[1] == o.h[1] && h[2] == o.h[2];
}

std::string CurvePoint::str() const {
  return "(" + h[0].str() + ":" + h[1].str() + ":" + h[2].str() + ")";
}

namespace {

std::vector<UniPoly> dehomogenize(const PlaneForm& f) {
  // E(x, y) = F(x, y, 1), coefficients of y^j as polynomials in x
  const FqField* F = f.field();
  int ymax = 0;
  for (const auto& t : f.terms()) ymax = std::max(ymax, t.ey);
  std::vector<std::vector<FqElem>> cs(ymax + 1);
  for (auto& row : cs) row.assign(f.degree() + 1, F->zero());
  for (const auto& t : f.terms())
    cs[t.ey][t.ex] = cs[t.ey][t.ex] + t.coeff;
  std::vector<UniPoly> out;
  out.reserve(cs.size());
  for (auto& row : cs) out.emplace_back(F, row);
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

}  // namespace

PlaneCurve::PlaneCurve(PlaneForm form, bool smooth_flag)
    : form_(std::move(form)), smooth_(smooth_flag) {
  if (form_.is_zero()) throw DomainError("zero form does not define a curve");
  if (form_.degree() < 1) throw DomainError("constant form does not define a curve");
  aff_ = dehomogenize(form_);
  if (static_cast<int>(aff_.size()) - 1 < 1) {
    // y does not occur; the affine function field would be rational in x only
    throw UnsupportedError("curve equation must involve Y");
  }
  aff_dx_.resize(aff_.size());
  aff_dy_.assign(aff_.size() - 1, UniPoly(base()));
  for (size_t j = 0; j < aff_.size(); ++j) aff_dx_[j] = aff_[j].derivative();
  for (size_t j = 1; j < aff_.size(); ++j)
    aff_dy_[j - 1] = aff_[j] * base()->from_int(static_cast<long long>(j));
  // detect y^m = g(x) shape (m a power of two) after monic normalization
  int m = ydeg();
  if ((m == 1 || m == 2 || m == 4) && aff_[m].degree() == 0) {
    bool pure = true;
    for (int j = 1; j < m; ++j)
      if (!aff_[j].is_zero()) pure = false;
    if (pure) {
      FqElem lead = aff_[m].coeff(0);
      tower_ = (-aff_[0]) * lead.inv();
    }
  }

  if (smooth_) {
    // Jacobian criterion over F_q and F_{q^2}
    for (int ext = 1; ext <= 2; ++ext) {
      if (base()->k() * ext > 4) break;
      for (const auto& P : points_over_serial(*this, ext)) {
        if (!smooth_at(P))
          throw DomainError("curve flagged smooth but singular at " + P.str());
      }
    }
    // Hasse-Weil plausibility (spot check of the irreducibility assertion)
    int g = genus();
    for (int ext = 1; ext <= 2; ++ext) {
      if (base()->k() * ext > 4) break;
      double qe = std::pow(static_cast<double>(base()->q()), ext);
      double n = static_cast<double>(points_over_serial(*this, ext).size());
      double slack = 2.0 * g * std::sqrt(qe);
      if (n < qe + 1 - slack - 1e-9 || n > qe + 1 + slack + 1e-9)
        throw DomainError("point count over ext " + std::to_string(ext) +
                          " is outside the Hasse-Weil window; curve is "
                          "probably not absolutely irreducible");
    }
  }
}

int PlaneCurve::genus() const {
  if (!smooth_)
    throw DomainError("genus formula requires the smooth flag");
  int d = degree();
  return (d - 1) * (d - 2) / 2;
}

const UniPoly& PlaneCurve::tower_g() const {
  if (!tower_) throw UnsupportedError("curve is not in y^m = g(x) form");
  return *tower_;
}

bool PlaneCurve::on_curve(const CurvePoint& P) const {
  return form_.eval(P.h[0], P.h[1], P.h[2]).is_zero();
}

bool PlaneCurve::smooth_at(const CurvePoint& P) const {
  for (int v = 0; v < 3; ++v) {
    if (!form_.partial(v).eval(P.h[0], P.h[1], P.h[2]).is_zero()) return true;
  }
  return false;
}

bool PlaneCurve::operator==(const PlaneCurve& o) const {
  if (base() != o.base() || smooth_ != o.smooth_) return false;
  const auto& a = form_.terms();
  const auto& b = o.form_.terms();
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].coeff == b[i].coeff) || a[i].ex != b[i].ex ||
        a[i].ey != b[i].ey || a[i].ez != b[i].ez)
      return false;
  }
  return true;
}

std::string PlaneCurve::str() const {
  return form_.str() + " over " + base()->name() +
         (smooth_ ? " (smooth)" : " (singular-ok)");
}

static std::vector<CurvePoint> points_over_impl(const PlaneCurve& C, int ext,
                                                ExecMode mode) {
  const FqField* base = C.base();
  if (base->k() * ext > 4)
    throw UnsupportedError("extension beyond desk scale: k*ext = " +
                           std::to_string(base->k() * ext));
  const FqField* E =
      ext == 1 ? base : FqField::get(base->p(), base->k() * ext);
  long long qe = E->q();
  // lift the form's coefficients into E once, outside the scan
  std::vector<PlaneForm::Term> lifted;
  lifted.reserve(C.form().terms().size());
  for (const auto& t : C.form().terms()) {
    PlaneForm::Term lt = t;
    lt.coeff = base->embed(t.coeff, E);
    lifted.push_back(lt);
  }
  auto eval_lifted = [&](const FqElem& x, const FqElem& y, const FqElem& z) {
    FqElem acc = E->zero();
    for (const auto& t : lifted) {
      FqElem m = t.coeff;
      for (int i = 0; i < t.ex; ++i) m = m * x;
      for (int i = 0; i < t.ey; ++i) m = m * y;
      for (int i = 0; i < t.ez; ++i) m = m * z;
      acc = acc + m;
    }
    return acc;
  };
  // chart (1:b:c), parallel over b
  std::vector<CurvePoint> pts = indexed_scan<CurvePoint>(
      static_cast<size_t>(qe),
      [&](size_t bi, std::vector<CurvePoint>& out) {
        FqElem one = E->one();
        FqElem b = E->from_index(static_cast<int32_t>(bi));
        for (int32_t ci = 0; ci < qe; ++ci) {
          FqElem c = E->from_index(ci);
          if (eval_lifted(one, b, c).is_zero())
            out.push_back(CurvePoint{{one, b, c}});
        }
      },
      mode);
  // chart (0:1:c) and the point (0:0:1)
  for (int32_t ci = 0; ci < qe; ++ci) {
    FqElem c = E->from_index(ci);
    if (eval_lifted(E->zero(), E->one(), c).is_zero())
      pts.push_back(CurvePoint{{E->zero(), E->one(), c}});
  }
  if (eval_lifted(E->zero(), E->zero(), E->one()).is_zero())
    pts.push_back(CurvePoint{{E->zero(), E->zero(), E->one()}});
  return pts;
}

std::vector<CurvePoint> points_over(const PlaneCurve& C, int ext, ExecMode mode) {
  return points_over_impl(C, ext, mode);
}

std::vector<CurvePoint> points_over_serial(const PlaneCurve& C, int ext) {
  return points_over_impl(C, ext, ExecMode::Serial);
}

std::array<int64_t, 4> Place::key() const {
  auto pk = rep.key();
  return {degree, pk[0], pk[1], pk[2]};
}

std::string Place::str() const {
  return "deg" + std::to_string(degree) + rep.str();
}

std::vector<CurvePoint> place_orbit(const PlaneCurve& C, const Place& v) {
  long long q = C.base()->q();
  std::vector<CurvePoint> orbit;
  CurvePoint P = v.rep;
  for (int i = 0; i < v.degree; ++i) {
    orbit.push_back(P);
    P = P.frobenius_q(q);
  }
  return orbit;
}

std::vector<Place> places_up_to(const PlaneCurve& C, int B, ExecMode mode) {
  if (B < 1 || C.base()->k() * B > 4)
    throw UnsupportedError("place degree bound outside desk scale");
  long long q = C.base()->q();
  std::vector<Place> places;
  for (int m = 1; m <= B; ++m) {
    std::vector<CurvePoint> pts = points_over(C, m, mode);
    std::vector<CurvePoint> eligible;
    for (const auto& P : pts) {
      if (!C.smooth_flag()) {
        // singular-ok model: only smooth affine points carry places here
        if (!P.is_affine() || !C.smooth_at(P)) continue;
      }
      eligible.push_back(P);
    }
    std::sort(eligible.begin(), eligible.end());
    std::vector<bool> used(eligible.size(), false);
    for (size_t i = 0; i < eligible.size(); ++i) {
      if (used[i]) continue;
      // walk the Frobenius orbit; degree-m places are orbits of exact size m
      std::vector<CurvePoint> orbit;
      CurvePoint P = eligible[i];
      bool proper = true;
      for (int step = 0;; ++step) {
        orbit.push_back(P);
        P = P.frobenius_q(q);
        if (P == eligible[i]) break;
        if (step > m) {
          proper = false;
          break;
        }
      }
      if (!proper || static_cast<int>(orbit.size()) != m) {
        // defined over a proper subfield (or orbit leaves the eligible set);
        // it belongs to a smaller degree
        for (const auto& O : orbit) {
          auto it = std::lower_bound(eligible.begin(), eligible.end(), O);
          if (it != eligible.end() && *it == O)
            used[static_cast<size_t>(it - eligible.begin())] = true;
        }
        continue;
      }
      CurvePoint rep = orbit[0];
      for (const auto& O : orbit) {
        if (O < rep) rep = O;
        auto it = std::lower_bound(eligible.begin(), eligible.end(), O);
        if (it != eligible.end() && *it == O)
          used[static_cast<size_t>(it - eligible.begin())] = true;
      }
      places.push_back(Place{m, rep});
    }
  }
  std::sort(places.begin(), places.end());
  return places;
}

void Divisor::add(const Place& v, int mult) {
  if (mult == 0) return;
  auto it = m_.find(v);
  if (it == m_.end())
    m_.emplace(v, mult);
  else {
    it->second += mult;
    if (it->second == 0) m_.erase(it);
  }
}

int Divisor::degree() const {
  int d = 0;
  for (const auto& [v, n] : m_) d += v.degree * n;
  return d;
}

std::string Divisor::str() const {
  if (m_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, n] : m_) {
    if (!first) os << " + ";
    first = false;
    if (n != 1) os << n << "*";
    os << v.str();
  }
  return os.str();
}

// --- text format --------------------------------------------------------

namespace {

struct Tok {
  std::string text;
  int line, col;
};

std::vector<std::vector<Tok>> tokenize_lines(const std::string& text) {
  std::vector<std::vector<Tok>> lines;
  std::istringstream is(text);
  std::string line;
  int ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    std::vector<Tok> toks;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      if (i >= line.size()) break;
      if (line[i] == '#') break;  // comment to end of line
      size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      toks.push_back(Tok{line.substr(start, i - start),
                         ln, static_cast<int>(start) + 1});
    }
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

long long parse_int(const Tok& t) {
  try {
    size_t pos = 0;
    long long v = std::stoll(t.text, &pos);
    if (pos != t.text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected integer, got '" + t.text + "'", t.line, t.col);
  }
}

}  // namespace

PlaneCurve parse_curve_text(const std::string& text) {
  auto lines = tokenize_lines(text);
  if (lines.size() < 3)
    throw ParseError("curve description needs 3 lines (field, form, flag)",
                     static_cast<int>(lines.size()) + 1, 1);
  if (lines[0].size() != 2)
    throw ParseError("field line must be 'p k'", lines[0][0].line, lines[0][0].col);
  long long p = parse_int(lines[0][0]);
  long long k = parse_int(lines[0][1]);
  const FqField* F;
  try {
    F = FqField::get(static_cast<int>(p), static_cast<int>(k));
  } catch (const FrobdescError& e) {
    throw ParseError(e.what(), lines[0][0].line, lines[0][0].col);
  }
  if (lines[1].size() % 4 != 0)
    throw ParseError("form line must be groups of 'coeff i j l'",
                     lines[1][0].line, lines[1][0].col);
  std::vector<PlaneForm::Term> terms;
  for (size_t i = 0; i < lines[1].size(); i += 4) {
    long long c = parse_int(lines[1][i]);
    long long ex = parse_int(lines[1][i + 1]);
    long long ey = parse_int(lines[1][i + 2]);
    long long ez = parse_int(lines[1][i + 3]);
    if (ex < 0 || ey < 0 || ez < 0)
      throw ParseError("negative exponent", lines[1][i + 1].line,
                       lines[1][i + 1].col);
    terms.push_back(PlaneForm::Term{F->from_int(c), static_cast<int>(ex),
                                    static_cast<int>(ey), static_cast<int>(ez)});
  }
  const Tok& flag = lines[2][0];
  bool smooth;
  if (flag.text == "smooth")
    smooth = true;
  else if (flag.text == "singular-ok")
    smooth = false;
  else
    throw ParseError("flag must be 'smooth' or 'singular-ok', got '" +
                         flag.text + "'",
                     flag.line, flag.col);
  try {
    return PlaneCurve(PlaneForm(F, std::move(terms)), smooth);
  } catch (const FrobdescError& e) {
    throw ParseError(e.what(), lines[1][0].line, lines[1][0].col);
  }
}

PlaneCurve load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FrobdescError("cannot open curve file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curve_text(ss.str());
}

std::string curve_to_text(const PlaneCurve& C) {
  std::ostringstream os;
  os << C.base()->p() << " " << C.base()->k() << "\n";
  bool first = true;
  for (const auto& t : C.form().terms()) {
    for (int i = 1; i < C.base()->k(); ++i)
      if (t.coeff.c[i] != 0)
        throw UnsupportedError(
            "curve text format carries prime-subfield coefficients only");
    if (!first) os << "  ";
    first = false;
    os << t.coeff.c[0] << " " << t.ex << " " << t.ey << " " << t.ez;
  }
  os << "\n" << (C.smooth_flag() ? "smooth" : "singular-ok") << "\n";
  return os.str();
}

}  // namespace frobdesc
