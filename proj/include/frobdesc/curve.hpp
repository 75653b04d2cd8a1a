// Plane projective curves over F_q, their points over extensions, and closed
// points (places) as Frobenius orbits. The affine chart is Z = 1 with
// coordinates (x, y) = (X/Z, Y/Z); x is the separating variable by default.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobdesc/kernels.hpp"
#include "frobdesc/poly.hpp"

namespace frobdesc {

class ParseError : public FrobdescError {
 public:
  ParseError(std::string msg, int line, int col)
      : FrobdescError(std::move(msg) + " at line " + std::to_string(line) +
                      ", column " + std::to_string(col)),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

// Sparse homogeneous trivariate form.
class PlaneForm {
 public:
  struct Term {
    FqElem coeff;
    int ex, ey, ez;
  };

  PlaneForm(const FqField* F, std::vector<Term> terms);

  const FqField* field() const { return F_; }
  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // evaluation over any extension of the base field
  FqElem eval(const FqElem& x, const FqElem& y, const FqElem& z) const;
  PlaneForm partial(int var) const;  // 0 = X, 1 = Y, 2 = Z
  // substitute (X,Y,Z) -> permuted variables
  PlaneForm permuted(int px, int py, int pz) const;

  std::string str() const;

 private:
  const FqField* F_;
  int degree_;
  std::vector<Term> terms_;  // sorted, combined, no zero coefficients
};

// Projective point with the first nonzero coordinate normalized to 1.
struct CurvePoint {
  std::array<FqElem, 3> h;

  static CurvePoint normalized(const FqElem& x, const FqElem& y, const FqElem& z);
  const FqField* field() const { return h[0].F; }
  bool is_affine() const { return !h[2].is_zero(); }
  FqElem affine_x() const;
  FqElem affine_y() const;
  // coordinatewise a -> a^q, stays normalized
  CurvePoint frobenius_q(long long q) const;
  CurvePoint embedded(const FqField* E) const;
  // total order for canonical representatives and deterministic reports
  std::array<int64_t, 3> key() const;
  bool operator==(const CurvePoint& o) const;
  bool operator!=(const CurvePoint& o) const { return !(*this == o); }
  bool operator<(const CurvePoint& o) const { return key() < o.key(); }
  std::string str() const;
};

enum class CurveModelKind {
  Plane,        // general plane model
  Hyperelliptic  // reserved: s^2 = f(t) models beyond plane quartic scale
};

class PlaneCurve {
 public:
  // Validates: absolute irreducibility is asserted by the caller via the
  // smooth flag contract; smooth-flagged curves are checked against the
  // Jacobian criterion and a Hasse-Weil point-count plausibility window over
  // F_q and F_{q^2}.
  PlaneCurve(PlaneForm form, bool smooth_flag);

  const FqField* base() const { return form_.field(); }
  const PlaneForm& form() const { return form_; }
  int degree() const { return form_.degree(); }
  bool smooth_flag() const { return smooth_; }
  int genus() const;  // (d-1)(d-2)/2; requires the smooth flag

  // affine equation E(x, y) = F(x, y, 1) as coefficients of powers of y
  const std::vector<UniPoly>& affine_eq() const { return aff_; }
  int ydeg() const { return static_cast<int>(aff_.size()) - 1; }
  // E as a form in (x, y) partials
  const std::vector<UniPoly>& affine_eq_dx() const { return aff_dx_; }
  const std::vector<UniPoly>& affine_eq_dy() const { return aff_dy_; }
  // superelliptic 2-power model y^m = g(x) with m in {1, 2, 4}, if the
  // affine equation has that shape after monic normalization
  bool is_power_tower() const { return tower_.has_value(); }
  const UniPoly& tower_g() const;

  bool on_curve(const CurvePoint& P) const;
  bool smooth_at(const CurvePoint& P) const;

  bool operator==(const PlaneCurve& o) const;

  std::string str() const;

 private:
  PlaneForm form_;
  bool smooth_;
  std::vector<UniPoly> aff_, aff_dx_, aff_dy_;
  std::optional<UniPoly> tower_;
  CurveModelKind model_ = CurveModelKind::Plane;
};

// Complete list of points of C over F_{q^ext}, deterministic chart order.
std::vector<CurvePoint> points_over(const PlaneCurve& C, int ext,
                                    ExecMode mode = ExecMode::Parallel);
// Serial reference implementation kept for differential testing.
std::vector<CurvePoint> points_over_serial(const PlaneCurve& C, int ext);

// Closed point of degree m: a full q-Frobenius orbit, stored by its least
// representative over F_{q^m}.
struct Place {
  int degree;
  CurvePoint rep;

  std::array<int64_t, 4> key() const;
  bool operator==(const Place& o) const { return key() == o.key(); }
  bool operator<(const Place& o) const { return key() < o.key(); }
  std::string str() const;
};

// orbit of the place under x -> x^q (size = degree)
std::vector<CurvePoint> place_orbit(const PlaneCurve& C, const Place& v);

// All places of degree <= B. For curves flagged singular-ok only smooth
// affine points are grouped; refuses to enumerate through singular loci.
std::vector<Place> places_up_to(const PlaneCurve& C, int B,
                                ExecMode mode = ExecMode::Parallel);

// Effective divisor: finite multiset of places with positive multiplicities.
class Divisor {
 public:
  Divisor() = default;
  void add(const Place& v, int mult);
  int degree() const;
  const std::map<Place, int>& support() const { return m_; }
  bool operator==(const Divisor& o) const { return m_ == o.m_; }
  std::string str() const;

 private:
  std::map<Place, int> m_;
};

// --- curve description text format ------------------------------------
// line 1: p k
// line 2: sparse form, groups of four tokens "coeff i j l" = coeff X^i Y^j Z^l
// line 3: "smooth" or "singular-ok"
PlaneCurve parse_curve_text(const std::string& text);
PlaneCurve load_curve_file(const std::string& path);
std::string curve_to_text(const PlaneCurve& C);

}  // namespace frobdesc
