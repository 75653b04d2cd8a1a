// Univariate polynomials and rational functions over F_{p^k}, with the exact
// square-root and p-th-power primitives the descent machinery relies on.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frobdesc/fq.hpp"

namespace frobdesc {

// Dense univariate polynomial, trimmed so the leading coefficient is nonzero
// (the zero polynomial has an empty coefficient vector).
class UniPoly {
 public:
  UniPoly() : F_(nullptr) {}
  explicit UniPoly(const FqField* F) : F_(F) {}
  UniPoly(const FqField* F, std::vector<FqElem> coeffs);
  static UniPoly constant(const FqElem& c);
  static UniPoly from_ints(const FqField* F, const std::vector<long long>& cs);
  // the monomial c * t^d
  static UniPoly monomial(const FqElem& c, int d);

  const FqField* field() const { return F_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
  const std::vector<FqElem>& coeffs() const { return c_; }
  FqElem coeff(int i) const;
  FqElem lc() const;  // leading coefficient; throws on zero polynomial
  bool is_one() const;
  bool is_monic() const { return !is_zero() && lc().is_one(); }

  UniPoly operator-() const;
  UniPoly operator+(const UniPoly& b) const;
  UniPoly operator-(const UniPoly& b) const;
  UniPoly operator*(const UniPoly& b) const;
  UniPoly operator*(const FqElem& s) const;
  bool operator==(const UniPoly& b) const;
  bool operator!=(const UniPoly& b) const { return !(*this == b); }

  // division with remainder; divisor must be nonzero
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& b) const;
  UniPoly operator/(const UniPoly& b) const { return divmod(b).first; }
  UniPoly operator%(const UniPoly& b) const { return divmod(b).second; }

  UniPoly derivative() const;
  FqElem eval(const FqElem& x) const;
  UniPoly pow(int e) const;
  UniPoly monic() const;  // scaled so lc = 1

  // exact square root, if *this is a perfect square
  std::optional<UniPoly> sqrt() const;
  // exact p-th root, if every term's exponent is divisible by p
  // (nullopt is the "not a p-th power" signal)
  std::optional<UniPoly> pth_root() const;

  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  const FqField* F_;
  std::vector<FqElem> c_;
};

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);  // monic gcd

// Rational function num/den in canonical form: den monic, gcd(num,den) = 1,
// and the zero function is 0/1.
class RatFunc {
 public:
  RatFunc() : num_(), den_() {}
  explicit RatFunc(const UniPoly& num);
  RatFunc(const UniPoly& num, const UniPoly& den);
  static RatFunc constant(const FqElem& c) { return RatFunc(UniPoly::constant(c)); }
  static RatFunc zero(const FqField* F) { return RatFunc(UniPoly(F)); }
  static RatFunc one(const FqField* F);

  const FqField* field() const { return num_.field(); }
  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.is_one(); }

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& b) const;
  RatFunc operator-(const RatFunc& b) const;
  RatFunc operator*(const RatFunc& b) const;
  RatFunc operator/(const RatFunc& b) const;
  bool operator==(const RatFunc& b) const;
  bool operator!=(const RatFunc& b) const { return !(*this == b); }

  RatFunc inv() const;
  RatFunc derivative() const;
  RatFunc pow(int e) const;
  // max(deg num, deg den); 0 for the zero function
  int height() const;

  std::optional<RatFunc> sqrt() const;
  std::optional<RatFunc> pth_root() const;

  std::string str(const std::string& var = "t") const;

 private:
  void normalize();
  UniPoly num_, den_;
};

}  // namespace frobdesc
