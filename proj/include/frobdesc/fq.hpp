// Exact arithmetic over F_{p^k} for small p and k.
//
// Field instances are interned for the lifetime of the process and are
// immutable once created, so raw const pointers to them can be stored in
// elements and shared freely across threads.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace frobdesc {

class FrobdescError : public std::exception {
 public:
  explicit FrobdescError(std::string msg) : msg_(std::move(msg)) {}
  const char* what() const noexcept override { return msg_.c_str(); }

 private:
  std::string msg_;
};

// Violated operation precondition (mixed fields, division by zero, ...).
class DomainError : public FrobdescError {
 public:
  using FrobdescError::FrobdescError;
};

// Input outside the supported desk-scale envelope.
class UnsupportedError : public FrobdescError {
 public:
  using FrobdescError::FrobdescError;
};

class FqField;

struct FqElem {
  const FqField* F = nullptr;
  std::array<int16_t, 4> c{0, 0, 0, 0};

  bool is_zero() const;
  bool is_one() const;
  // total order used for canonical representatives: value of sum c_i p^i
  int32_t index() const;

  FqElem operator-() const;
  FqElem operator+(const FqElem& b) const;
  FqElem operator-(const FqElem& b) const;
  FqElem operator*(const FqElem& b) const;
  FqElem operator/(const FqElem& b) const;
  bool operator==(const FqElem& b) const;
  bool operator!=(const FqElem& b) const { return !(*this == b); }

  FqElem inv() const;
  FqElem pow(long long e) const;
  // x -> x^p
  FqElem frobenius_p() const;
  // x -> x^{p^j}
  FqElem frobenius_p(int j) const;
  // unique p-th root a^{p^{k-1}}
  FqElem pth_root() const;
  // least square root in index order, if any
  std::optional<FqElem> sqrt() const;

  std::string str() const;
};

// F_{p^k} = F_p[u]/(m(u)), m monic irreducible of degree k.
class FqField {
 public:
  // Deterministic default modulus: the irreducible monic polynomial of
  // degree k whose non-leading coefficient vector (c_{k-1},...,c_0) encodes
  // the smallest integer in base p.
  static const FqField* get(int p, int k);
  // Explicit modulus: coefficients c[0..k] with c[k] = 1, must be irreducible.
  static const FqField* get(int p, const std::vector<int>& modulus);

  int p() const { return p_; }
  int k() const { return k_; }
  long long q() const { return q_; }  // p^k
  const std::array<int16_t, 5>& modulus() const { return mod_; }

  FqElem zero() const;
  FqElem one() const;
  // from integer residue (embeds F_p)
  FqElem from_int(long long v) const;
  // from coefficient vector, length <= k
  FqElem from_coeffs(const std::vector<int>& cs) const;
  // element with index i in [0, q) (base-p digits as coefficients)
  FqElem from_index(int32_t i) const;
  // the generator u of the extension (for k = 1 this is 1)
  FqElem gen() const;

  // all q elements in index order
  std::vector<FqElem> elements() const;

  std::string name() const;  // e.g. "F_25"

  // Subfield embedding F_{p^k} -> F_{p^K} for k | K; deterministic (the
  // generator maps to the least root of this field's modulus in the target).
  FqElem embed(const FqElem& a, const FqField* target) const;

 private:
  FqField(int p, int k, std::array<int16_t, 5> mod);
  friend struct FqElem;
  FqElem generator_image(const FqField* target) const;

  int p_;
  int k_;
  long long q_;
  std::array<int16_t, 5> mod_;  // mod_[i] = coeff of u^i, mod_[k] = 1

  // memoized generator images for subfield embeddings; append-only
  mutable std::vector<std::pair<const FqField*, FqElem>> embed_cache_;
  mutable std::mutex embed_mu_;
};

// All roots of f (coeff vector over F, low to high) in the extension
// F_{p^{k*ext}} of F, by exhaustive scan. Complete at desk scale.
std::vector<FqElem> roots_over_extension(const FqField* F,
                                         const std::vector<FqElem>& poly,
                                         int ext);

// --- inline hot paths (the enumeration kernels live on these) -------------

inline bool FqElem::is_zero() const {
  for (int i = 0; i < F->k(); ++i)
    if (c[i] != 0) return false;
  return true;
}

inline bool FqElem::operator==(const FqElem& b) const {
  if (F != b.F) throw DomainError("mixed-field operands");
  for (int i = 0; i < F->k(); ++i)
    if (c[i] != b.c[i]) return false;
  return true;
}

inline FqElem FqElem::operator+(const FqElem& b) const {
  if (F != b.F) throw DomainError("mixed-field operands");
  FqElem r{F, {0, 0, 0, 0}};
  int p = F->p();
  for (int i = 0; i < F->k(); ++i)
    r.c[i] = static_cast<int16_t>((c[i] + b.c[i]) % p);
  return r;
}

inline FqElem FqElem::operator-(const FqElem& b) const {
  if (F != b.F) throw DomainError("mixed-field operands");
  FqElem r{F, {0, 0, 0, 0}};
  int p = F->p();
  for (int i = 0; i < F->k(); ++i)
    r.c[i] = static_cast<int16_t>((c[i] - b.c[i] + p) % p);
  return r;
}

inline FqElem FqElem::operator-() const {
  FqElem r{F, {0, 0, 0, 0}};
  int p = F->p();
  for (int i = 0; i < F->k(); ++i) r.c[i] = static_cast<int16_t>((p - c[i]) % p);
  return r;
}

inline FqElem FqElem::operator*(const FqElem& b) const {
  if (F != b.F) throw DomainError("mixed-field operands");
  int p = F->p(), k = F->k();
  if (k == 1) {
    FqElem r{F, {0, 0, 0, 0}};
    r.c[0] = static_cast<int16_t>((c[0] * b.c[0]) % p);
    return r;
  }
  std::array<int32_t, 7> prod{};
  for (int i = 0; i < k; ++i) {
    if (c[i] == 0) continue;
    for (int j = 0; j < k; ++j) prod[i + j] += c[i] * b.c[j];
  }
  const auto& m = F->modulus();
  for (int d = 2 * k - 2; d >= k; --d) {
    int32_t lead = prod[d] % p;
    if (lead != 0) {
      for (int i = 0; i < k; ++i) prod[d - k + i] -= lead * m[i];
    }
    prod[d] = 0;
  }
  FqElem r{F, {0, 0, 0, 0}};
  for (int i = 0; i < k; ++i)
    r.c[i] = static_cast<int16_t>(((prod[i] % p) + p) % p);
  return r;
}

inline int32_t FqElem::index() const {
  int32_t v = 0;
  for (int i = F->k() - 1; i >= 0; --i) v = v * F->p() + c[i];
  return v;
}

}  // namespace frobdesc
