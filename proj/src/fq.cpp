#include "frobdesc/fq.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace frobdesc {

namespace {

constexpr int kMaxP = 13;
constexpr int kMaxK = 4;

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// F_p[u] helpers on small int vectors (low-to-high coefficients)
using IPoly = std::vector<int>;

IPoly ipoly_mod(const IPoly& a, const IPoly& m, int p) {
  IPoly r = a;
  int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(r.size()) - 1 >= dm) {
    int dr = static_cast<int>(r.size()) - 1;
    int lead = r[dr] % p;
    if (lead != 0) {
      // m is monic
      for (int i = 0; i <= dm; ++i) {
        int idx = dr - dm + i;
        r[idx] = ((r[idx] - lead * m[i]) % p + p * p) % p;
      }
    }
    r.pop_back();
    while (!r.empty() && r.back() % p == 0) r.pop_back();
    if (r.empty()) break;
  }
  return r;
}

// trial division by all monic polynomials of degree 1..deg/2
bool ipoly_irreducible(const IPoly& m, int p) {
  int deg = static_cast<int>(m.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  for (int dd = 1; dd <= deg / 2; ++dd) {
    long long count = 1;
    for (int i = 0; i < dd; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      IPoly div(dd + 1, 0);
      div[dd] = 1;
      long long c = code;
      for (int i = 0; i < dd; ++i) {
        div[i] = static_cast<int>(c % p);
        c /= p;
      }
      IPoly rem = ipoly_mod(m, div, p);
      if (rem.empty()) return false;
    }
  }
  return true;
}

struct FieldKey {
  int p;
  int k;
  std::array<int16_t, 5> mod;
  bool operator<(const FieldKey& o) const {
    if (p != o.p) return p < o.p;
    if (k != o.k) return k < o.k;
    return mod < o.mod;
  }
};

// Interned field instances; append-only, guarded.
std::map<FieldKey, std::unique_ptr<FqField>>& field_pool() {
  static std::map<FieldKey, std::unique_ptr<FqField>> pool;
  return pool;
}
std::mutex& field_pool_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FqField::FqField(int p, int k, std::array<int16_t, 5> mod)
    : p_(p), k_(k), mod_(mod) {
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= p;
}

static const FqField* intern_field(FqField* fresh) {
  FieldKey key{fresh->p(), fresh->k(), fresh->modulus()};
  std::lock_guard<std::mutex> lock(field_pool_mutex());
  auto& pool = field_pool();
  auto it = pool.find(key);
  if (it == pool.end()) {
    it = pool.emplace(key, std::unique_ptr<FqField>(fresh)).first;
  } else {
    delete fresh;
  }
  return it->second.get();
}

const FqField* FqField::get(int p, int k) {
  if (!is_prime(p) || p > kMaxP)
    throw UnsupportedError("field characteristic must be prime and <= 13, got " +
                           std::to_string(p));
  if (k < 1 || k > kMaxK)
    throw UnsupportedError("extension degree must be in [1,4], got " +
                           std::to_string(k));
  std::array<int16_t, 5> mod{};
  if (k == 1) {
    mod[0] = 0;
    mod[1] = 1;
    return intern_field(new FqField(p, k, mod));
  }
  long long count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    // code = sum m[i] p^i, so the first irreducible hit is the numerically
    // least modulus; fixtures depend on this being stable
    IPoly m(k + 1, 0);
    m[k] = 1;
    long long cc = code;
    for (int i = 0; i < k; ++i) {
      m[i] = static_cast<int>(cc % p);
      cc /= p;
    }
    if (ipoly_irreducible(m, p)) {
      for (int i = 0; i <= k; ++i) mod[i] = static_cast<int16_t>(m[i]);
      return intern_field(new FqField(p, k, mod));
    }
  }
  throw FrobdescError("no irreducible modulus found (unreachable)");
}

const FqField* FqField::get(int p, const std::vector<int>& modulus) {
  if (!is_prime(p) || p > kMaxP)
    throw UnsupportedError("field characteristic must be prime and <= 13");
  int k = static_cast<int>(modulus.size()) - 1;
  if (k < 1 || k > kMaxK) throw UnsupportedError("modulus degree must be in [1,4]");
  IPoly m(modulus.size());
  for (size_t i = 0; i < modulus.size(); ++i) m[i] = ((modulus[i] % p) + p) % p;
  if (m[k] != 1) throw DomainError("modulus must be monic");
  if (!ipoly_irreducible(m, p)) throw DomainError("modulus is not irreducible");
  std::array<int16_t, 5> mod{};
  for (int i = 0; i <= k; ++i) mod[i] = static_cast<int16_t>(m[i]);
  return intern_field(new FqField(p, k, mod));
}

FqElem FqField::zero() const { return FqElem{this, {0, 0, 0, 0}}; }

FqElem FqField::one() const {
  FqElem e{this, {0, 0, 0, 0}};
  e.c[0] = 1;
  return e;
}

FqElem FqField::from_int(long long v) const {
  FqElem e{this, {0, 0, 0, 0}};
  e.c[0] = static_cast<int16_t>(((v % p_) + p_) % p_);
  return e;
}

FqElem FqField::from_coeffs(const std::vector<int>& cs) const {
  if (static_cast<int>(cs.size()) > k_)
    throw DomainError("coefficient vector longer than extension degree");
  FqElem e{this, {0, 0, 0, 0}};
  for (size_t i = 0; i < cs.size(); ++i)
    e.c[i] = static_cast<int16_t>(((cs[i] % p_) + p_) % p_);
  return e;
}

FqElem FqField::from_index(int32_t idx) const {
  FqElem e{this, {0, 0, 0, 0}};
  for (int i = 0; i < k_; ++i) {
    e.c[i] = static_cast<int16_t>(idx % p_);
    idx /= p_;
  }
  return e;
}

FqElem FqField::gen() const {
  FqElem e{this, {0, 0, 0, 0}};
  if (k_ == 1)
    e.c[0] = 1;
  else
    e.c[1] = 1;
  return e;
}

std::vector<FqElem> FqField::elements() const {
  std::vector<FqElem> out;
  out.reserve(static_cast<size_t>(q_));
  for (int32_t i = 0; i < q_; ++i) out.push_back(from_index(i));
  return out;
}

std::string FqField::name() const { return "F_" + std::to_string(q_); }


bool FqElem::is_one() const {
  if (c[0] != 1) return false;
  for (int i = 1; i < F->k(); ++i)
    if (c[i] != 0) return false;
  return true;
}







FqElem FqElem::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  FqElem base = *this;
  FqElem acc = F->one();
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

FqElem FqElem::inv() const {
  if (is_zero()) throw DomainError("division by zero in " + F->name());
  return pow(F->q() - 2);
}

FqElem FqElem::operator/(const FqElem& b) const { return *this * b.inv(); }

FqElem FqElem::frobenius_p() const { return pow(F->p()); }

FqElem FqElem::frobenius_p(int j) const {
  FqElem r = *this;
  for (int i = 0; i < j; ++i) r = r.frobenius_p();
  return r;
}

FqElem FqElem::pth_root() const {
  // Frobenius is an automorphism of order k, so x^{p^{k-1}} inverts it.
  return frobenius_p(F->k() - 1);
}

std::optional<FqElem> FqElem::sqrt() const {
  if (is_zero()) return F->zero();
  for (int32_t i = 1; i < F->q(); ++i) {
    FqElem cand = F->from_index(i);
    if (cand * cand == *this) return cand;
  }
  return std::nullopt;
}

std::string FqElem::str() const {
  if (F->k() == 1) return std::to_string(c[0]);
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < F->k(); ++i) {
    if (i) os << ",";
    os << c[i];
  }
  os << "]";
  return os.str();
}

FqElem FqField::generator_image(const FqField* target) const {
  {
    std::lock_guard<std::mutex> lock(embed_mu_);
    for (const auto& [tgt, img] : embed_cache_)
      if (tgt == target) return img;
  }
  // least root of our modulus in the target
  std::vector<FqElem> mod_in_target;
  for (int i = 0; i <= k_; ++i) mod_in_target.push_back(target->from_int(mod_[i]));
  std::optional<FqElem> gen_img;
  for (int32_t i = 0; i < target->q(); ++i) {
    FqElem x = target->from_index(i);
    FqElem acc = target->zero();
    for (int d = k_; d >= 0; --d) acc = acc * x + mod_in_target[d];
    if (acc.is_zero()) {
      gen_img = x;
      break;
    }
  }
  if (!gen_img) throw FrobdescError("embed: modulus has no root in target");
  std::lock_guard<std::mutex> lock(embed_mu_);
  embed_cache_.emplace_back(target, *gen_img);
  return *gen_img;
}

FqElem FqField::embed(const FqElem& a, const FqField* target) const {
  if (a.F != this) throw DomainError("embed: element not of this field");
  if (target == this) return a;
  if (target->p() != p_ || target->k() % k_ != 0)
    throw DomainError("embed: no subfield embedding " + name() + " -> " +
                      target->name());
  if (k_ == 1) {
    return target->from_int(a.c[0]);
  }
  FqElem g = generator_image(target);
  FqElem acc = target->zero();
  for (int d = k_ - 1; d >= 0; --d) acc = acc * g + target->from_int(a.c[d]);
  return acc;
}

std::vector<FqElem> roots_over_extension(const FqField* F,
                                         const std::vector<FqElem>& poly,
                                         int ext) {
  bool all_zero = true;
  for (const auto& cf : poly)
    if (!cf.is_zero()) all_zero = false;
  if (poly.empty() || all_zero) throw DomainError("roots of the zero polynomial");
  const FqField* E =
      (ext == 1) ? F : FqField::get(F->p(), F->k() * ext);
  std::vector<FqElem> lifted;
  lifted.reserve(poly.size());
  for (const auto& cf : poly) lifted.push_back(F->embed(cf, E));
  std::vector<FqElem> roots;
  for (int32_t i = 0; i < E->q(); ++i) {
    FqElem x = E->from_index(i);
    FqElem acc = E->zero();
    for (int d = static_cast<int>(lifted.size()) - 1; d >= 0; --d)
      acc = acc * x + lifted[d];
    if (acc.is_zero()) roots.push_back(x);
  }
  return roots;
}

}  // namespace frobdesc
