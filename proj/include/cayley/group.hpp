#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cayley/core.hpp"

namespace cayley {

// Element of a finitely generated Abelian group in canonical coordinates:
// integer free part plus torsion residues, each reduced into [0, d_i).
struct GroupElement {
  std::vector<i64> free;
  std::vector<i64> torsion;

  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;

  bool is_zero() const {
    for (i64 v : free)
      if (v != 0) return false;
    for (i64 v : torsion)
      if (v != 0) return false;
    return true;
  }
};

struct ElementHash {
  std::size_t operator()(const GroupElement& e) const noexcept {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](i64 v) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    };
    mix(static_cast<i64>(e.free.size()));
    for (i64 v : e.free) mix(v);
    for (i64 v : e.torsion) mix(v);
    return h;
  }
};

// Z^rank x Z/d_1 x ... x Z/d_t with d_1 | d_2 | ... | d_t and every d_i >= 2.
// Specs are always normalized (see make_group), so two specs describe
// isomorphic groups iff they compare equal.
class GroupSpec {
 public:
  GroupSpec() = default;

  int rank() const { return rank_; }
  const std::vector<i64>& torsion_factors() const { return factors_; }
  int torsion_count() const { return static_cast<int>(factors_.size()); }

  i64 torsion_order() const {
    i64 o = 1;
    for (i64 d : factors_) o *= d;
    return o;
  }

  GroupElement identity() const {
    return GroupElement{std::vector<i64>(rank_, 0),
                        std::vector<i64>(factors_.size(), 0)};
  }

  bool conforms(const GroupElement& e) const {
    if (static_cast<int>(e.free.size()) != rank_) return false;
    if (e.torsion.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (e.torsion[i] < 0 || e.torsion[i] >= factors_[i]) return false;
    return true;
  }

  // Builds an element from arbitrary integer coordinates, reducing the
  // torsion part.  Throws on a shape mismatch.
  GroupElement canonical(std::vector<i64> free, std::vector<i64> torsion) const {
    if (static_cast<int>(free.size()) != rank_ ||
        torsion.size() != factors_.size())
      throw std::invalid_argument("GroupSpec: coordinate shape does not match");
    for (std::size_t i = 0; i < factors_.size(); ++i)
      torsion[i] = floor_mod(torsion[i], factors_[i]);
    return GroupElement{std::move(free), std::move(torsion)};
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    require(a, "add");
    require(b, "add");
    GroupElement r = a;
    for (int i = 0; i < rank_; ++i) r.free[i] += b.free[i];
    for (std::size_t i = 0; i < factors_.size(); ++i)
      r.torsion[i] = floor_mod(r.torsion[i] + b.torsion[i], factors_[i]);
    return r;
  }

  GroupElement neg(const GroupElement& a) const {
    require(a, "neg");
    GroupElement r = a;
    for (int i = 0; i < rank_; ++i) r.free[i] = -r.free[i];
    for (std::size_t i = 0; i < factors_.size(); ++i)
      r.torsion[i] = floor_mod(-r.torsion[i], factors_[i]);
    return r;
  }

  GroupElement sub(const GroupElement& a, const GroupElement& b) const {
    return add(a, neg(b));
  }

  GroupElement scalar_mul(i64 n, const GroupElement& a) const {
    require(a, "scalar_mul");
    GroupElement r = a;
    for (int i = 0; i < rank_; ++i) r.free[i] *= n;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      r.torsion[i] = floor_mod(n * r.torsion[i], factors_[i]);
    return r;
  }

  // Projection to the torsion-free quotient in the canonical coordinates:
  // simply the free part.
  std::vector<i64> torsion_project(const GroupElement& a) const {
    require(a, "torsion_project");
    return a.free;
  }

  // All torsion elements (identity included), lexicographically ordered.
  std::vector<GroupElement> torsion_elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(torsion_order()));
    std::vector<i64> t(factors_.size(), 0);
    while (true) {
      out.push_back(GroupElement{std::vector<i64>(rank_, 0), t});
      int i = static_cast<int>(factors_.size()) - 1;
      while (i >= 0 && ++t[i] == factors_[i]) t[i--] = 0;
      if (i < 0) break;
    }
    return out;
  }

  // #elements of order <= 2 in the torsion subgroup: one factor of 2 per
  // even invariant factor, hence always congruent to the torsion order mod 2.
  i64 count_order_le_2() const {
    i64 c = 1;
    for (i64 d : factors_)
      if (d % 2 == 0) c *= 2;
    return c;
  }

  bool operator==(const GroupSpec&) const = default;

 private:
  friend GroupSpec make_group(int rank, std::vector<i64> torsion_factors);

  GroupSpec(int rank, std::vector<i64> factors)
      : rank_(rank), factors_(std::move(factors)) {}

  void require(const GroupElement& e, const char* who) const {
    if (!conforms(e))
      throw std::invalid_argument(std::string("GroupSpec::") + who +
                                  ": element does not match this group spec");
  }

  int rank_ = 0;
  std::vector<i64> factors_;
};

namespace detail {

inline std::map<i64, int> factorize(i64 n) {
  std::map<i64, int> f;
  for (i64 p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  if (n > 1) ++f[n];
  return f;
}

}  // namespace detail

// Normalizes arbitrary torsion factors (each >= 2) into the invariant-factor
// chain d_1 | d_2 | ... | d_t by regrouping prime powers, largest exponents
// into the last factor.  Idempotent on already-normalized input.
inline GroupSpec make_group(int rank, std::vector<i64> torsion_factors) {
  if (rank < 0) throw std::invalid_argument("make_group: negative rank");
  std::map<i64, std::vector<int>> exps;  // prime -> exponent per input factor
  for (i64 f : torsion_factors) {
    if (f < 2) throw std::invalid_argument("make_group: torsion factor < 2");
    for (const auto& [p, e] : detail::factorize(f)) exps[p].push_back(e);
  }
  std::size_t chain_len = 0;
  for (auto& [p, es] : exps) {
    std::sort(es.begin(), es.end(), std::greater<int>());
    chain_len = std::max(chain_len, es.size());
  }
  std::vector<i64> chain(chain_len, 1);
  for (const auto& [p, es] : exps)
    for (std::size_t i = 0; i < es.size(); ++i) {
      i64 pe = 1;
      for (int k = 0; k < es[i]; ++k) pe *= p;
      chain[chain_len - 1 - i] *= pe;
    }
  return GroupSpec(rank, std::move(chain));
}

}  // namespace cayley
