#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cayley/group.hpp"
#include "cayley/smith.hpp"

namespace cayley {

// Finite symmetric generating-set candidate.  Construction canonicalizes,
// rejects the identity, sorts, and symmetrizes (recording whether inverses
// had to be added).  Whether the set actually spans the group is a separate
// question answered by validate_generating_set.
class GeneratingSet {
 public:
  GeneratingSet(GroupSpec group, const std::vector<GroupElement>& elements)
      : group_(std::move(group)) {
    for (const auto& raw : elements) {
      GroupElement e = group_.canonical(raw.free, raw.torsion);
      if (e.is_zero())
        throw std::invalid_argument("GeneratingSet: contains the identity");
      elems_.push_back(std::move(e));
    }
    sort_unique();
    const auto given = elems_;
    for (const auto& e : given) {
      GroupElement n = group_.neg(e);
      if (!std::binary_search(given.begin(), given.end(), n)) {
        elems_.push_back(std::move(n));
        symmetrized_ = true;
      }
    }
    sort_unique();
  }

  const GroupSpec& group() const { return group_; }
  const std::vector<GroupElement>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool was_symmetrized() const { return symmetrized_; }

  bool contains(const GroupElement& e) const {
    return std::binary_search(elems_.begin(), elems_.end(), e);
  }

 private:
  void sort_unique() {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  GroupSpec group_;
  std::vector<GroupElement> elems_;
  bool symmetrized_ = false;
};

struct GensetValidation {
  bool symmetric = true;
  std::optional<GroupElement> missing_inverse;
  bool contains_identity = false;
  bool spans = false;
  // An element of the group outside the subgroup generated, present
  // exactly when spans == false.
  std::optional<GroupElement> quotient_witness;
  std::vector<i64> elementary_divisors;

  bool ok() const { return symmetric && !contains_identity && spans; }
};

// Checks a raw element list against the full generating-set contract:
// symmetric, identity-free, and spanning.  Spanning is decided by the
// integer normal form of the generator coordinates stacked on top of the
// torsion relation vectors: the set spans iff every elementary divisor is 1.
inline GensetValidation validate_generating_set(
    const GroupSpec& g, const std::vector<GroupElement>& raw) {
  GensetValidation rep;
  std::vector<GroupElement> elems;
  for (const auto& r : raw) elems.push_back(g.canonical(r.free, r.torsion));
  std::sort(elems.begin(), elems.end());

  for (const auto& e : elems) {
    if (e.is_zero()) rep.contains_identity = true;
    if (!std::binary_search(elems.begin(), elems.end(), g.neg(e))) {
      rep.symmetric = false;
      if (!rep.missing_inverse) rep.missing_inverse = e;
    }
  }

  const int n = g.rank() + g.torsion_count();
  std::vector<std::vector<i64>> mat;
  for (const auto& e : elems) {
    std::vector<i64> row = e.free;
    row.insert(row.end(), e.torsion.begin(), e.torsion.end());
    mat.push_back(std::move(row));
  }
  for (int i = 0; i < g.torsion_count(); ++i) {
    std::vector<i64> row(n, 0);
    row[g.rank() + i] = g.torsion_factors()[i];
    mat.push_back(std::move(row));
  }

  SmithNormalForm snf = smith_normal_form(std::move(mat), n);
  rep.elementary_divisors = snf.divisors;
  rep.spans = true;
  for (int j = 0; j < n; ++j)
    if (snf.divisors[j] != 1) {
      rep.spans = false;
      const auto& u = snf.basis_witness[j];
      std::vector<i64> free(u.begin(), u.begin() + g.rank());
      std::vector<i64> tor(u.begin() + g.rank(), u.end());
      rep.quotient_witness = g.canonical(std::move(free), std::move(tor));
      break;
    }
  return rep;
}

inline GensetValidation validate_generating_set(const GeneratingSet& s) {
  return validate_generating_set(s.group(), s.elements());
}

struct MaxNormGenerators {
  std::vector<GroupElement> elements;
  i64 norm_sq = 0;
  // Set when every generator is torsion; there is no maximal free direction.
  bool all_torsion = false;
};

inline i64 free_norm_sq(const GroupElement& e) {
  i64 n = 0;
  for (i64 v : e.free) n += v * v;
  return n;
}

inline i64 free_dot(const std::vector<i64>& a, const std::vector<i64>& b) {
  i64 d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] * b[i];
  return d;
}

// Generators whose image in the torsion-free quotient has maximal Euclidean
// norm.  Empty with all_torsion set when that maximum is 0.
inline MaxNormGenerators max_norm_generators(const GeneratingSet& s) {
  MaxNormGenerators out;
  for (const auto& e : s.elements()) out.norm_sq = std::max(out.norm_sq, free_norm_sq(e));
  if (out.norm_sq == 0) {
    out.all_torsion = true;
    return out;
  }
  for (const auto& e : s.elements())
    if (free_norm_sq(e) == out.norm_sq) out.elements.push_back(e);
  return out;
}

}  // namespace cayley
