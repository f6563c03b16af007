// Coset structure between comparable D-classes: cosets, image sets, coset
// partitions, coset bijections and the induced coset congruences.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "skewlat/algebra.hpp"

namespace skewlat {

enum class ClassOrder { Above, Below, Equal, Incomparable };

inline ClassOrder comparable_classes(const DClassStructure& ds, int a, int b) {
  int k = ds.num_classes();
  if (a < 0 || a >= k || b < 0 || b >= k) {
    throw SkewError(SkewError::Code::IndexOutOfRange, "bad class index");
  }
  if (a == b) return ClassOrder::Equal;
  if (ds.qmeet(a, b) == b && ds.qjoin(a, b) == a) return ClassOrder::Above;
  if (ds.qmeet(a, b) == a && ds.qjoin(a, b) == b) return ClassOrder::Below;
  return ClassOrder::Incomparable;
}

enum class CosetDirection { Down, Up };

struct Coset {
  int upper_class = -1;
  int lower_class = -1;
  CosetDirection direction = CosetDirection::Down;
  int defining_element = -1;
  std::vector<int> members;
};

namespace detail {

inline void require_above(const DClassStructure& ds, int upper, int lower) {
  if (comparable_classes(ds, upper, lower) != ClassOrder::Above) {
    throw SkewError(SkewError::Code::NotComparable,
                    "classes " + std::to_string(upper) + " and " +
                        std::to_string(lower) + " are not strictly comparable");
  }
}

inline void require_in_class(const DClassStructure& ds, int e, int cls,
                             const char* role) {
  if (e < 0 || e >= static_cast<int>(ds.class_of.size()) || ds.class_of[e] != cls) {
    throw SkewError(SkewError::Code::ElementNotInClass,
                    std::string(role) + " " + std::to_string(e) +
                        " is not in class " + std::to_string(cls));
  }
}

inline std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline void check_rectangular_subset(const CayleyAlgebra& a,
                                     const std::vector<int>& s) {
  for (int x : s) {
    for (int y : s) {
      if (a.meet3(x, y, x) != x || a.join3(x, y, x) != x) {
        throw SkewError(SkewError::Code::PartitionFailure,
                        "coset is not rectangular at (" + std::to_string(x) +
                            ", " + std::to_string(y) + ")");
      }
    }
  }
}

}  // namespace detail

// The coset A ∧ b ∧ A of the upper class in the lower class.
inline Coset coset_down(const CayleyAlgebra& alg, const DClassStructure& ds,
                        int upper, int lower, int b) {
  detail::require_above(ds, upper, lower);
  detail::require_in_class(ds, b, lower, "defining element");
  std::vector<int> members;
  for (int a : ds.classes[upper]) members.push_back(alg.meet3(a, b, a));
  Coset c;
  c.upper_class = upper;
  c.lower_class = lower;
  c.direction = CosetDirection::Down;
  c.defining_element = b;
  c.members = detail::sorted_unique(std::move(members));
  for (int x : c.members) detail::require_in_class(ds, x, lower, "coset member");
  detail::check_rectangular_subset(alg, c.members);
  return c;
}

// The coset B ∨ a ∨ B of the lower class in the upper class.
inline Coset coset_up(const CayleyAlgebra& alg, const DClassStructure& ds,
                      int upper, int lower, int a) {
  detail::require_above(ds, upper, lower);
  detail::require_in_class(ds, a, upper, "defining element");
  std::vector<int> members;
  for (int b : ds.classes[lower]) members.push_back(alg.join3(b, a, b));
  Coset c;
  c.upper_class = upper;
  c.lower_class = lower;
  c.direction = CosetDirection::Up;
  c.defining_element = a;
  c.members = detail::sorted_unique(std::move(members));
  for (int x : c.members) detail::require_in_class(ds, x, upper, "coset member");
  detail::check_rectangular_subset(alg, c.members);
  return c;
}

struct ImageSet {
  int element = -1;
  int target_class = -1;
  std::vector<int> members;
};

// The image set of e in the target class, computed both by the sandwich
// formula and by the order filter; the two must agree.
inline ImageSet image_set(const CayleyAlgebra& alg, const DClassStructure& ds,
                          int e, int target_class) {
  int ec = ds.class_of[e];
  ClassOrder ord = comparable_classes(ds, ec, target_class);
  std::vector<int> sandwich, filter;
  if (ord == ClassOrder::Above) {
    for (int b : ds.classes[target_class]) sandwich.push_back(alg.meet3(e, b, e));
    for (int b : ds.classes[target_class]) {
      if (natural_lt(alg, b, e)) filter.push_back(b);
    }
  } else if (ord == ClassOrder::Below) {
    for (int a : ds.classes[target_class]) sandwich.push_back(alg.join3(e, a, e));
    for (int a : ds.classes[target_class]) {
      if (natural_lt(alg, e, a)) filter.push_back(a);
    }
  } else {
    throw SkewError(SkewError::Code::NotComparable,
                    "element class is not strictly comparable with target");
  }
  sandwich = detail::sorted_unique(std::move(sandwich));
  if (sandwich != filter) {
    throw SkewError(SkewError::Code::CriteriaDisagree,
                    "image set: sandwich formula disagrees with order filter");
  }
  ImageSet s;
  s.element = e;
  s.target_class = target_class;
  s.members = std::move(sandwich);
  return s;
}

struct CosetPartition {
  int upper_class = -1;
  int lower_class = -1;
  std::vector<std::vector<int>> up_cosets;    // partition of the upper class
  std::vector<std::vector<int>> down_cosets;  // partition of the lower class
};

namespace detail {

inline std::vector<std::vector<int>> distinct_cosets(
    const std::vector<int>& carrier,
    const std::function<std::vector<int>(int)>& coset_of) {
  std::set<std::vector<int>> seen;
  for (int e : carrier) seen.insert(coset_of(e));
  std::vector<std::vector<int>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return out;
}

inline void check_partition(const std::vector<int>& carrier,
                            const std::vector<std::vector<int>>& blocks,
                            const char* what) {
  std::vector<int> all;
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  if (all != carrier) {
    throw SkewError(SkewError::Code::PartitionFailure,
                    std::string(what) + " do not partition the class");
  }
}

}  // namespace detail

// Theorem 1: the down-cosets partition the lower class, the up-cosets
// partition the upper class, all blocks have one common cardinality, and
// every image set is a transversal of the opposite cosets.
inline CosetPartition coset_partition(const CayleyAlgebra& alg,
                                      const DClassStructure& ds, int upper,
                                      int lower) {
  detail::require_above(ds, upper, lower);
  CosetPartition p;
  p.upper_class = upper;
  p.lower_class = lower;
  p.down_cosets = detail::distinct_cosets(ds.classes[lower], [&](int b) {
    return coset_down(alg, ds, upper, lower, b).members;
  });
  p.up_cosets = detail::distinct_cosets(ds.classes[upper], [&](int a) {
    return coset_up(alg, ds, upper, lower, a).members;
  });
  detail::check_partition(ds.classes[lower], p.down_cosets, "down-cosets");
  detail::check_partition(ds.classes[upper], p.up_cosets, "up-cosets");
  size_t card = p.down_cosets[0].size();
  for (const auto& b : p.down_cosets) {
    if (b.size() != card) {
      throw SkewError(SkewError::Code::PartitionFailure,
                      "down-cosets have unequal cardinalities");
    }
  }
  for (const auto& b : p.up_cosets) {
    if (b.size() != card) {
      throw SkewError(SkewError::Code::PartitionFailure,
                      "up-coset cardinality differs from down-coset cardinality");
    }
  }
  auto transversal = [&](int e, const std::vector<std::vector<int>>& blocks,
                         int target) {
    ImageSet img = image_set(alg, ds, e, target);
    for (const auto& blk : blocks) {
      int hits = 0;
      for (int x : img.members) {
        if (std::binary_search(blk.begin(), blk.end(), x)) ++hits;
      }
      if (hits != 1) {
        throw SkewError(SkewError::Code::PartitionFailure,
                        "image set of " + std::to_string(e) +
                            " is not a transversal");
      }
    }
  };
  for (int a : ds.classes[upper]) transversal(a, p.down_cosets, lower);
  for (int b : ds.classes[lower]) transversal(b, p.up_cosets, upper);
  return p;
}

struct CosetBijection {
  int upper_class = -1;
  int lower_class = -1;
  std::vector<int> domain_coset;  // an up-coset, subset of the upper class
  std::vector<int> image_coset;   // a down-coset, subset of the lower class
  std::vector<std::pair<int, int>> graph;

  bool operator==(const CosetBijection& o) const {
    return upper_class == o.upper_class && lower_class == o.lower_class &&
           graph == o.graph;
  }
  bool operator<(const CosetBijection& o) const {
    return std::tie(upper_class, lower_class, graph) <
           std::tie(o.upper_class, o.lower_class, o.graph);
  }
};

// φ_{a,b}: the coset bijection from the coset of a in the upper class onto
// the coset of b in the lower class, x ↦ x ∧ b ∧ x. Checks that the graph is
// a bijection, lies inside the natural order, does not depend on the choice
// of b within its coset, and is an isomorphism for both operations.
inline CosetBijection coset_bijection(const CayleyAlgebra& alg,
                                      const DClassStructure& ds, int a, int b) {
  int upper = ds.class_of[a];
  int lower = ds.class_of[b];
  detail::require_above(ds, upper, lower);
  CosetBijection phi;
  phi.upper_class = upper;
  phi.lower_class = lower;
  phi.domain_coset = coset_up(alg, ds, upper, lower, a).members;
  phi.image_coset = coset_down(alg, ds, upper, lower, b).members;
  for (int x : phi.domain_coset) {
    int y = alg.meet3(x, b, x);
    phi.graph.emplace_back(x, y);
    if (!natural_lt(alg, y, x)) {
      throw SkewError(SkewError::Code::PartitionFailure,
                      "coset bijection image is not below its argument");
    }
    for (int b2 : phi.image_coset) {
      if (alg.meet3(x, b2, x) != y) {
        throw SkewError(SkewError::Code::PartitionFailure,
                        "coset bijection depends on the defining element");
      }
    }
  }
  std::vector<int> image;
  for (auto& [x, y] : phi.graph) image.push_back(y);
  if (detail::sorted_unique(image) != phi.image_coset) {
    throw SkewError(SkewError::Code::PartitionFailure,
                    "coset bijection is not onto the down-coset");
  }
  std::map<int, int> at(phi.graph.begin(), phi.graph.end());
  for (int x : phi.domain_coset) {
    for (int y : phi.domain_coset) {
      if (at[alg.meet(x, y)] != alg.meet(at[x], at[y]) ||
          at[alg.join(x, y)] != alg.join(at[x], at[y])) {
        throw SkewError(SkewError::Code::PartitionFailure,
                        "coset bijection is not an isomorphism");
      }
    }
  }
  return phi;
}

// Proposition 2: coset equality of A∧y∧A and A∧y2∧A decided by set equality,
// the for-all criterion and the exists criterion; the three must agree.
inline bool coset_equal(const CayleyAlgebra& alg, const DClassStructure& ds,
                        int upper, int y, int y2) {
  if (ds.class_of[y] != ds.class_of[y2]) {
    throw SkewError(SkewError::Code::ClassMismatch,
                    "elements lie in different classes");
  }
  int lower = ds.class_of[y];
  detail::require_above(ds, upper, lower);
  bool by_set = coset_down(alg, ds, upper, lower, y).members ==
                coset_down(alg, ds, upper, lower, y2).members;
  bool forall = true, exists = false;
  for (int x : ds.classes[upper]) {
    bool eq = alg.meet3(x, y, x) == alg.meet3(x, y2, x);
    forall = forall && eq;
    exists = exists || eq;
  }
  if (by_set != forall || by_set != exists) {
    throw SkewError(SkewError::Code::CriteriaDisagree,
                    "Proposition 2 criteria disagree");
  }
  return by_set;
}

enum class CosetSide { UpperClass, LowerClass };

struct CosetCongruence {
  int upper_class = -1;
  int lower_class = -1;
  CosetSide side = CosetSide::LowerClass;
  std::vector<std::vector<int>> blocks;
  bool congruence = true;
  std::vector<int> witness;  // (x, y, z, w) on failure
};

// The partition of one class into the cosets determined by the other, with
// an exhaustive congruence check restricted to that class as a subalgebra.
inline CosetCongruence coset_congruence(const CayleyAlgebra& alg,
                                        const DClassStructure& ds, int upper,
                                        int lower, CosetSide side) {
  detail::require_above(ds, upper, lower);
  CosetCongruence cc;
  cc.upper_class = upper;
  cc.lower_class = lower;
  cc.side = side;
  CosetPartition p = coset_partition(alg, ds, upper, lower);
  cc.blocks = side == CosetSide::LowerClass ? p.down_cosets : p.up_cosets;
  const std::vector<int>& carrier =
      side == CosetSide::LowerClass ? ds.classes[lower] : ds.classes[upper];
  std::map<int, int> blk;
  for (int i = 0; i < static_cast<int>(cc.blocks.size()); ++i) {
    for (int x : cc.blocks[i]) blk[x] = i;
  }
  for (int x : carrier) {
    for (int y : carrier) {
      if (blk[x] != blk[y]) continue;
      for (int z : carrier) {
        for (int w : carrier) {
          if (blk[z] != blk[w]) continue;
          if (blk[alg.meet(x, z)] != blk[alg.meet(y, w)] ||
              blk[alg.join(x, z)] != blk[alg.join(y, w)]) {
            cc.congruence = false;
            if (cc.witness.empty()) cc.witness = {x, y, z, w};
          }
        }
      }
    }
  }
  return cc;
}

struct HomFlags {
  bool meet_hom = true;
  bool join_hom = true;
};

// Lemma 4: a total map between two D-classes is a ∧-homomorphism iff it is a
// ∨-homomorphism. `map[i]` is the image of the i-th member (in sorted order)
// of class `from`.
inline HomFlags hom_equivalence_check(const CayleyAlgebra& alg,
                                      const DClassStructure& ds, int from,
                                      int to, const std::vector<int>& map) {
  const std::vector<int>& dom = ds.classes[from];
  if (map.size() != dom.size()) {
    throw SkewError(SkewError::Code::ClassMismatch, "map size mismatch");
  }
  for (int y : map) detail::require_in_class(ds, y, to, "map image");
  std::map<int, int> f;
  for (size_t i = 0; i < dom.size(); ++i) f[dom[i]] = map[i];
  HomFlags h;
  for (int x : dom) {
    for (int y : dom) {
      if (f[alg.meet(x, y)] != alg.meet(f[x], f[y])) h.meet_hom = false;
      if (f[alg.join(x, y)] != alg.join(f[x], f[y])) h.join_hom = false;
    }
  }
  return h;
}

}  // namespace skewlat
