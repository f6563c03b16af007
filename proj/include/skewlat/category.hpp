// Coset category machinery: composition of coset bijections as partial
// maps, the ×-product, the categorical / strictly categorical predicates,
// construction of the coset category, and the ×-associativity audit.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "skewlat/cosets.hpp"

namespace skewlat {

struct PartialBijection {
  int source_class = -1;
  int target_class = -1;
  std::vector<std::pair<int, int>> graph;  // sorted, injective both ways

  bool empty() const { return graph.empty(); }

  bool operator==(const PartialBijection& o) const {
    return source_class == o.source_class && target_class == o.target_class &&
           graph == o.graph;
  }
};

inline PartialBijection as_partial(const CosetBijection& phi) {
  return PartialBijection{phi.upper_class, phi.lower_class, phi.graph};
}

inline PartialBijection compose(const PartialBijection& psi,
                                const PartialBijection& phi) {
  if (phi.target_class != psi.source_class) {
    throw SkewError(SkewError::Code::ClassMismatch,
                    "composition: inner classes do not match");
  }
  std::map<int, int> second(psi.graph.begin(), psi.graph.end());
  PartialBijection out;
  out.source_class = phi.source_class;
  out.target_class = psi.target_class;
  for (auto& [x, y] : phi.graph) {
    auto it = second.find(y);
    if (it != second.end()) out.graph.emplace_back(x, it->second);
  }
  return out;
}

// All coset bijections between a strictly comparable pair, one per
// (up-coset, down-coset) pair, in a deterministic order.
inline std::vector<CosetBijection> all_coset_bijections(
    const CayleyAlgebra& alg, const DClassStructure& ds, int upper, int lower) {
  CosetPartition p = coset_partition(alg, ds, upper, lower);
  std::vector<CosetBijection> out;
  for (const auto& up : p.up_cosets) {
    for (const auto& down : p.down_cosets) {
      out.push_back(coset_bijection(alg, ds, up[0], down[0]));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CrossProductResult {
  bool empty = true;
  CosetBijection chi;                         // when nonempty
  std::vector<std::pair<int, int>> composite;  // raw graph of ψ∘φ
};

// ψ × φ: the unique coset bijection containing the nonempty composite ψφ,
// or Empty. The containing bijection must not depend on which composite
// pair is used to name it.
inline CrossProductResult cross_product(const CayleyAlgebra& alg,
                                        const DClassStructure& ds,
                                        const CosetBijection& psi,
                                        const CosetBijection& phi) {
  if (phi.lower_class != psi.upper_class) {
    throw SkewError(SkewError::Code::ClassMismatch,
                    "cross product: inner classes do not match");
  }
  if (comparable_classes(ds, phi.upper_class, psi.lower_class) !=
      ClassOrder::Above) {
    throw SkewError(SkewError::Code::NotAChain,
                    "cross product: classes do not form a chain");
  }
  CrossProductResult res;
  res.composite = compose(as_partial(psi), as_partial(phi)).graph;
  if (res.composite.empty()) return res;
  res.empty = false;
  res.chi = coset_bijection(alg, ds, res.composite[0].first,
                            res.composite[0].second);
  for (auto& [a, c] : res.composite) {
    if (!(coset_bijection(alg, ds, a, c) == res.chi)) {
      throw SkewError(SkewError::Code::CriteriaDisagree,
                      "cross product: containing bijection is not unique");
    }
    auto& g = res.chi.graph;
    if (std::find(g.begin(), g.end(), std::make_pair(a, c)) == g.end()) {
      throw SkewError(SkewError::Code::Internal,
                      "cross product: composite not contained in χ");
    }
  }
  return res;
}

struct NonCategoricalWitness {
  CosetBijection psi;
  CosetBijection phi;
  std::vector<std::pair<int, int>> composite;  // nonempty, not a coset bijection
};

struct NonStrictWitness {
  // Proposition 10 witness: a > b > c and a > b2 > c with b != b2.
  int a = -1, b = -1, b2 = -1, c = -1;
};

struct CategoricalVerdict {
  bool categorical = false;
  bool strictly_categorical = false;
  std::optional<NonCategoricalWitness> noncategorical_witness;
  std::optional<NonStrictWitness> nonstrict_witness;
};

namespace detail {

// Strict chains (A > B > C) in the quotient order.
inline std::vector<std::tuple<int, int, int>> class_chains3(
    const DClassStructure& ds) {
  std::vector<std::tuple<int, int, int>> out;
  int k = ds.num_classes();
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (comparable_classes(ds, a, b) != ClassOrder::Above) continue;
      for (int c = 0; c < k; ++c) {
        if (comparable_classes(ds, b, c) == ClassOrder::Above) {
          out.emplace_back(a, b, c);
        }
      }
    }
  }
  return out;
}

// Full set product X ∧ e ∧ X = {x ∧ e ∧ y : x, y ∈ X}.
inline std::vector<int> sandwich_meet(const CayleyAlgebra& alg,
                                      const std::vector<int>& xs, int e) {
  std::vector<int> out;
  for (int x : xs) {
    for (int y : xs) out.push_back(alg.meet3(x, e, y));
  }
  return sorted_unique(std::move(out));
}

inline std::vector<int> sandwich_join(const CayleyAlgebra& alg,
                                      const std::vector<int>& xs, int e) {
  std::vector<int> out;
  for (int x : xs) {
    for (int y : xs) out.push_back(alg.join3(x, e, y));
  }
  return sorted_unique(std::move(out));
}

inline std::vector<int> intersect(const std::vector<int>& a,
                                  const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace detail

// Categorical: every nonempty composite of coset bijections along a chain of
// D-classes is itself a coset bijection. Decided directly and via the
// Proposition 9 criterion; the two must agree.
inline CategoricalVerdict is_categorical(const CayleyAlgebra& alg,
                                         const DClassStructure& ds) {
  CategoricalVerdict v;
  v.categorical = true;
  for (auto [ca, cb, cc] : detail::class_chains3(ds)) {
    auto upper = all_coset_bijections(alg, ds, ca, cb);
    auto lowerb = all_coset_bijections(alg, ds, cb, cc);
    auto full = all_coset_bijections(alg, ds, ca, cc);
    for (const auto& phi : upper) {
      for (const auto& psi : lowerb) {
        auto comp = compose(as_partial(psi), as_partial(phi));
        if (comp.empty()) continue;
        bool found = false;
        for (const auto& chi : full) {
          if (chi.graph == comp.graph) {
            found = true;
            break;
          }
        }
        if (!found && v.categorical) {
          v.categorical = false;
          v.noncategorical_witness = NonCategoricalWitness{psi, phi, comp.graph};
        }
      }
    }
  }

  bool prop9 = true;
  for (auto [ca, cb, cc] : detail::class_chains3(ds)) {
    const auto& A = ds.classes[ca];
    const auto& B = ds.classes[cb];
    const auto& C = ds.classes[cc];
    for (int a : A) {
      for (int b : B) {
        if (!natural_lt(alg, b, a)) continue;
        for (int c : C) {
          if (!natural_lt(alg, c, b)) continue;
          auto lhs = detail::intersect(detail::sandwich_meet(alg, A, b),
                                       detail::sandwich_join(alg, C, b));
          auto ca_set = detail::sandwich_join(alg, C, a);
          auto ac_set = detail::sandwich_meet(alg, A, c);
          if (lhs != detail::sandwich_meet(alg, ca_set, b) ||
              lhs != detail::sandwich_join(alg, ac_set, b)) {
            prop9 = false;
          }
        }
      }
    }
  }
  if (prop9 != v.categorical) {
    throw SkewError(SkewError::Code::CriteriaDisagree,
                    "categorical: direct check disagrees with Proposition 9");
  }
  return v;
}

// Strictly categorical, via the Proposition 10 midpoint-uniqueness criterion
// and independently via categorical + the nonempty-intersection condition of
// Proposition 9; the verdicts must agree.
inline CategoricalVerdict is_strictly_categorical(const CayleyAlgebra& alg,
                                                  const DClassStructure& ds) {
  CategoricalVerdict v = is_categorical(alg, ds);
  bool prop10 = true;
  for (auto [ca, cb, cc] : detail::class_chains3(ds)) {
    for (int a : ds.classes[ca]) {
      for (int b : ds.classes[cb]) {
        if (!natural_lt(alg, b, a)) continue;
        for (int b2 : ds.classes[cb]) {
          if (b2 == b || !natural_lt(alg, b2, a)) continue;
          for (int c : ds.classes[cc]) {
            if (natural_lt(alg, c, b) && natural_lt(alg, c, b2)) {
              if (prop10) v.nonstrict_witness = NonStrictWitness{a, b, b2, c};
              prop10 = false;
            }
          }
        }
      }
    }
  }
  bool via9 = v.categorical;
  for (auto [ca, cb, cc] : detail::class_chains3(ds)) {
    const auto& A = ds.classes[ca];
    const auto& C = ds.classes[cc];
    for (int b : ds.classes[cb]) {
      for (int b2 : ds.classes[cb]) {
        if (detail::intersect(detail::sandwich_meet(alg, A, b),
                              detail::sandwich_join(alg, C, b2))
                .empty()) {
          via9 = false;
        }
      }
    }
  }
  if (prop10 != via9) {
    throw SkewError(SkewError::Code::CriteriaDisagree,
                    "strictly categorical: Proposition 10 disagrees with "
                    "Proposition 9");
  }
  v.strictly_categorical = prop10;
  return v;
}

struct Morphism {
  int source_class = -1;
  int target_class = -1;
  std::vector<std::pair<int, int>> graph;  // empty graph = empty morphism

  bool is_empty() const { return graph.empty(); }
  bool is_identity() const {
    return std::all_of(graph.begin(), graph.end(),
                       [](auto& p) { return p.first == p.second; }) &&
           !graph.empty();
  }
  bool operator==(const Morphism& o) const {
    return source_class == o.source_class && target_class == o.target_class &&
           graph == o.graph;
  }
  bool operator<(const Morphism& o) const {
    return std::tie(source_class, target_class, graph) <
           std::tie(o.source_class, o.target_class, o.graph);
  }
};

struct CosetCategory {
  std::vector<int> objects;  // class indices
  bool strict = false;
  std::map<std::pair<int, int>, std::vector<Morphism>> hom;

  const std::vector<Morphism>& at(int a, int b) const {
    static const std::vector<Morphism> none;
    auto it = hom.find({a, b});
    return it == hom.end() ? none : it->second;
  }
};

// Definition 14. In the strictly categorical case hom-sets exist only for
// A ≥ B and no empty morphisms are needed; in the categorical-but-not-strict
// case each hom(A, B) with A ≥ B additionally owns a labelled empty
// morphism, and pairs with A ≥ B failing carry the empty morphism alone.
// Closure, identity and associativity laws are verified exhaustively.
inline CosetCategory build_coset_category(const CayleyAlgebra& alg,
                                          const DClassStructure& ds) {
  CategoricalVerdict v = is_strictly_categorical(alg, ds);
  if (!v.categorical) {
    throw SkewError(SkewError::Code::NotCategorical,
                    "coset category requires a categorical skew lattice");
  }
  CosetCategory cat;
  cat.strict = v.strictly_categorical;
  int k = ds.num_classes();
  for (int i = 0; i < k; ++i) cat.objects.push_back(i);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      ClassOrder ord = comparable_classes(ds, a, b);
      std::vector<Morphism> morphs;
      if (ord == ClassOrder::Equal) {
        Morphism id;
        id.source_class = a;
        id.target_class = a;
        for (int x : ds.classes[a]) id.graph.emplace_back(x, x);
        morphs.push_back(std::move(id));
        if (!cat.strict) morphs.push_back(Morphism{a, b, {}});
      } else if (ord == ClassOrder::Above) {
        for (const auto& phi : all_coset_bijections(alg, ds, a, b)) {
          morphs.push_back(Morphism{a, b, phi.graph});
        }
        if (!cat.strict) morphs.push_back(Morphism{a, b, {}});
      } else if (!cat.strict) {
        morphs.push_back(Morphism{a, b, {}});
      }
      if (!morphs.empty()) cat.hom[{a, b}] = std::move(morphs);
    }
  }

  auto resolve = [&](const Morphism& g, const Morphism& f) -> Morphism {
    // f: A -> B then g: B -> C, read in diagrammatic order.
    PartialBijection comp =
        compose(PartialBijection{g.source_class, g.target_class, g.graph},
                PartialBijection{f.source_class, f.target_class, f.graph});
    Morphism m{comp.source_class, comp.target_class, comp.graph};
    const auto& target_hom = cat.at(m.source_class, m.target_class);
    if (std::find(target_hom.begin(), target_hom.end(), m) == target_hom.end()) {
      throw SkewError(SkewError::Code::NotCategorical,
                      "coset category: composition is not closed");
    }
    return m;
  };

  for (auto& [ab, fs] : cat.hom) {
    for (auto& [bc, gs] : cat.hom) {
      if (ab.second != bc.first) continue;
      for (const auto& f : fs) {
        for (const auto& g : gs) {
          Morphism gf = resolve(g, f);
          if (f.is_identity() && !(gf == g)) {
            throw SkewError(SkewError::Code::Internal,
                            "coset category: identity is not neutral");
          }
          if (g.is_identity() && !(gf == f)) {
            throw SkewError(SkewError::Code::Internal,
                            "coset category: identity is not neutral");
          }
          for (auto& [cd, hs] : cat.hom) {
            if (cd.first != bc.second) continue;
            for (const auto& h : hs) {
              if (!(resolve(h, gf) == resolve(resolve(h, g), f))) {
                throw SkewError(SkewError::Code::Internal,
                                "coset category: composition not associative");
              }
            }
          }
        }
      }
    }
  }
  return cat;
}

struct AssociativityWitness {
  CosetBijection delta;  // C -> D
  CosetBijection psi;    // B -> C
  CosetBijection phi;    // A -> B
  CrossProductResult left;   // δ × (ψ × φ)
  CrossProductResult right;  // (δ × ψ) × φ
};

struct AssociativityAudit {
  std::vector<AssociativityWitness> witnesses;
};

namespace detail {

inline bool same_result(const CrossProductResult& a, const CrossProductResult& b) {
  if (a.empty != b.empty) return false;
  return a.empty || a.chi == b.chi;
}

}  // namespace detail

// Enumerates all chains A > B > C > D and every triple of coset bijections
// along them, recording each triple with δ×(ψ×φ) != (δ×ψ)×φ.
inline AssociativityAudit associativity_audit(const CayleyAlgebra& alg,
                                              const DClassStructure& ds) {
  AssociativityAudit audit;
  int k = ds.num_classes();
  auto above = [&](int x, int y) {
    return comparable_classes(ds, x, y) == ClassOrder::Above;
  };
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (!above(a, b)) continue;
      for (int c = 0; c < k; ++c) {
        if (!above(b, c)) continue;
        for (int d = 0; d < k; ++d) {
          if (!above(c, d)) continue;
          for (const auto& phi : all_coset_bijections(alg, ds, a, b)) {
            for (const auto& psi : all_coset_bijections(alg, ds, b, c)) {
              for (const auto& delta : all_coset_bijections(alg, ds, c, d)) {
                CrossProductResult inner = cross_product(alg, ds, psi, phi);
                CrossProductResult left;
                if (!inner.empty) {
                  left = cross_product(alg, ds, delta, inner.chi);
                }
                CrossProductResult outer = cross_product(alg, ds, delta, psi);
                CrossProductResult right;
                if (!outer.empty) {
                  right = cross_product(alg, ds, outer.chi, phi);
                }
                if (!detail::same_result(left, right)) {
                  audit.witnesses.push_back({delta, psi, phi, left, right});
                }
              }
            }
          }
        }
      }
    }
  }
  return audit;
}

// Remark 15: the union of the graphs of all coset bijections between a
// comparable pair equals the natural order restricted to that pair, and
// every class is an antichain.
inline bool antichain_union_check(const CayleyAlgebra& alg,
                                  const DClassStructure& ds, int upper,
                                  int lower) {
  for (const auto& blk : ds.classes) {
    for (int x : blk) {
      for (int y : blk) {
        if (x != y && natural_leq(alg, x, y)) return false;
      }
    }
  }
  std::set<std::pair<int, int>> expected;
  for (int x : ds.classes[upper]) {
    for (int y : ds.classes[lower]) {
      if (upper == lower ? x == y : natural_lt(alg, y, x)) {
        expected.insert({x, y});
      }
    }
  }
  std::set<std::pair<int, int>> got;
  if (upper == lower) {
    for (int x : ds.classes[upper]) got.insert({x, x});
  } else {
    detail::require_above(ds, upper, lower);
    for (const auto& phi : all_coset_bijections(alg, ds, upper, lower)) {
      for (auto& pr : phi.graph) {
        if (got.count(pr)) return false;  // graphs must be disjoint
        got.insert(pr);
      }
    }
  }
  return got == expected;
}

}  // namespace skewlat
