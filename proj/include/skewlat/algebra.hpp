// Finite double bands given by Cayley tables: skew-lattice axiom
// verification, Green's relations, natural orders, D-class decomposition
// and variety membership predicates.

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skewlat {

class SkewError : public std::runtime_error {
 public:
  enum class Code {
    IndexOutOfRange,
    NotClosed,
    NotABand,
    NotComparable,
    ElementNotInClass,
    ClassMismatch,
    NotAChain,
    CriteriaDisagree,
    PartitionFailure,
    NotCategorical,
    DimMismatch,
    ScalarMismatch,
    ShapeMismatch,
    CapExceeded,
    NotIdempotentGenerator,
    NablaNotAssociative,
    InducedAlgebraInvalid,
    OrderPreconditionFailed,
    NotASkewChain,
    ParseError,
    Internal,
  };

  SkewError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

// A finite carrier {0, ..., n-1} with two total binary operations given by
// row-major tables. Construction validates index ranges only; the algebraic
// laws are checked by verify_skew_lattice so that mutated non-examples can
// still be loaded and diagnosed.
struct CayleyAlgebra {
  int n = 0;
  std::vector<int> meet_table;  // n*n, entry (x, y) = x ∧ y
  std::vector<int> join_table;  // n*n, entry (x, y) = x ∨ y
  std::vector<std::string> labels;  // empty, or n pairwise distinct strings

  CayleyAlgebra() = default;

  CayleyAlgebra(int size, std::vector<int> meet, std::vector<int> join,
                std::vector<std::string> lbls = {})
      : n(size),
        meet_table(std::move(meet)),
        join_table(std::move(join)),
        labels(std::move(lbls)) {
    if (n <= 0) {
      throw SkewError(SkewError::Code::IndexOutOfRange, "carrier must be nonempty");
    }
    auto check = [&](const std::vector<int>& t, const char* name) {
      if (static_cast<int>(t.size()) != n * n) {
        throw SkewError(SkewError::Code::IndexOutOfRange,
                        std::string(name) + " table has wrong size");
      }
      for (int v : t) {
        if (v < 0 || v >= n) {
          throw SkewError(SkewError::Code::IndexOutOfRange,
                          std::string(name) + " table entry out of range: " +
                              std::to_string(v));
        }
      }
    };
    check(meet_table, "meet");
    check(join_table, "join");
    if (!labels.empty()) {
      if (static_cast<int>(labels.size()) != n) {
        throw SkewError(SkewError::Code::IndexOutOfRange, "label count mismatch");
      }
      auto sorted = labels;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw SkewError(SkewError::Code::IndexOutOfRange, "labels not distinct");
      }
    }
  }

  int meet(int x, int y) const { return meet_table[x * n + y]; }
  int join(int x, int y) const { return join_table[x * n + y]; }

  int meet3(int x, int y, int z) const { return meet(meet(x, y), z); }
  int join3(int x, int y, int z) const { return join(join(x, y), z); }

  std::string label(int x) const {
    return labels.empty() ? std::to_string(x) : labels[x];
  }

  bool operator==(const CayleyAlgebra& o) const {
    return n == o.n && meet_table == o.meet_table && join_table == o.join_table &&
           labels == o.labels;
  }
};

enum class Op { Meet, Join };

// One law check: ok, or a lexicographically smallest witness tuple that
// violates the law when substituted.
struct LawCheck {
  bool ok = true;
  std::vector<int> witness;

  void fail(std::vector<int> w) {
    if (ok) {
      ok = false;
      witness = std::move(w);
    }
  }
};

struct VerificationReport {
  LawCheck idempotent_meet;
  LawCheck idempotent_join;
  LawCheck associative_meet;
  LawCheck associative_join;
  // x∧(x∨y)=x, (y∨x)∧x=x, x∨(x∧y)=x, (y∧x)∨x=x
  LawCheck absorption[4];

  bool all_ok() const {
    return idempotent_meet.ok && idempotent_join.ok && associative_meet.ok &&
           associative_join.ok && absorption[0].ok && absorption[1].ok &&
           absorption[2].ok && absorption[3].ok;
  }
};

inline VerificationReport verify_skew_lattice(const CayleyAlgebra& a) {
  VerificationReport r;
  for (int x = 0; x < a.n; ++x) {
    if (a.meet(x, x) != x) r.idempotent_meet.fail({x});
    if (a.join(x, x) != x) r.idempotent_join.fail({x});
  }
  for (int x = 0; x < a.n; ++x) {
    for (int y = 0; y < a.n; ++y) {
      if (a.meet(x, a.join(x, y)) != x) r.absorption[0].fail({x, y});
      if (a.meet(a.join(y, x), x) != x) r.absorption[1].fail({x, y});
      if (a.join(x, a.meet(x, y)) != x) r.absorption[2].fail({x, y});
      if (a.join(a.meet(y, x), x) != x) r.absorption[3].fail({x, y});
      for (int z = 0; z < a.n; ++z) {
        if (a.meet(a.meet(x, y), z) != a.meet(x, a.meet(y, z))) {
          r.associative_meet.fail({x, y, z});
        }
        if (a.join(a.join(x, y), z) != a.join(x, a.join(y, z))) {
          r.associative_join.fail({x, y, z});
        }
      }
    }
  }
  return r;
}

struct BandFlags {
  LawCheck regular;      // xyxzx = xyzx
  LawCheck normal;       // xyzw = xzyw
  LawCheck rectangular;  // xyx = x
};

// Checks the selected reduct is a band first; the three identities are then
// decided exhaustively.
inline BandFlags band_properties(const CayleyAlgebra& a, Op which) {
  auto op = [&](int x, int y) {
    return which == Op::Meet ? a.meet(x, y) : a.join(x, y);
  };
  for (int x = 0; x < a.n; ++x) {
    if (op(x, x) != x) {
      throw SkewError(SkewError::Code::NotABand,
                      "reduct is not idempotent at " + std::to_string(x));
    }
    for (int y = 0; y < a.n; ++y) {
      for (int z = 0; z < a.n; ++z) {
        if (op(op(x, y), z) != op(x, op(y, z))) {
          throw SkewError(SkewError::Code::NotABand, "reduct is not associative");
        }
      }
    }
  }
  BandFlags f;
  for (int x = 0; x < a.n; ++x) {
    for (int y = 0; y < a.n; ++y) {
      if (op(op(x, y), x) != x) f.rectangular.fail({x, y});
      for (int z = 0; z < a.n; ++z) {
        int xy = op(x, y);
        if (op(op(op(xy, x), z), x) != op(op(xy, z), x)) {
          f.regular.fail({x, y, z});
        }
        for (int w = 0; w < a.n; ++w) {
          if (op(op(xy, z), w) != op(op(op(x, z), y), w)) {
            f.normal.fail({x, y, z, w});
          }
        }
      }
    }
  }
  return f;
}

// x ≤ y in the natural partial order: x ∧ y = x = y ∧ x.
inline bool natural_leq(const CayleyAlgebra& a, int x, int y) {
  return a.meet(x, y) == x && a.meet(y, x) == x;
}

// Dual formulation via ∨; agrees with natural_leq on verified skew lattices.
inline bool natural_leq_join(const CayleyAlgebra& a, int x, int y) {
  return a.join(x, y) == y && a.join(y, x) == y;
}

// x ⪯ y in the natural preorder: x ∧ y ∧ x = x.
inline bool natural_preceq(const CayleyAlgebra& a, int x, int y) {
  return a.meet3(x, y, x) == x;
}

inline bool natural_preceq_join(const CayleyAlgebra& a, int x, int y) {
  return a.join3(y, x, y) == y;
}

inline bool natural_lt(const CayleyAlgebra& a, int x, int y) {
  return x != y && natural_leq(a, x, y);
}

using Partition = std::vector<std::vector<int>>;

namespace detail {

// Canonical partition from a symmetric reflexive relation: blocks sorted
// ascending, block list sorted by minimum element.
template <typename Rel>
Partition partition_of(int n, Rel rel) {
  std::vector<int> block_of(n, -1);
  Partition blocks;
  for (int x = 0; x < n; ++x) {
    if (block_of[x] >= 0) continue;
    std::vector<int> blk{x};
    block_of[x] = static_cast<int>(blocks.size());
    for (int y = x + 1; y < n; ++y) {
      if (block_of[y] < 0 && rel(x, y)) {
        blk.push_back(y);
        block_of[y] = block_of[x];
      }
    }
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

}  // namespace detail

struct GreenRelations {
  Partition r;
  Partition l;
  Partition d;
};

// R, L, D from the ∧-side, with the ∨-side identities R_∧ = L_∨, L_∧ = R_∨
// and D_∧ = D_∨ asserted; a disagreement means the input is not a skew
// lattice.
inline GreenRelations green_relations(const CayleyAlgebra& a) {
  auto r_meet = [&](int x, int y) { return a.meet(x, y) == y && a.meet(y, x) == x; };
  auto l_meet = [&](int x, int y) { return a.meet(x, y) == x && a.meet(y, x) == y; };
  auto l_join = [&](int x, int y) { return a.join(x, y) == x && a.join(y, x) == y; };
  auto r_join = [&](int x, int y) { return a.join(x, y) == y && a.join(y, x) == x; };
  auto d_meet = [&](int x, int y) {
    return natural_preceq(a, x, y) && natural_preceq(a, y, x);
  };
  auto d_join = [&](int x, int y) {
    return natural_preceq_join(a, x, y) && natural_preceq_join(a, y, x);
  };
  for (int x = 0; x < a.n; ++x) {
    for (int y = 0; y < a.n; ++y) {
      if (r_meet(x, y) != l_join(x, y) || l_meet(x, y) != r_join(x, y) ||
          d_meet(x, y) != d_join(x, y)) {
        throw SkewError(SkewError::Code::CriteriaDisagree,
                        "Green's relations differ between reducts at (" +
                            std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    }
  }
  GreenRelations g;
  g.r = detail::partition_of(a.n, r_meet);
  g.l = detail::partition_of(a.n, l_meet);
  g.d = detail::partition_of(a.n, d_meet);
  return g;
}

struct DClassStructure {
  Partition classes;          // sorted by minimum element
  std::vector<int> class_of;  // element -> class index
  std::vector<int> quotient_meet;  // k*k tables over class indices
  std::vector<int> quotient_join;
  bool is_lattice = false;
  bool classes_rectangular = false;

  int num_classes() const { return static_cast<int>(classes.size()); }
  int qmeet(int i, int j) const { return quotient_meet[i * num_classes() + j]; }
  int qjoin(int i, int j) const { return quotient_join[i * num_classes() + j]; }
};

inline DClassStructure d_decomposition(const CayleyAlgebra& a) {
  DClassStructure ds;
  ds.classes = green_relations(a).d;
  ds.class_of.assign(a.n, -1);
  for (int c = 0; c < ds.num_classes(); ++c) {
    for (int x : ds.classes[c]) ds.class_of[x] = c;
  }
  int k = ds.num_classes();
  ds.quotient_meet.assign(k * k, 0);
  ds.quotient_join.assign(k * k, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      int ri = ds.classes[i][0];
      int rj = ds.classes[j][0];
      ds.quotient_meet[i * k + j] = ds.class_of[a.meet(ri, rj)];
      ds.quotient_join[i * k + j] = ds.class_of[a.join(ri, rj)];
    }
  }
  // D must be a congruence: the class of x∧y may depend only on the classes
  // of x and y.
  for (int x = 0; x < a.n; ++x) {
    for (int y = 0; y < a.n; ++y) {
      int cx = ds.class_of[x];
      int cy = ds.class_of[y];
      if (ds.class_of[a.meet(x, y)] != ds.qmeet(cx, cy) ||
          ds.class_of[a.join(x, y)] != ds.qjoin(cx, cy)) {
        throw SkewError(SkewError::Code::PartitionFailure,
                        "D is not a congruence: witness (" + std::to_string(x) +
                            ", " + std::to_string(y) + ")");
      }
    }
  }
  auto qm = [&](int i, int j) { return ds.qmeet(i, j); };
  auto qj = [&](int i, int j) { return ds.qjoin(i, j); };
  ds.is_lattice = true;
  for (int i = 0; i < k && ds.is_lattice; ++i) {
    for (int j = 0; j < k && ds.is_lattice; ++j) {
      if (qm(i, j) != qm(j, i) || qj(i, j) != qj(j, i)) ds.is_lattice = false;
      if (qm(i, i) != i || qj(i, i) != i) ds.is_lattice = false;
      if (qm(i, qj(i, j)) != i || qj(i, qm(i, j)) != i) ds.is_lattice = false;
      for (int l = 0; l < k && ds.is_lattice; ++l) {
        if (qm(qm(i, j), l) != qm(i, qm(j, l))) ds.is_lattice = false;
        if (qj(qj(i, j), l) != qj(i, qj(j, l))) ds.is_lattice = false;
      }
    }
  }
  ds.classes_rectangular = true;
  for (const auto& blk : ds.classes) {
    for (int x : blk) {
      for (int y : blk) {
        if (a.meet3(x, y, x) != x || a.join3(x, y, x) != x) {
          ds.classes_rectangular = false;
        }
      }
    }
  }
  return ds;
}

struct ClassificationFlags {
  LawCheck rectangular;
  LawCheck left_handed;
  LawCheck right_handed;
  LawCheck normal;
  LawCheck conormal;
  LawCheck symmetric;
  LawCheck regular_meet_band;
  LawCheck regular_join_band;
  LawCheck meet_distributive;
  LawCheck sandwiched_distributive;
};

inline ClassificationFlags classify(const CayleyAlgebra& a) {
  ClassificationFlags f;
  GreenRelations g = green_relations(a);
  std::vector<int> dcls(a.n), lcls(a.n), rcls(a.n);
  auto fill = [&](const Partition& p, std::vector<int>& out) {
    for (int c = 0; c < static_cast<int>(p.size()); ++c) {
      for (int x : p[c]) out[x] = c;
    }
  };
  fill(g.d, dcls);
  fill(g.l, lcls);
  fill(g.r, rcls);
  for (int x = 0; x < a.n; ++x) {
    for (int y = x + 1; y < a.n; ++y) {
      bool d = dcls[x] == dcls[y];
      if (d && lcls[x] != lcls[y]) f.left_handed.fail({x, y});
      if (d && rcls[x] != rcls[y]) f.right_handed.fail({x, y});
    }
  }
  BandFlags mb = band_properties(a, Op::Meet);
  BandFlags jb = band_properties(a, Op::Join);
  f.normal = mb.normal;
  f.conormal = jb.normal;
  f.regular_meet_band = mb.regular;
  f.regular_join_band = jb.regular;
  for (int x = 0; x < a.n; ++x) {
    for (int y = 0; y < a.n; ++y) {
      if (a.meet3(x, y, x) != x) f.rectangular.fail({x, y});
      bool mc = a.meet(x, y) == a.meet(y, x);
      bool jc = a.join(x, y) == a.join(y, x);
      if (mc != jc) f.symmetric.fail({x, y});
      for (int z = 0; z < a.n; ++z) {
        if (a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z)) ||
            a.meet(a.join(y, z), x) != a.join(a.meet(y, x), a.meet(z, x))) {
          f.meet_distributive.fail({x, y, z});
        }
        if (a.meet3(x, a.join(y, z), x) !=
                a.join(a.meet3(x, y, x), a.meet3(x, z, x)) ||
            a.join3(x, a.meet(y, z), x) !=
                a.meet(a.join3(x, y, x), a.join3(x, z, x))) {
          f.sandwiched_distributive.fail({x, y, z});
        }
      }
    }
  }
  return f;
}

// Restriction to a subset, with an index remapping. Labels follow the parent
// so that extracted subalgebras keep their original element names.
inline CayleyAlgebra subalgebra(const CayleyAlgebra& a, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.empty()) {
    throw SkewError(SkewError::Code::IndexOutOfRange, "empty subset");
  }
  for (int x : subset) {
    if (x < 0 || x >= a.n) {
      throw SkewError(SkewError::Code::IndexOutOfRange,
                      "subset element out of range: " + std::to_string(x));
    }
  }
  std::vector<int> remap(a.n, -1);
  for (int i = 0; i < static_cast<int>(subset.size()); ++i) remap[subset[i]] = i;
  int m = static_cast<int>(subset.size());
  std::vector<int> meet(m * m), join(m * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      int mv = a.meet(subset[i], subset[j]);
      int jv = a.join(subset[i], subset[j]);
      if (remap[mv] < 0) {
        throw SkewError(SkewError::Code::NotClosed,
                        "not closed: " + a.label(subset[i]) + " ∧ " +
                            a.label(subset[j]) + " = " + a.label(mv));
      }
      if (remap[jv] < 0) {
        throw SkewError(SkewError::Code::NotClosed,
                        "not closed: " + a.label(subset[i]) + " ∨ " +
                            a.label(subset[j]) + " = " + a.label(jv));
      }
      meet[i * m + j] = remap[mv];
      join[i * m + j] = remap[jv];
    }
  }
  std::vector<std::string> labels;
  labels.reserve(m);
  for (int x : subset) labels.push_back(a.label(x));
  return CayleyAlgebra(m, std::move(meet), std::move(join), std::move(labels));
}

inline bool is_closed_subset(const CayleyAlgebra& a, const std::vector<int>& subset) {
  std::vector<char> in(a.n, 0);
  for (int x : subset) in[x] = 1;
  for (int x : subset) {
    for (int y : subset) {
      if (!in[a.meet(x, y)] || !in[a.join(x, y)]) return false;
    }
  }
  return true;
}

// x ∧ y = y ∨ x for all pairs; equivalent to rectangularity, and both routes
// are computed and compared.
inline LawCheck rectangular_identity_check(const CayleyAlgebra& a) {
  LawCheck c;
  for (int x = 0; x < a.n; ++x) {
    for (int y = 0; y < a.n; ++y) {
      if (a.meet(x, y) != a.join(y, x)) c.fail({x, y});
    }
  }
  LawCheck rect = classify(a).rectangular;
  if (c.ok != rect.ok) {
    throw SkewError(SkewError::Code::CriteriaDisagree,
                    "rectangular identity disagrees with xyx = x");
  }
  return c;
}

}  // namespace skewlat
