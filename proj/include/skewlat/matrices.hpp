// Skew lattices of exact idempotent matrices in rings: the operations
// ·, ∘ and ∇, closure generation, the block standard form, and the
// block-level criteria of Lemmas 16/17, Proposition 21 and Remark 18.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewlat/algebra.hpp"
#include "skewlat/category.hpp"
#include "skewlat/cosets.hpp"

namespace skewlat {

// Exact scalars: arbitrary integers (characteristic 0) or the prime field
// GF(p). Floating point is deliberately unsupported.
struct ScalarSpec {
  long long characteristic = 0;

  bool operator==(const ScalarSpec& o) const {
    return characteristic == o.characteristic;
  }

  static bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d) {
      if (p % d == 0) return false;
    }
    return true;
  }

  void validate() const {
    if (characteristic != 0 && !is_prime(characteristic)) {
      throw SkewError(SkewError::Code::ScalarMismatch,
                      "characteristic must be 0 or prime");
    }
  }

  long long reduce(long long v) const {
    if (characteristic == 0) return v;
    long long r = v % characteristic;
    return r < 0 ? r + characteristic : r;
  }
};

struct ExactMatrix {
  int dim = 0;
  ScalarSpec scalar;
  std::vector<long long> e;  // row-major dim*dim

  ExactMatrix() = default;
  ExactMatrix(int d, ScalarSpec s) : dim(d), scalar(s), e(d * d, 0) {
    scalar.validate();
  }
  ExactMatrix(int d, ScalarSpec s, std::vector<long long> entries)
      : dim(d), scalar(s), e(std::move(entries)) {
    scalar.validate();
    if (static_cast<int>(e.size()) != d * d) {
      throw SkewError(SkewError::Code::DimMismatch, "entry count mismatch");
    }
    for (auto& v : e) v = scalar.reduce(v);
  }

  long long at(int r, int c) const { return e[r * dim + c]; }
  long long& at(int r, int c) { return e[r * dim + c]; }

  bool operator==(const ExactMatrix& o) const {
    return dim == o.dim && scalar == o.scalar && e == o.e;
  }
  bool operator<(const ExactMatrix& o) const { return e < o.e; }

  static ExactMatrix identity(int d, ScalarSpec s) {
    ExactMatrix m(d, s);
    for (int i = 0; i < d; ++i) m.at(i, i) = s.reduce(1);
    return m;
  }
};

namespace detail {

inline void require_compatible(const ExactMatrix& x, const ExactMatrix& y) {
  if (x.dim != y.dim) {
    throw SkewError(SkewError::Code::DimMismatch, "matrix dimensions differ");
  }
  if (!(x.scalar == y.scalar)) {
    throw SkewError(SkewError::Code::ScalarMismatch, "matrix scalars differ");
  }
}

}  // namespace detail

inline ExactMatrix mat_add(const ExactMatrix& x, const ExactMatrix& y) {
  detail::require_compatible(x, y);
  ExactMatrix r(x.dim, x.scalar);
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = x.scalar.reduce(x.e[i] + y.e[i]);
  return r;
}

inline ExactMatrix mat_sub(const ExactMatrix& x, const ExactMatrix& y) {
  detail::require_compatible(x, y);
  ExactMatrix r(x.dim, x.scalar);
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = x.scalar.reduce(x.e[i] - y.e[i]);
  return r;
}

inline ExactMatrix mat_mul(const ExactMatrix& x, const ExactMatrix& y) {
  detail::require_compatible(x, y);
  ExactMatrix r(x.dim, x.scalar);
  for (int i = 0; i < x.dim; ++i) {
    for (int k = 0; k < x.dim; ++k) {
      long long v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < x.dim; ++j) {
        r.at(i, j) = x.scalar.reduce(r.at(i, j) + v * y.at(k, j));
      }
    }
  }
  return r;
}

inline ExactMatrix mat_meet(const ExactMatrix& x, const ExactMatrix& y) {
  return mat_mul(x, y);
}

// x ∘ y = x + y − xy.
inline ExactMatrix mat_circ(const ExactMatrix& x, const ExactMatrix& y) {
  return mat_sub(mat_add(x, y), mat_mul(x, y));
}

// x ∇ y = (x ∘ y)², computed also as x + y + yx − xyx − yxy; the two
// formulas must agree (they do exactly when the arguments are idempotent).
inline ExactMatrix mat_nabla(const ExactMatrix& x, const ExactMatrix& y) {
  ExactMatrix c = mat_circ(x, y);
  ExactMatrix squared = mat_mul(c, c);
  ExactMatrix yx = mat_mul(y, x);
  ExactMatrix expanded = mat_sub(
      mat_sub(mat_add(mat_add(x, y), yx), mat_mul(mat_mul(x, y), x)),
      mat_mul(yx, y));
  if (!(squared == expanded)) {
    throw SkewError(SkewError::Code::CriteriaDisagree,
                    "nabla: (x∘y)² differs from the 5-term expansion");
  }
  return squared;
}

inline bool is_idempotent(const ExactMatrix& x) {
  return mat_mul(x, x) == x;
}

// b ≤ a in the natural partial order of E(R): ab = b = ba.
inline bool matrix_natural_leq(const ExactMatrix& b, const ExactMatrix& a) {
  return mat_mul(a, b) == b && mat_mul(b, a) == b;
}

inline bool matrix_natural_preceq(const ExactMatrix& x, const ExactMatrix& y) {
  return mat_mul(mat_mul(x, y), x) == x;
}

struct MatrixSkewLattice {
  std::vector<ExactMatrix> generators;
  std::vector<ExactMatrix> elements;  // insertion order of the fixpoint
  CayleyAlgebra induced;              // ∧ = ·, ∨ = ∇
  bool circ_equals_nabla = true;      // whether ∘ and ∇ agree on the set
};

// Least set containing the generators closed under · and ∇. The fixpoint
// may diverge over characteristic 0, so the cap turns divergence into a
// reportable error. The induced Cayley algebra is verified before return.
inline MatrixSkewLattice closure(const std::vector<ExactMatrix>& gens,
                                 int cap = 4096) {
  if (gens.empty()) {
    throw SkewError(SkewError::Code::NotIdempotentGenerator, "no generators");
  }
  for (const auto& g : gens) {
    detail::require_compatible(gens[0], g);
    if (!is_idempotent(g)) {
      throw SkewError(SkewError::Code::NotIdempotentGenerator,
                      "generator is not idempotent");
    }
  }
  MatrixSkewLattice s;
  s.generators = gens;
  std::map<std::vector<long long>, int> index;
  for (const auto& g : gens) {
    if (index.emplace(g.e, static_cast<int>(s.elements.size())).second) {
      s.elements.push_back(g);
    }
  }
  size_t frontier = 0;
  while (frontier < s.elements.size()) {
    size_t known = s.elements.size();
    for (size_t i = 0; i < known; ++i) {
      for (size_t j = 0; j < known; ++j) {
        if (i < frontier && j < frontier) continue;  // already combined
        for (const ExactMatrix& p :
             {mat_mul(s.elements[i], s.elements[j]),
              mat_nabla(s.elements[i], s.elements[j])}) {
          if (index.emplace(p.e, static_cast<int>(s.elements.size())).second) {
            s.elements.push_back(p);
            if (static_cast<int>(s.elements.size()) > cap) {
              throw SkewError(SkewError::Code::CapExceeded,
                              "closure exceeded cap of " + std::to_string(cap));
            }
          }
        }
      }
    }
    frontier = known;
  }

  int n = static_cast<int>(s.elements.size());
  // ∇ must be associative on the closed set before it can serve as ∨.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (!(mat_nabla(mat_nabla(s.elements[i], s.elements[j]), s.elements[k]) ==
              mat_nabla(s.elements[i], mat_nabla(s.elements[j], s.elements[k])))) {
          throw SkewError(SkewError::Code::NablaNotAssociative,
                          "nabla is not associative on the closure; witness (" +
                              std::to_string(i) + ", " + std::to_string(j) +
                              ", " + std::to_string(k) + ")");
        }
      }
    }
  }
  std::vector<int> meet(n * n), join(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ExactMatrix m = mat_mul(s.elements[i], s.elements[j]);
      ExactMatrix v = mat_nabla(s.elements[i], s.elements[j]);
      meet[i * n + j] = index.at(m.e);
      join[i * n + j] = index.at(v.e);
      if (!(v == mat_circ(s.elements[i], s.elements[j]))) {
        s.circ_equals_nabla = false;
      }
    }
  }
  s.induced = CayleyAlgebra(n, std::move(meet), std::move(join));
  VerificationReport rep = verify_skew_lattice(s.induced);
  if (!rep.all_ok()) {
    throw SkewError(SkewError::Code::InducedAlgebraInvalid,
                    "closure does not induce a skew lattice");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Block standard form (4x4 block grid).

struct BlockMat {
  int rows = 0;
  int cols = 0;
  std::vector<long long> e;

  BlockMat() = default;
  BlockMat(int r, int c) : rows(r), cols(c), e(r * c, 0) {}
  BlockMat(int r, int c, std::vector<long long> entries)
      : rows(r), cols(c), e(std::move(entries)) {
    if (static_cast<int>(e.size()) != r * c) {
      throw SkewError(SkewError::Code::ShapeMismatch, "block entry count");
    }
  }
  long long at(int r, int c) const { return e[r * cols + c]; }
  long long& at(int r, int c) { return e[r * cols + c]; }
  bool operator==(const BlockMat& o) const {
    return rows == o.rows && cols == o.cols && e == o.e;
  }
};

struct BlockSizes {
  int n1 = 0, n2 = 0, n3 = 0, n4 = 0;
  int total() const { return n1 + n2 + n3 + n4; }
  int offset(int i) const {
    switch (i) {
      case 0: return 0;
      case 1: return n1;
      case 2: return n1 + n2;
      default: return n1 + n2 + n3;
    }
  }
  int size(int i) const {
    switch (i) {
      case 0: return n1;
      case 1: return n2;
      case 2: return n3;
      default: return n4;
    }
  }
};

struct BlockTriple {
  BlockSizes sizes;
  ScalarSpec scalar;
  BlockMat a14, a24, a34;
  BlockMat b13, b23, b14, b24;
  BlockMat c12, c13, c14;
};

namespace detail {

inline void put_block(ExactMatrix& m, const BlockSizes& sz, int bi, int bj,
                      const BlockMat& blk) {
  if (blk.rows != sz.size(bi) || blk.cols != sz.size(bj)) {
    throw SkewError(SkewError::Code::ShapeMismatch,
                    "block shape does not match the grid");
  }
  for (int r = 0; r < blk.rows; ++r) {
    for (int c = 0; c < blk.cols; ++c) {
      m.at(sz.offset(bi) + r, sz.offset(bj) + c) = m.scalar.reduce(blk.at(r, c));
    }
  }
}

inline void put_identity(ExactMatrix& m, const BlockSizes& sz, int bi) {
  for (int r = 0; r < sz.size(bi); ++r) {
    m.at(sz.offset(bi) + r, sz.offset(bi) + r) = m.scalar.reduce(1);
  }
}

inline BlockMat get_block(const ExactMatrix& m, const BlockSizes& sz, int bi,
                          int bj) {
  BlockMat blk(sz.size(bi), sz.size(bj));
  for (int r = 0; r < blk.rows; ++r) {
    for (int c = 0; c < blk.cols; ++c) {
      blk.at(r, c) = m.at(sz.offset(bi) + r, sz.offset(bj) + c);
    }
  }
  return blk;
}

inline BlockMat block_add(const ScalarSpec& s, const BlockMat& x,
                          const BlockMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) {
    throw SkewError(SkewError::Code::ShapeMismatch, "block add shape");
  }
  BlockMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = s.reduce(x.e[i] + y.e[i]);
  return r;
}

inline BlockMat block_sub(const ScalarSpec& s, const BlockMat& x,
                          const BlockMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) {
    throw SkewError(SkewError::Code::ShapeMismatch, "block sub shape");
  }
  BlockMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = s.reduce(x.e[i] - y.e[i]);
  return r;
}

inline BlockMat block_mul(const ScalarSpec& s, const BlockMat& x,
                          const BlockMat& y) {
  if (x.cols != y.rows) {
    throw SkewError(SkewError::Code::ShapeMismatch, "block mul shape");
  }
  BlockMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      for (int j = 0; j < y.cols; ++j) {
        r.at(i, j) = s.reduce(r.at(i, j) + x.at(i, k) * y.at(k, j));
      }
    }
  }
  return r;
}

}  // namespace detail

struct AssembledTriple {
  ExactMatrix a, b, c;
};

// Assembles the three displayed block-standard-form matrices:
//   a = [I 0 0 a14; 0 I 0 a24; 0 0 I a34; 0 0 0 0]
//   b = [I 0 b13 b14; 0 I b23 b24; 0 0 0 0; 0 0 0 0]
//   c = [I c12 c13 c14; 0 0 0 0; 0 0 0 0; 0 0 0 0]
inline AssembledTriple build_block_triple(const BlockTriple& t) {
  const BlockSizes& sz = t.sizes;
  int n = sz.total();
  ExactMatrix a(n, t.scalar), b(n, t.scalar), c(n, t.scalar);
  detail::put_identity(a, sz, 0);
  detail::put_identity(a, sz, 1);
  detail::put_identity(a, sz, 2);
  detail::put_block(a, sz, 0, 3, t.a14);
  detail::put_block(a, sz, 1, 3, t.a24);
  detail::put_block(a, sz, 2, 3, t.a34);
  detail::put_identity(b, sz, 0);
  detail::put_identity(b, sz, 1);
  detail::put_block(b, sz, 0, 2, t.b13);
  detail::put_block(b, sz, 0, 3, t.b14);
  detail::put_block(b, sz, 1, 2, t.b23);
  detail::put_block(b, sz, 1, 3, t.b24);
  detail::put_identity(c, sz, 0);
  detail::put_block(c, sz, 0, 1, t.c12);
  detail::put_block(c, sz, 0, 2, t.c13);
  detail::put_block(c, sz, 0, 3, t.c14);
  return {a, b, c};
}

struct Lemma16Result {
  // a14 + b13·a34 = b14; a24 + b23·a34 = b24;
  // b13 + c12·b23 = c13; b14 + c12·b24 = c14.
  bool eq[4] = {false, false, false, false};
  bool all_ok() const { return eq[0] && eq[1] && eq[2] && eq[3]; }
};

// Checks the four Lemma 16 relations after verifying the order
// preconditions b < a and c < b by plain matrix arithmetic.
inline Lemma16Result lemma16_check(const ExactMatrix& a, const ExactMatrix& b,
                                   const ExactMatrix& c, const BlockSizes& sz) {
  if (!is_idempotent(a) || !is_idempotent(b) || !is_idempotent(c) ||
      !matrix_natural_leq(b, a) || !matrix_natural_leq(c, b)) {
    throw SkewError(SkewError::Code::OrderPreconditionFailed,
                    "lemma 16 requires idempotents with c < b < a");
  }
  const ScalarSpec& s = a.scalar;
  auto blk = detail::get_block;
  BlockMat a14 = blk(a, sz, 0, 3), a24 = blk(a, sz, 1, 3), a34 = blk(a, sz, 2, 3);
  BlockMat b13 = blk(b, sz, 0, 2), b23 = blk(b, sz, 1, 2);
  BlockMat b14 = blk(b, sz, 0, 3), b24 = blk(b, sz, 1, 3);
  BlockMat c12 = blk(c, sz, 0, 1), c13 = blk(c, sz, 0, 2), c14 = blk(c, sz, 0, 3);
  Lemma16Result r;
  r.eq[0] = detail::block_add(s, a14, detail::block_mul(s, b13, a34)) == b14;
  r.eq[1] = detail::block_add(s, a24, detail::block_mul(s, b23, a34)) == b24;
  r.eq[2] = detail::block_add(s, b13, detail::block_mul(s, c12, b23)) == c13;
  r.eq[3] = detail::block_add(s, b14, detail::block_mul(s, c12, b24)) == c14;
  return r;
}

struct Lemma17Result {
  bool block_criterion = false;       // the displayed (i)-(iii) criterion
  bool strictly_categorical = false;  // Proposition 10 on the induced algebra
  bool agree = false;
  std::optional<NonStrictWitness> witness;  // indices into the induced algebra
};

namespace detail {

inline void require_matrix_skew_chain(
    const std::vector<std::vector<ExactMatrix>>& classes,
    const MatrixSkewLattice& s, const DClassStructure& ds) {
  if (ds.num_classes() != static_cast<int>(classes.size())) {
    throw SkewError(SkewError::Code::NotASkewChain,
                    "class lists do not match the induced D-classes");
  }
  std::map<std::vector<long long>, int> index;
  for (int i = 0; i < static_cast<int>(s.elements.size()); ++i) {
    index[s.elements[i].e] = i;
  }
  for (int c = 0; c < static_cast<int>(classes.size()); ++c) {
    std::vector<int> got;
    for (const auto& m : classes[c]) {
      auto it = index.find(m.e);
      if (it == index.end()) {
        throw SkewError(SkewError::Code::NotASkewChain,
                        "class lists are not closed under the operations");
      }
      got.push_back(it->second);
    }
    std::sort(got.begin(), got.end());
    if (got != ds.classes[c]) {
      throw SkewError(SkewError::Code::NotASkewChain,
                      "listed classes are not the D-classes in order");
    }
  }
  // The listed classes must descend strictly in the quotient order.
  for (int i = 0; i + 1 < static_cast<int>(classes.size()); ++i) {
    if (ds.qmeet(i, i + 1) != i + 1 || ds.qjoin(i, i + 1) != i) {
      throw SkewError(SkewError::Code::NotASkewChain,
                      "listed classes do not form a descending chain");
    }
  }
}

}  // namespace detail

// Lemma 17's block criterion for a skew chain A > B > C of matrices in the
// 4x4 block standard form, evaluated verbatim, alongside the abstract
// Proposition 10 test on the induced algebra. The abstract test is the
// authority; a disagreement is surfaced through `agree`.
inline Lemma17Result lemma17_check(const std::vector<ExactMatrix>& upper,
                                   const std::vector<ExactMatrix>& middle,
                                   const std::vector<ExactMatrix>& lower,
                                   const BlockSizes& sz) {
  std::vector<ExactMatrix> all;
  for (const auto* cls : {&upper, &middle, &lower}) {
    all.insert(all.end(), cls->begin(), cls->end());
  }
  MatrixSkewLattice s = closure(all);
  if (s.elements.size() != all.size()) {
    throw SkewError(SkewError::Code::NotASkewChain,
                    "the three lists are not closed under · and ∇");
  }
  DClassStructure ds = d_decomposition(s.induced);
  detail::require_matrix_skew_chain({upper, middle, lower}, s, ds);

  const ScalarSpec& sc = all[0].scalar;
  auto blk = detail::get_block;
  bool criterion = true;
  for (const auto& a : upper) {
    BlockMat a14 = blk(a, sz, 0, 3), a24 = blk(a, sz, 1, 3), a34 = blk(a, sz, 2, 3);
    for (const auto& c : lower) {
      BlockMat c12 = blk(c, sz, 0, 1), c13 = blk(c, sz, 0, 2),
               c14 = blk(c, sz, 0, 3);
      for (const auto& b : middle) {
        BlockMat b13 = blk(b, sz, 0, 2), b23 = blk(b, sz, 1, 2);
        bool found = false;
        for (const auto& b2 : middle) {
          BlockMat b2_23 = blk(b2, sz, 1, 2), b2_24 = blk(b2, sz, 1, 3);
          bool i_ok =
              detail::block_add(sc, b13, detail::block_mul(sc, c12, b2_23)) == c13;
          bool ii_ok =
              detail::block_add(sc, a24, detail::block_mul(sc, b23, a34)) == b2_24;
          bool iii_ok =
              detail::block_add(sc, a14, detail::block_mul(sc, b13, a34)) ==
              detail::block_sub(sc, c14, detail::block_mul(sc, c12, b2_24));
          if (i_ok && ii_ok && iii_ok) {
            found = true;
            break;
          }
        }
        criterion = criterion && found;
      }
    }
  }

  CategoricalVerdict v = is_strictly_categorical(s.induced, ds);
  Lemma17Result r;
  r.block_criterion = criterion;
  r.strictly_categorical = v.strictly_categorical;
  r.agree = criterion == v.strictly_categorical;
  r.witness = v.nonstrict_witness;
  return r;
}

// ---------------------------------------------------------------------------
// 3x3 block forms (two comparable classes).

struct BlockSizes3 {
  int n1 = 0, n2 = 0, n3 = 0;
  BlockSizes as4() const { return BlockSizes{n1, n2, n3, 0}; }
};

struct Prop21Result {
  bool normal = false;
  bool conormal = false;
  bool block_normal = false;    // all lower members share the 12-block
  bool block_conormal = false;  // all upper members share the 23-block
};

namespace detail {

inline void require_upper_form(const ExactMatrix& m, const BlockSizes& sz) {
  ExactMatrix probe(m.dim, m.scalar);
  put_identity(probe, sz, 0);
  put_identity(probe, sz, 1);
  put_block(probe, sz, 0, 2, get_block(m, sz, 0, 2));
  put_block(probe, sz, 1, 2, get_block(m, sz, 1, 2));
  if (!(probe == m)) {
    throw SkewError(SkewError::Code::ShapeMismatch,
                    "matrix is not in the upper 3-block form");
  }
}

inline void require_lower_form(const ExactMatrix& m, const BlockSizes& sz) {
  ExactMatrix probe(m.dim, m.scalar);
  put_identity(probe, sz, 0);
  put_block(probe, sz, 0, 1, get_block(m, sz, 0, 1));
  put_block(probe, sz, 0, 2, get_block(m, sz, 0, 2));
  if (!(probe == m)) {
    throw SkewError(SkewError::Code::ShapeMismatch,
                    "matrix is not in the lower 3-block form");
  }
}

}  // namespace detail

// Proposition 21: the block conditions for normality/conormality of a
// two-class skew lattice of matrices in the 3-block forms, checked against
// the abstract predicates on the induced algebra.
inline Prop21Result prop21_check(const std::vector<ExactMatrix>& upper,
                                 const std::vector<ExactMatrix>& lower,
                                 const BlockSizes3& sizes) {
  BlockSizes sz = sizes.as4();
  for (const auto& u : upper) detail::require_upper_form(u, sz);
  for (const auto& v : lower) detail::require_lower_form(v, sz);
  std::vector<ExactMatrix> all;
  all.insert(all.end(), upper.begin(), upper.end());
  all.insert(all.end(), lower.begin(), lower.end());
  MatrixSkewLattice s = closure(all);
  if (s.elements.size() != all.size()) {
    throw SkewError(SkewError::Code::NotComparable,
                    "the two lists are not closed under · and ∇");
  }
  DClassStructure ds = d_decomposition(s.induced);
  if (ds.num_classes() != 2) {
    throw SkewError(SkewError::Code::NotComparable,
                    "expected exactly two comparable classes");
  }

  Prop21Result r;
  r.block_normal = true;
  for (const auto& v : lower) {
    if (!(detail::get_block(v, sz, 0, 1) ==
          detail::get_block(lower[0], sz, 0, 1))) {
      r.block_normal = false;
    }
  }
  r.block_conormal = true;
  for (const auto& u : upper) {
    if (!(detail::get_block(u, sz, 1, 2) ==
          detail::get_block(upper[0], sz, 1, 2))) {
      r.block_conormal = false;
    }
  }
  ClassificationFlags f = classify(s.induced);
  r.normal = f.normal.ok;
  r.conormal = f.conormal.ok;
  if (r.normal != r.block_normal || r.conormal != r.block_conormal) {
    throw SkewError(SkewError::Code::CriteriaDisagree,
                    "Proposition 21 block conditions disagree with the "
                    "abstract predicates");
  }
  return r;
}

struct Remark18Map {
  ExactMatrix source;
  ExactMatrix image;  // by block substitution, equal to a·b·a
};

// Remark 18: the coset bijection at matrix level, produced by the displayed
// block substitution and checked against both the sandwich product a∧b∧a and
// the abstract coset bijection of the induced two-element-per-step algebra.
inline Remark18Map remark18_maps(const ExactMatrix& a, const ExactMatrix& b,
                                 const BlockSizes3& sizes) {
  BlockSizes sz = sizes.as4();
  detail::require_upper_form(a, sz);
  detail::require_lower_form(b, sz);
  const ScalarSpec& sc = a.scalar;
  BlockMat a13 = detail::get_block(a, sz, 0, 2);
  BlockMat a23 = detail::get_block(a, sz, 1, 2);
  BlockMat b12 = detail::get_block(b, sz, 0, 1);
  ExactMatrix image(a.dim, sc);
  detail::put_identity(image, sz, 0);
  detail::put_block(image, sz, 0, 1, b12);
  detail::put_block(image, sz, 0, 2,
                    detail::block_add(sc, a13, detail::block_mul(sc, b12, a23)));
  ExactMatrix sandwich = mat_mul(mat_mul(a, b), a);
  if (!(image == sandwich)) {
    throw SkewError(SkewError::Code::CriteriaDisagree,
                    "Remark 18 block substitution differs from a·b·a");
  }
  MatrixSkewLattice s = closure({a, b});
  DClassStructure ds = d_decomposition(s.induced);
  if (comparable_classes(ds, ds.class_of[0], ds.class_of[1]) !=
      ClassOrder::Above) {
    throw SkewError(SkewError::Code::NotComparable,
                    "classes of a and b are not strictly comparable");
  }
  CosetBijection phi = coset_bijection(s.induced, ds, 0, 1);
  for (auto& [x, y] : phi.graph) {
    if (s.elements[x] == a && !(s.elements[y] == sandwich)) {
      throw SkewError(SkewError::Code::CriteriaDisagree,
                      "Remark 18 map disagrees with the abstract bijection");
    }
  }
  return {a, image};
}

// ---------------------------------------------------------------------------
// The worked examples.

// Example 19: four 4x4 idempotents whose induced algebra has the Figure 1
// admissible Hasse diagram; all free blocks zero except b'_{23} = 1.
inline MatrixSkewLattice example19(ScalarSpec scalar = {}) {
  ScalarSpec s = scalar;
  s.validate();
  auto diag = [&](std::vector<long long> d) {
    ExactMatrix m(4, s);
    for (int i = 0; i < 4; ++i) m.at(i, i) = s.reduce(d[i]);
    return m;
  };
  ExactMatrix a = diag({1, 1, 1, 0});
  ExactMatrix b = diag({1, 1, 0, 0});
  ExactMatrix bp = b;
  bp.at(1, 2) = s.reduce(1);
  ExactMatrix c = diag({1, 0, 0, 0});
  return closure({a, b, bp, c});
}

// Example 20: the subskew lattice {a, b, b'} of Example 19.
inline MatrixSkewLattice example20(ScalarSpec scalar = {}) {
  MatrixSkewLattice full = example19(scalar);
  return closure({full.elements[0], full.elements[1], full.elements[2]});
}

}  // namespace skewlat
