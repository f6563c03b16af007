// File formats, DOT export, classification reports, subalgebra search and
// brute-force isomorphism testing.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "skewlat/algebra.hpp"
#include "skewlat/category.hpp"
#include "skewlat/cosets.hpp"
#include "skewlat/matrices.hpp"

namespace skewlat {

namespace detail {

struct LineReader {
  std::vector<std::pair<int, std::string>> lines;  // (line number, content)
  size_t pos = 0;

  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      size_t i = line.find_first_not_of(" \t");
      if (i == std::string::npos || line[i] == '#') continue;
      lines.emplace_back(no, line);
    }
  }

  bool done() const { return pos >= lines.size(); }

  [[noreturn]] void fail(int line, const std::string& reason) const {
    throw SkewError(SkewError::Code::ParseError,
                    "parse error at line " + std::to_string(line) + ": " + reason);
  }

  std::pair<int, std::vector<std::string>> next(const std::string& expect) {
    if (done()) {
      throw SkewError(SkewError::Code::ParseError,
                      "parse error: unexpected end of input, expected " + expect);
    }
    auto [no, line] = lines[pos++];
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return {no, toks};
  }

  const std::string& peek_keyword() {
    static const std::string empty;
    if (done()) return empty;
    return lines[pos].second;
  }
};

inline long long parse_int(LineReader& r, int line, const std::string& tok) {
  try {
    size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    r.fail(line, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace detail

// Format: `skewlat 1`, `n <N>`, optional `labels ...`, `meet` + N rows,
// `join` + N rows. `#` comments and blank lines are ignored.
inline CayleyAlgebra parse_algebra(const std::string& text) {
  detail::LineReader r(text);
  auto [l1, head] = r.next("header 'skewlat 1'");
  if (head.size() != 2 || head[0] != "skewlat" || head[1] != "1") {
    r.fail(l1, "expected header 'skewlat 1'");
  }
  auto [l2, size_line] = r.next("'n <N>'");
  if (size_line.size() != 2 || size_line[0] != "n") r.fail(l2, "expected 'n <N>'");
  int n = static_cast<int>(detail::parse_int(r, l2, size_line[1]));
  if (n <= 0) r.fail(l2, "n must be positive");

  std::vector<std::string> labels;
  auto [l3, kw] = r.next("'labels' or 'meet'");
  if (!kw.empty() && kw[0] == "labels") {
    if (static_cast<int>(kw.size()) != n + 1) r.fail(l3, "expected n labels");
    labels.assign(kw.begin() + 1, kw.end());
    std::tie(l3, kw) = r.next("'meet'");
  }
  if (kw.size() != 1 || kw[0] != "meet") r.fail(l3, "expected 'meet'");

  auto read_table = [&](const char* name) {
    std::vector<int> table;
    table.reserve(n * n);
    for (int row = 0; row < n; ++row) {
      auto [ln, toks] = r.next(std::string(name) + " table row");
      if (static_cast<int>(toks.size()) != n) {
        r.fail(ln, std::string("expected ") + std::to_string(n) + " entries");
      }
      for (const auto& t : toks) {
        long long v = detail::parse_int(r, ln, t);
        if (v < 0 || v >= n) r.fail(ln, "index out of range: " + t);
        table.push_back(static_cast<int>(v));
      }
    }
    return table;
  };
  std::vector<int> meet = read_table("meet");
  auto [lj, jkw] = r.next("'join'");
  if (jkw.size() != 1 || jkw[0] != "join") r.fail(lj, "expected 'join'");
  std::vector<int> join = read_table("join");
  if (!r.done()) {
    auto [ln, extra] = r.next("end of input");
    (void)extra;
    r.fail(ln, "trailing content");
  }
  return CayleyAlgebra(n, std::move(meet), std::move(join), std::move(labels));
}

inline std::string serialize_algebra(const CayleyAlgebra& a) {
  std::ostringstream out;
  out << "skewlat 1\n";
  out << "n " << a.n << "\n";
  if (!a.labels.empty()) {
    out << "labels";
    for (const auto& l : a.labels) out << " " << l;
    out << "\n";
  }
  auto table = [&](const char* name, const std::vector<int>& t) {
    out << name << "\n";
    for (int i = 0; i < a.n; ++i) {
      for (int j = 0; j < a.n; ++j) out << (j ? " " : "") << t[i * a.n + j];
      out << "\n";
    }
  };
  table("meet", a.meet_table);
  table("join", a.join_table);
  return out.str();
}

struct MatrixFile {
  ScalarSpec scalar;
  int dim = 0;
  std::vector<std::pair<std::string, ExactMatrix>> matrices;
};

// Format: `matrices 1`, `char <0|p>`, `dim <n>`, then repeated
// `matrix <name>` blocks of n rows of n integers.
inline MatrixFile parse_matrix_file(const std::string& text) {
  detail::LineReader r(text);
  auto [l1, head] = r.next("header 'matrices 1'");
  if (head.size() != 2 || head[0] != "matrices" || head[1] != "1") {
    r.fail(l1, "expected header 'matrices 1'");
  }
  auto [l2, ch] = r.next("'char <0|p>'");
  if (ch.size() != 2 || ch[0] != "char") r.fail(l2, "expected 'char <0|p>'");
  MatrixFile f;
  f.scalar.characteristic = detail::parse_int(r, l2, ch[1]);
  if (f.scalar.characteristic != 0 &&
      !ScalarSpec::is_prime(f.scalar.characteristic)) {
    r.fail(l2, "characteristic must be 0 or prime");
  }
  auto [l3, dm] = r.next("'dim <n>'");
  if (dm.size() != 2 || dm[0] != "dim") r.fail(l3, "expected 'dim <n>'");
  f.dim = static_cast<int>(detail::parse_int(r, l3, dm[1]));
  if (f.dim <= 0) r.fail(l3, "dim must be positive");
  while (!r.done()) {
    auto [ln, mk] = r.next("'matrix <name>'");
    if (mk.size() != 2 || mk[0] != "matrix") r.fail(ln, "expected 'matrix <name>'");
    std::vector<long long> entries;
    for (int row = 0; row < f.dim; ++row) {
      auto [lr, toks] = r.next("matrix row");
      if (static_cast<int>(toks.size()) != f.dim) {
        r.fail(lr, "expected " + std::to_string(f.dim) + " entries");
      }
      for (const auto& t : toks) entries.push_back(detail::parse_int(r, lr, t));
    }
    f.matrices.emplace_back(mk[1], ExactMatrix(f.dim, f.scalar, std::move(entries)));
  }
  if (f.matrices.empty()) {
    throw SkewError(SkewError::Code::ParseError, "matrix file has no matrices");
  }
  return f;
}

inline std::string serialize_matrix_file(const MatrixFile& f) {
  std::ostringstream out;
  out << "matrices 1\n";
  out << "char " << f.scalar.characteristic << "\n";
  out << "dim " << f.dim << "\n";
  for (const auto& [name, m] : f.matrices) {
    out << "matrix " << name << "\n";
    for (int i = 0; i < f.dim; ++i) {
      for (int j = 0; j < f.dim; ++j) out << (j ? " " : "") << m.at(i, j);
      out << "\n";
    }
  }
  return out.str();
}

// Admissible Hasse diagram in DOT: solid edges y -> x for every cover pair
// x > y of the natural partial order, dashed undirected edges between
// D-congruent elements (full clique within each class).
inline std::string export_dot(const CayleyAlgebra& a) {
  DClassStructure ds = d_decomposition(a);
  std::ostringstream out;
  out << "digraph skewlat {\n  rankdir=BT;\n";
  for (int x = 0; x < a.n; ++x) {
    out << "  " << x << " [label=\"" << a.label(x) << "\"];\n";
  }
  for (int y = 0; y < a.n; ++y) {
    for (int x = 0; x < a.n; ++x) {
      if (!natural_lt(a, y, x)) continue;
      bool cover = true;
      for (int z = 0; z < a.n && cover; ++z) {
        if (z != x && z != y && natural_lt(a, y, z) && natural_lt(a, z, x)) {
          cover = false;
        }
      }
      if (cover) out << "  " << y << " -> " << x << ";\n";
    }
  }
  for (int i = 0; i < a.n; ++i) {
    for (int j = i + 1; j < a.n; ++j) {
      if (ds.class_of[i] == ds.class_of[j]) {
        out << "  " << i << " -> " << j << " [dir=none, style=dashed];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

struct Report {
  std::vector<std::pair<std::string, std::string>> lines;
  bool ok = true;

  void add(const std::string& key, const std::string& value) {
    lines.emplace_back(key, value);
  }

  std::string text() const {
    std::ostringstream out;
    for (const auto& [k, v] : lines) out << k << ": " << v << "\n";
    return out.str();
  }
};

namespace detail {

inline std::string tuple_str(const CayleyAlgebra& a, const std::vector<int>& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += a.label(w[i]);
  }
  return s + ")";
}

inline std::string set_str(const CayleyAlgebra& a, const std::vector<int>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += a.label(s[i]);
  }
  return out + "}";
}

inline void add_flag(Report& rep, const CayleyAlgebra& a, const std::string& key,
                     const LawCheck& c) {
  rep.add(key, c.ok ? "true" : "false");
  if (!c.ok) rep.add("witness_" + key, tuple_str(a, c.witness));
}

}  // namespace detail

// Stable `key: value` report covering verification, classification,
// D-structure and the categorical verdicts. Byte-identical across runs.
inline Report report(const CayleyAlgebra& a) {
  Report rep;
  rep.add("n", std::to_string(a.n));
  VerificationReport v = verify_skew_lattice(a);
  rep.add("skew_lattice", v.all_ok() ? "true" : "false");
  detail::add_flag(rep, a, "idempotent_meet", v.idempotent_meet);
  detail::add_flag(rep, a, "idempotent_join", v.idempotent_join);
  detail::add_flag(rep, a, "associative_meet", v.associative_meet);
  detail::add_flag(rep, a, "associative_join", v.associative_join);
  static const char* abs_names[4] = {"absorption_1", "absorption_2",
                                     "absorption_3", "absorption_4"};
  for (int i = 0; i < 4; ++i) detail::add_flag(rep, a, abs_names[i], v.absorption[i]);
  if (!v.all_ok()) {
    rep.ok = false;
    return rep;
  }
  ClassificationFlags f = classify(a);
  detail::add_flag(rep, a, "rectangular", f.rectangular);
  detail::add_flag(rep, a, "left_handed", f.left_handed);
  detail::add_flag(rep, a, "right_handed", f.right_handed);
  detail::add_flag(rep, a, "normal", f.normal);
  detail::add_flag(rep, a, "conormal", f.conormal);
  detail::add_flag(rep, a, "symmetric", f.symmetric);
  detail::add_flag(rep, a, "regular_meet_band", f.regular_meet_band);
  detail::add_flag(rep, a, "regular_join_band", f.regular_join_band);
  detail::add_flag(rep, a, "meet_distributive", f.meet_distributive);
  detail::add_flag(rep, a, "sandwiched_distributive", f.sandwiched_distributive);
  DClassStructure ds = d_decomposition(a);
  rep.add("d_class_count", std::to_string(ds.num_classes()));
  for (int c = 0; c < ds.num_classes(); ++c) {
    rep.add("d_class_" + std::to_string(c), detail::set_str(a, ds.classes[c]));
  }
  rep.add("quotient_is_lattice", ds.is_lattice ? "true" : "false");
  CategoricalVerdict cv = is_strictly_categorical(a, ds);
  rep.add("categorical", cv.categorical ? "true" : "false");
  if (!cv.categorical && cv.noncategorical_witness) {
    std::ostringstream w;
    w << "composite";
    for (auto& [x, y] : cv.noncategorical_witness->composite) {
      w << " " << a.label(x) << "->" << a.label(y);
    }
    rep.add("witness_categorical", w.str());
  }
  rep.add("strictly_categorical", cv.strictly_categorical ? "true" : "false");
  if (!cv.strictly_categorical && cv.nonstrict_witness) {
    const auto& w = *cv.nonstrict_witness;
    rep.add("witness_strictly_categorical",
            detail::tuple_str(a, {w.a, w.b, w.b2, w.c}));
  }
  return rep;
}

// Named predicates for the subalgebra search.
inline const std::map<std::string, std::function<bool(const CayleyAlgebra&)>>&
search_predicates() {
  static const std::map<std::string, std::function<bool(const CayleyAlgebra&)>>
      preds = {
          {"all", [](const CayleyAlgebra&) { return true; }},
          {"skew-lattice",
           [](const CayleyAlgebra& a) { return verify_skew_lattice(a).all_ok(); }},
          {"rectangular",
           [](const CayleyAlgebra& a) { return classify(a).rectangular.ok; }},
          {"normal", [](const CayleyAlgebra& a) { return classify(a).normal.ok; }},
          {"not-normal",
           [](const CayleyAlgebra& a) { return !classify(a).normal.ok; }},
          {"categorical",
           [](const CayleyAlgebra& a) {
             return is_categorical(a, d_decomposition(a)).categorical;
           }},
          {"non-categorical",
           [](const CayleyAlgebra& a) {
             return !is_categorical(a, d_decomposition(a)).categorical;
           }},
          {"strictly-categorical",
           [](const CayleyAlgebra& a) {
             return is_strictly_categorical(a, d_decomposition(a))
                 .strictly_categorical;
           }},
          {"strictly-categorical-and-not-normal",
           [](const CayleyAlgebra& a) {
             return is_strictly_categorical(a, d_decomposition(a))
                        .strictly_categorical &&
                    !classify(a).normal.ok;
           }},
      };
  return preds;
}

// All closed subsets of size <= max_size whose induced subalgebra satisfies
// the named predicate, as sorted subsets of original indices.
inline std::vector<std::vector<int>> search_subalgebras(
    const CayleyAlgebra& a, int max_size, const std::string& predicate) {
  auto it = search_predicates().find(predicate);
  if (it == search_predicates().end()) {
    throw SkewError(SkewError::Code::ParseError,
                    "unknown predicate: " + predicate);
  }
  const auto& pred = it->second;
  std::vector<std::vector<int>> found;
  std::vector<int> subset;
  std::function<void(int)> rec = [&](int start) {
    if (!subset.empty() && is_closed_subset(a, subset)) {
      CayleyAlgebra sub = subalgebra(a, subset);
      bool keep = predicate == "all" || predicate == "skew-lattice"
                      ? pred(sub)
                      : verify_skew_lattice(sub).all_ok() && pred(sub);
      if (keep) found.push_back(subset);
    }
    if (static_cast<int>(subset.size()) == max_size) return;
    for (int x = start; x < a.n; ++x) {
      subset.push_back(x);
      rec(x + 1);
      subset.pop_back();
    }
  };
  rec(0);
  std::sort(found.begin(), found.end());
  return found;
}

// Brute-force isomorphism testing by permutation search; only for small
// carriers (n <= 8 is instant, larger inputs are rejected).
inline bool are_isomorphic(const CayleyAlgebra& a, const CayleyAlgebra& b) {
  if (a.n != b.n) return false;
  if (a.n > 8) {
    throw SkewError(SkewError::Code::IndexOutOfRange,
                    "isomorphism search supports n <= 8");
  }
  std::vector<int> perm(a.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < a.n && ok; ++x) {
      for (int y = 0; y < a.n && ok; ++y) {
        if (perm[a.meet(x, y)] != b.meet(perm[x], perm[y]) ||
            perm[a.join(x, y)] != b.join(perm[x], perm[y])) {
          ok = false;
        }
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace skewlat
