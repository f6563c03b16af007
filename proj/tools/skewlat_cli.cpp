// Command-line surface for the skew-lattice toolkit.
//
// Exit codes: 0 = success and all asserted properties hold; 1 = a checked
// property fails (a witness is printed); 2 = input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skewlat/algebra.hpp"
#include "skewlat/category.hpp"
#include "skewlat/cosets.hpp"
#include "skewlat/fixtures.hpp"
#include "skewlat/io.hpp"
#include "skewlat/matrices.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailed = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw skewlat::SkewError(skewlat::SkewError::Code::ParseError,
                             "cannot open file: " + path);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

skewlat::CayleyAlgebra load_algebra(const std::string& path) {
  return skewlat::parse_algebra(read_file(path));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw skewlat::SkewError(skewlat::SkewError::Code::ParseError,
                               "cannot write file: " + out_path);
    }
    out << text;
  }
}

std::string set_str(const skewlat::CayleyAlgebra& a, const std::vector<int>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += a.label(s[i]);
  }
  return out + "}";
}

std::string graph_str(const skewlat::CayleyAlgebra& a,
                      const std::vector<std::pair<int, int>>& g) {
  if (g.empty()) return "empty";
  std::string out;
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) out += ", ";
    out += a.label(g[i].first) + "->" + a.label(g[i].second);
  }
  return out;
}

int run_check(const std::string& file) {
  skewlat::CayleyAlgebra a = load_algebra(file);
  skewlat::Report rep = skewlat::report(a);
  std::cout << rep.text();
  return rep.ok ? kOk : kPropertyFailed;
}

int run_classify(const std::string& file) {
  skewlat::CayleyAlgebra a = load_algebra(file);
  skewlat::Report rep = skewlat::report(a);
  std::cout << rep.text();
  return rep.ok ? kOk : kPropertyFailed;
}

int run_dclasses(const std::string& file) {
  skewlat::CayleyAlgebra a = load_algebra(file);
  if (!skewlat::verify_skew_lattice(a).all_ok()) {
    std::cout << "not a skew lattice\n";
    return kPropertyFailed;
  }
  skewlat::DClassStructure ds = skewlat::d_decomposition(a);
  for (int c = 0; c < ds.num_classes(); ++c) {
    std::cout << "class " << c << ": " << set_str(a, ds.classes[c]) << "\n";
  }
  std::cout << "quotient_is_lattice: " << (ds.is_lattice ? "true" : "false")
            << "\n";
  return ds.is_lattice ? kOk : kPropertyFailed;
}

int run_cosets(const std::string& file, int upper, int lower) {
  skewlat::CayleyAlgebra a = load_algebra(file);
  skewlat::DClassStructure ds = skewlat::d_decomposition(a);
  skewlat::CosetPartition p = skewlat::coset_partition(a, ds, upper, lower);
  std::cout << "upper class " << upper << ": " << set_str(a, ds.classes[upper])
            << "\n";
  std::cout << "lower class " << lower << ": " << set_str(a, ds.classes[lower])
            << "\n";
  for (const auto& c : p.up_cosets) {
    std::cout << "up-coset: " << set_str(a, c) << "\n";
  }
  for (const auto& c : p.down_cosets) {
    std::cout << "down-coset: " << set_str(a, c) << "\n";
  }
  for (const auto& phi : skewlat::all_coset_bijections(a, ds, upper, lower)) {
    std::cout << "bijection: " << graph_str(a, phi.graph) << "\n";
  }
  return kOk;
}

int run_category(const std::string& file, bool audit_assoc) {
  skewlat::CayleyAlgebra a = load_algebra(file);
  skewlat::DClassStructure ds = skewlat::d_decomposition(a);
  skewlat::CategoricalVerdict v = skewlat::is_strictly_categorical(a, ds);
  std::cout << "categorical: " << (v.categorical ? "true" : "false") << "\n";
  if (!v.categorical && v.noncategorical_witness) {
    std::cout << "noncategorical_composite: "
              << graph_str(a, v.noncategorical_witness->composite) << "\n";
  }
  std::cout << "strictly_categorical: "
            << (v.strictly_categorical ? "true" : "false") << "\n";
  if (!v.strictly_categorical && v.nonstrict_witness) {
    const auto& w = *v.nonstrict_witness;
    std::cout << "midpoint_witness: (" << a.label(w.a) << ", " << a.label(w.b)
              << ", " << a.label(w.b2) << ", " << a.label(w.c) << ")\n";
  }
  if (v.categorical) {
    skewlat::CosetCategory cat = skewlat::build_coset_category(a, ds);
    std::cout << "objects: " << cat.objects.size() << "\n";
    for (const auto& [pair, morphs] : cat.hom) {
      std::cout << "hom(" << pair.first << ", " << pair.second
                << "): " << morphs.size() << " morphisms\n";
    }
  }
  if (audit_assoc) {
    skewlat::AssociativityAudit audit = skewlat::associativity_audit(a, ds);
    std::cout << "associativity_failures: " << audit.witnesses.size() << "\n";
    for (const auto& w : audit.witnesses) {
      std::cout << "  delta " << graph_str(a, w.delta.graph) << " | psi "
                << graph_str(a, w.psi.graph) << " | phi "
                << graph_str(a, w.phi.graph) << " | left "
                << (w.left.empty ? "empty" : graph_str(a, w.left.chi.graph))
                << " | right "
                << (w.right.empty ? "empty" : graph_str(a, w.right.chi.graph))
                << "\n";
    }
  }
  return kOk;
}

int run_dot(const std::string& file, const std::string& out) {
  emit(skewlat::export_dot(load_algebra(file)), out);
  return kOk;
}

int run_sub(const std::string& file, const std::vector<int>& elements,
            const std::string& out) {
  skewlat::CayleyAlgebra a = load_algebra(file);
  emit(skewlat::serialize_algebra(skewlat::subalgebra(a, elements)), out);
  return kOk;
}

int run_search(const std::string& file, int max_size, const std::string& pred) {
  skewlat::CayleyAlgebra a = load_algebra(file);
  auto found = skewlat::search_subalgebras(a, max_size, pred);
  for (const auto& s : found) std::cout << set_str(a, s) << "\n";
  std::cout << "found: " << found.size() << "\n";
  return kOk;
}

int run_fixture(const std::string& name, const std::string& out) {
  using namespace skewlat::fixtures;
  if (name == "fig1") {
    emit(skewlat::serialize_algebra(fig1()), out);
  } else if (name == "fig3") {
    emit(skewlat::serialize_algebra(fig3()), out);
  } else if (name == "x2") {
    emit(skewlat::serialize_algebra(x2()), out);
  } else if (name == "example19" || name == "example20") {
    skewlat::MatrixSkewLattice s = name == "example19" ? skewlat::example19()
                                                       : skewlat::example20();
    skewlat::MatrixFile f;
    f.scalar = s.elements[0].scalar;
    f.dim = s.elements[0].dim;
    static const char* names19[] = {"a", "b", "bp", "c"};
    for (size_t i = 0; i < s.elements.size(); ++i) {
      f.matrices.emplace_back(i < 4 ? names19[i] : "m" + std::to_string(i),
                              s.elements[i]);
    }
    emit(skewlat::serialize_matrix_file(f), out);
  } else {
    throw skewlat::SkewError(skewlat::SkewError::Code::ParseError,
                             "unknown fixture: " + name);
  }
  return kOk;
}

int run_closure(const std::string& file, int cap) {
  skewlat::MatrixFile f = skewlat::parse_matrix_file(read_file(file));
  std::vector<skewlat::ExactMatrix> gens;
  for (auto& [name, m] : f.matrices) gens.push_back(m);
  skewlat::MatrixSkewLattice s = skewlat::closure(gens, cap);
  std::cout << "elements: " << s.elements.size() << "\n";
  std::cout << "circ_equals_nabla: " << (s.circ_equals_nabla ? "true" : "false")
            << "\n";
  skewlat::Report rep = skewlat::report(s.induced);
  std::cout << rep.text();
  return rep.ok ? kOk : kPropertyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite skew lattice toolkit"};
  app.require_subcommand(1);

  std::string file, out_path, pred = "skew-lattice", fixture_name;
  std::vector<int> elements;
  int upper = 0, lower = 1, max_size = 6, cap = 4096;
  bool audit_assoc = false;

  auto* check = app.add_subcommand("check", "verify the skew lattice axioms");
  check->add_option("file", file)->required();

  auto* cls = app.add_subcommand("classify", "classification report");
  cls->add_option("file", file)->required();

  auto* dcl = app.add_subcommand("dclasses", "D-class decomposition");
  dcl->add_option("file", file)->required();

  auto* cos = app.add_subcommand("cosets", "coset partition of a class pair");
  cos->add_option("file", file)->required();
  cos->add_option("--upper", upper, "upper class index")->required();
  cos->add_option("--lower", lower, "lower class index")->required();

  auto* cat = app.add_subcommand("category", "categorical verdicts");
  cat->add_option("file", file)->required();
  cat->add_flag("--audit-assoc", audit_assoc, "audit ×-associativity");

  auto* dot = app.add_subcommand("dot", "admissible Hasse diagram as DOT");
  dot->add_option("file", file)->required();
  dot->add_option("-o,--output", out_path);

  auto* sub = app.add_subcommand("sub", "extract a subalgebra");
  sub->add_option("file", file)->required();
  sub->add_option("--elements", elements, "element indices")
      ->required()
      ->delimiter(',');
  sub->add_option("-o,--output", out_path);

  auto* search = app.add_subcommand("search", "search closed subalgebras");
  search->add_option("file", file)->required();
  search->add_option("--max", max_size, "maximum subset size");
  search->add_option("--pred", pred, "predicate name");

  auto* fix = app.add_subcommand("fixture", "emit a canonical fixture file");
  fix->add_option("name", fixture_name, "fig1|fig3|x2|example19|example20")
      ->required();
  fix->add_option("-o,--output", out_path);

  auto* clo = app.add_subcommand("closure", "close matrices under · and ∇");
  clo->add_option("file", file)->required();
  clo->add_option("--cap", cap, "element cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(file);
    if (cls->parsed()) return run_classify(file);
    if (dcl->parsed()) return run_dclasses(file);
    if (cos->parsed()) return run_cosets(file, upper, lower);
    if (cat->parsed()) return run_category(file, audit_assoc);
    if (dot->parsed()) return run_dot(file, out_path);
    if (sub->parsed()) return run_sub(file, elements, out_path);
    if (search->parsed()) return run_search(file, max_size, pred);
    if (fix->parsed()) return run_fixture(fixture_name, out_path);
    if (clo->parsed()) return run_closure(file, cap);
  } catch (const skewlat::SkewError& e) {
    std::cerr << "error: " << e.what() << "\n";
    using Code = skewlat::SkewError::Code;
    switch (e.code()) {
      case Code::ParseError:
      case Code::IndexOutOfRange:
      case Code::NotClosed:
      case Code::ElementNotInClass:
      case Code::NotComparable:
      case Code::DimMismatch:
      case Code::ScalarMismatch:
      case Code::ShapeMismatch:
        return kInputError;
      default:
        return kPropertyFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
