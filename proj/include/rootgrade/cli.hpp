#pragma once

// Command-line front end. Exit status: 0 all checks pass, 1 a check failed,
// 2 malformed input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rootgrade/extensions.hpp"
#include "rootgrade/io.hpp"

namespace rootgrade {

struct RunConfig {
  std::string command;
  std::string quadruple;
  Index n = 4;
  Index ell = 4;
  std::string k_spec = "zero";
  std::string format = "text";
  std::string structure;
  std::string output;
  std::string what = "structure";
};

namespace cli_detail {

class Report {
 public:
  explicit Report(bool machine) : machine_(machine) {}

  void kv(const std::string& key, const std::string& value) { lines_.push_back(machine_ ? key + "=" + value : key + ": " + value); }
  void kv(const std::string& key, Index value) { kv(key, std::to_string(value)); }

  void check(const CheckResult& c) {
    if (machine_) {
      lines_.push_back("check." + c.name + "=" + (c.passed ? "pass" : "fail"));
      if (!c.passed) lines_.push_back("check." + c.name + ".failures=" + std::to_string(c.failures));
      if (c.witness) lines_.push_back("check." + c.name + ".witness=" + c.witness->str());
      if (!c.detail.empty()) lines_.push_back("check." + c.name + ".detail=" + c.detail);
    } else {
      std::string s = "check " + c.name + ": " + (c.passed ? "PASS" : "FAIL");
      if (!c.passed) s += " (" + std::to_string(c.failures) + " failures)";
      if (!c.detail.empty()) s += " [" + c.detail + "]";
      if (c.witness) s += " witness " + c.witness->str();
      lines_.push_back(s);
    }
    if (!c.passed && first_failure_.empty()) first_failure_ = c.name;
  }

  void check(const std::string& name, bool passed, const std::string& detail = "") {
    CheckResult c{name};
    c.passed = passed;
    c.failures = passed ? 0 : 1;
    c.detail = detail;
    check(c);
  }

  const std::string& first_failure() const { return first_failure_; }

  void finish(std::ostream& out) {
    if (machine_) {
      kv("result", first_failure_.empty() ? "pass" : "fail");
      if (!first_failure_.empty()) kv("first_failure", first_failure_);
    } else {
      kv("result", first_failure_.empty() ? std::string("PASS") : "FAIL (first failing check: " + first_failure_ + ")");
    }
    for (const auto& l : lines_) out << l << "\n";
  }

 private:
  bool machine_;
  std::vector<std::string> lines_;
  std::string first_failure_;
};

inline std::string dims_str(const std::array<Index, 4>& d) {
  return std::to_string(d[0]) + "," + std::to_string(d[1]) + "," + std::to_string(d[2]) + "," + std::to_string(d[3]);
}

inline void require_quadruple(const RunConfig& c) {
  if (c.quadruple.empty()) throw Error(ErrorKind::InvalidArgument, "--quadruple is required");
}

inline void require_graded_ranks(const RunConfig& c) {
  if (c.ell < 4) throw Error(ErrorKind::InvalidArgument, "--ell must be at least 4");
  if (c.n < c.ell) throw Error(ErrorKind::InvalidArgument, "--n must be at least --ell");
}

inline Subspace resolve_k(const RunConfig& c, const BBSpace& bb) {
  if (c.k_spec == "zero") return Subspace(bb.dim());
  if (c.k_spec == "hf") return bb.compute_hf();
  return read_k_file(c.k_spec, bb.dim());
}

inline void header(Report& r, const CoordinateQuadruple& q) {
  r.kv("quadruple", q.name.empty() ? std::string("(unnamed)") : q.name);
  r.kv("kind", std::string(to_string(q.kind)));
}

inline void structure_header(Report& r, const GradedStructure& s) {
  r.kv("name", s.name);
  r.kv("n", s.n);
  r.kv("ell", s.ell);
  r.kv("dim", s.dim());
  r.kv("summands", dims_str(s.summands));
}

inline void cmd_validate(const RunConfig& c, Report& r) {
  require_quadruple(c);
  CoordinateQuadruple q = load_quadruple(c.quadruple);
  header(r, q);
  r.kv("dim_a", q.a_dim());
  r.kv("dim_C", q.c_dim());
  auto v = validate_quadruple(q);
  r.kv("violations", v.size());
  for (Index i = 0; i < v.size(); ++i) r.kv("violation[" + std::to_string(i) + "]", v[i].str());
  if (v.empty()) r.check("axioms", true);
  else r.check(v.front().axiom, false, v.front().str());
}

inline void cmd_hf(const RunConfig& c, Report& r) {
  require_quadruple(c);
  if (c.ell < 1) throw Error(ErrorKind::InvalidArgument, "--ell must be positive");
  CoordinateQuadruple q = load_quadruple(c.quadruple);
  header(r, q);
  BBSpace bb(BAlgebra(q), c.ell);
  Subspace hf = bb.compute_hf();
  r.kv("ell", c.ell);
  r.kv("dim_bxb", bb.tensor_dim());
  r.kv("dim_K", bb.relations().rank());
  r.kv("dim_bb", bb.dim());
  r.kv("dim_HF", hf.rank());
  r.kv("HF_equals_bb", hf.rank() == bb.dim() ? "yes" : "no");
  r.check(bb.check_relations_invariant());
  r.check(bb.check_relations_in_kernel());
  CheckResult anti = check_antisymmetry(bb.table());
  anti.name = "bb_antisymmetry";
  r.check(anti);
  CheckResult jac = check_jacobi(bb.table());
  jac.name = "bb_jacobi";
  r.check(jac);
  r.check(bb.check_hf_central());
  Subspace k = resolve_k(c, bb);
  r.kv("K_spec", c.k_spec);
  r.kv("dim_K_sub", k.rank());
  try {
    UniformResult u = bb.check_uniform(k);
    r.check("uniform", u.uniform, u.uniform ? "" : "witness " + u.witness->str() + " has beta* sum " + u.image.str());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInHF) throw;
    r.check("uniform", false, e.what());
  }
}

inline GradedAlgebra build_algebra(const RunConfig& c, const CoordinateQuadruple& q) {
  require_graded_ranks(c);
  BBSpace bb(BAlgebra(q), c.ell);
  Subspace k = resolve_k(c, bb);
  return GradedAlgebra(q, IndexData(c.n, c.ell), k);
}

inline void cmd_build(const RunConfig& c, Report& r) {
  require_quadruple(c);
  CoordinateQuadruple q = load_quadruple(c.quadruple);
  header(r, q);
  GradedAlgebra L = build_algebra(c, q);
  r.kv("n", c.n);
  r.kv("ell", c.ell);
  r.kv("K_spec", c.k_spec);
  r.kv("dim_G", L.g_basis().size());
  r.kv("dim_S", L.s_basis().size());
  r.kv("dim_V", 2 * c.n);
  r.kv("dim_A", L.a_basis().size());
  r.kv("dim_B", L.b_basis().size());
  r.kv("dim_C", q.c_dim());
  r.kv("dim_bb", L.bb().dim());
  r.kv("dim_K_sub", L.dd_quotient().k_sub.rank());
  r.kv("summands", dims_str(L.summand_dims()));
  r.kv("dim", L.dim());
}

inline void verify_structure(const GradedStructure& s, Report& r) {
  structure_header(r, s);
  if (s.labels.size() != s.dim() || s.weights.size() != s.dim())
    throw Error(ErrorKind::ParseError, "structure is missing labels or weights");
  GradedReport rep = check_graded(s);
  for (const auto& ch : rep.checks) r.check(ch);
}

inline void cmd_verify(const RunConfig& c, Report& r) {
  if (!c.structure.empty()) {
    std::istringstream in(read_file(c.structure));
    verify_structure(read_structure(in, c.structure), r);
    return;
  }
  require_quadruple(c);
  GradedAlgebra L = build_algebra(c, load_quadruple(c.quadruple));
  verify_structure(L.structure(), r);
}

inline void cmd_ucex(const RunConfig& c, Report& r) {
  require_quadruple(c);
  require_graded_ranks(c);
  CoordinateQuadruple q = load_quadruple(c.quadruple);
  header(r, q);
  BBSpace bb(BAlgebra(q), c.ell);
  Subspace k = resolve_k(c, bb);
  UniversalExtension u = universal_extension(q, IndexData(c.n, c.ell), k);
  r.kv("n", c.n);
  r.kv("ell", c.ell);
  r.kv("K_spec", c.k_spec);
  r.kv("dim_universal", u.univ.dim());
  r.kv("dim_target", u.target.dim());
  r.kv("dim_K_sub", k.rank());
  r.kv("dim_kernel", u.kernel_dim);
  r.kv("dim_center", u.center_dim);
  r.check(u.pi.homomorphism);
  r.check(u.surjective);
  r.check(u.kernel_matches);
  r.check(u.kernel_central);
}

inline void cmd_export(const RunConfig& c, std::ostream& out) {
  require_quadruple(c);
  CoordinateQuadruple q = load_quadruple(c.quadruple);
  if (c.what == "quadruple") {
    out << quadruple_to_json(q);
    return;
  }
  if (c.what != "structure") throw Error(ErrorKind::InvalidArgument, "--what must be structure or quadruple");
  GradedAlgebra L = build_algebra(c, q);
  write_structure(out, L.structure());
}

inline bool is_input_error(ErrorKind k) {
  return k == ErrorKind::ParseError || k == ErrorKind::UnknownName || k == ErrorKind::InvalidArgument ||
         k == ErrorKind::ShapeMismatch || k == ErrorKind::IndexOutOfRange;
}

}  // namespace cli_detail

inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output.empty()) {
    file.open(c.output, std::ios::binary);
    if (!file) {
      err << "rootgrade: malformed input: cannot write " << c.output << "\n";
      return 2;
    }
    sink = &file;
  }
  Report r(c.format == "machine");
  try {
    if (c.format != "text" && c.format != "machine")
      throw Error(ErrorKind::InvalidArgument, "--format must be text or machine");
    if (c.command == "validate") cmd_validate(c, r);
    else if (c.command == "hf") cmd_hf(c, r);
    else if (c.command == "build") cmd_build(c, r);
    else if (c.command == "verify") cmd_verify(c, r);
    else if (c.command == "ucex") cmd_ucex(c, r);
    else if (c.command == "export") {
      cmd_export(c, *sink);
      return 0;
    } else throw Error(ErrorKind::InvalidArgument, "unknown command '" + c.command + "'");
  } catch (const Error& e) {
    if (is_input_error(e.kind())) {
      err << "rootgrade: malformed input: " << e.what() << "\n";
      return 2;
    }
    if (e.kind() == ErrorKind::NotUniform || e.kind() == ErrorKind::NotInHF) r.check("uniform", false, e.what());
    else r.check(std::string(to_string(e.kind())), false, e.what());
  }
  r.finish(*sink);
  if (!r.first_failure().empty()) {
    err << "rootgrade: check failed: " << r.first_failure() << "\n";
    return 1;
  }
  return 0;
}

inline int cli_main(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Root-graded Lie algebras of type BC: build, verify and extend"};
  app.require_subcommand(1);
  RunConfig c;
  auto common = [&](CLI::App* sub, bool ranks, bool k) {
    sub->add_option("--quadruple,-q", c.quadruple, "catalog name or JSON file (a readable file wins)");
    sub->add_option("--ell", c.ell, "ell = |I0|");
    if (ranks) sub->add_option("--n", c.n, "rank |I|");
    if (k) sub->add_option("--K", c.k_spec, "zero, hf, or a file of {b,b} basis vectors");
    sub->add_option("--format", c.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--output,-o", c.output, "write to this file instead of stdout");
  };
  common(app.add_subcommand("validate", "check the quadruple axioms"), false, false);
  common(app.add_subcommand("hf", "dimensions of b⊗b, K, {b,b}, HF(b) and the uniform check"), false, true);
  common(app.add_subcommand("build", "assemble L(q,K) and print summand dimensions"), true, true);
  auto* verify = app.add_subcommand("verify", "run the graded-algebra checks");
  common(verify, true, true);
  verify->add_option("--structure", c.structure, "verify an exported structure file instead");
  common(app.add_subcommand("ucex", "universal central extension certificates"), true, true);
  auto* exp = app.add_subcommand("export", "dump structure constants or the quadruple");
  common(exp, true, true);
  exp->add_option("--what", c.what, "structure or quadruple")->check(CLI::IsMember({"structure", "quadruple"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  c.command = app.get_subcommands().front()->get_name();
  return run(c, out, err);
}

}  // namespace rootgrade
