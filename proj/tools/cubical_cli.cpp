// Command-line front end: hom-set enumeration, factorizations, standard
// decompositions, invariant sweeps, and anodyne certificate emission and
// verification. All I/O is JSON on files or stdin/stdout; exit codes are
// 0 (pass), 1 (failure) and 2 (malformed input or bad arguments).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cubical/serialize.hpp"
#include "cubical/sweeps.hpp"

using namespace cubical;

namespace {

Theory parse_theory(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "none" || s.empty()) return Theory::none();
  if (s == "poset" || s == "p") return Theory::poset();
  if (s == "full" || s == "s" || s == "all") return Theory::full();
  unsigned mask = 0;
  std::size_t pos = 0;
  auto eat = [&](const std::string& tok, Symbol sym) {
    if (s.compare(pos, tok.size(), tok) == 0) {
      mask |= static_cast<unsigned>(sym);
      pos += tok.size();
      return true;
    }
    return false;
  };
  while (pos < s.size()) {
    if (s[pos] == '+' || s[pos] == ',' || s[pos] == '-') {
      ++pos;
      continue;
    }
    if (eat("meet", Symbol::meet)) continue;
    if (eat("join", Symbol::join)) continue;
    if (eat("sigma", Symbol::sigma) || eat("sym", Symbol::sigma)) continue;
    if (eat("rho", Symbol::rho) || eat("rev", Symbol::rho)) continue;
    if (eat("delta", Symbol::delta) || eat("diag", Symbol::delta)) continue;
    throw CLI::ValidationError("--theory", "unknown theory token in '" + s + "'");
  }
  return Theory(mask);
}

json read_json(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void write_output(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot open " + out);
  os << j.dump(2) << "\n";
}

int print_report(const SweepReport& rep) {
  std::cout << rep.suite << ": " << rep.cases << " cases, " << rep.failures.size() << " failures ("
            << rep.bounds << ")\n";
  for (const std::string& f : rep.failures) std::cout << "  FAIL " << f << "\n";
  return rep.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computations in cube categories and finite cubical sets"};
  app.require_subcommand(1);

  std::string theory_name = "none";
  int m = 0, n = 0, k = 0, D = 3;
  bool count = false, list = false;

  auto* hom = app.add_subcommand("hom", "enumerate a hom-set of the cube category");
  hom->add_option("--theory", theory_name, "theory: none|meet|join|meetjoin|sym|rev|diag|poset|full");
  hom->add_option("--m", m, "domain dimension")->required();
  hom->add_option("--n", n, "codomain dimension")->required();
  hom->add_flag("--count", count, "print only the number of maps");
  hom->add_flag("--list", list, "print the maps as JSON");

  std::string map_path, out_path, flavor_name_opt = "meet";
  auto* factor = app.add_subcommand("factor", "active-face factorization of a map");
  factor->add_option("--map", map_path, "cube map JSON file, or - for stdin")->required();
  factor->add_option("--out", out_path, "output file, default stdout");

  auto* ndecomp = app.add_subcommand("ndecomp", "standard decomposition cube of a map");
  ndecomp->add_option("--map", map_path, "cube map JSON file, or - for stdin")->required();
  ndecomp->add_option("--k", k, "tail length");
  ndecomp->add_option("--flavor", flavor_name_opt, "meet or join");
  ndecomp->add_option("--out", out_path, "output file, default stdout");

  std::string suite_id;
  int max_dim = 3, max_k = 2;
  bool theory_set = false;
  auto* check = app.add_subcommand("check", "run invariant sweeps");
  check->add_option("--suite", suite_id, "suite id, or 'all'");
  check->add_flag("--list", list, "list available suites");
  check->add_option("--max-dim", max_dim, "dimension bound");
  check->add_option("--max-k", max_k, "tail-length bound");
  check->add_option("--D", D, "presheaf truncation");
  check->add_option("--theory", theory_name, "restrict theory-parametric suites")
      ->each([&theory_set](const std::string&) { theory_set = true; });

  std::string a_name = "meet", b_name = "poset", source_s = "unit", target_s = "full";
  auto* certify_cmd = app.add_subcommand("certify", "emit an open-box filling certificate");
  certify_cmd->add_option("--A", a_name, "small theory");
  certify_cmd->add_option("--B", b_name, "large theory");
  certify_cmd->add_option("--n", n, "ambient cube dimension")->required();
  certify_cmd->add_option("--D", D, "truncation");
  certify_cmd->add_option("--flavor", flavor_name_opt, "meet or join");
  certify_cmd->add_option("--source", source_s, "unit | cartesian:<m> | full");
  certify_cmd->add_option("--target", target_s, "unit | cartesian:<m> | full");
  certify_cmd->add_option("--out", out_path, "output file, default stdout");

  std::string cert_path;
  auto* verify_cmd = app.add_subcommand("verify", "verify an open-box filling certificate");
  verify_cmd->add_option("--cert", cert_path, "certificate JSON file, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (hom->parsed()) {
      auto maps = enumerate_hom(parse_theory(theory_name), m, n);
      if (count || !list) {
        std::cout << maps.size() << "\n";
      }
      if (list) {
        json out = json::array();
        for (const CubeMap& f : maps) out.push_back(cube_map_to_json(f));
        write_output(out, out_path);
      }
      return 0;
    }
    if (factor->parsed()) {
      const CubeMap f = cube_map_from_json(read_json(map_path));
      auto aff = active_face_factor(f);
      write_output(json{{"kappa", face_list_to_json(aff.kappa)}, {"psi", cube_map_to_json(aff.active)}},
                   out_path);
      return 0;
    }
    if (ndecomp->parsed()) {
      const CubeMap f = cube_map_from_json(read_json(map_path));
      const Flavor fl = flavor_name_opt == "join" ? Flavor::join : Flavor::meet;
      write_output(cube_map_to_json(standard_decomposition(f, k, fl)), out_path);
      return 0;
    }
    if (check->parsed()) {
      if (list) {
        for (const SuiteInfo& s : sweep_suites()) std::cout << s.id << ": " << s.description << "\n";
        return 0;
      }
      if (suite_id.empty()) throw CLI::ValidationError("--suite", "a suite id or 'all' is required");
      SweepBounds bounds;
      bounds.max_dim = max_dim;
      bounds.max_k = max_k;
      bounds.truncation = D;
      if (theory_set) bounds.theory = parse_theory(theory_name);
      int rc = 0;
      if (suite_id == "all") {
        for (const SuiteInfo& s : sweep_suites()) rc |= print_report(s.run(bounds));
      } else {
        rc = print_report(run_suite(suite_id, bounds));
      }
      return rc;
    }
    if (certify_cmd->parsed()) {
      const Flavor fl = flavor_name_opt == "join" ? Flavor::join : Flavor::meet;
      AnodyneAmbient amb(parse_theory(a_name), parse_theory(b_name), n, D, fl);
      auto res = certify(amb, SubcomplexSpec::parse(source_s), SubcomplexSpec::parse(target_s));
      write_output(certificate_to_json(res.certificate), out_path);
      if (!res.uncovered_top.empty())
        std::cerr << "note: " << res.uncovered_top.size() << " target cubes at dimension " << D
                  << " lie beyond the certified range\n";
      return 0;
    }
    if (verify_cmd->parsed()) {
      FillingCertificate cert;
      try {
        cert = certificate_from_json(read_json(cert_path));
      } catch (const std::exception& e) {
        std::cerr << "malformed certificate: " << e.what() << "\n";
        return 2;
      }
      const VerifyReport rep = verify(cert);
      if (rep.pass) {
        std::cout << "PASS " << rep.detail << "\n";
        return 0;
      }
      std::cout << "FAIL";
      if (rep.failed_step >= 0) std::cout << " at step " << rep.failed_step;
      std::cout << " [check " << rep.check << "] " << rep.detail << "\n";
      return 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
