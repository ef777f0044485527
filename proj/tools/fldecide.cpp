#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "freelat/decide.hpp"
#include "freelat/errors.hpp"
#include "freelat/freelat.hpp"
#include "freelat/pdlkit.hpp"
#include "freelat/skolem.hpp"

namespace {

enum Exit { kOk = 0, kParse = 2, kResource = 3, kInconsistent = 4, kDisagree = 5, kIo = 1 };

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_decide(const std::string& path, bool json, bool trace, const std::string& cert_path,
               const freelat::DecideOptions& opts) {
  const auto sentence = freelat::parse_sentence(read_input(path));
  const auto report = freelat::decide(sentence, opts);
  if (json) {
    std::cout << freelat::report_to_json(report, trace).dump(2) << '\n';
  } else {
    std::cout << freelat::report_to_text(report, trace);
  }
  if (!cert_path.empty()) {
    auto cert = freelat::first_certificate(report);
    std::ofstream out(cert_path);
    if (!out) throw std::runtime_error("cannot write " + cert_path);
    out << (cert ? cert->dump(2) : std::string("null")) << '\n';
    if (!cert) std::cerr << "no YES branch; wrote null certificate\n";
  }
  return kOk;
}

int run_wp(const std::string& lhs, const std::string& rhs) {
  const auto u = freelat::parse_term(lhs);
  const auto v = freelat::parse_term(rhs);
  std::cout << (freelat::free_leq(u, v) ? "LEQ" : "NLEQ") << '\n';
  return kOk;
}

int run_fp(const std::string& path, const std::string& lhs, const std::string& rhs, bool check) {
  const auto p = freelat::parse_presentation(read_input(path));
  const auto s = freelat::build_pdl(p);
  const auto u = freelat::parse_term(lhs);
  const auto v = freelat::parse_term(rhs);
  const bool dean = freelat::dean_leq(s, u, v);
  std::cout << (dean ? "LEQ" : "NLEQ") << '\n';
  if (check) {
    const bool skolem = freelat::skolem_wp(s, u, v);
    std::cout << "skolem: " << (skolem ? "LEQ" : "NLEQ") << '\n';
    if (skolem != dean) {
      std::cerr << "word-problem oracles disagree\n";
      return kDisagree;
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide universal and existential sentences in infinite free lattices."};
  app.require_subcommand(1);

  std::string path = "-";
  bool json = false;
  bool trace = false;
  std::string cert_path;
  freelat::DecideOptions opts;
  auto* decide = app.add_subcommand("decide", "decide a sentence read from a file or stdin");
  decide->add_option("input", path, "sentence file, or - for stdin");
  decide->add_flag("--json", json, "print the report as JSON");
  decide->add_flag("--trace", trace, "include the refinement trace");
  decide->add_option("--certificate", cert_path, "write the first YES certificate to this path");
  decide->add_option("--max-elements", opts.max_elements, "cap on target lattice size")->capture_default_str();
  decide->add_option("--max-branches", opts.max_branches, "cap on standardized branches")->capture_default_str();
  decide->add_option("--threads", opts.threads, "worker threads, 0 for all cores")->capture_default_str();

  std::string lhs;
  std::string rhs;
  auto* wp = app.add_subcommand("wp", "word problem in the free lattice");
  wp->add_option("lhs", lhs)->required();
  wp->add_option("rhs", rhs)->required();

  std::string fp_path;
  bool check = false;
  auto* fp = app.add_subcommand("fp", "word problem in a finitely presented lattice");
  fp->add_option("presentation", fp_path)->required();
  fp->add_option("lhs", lhs)->required();
  fp->add_option("rhs", rhs)->required();
  fp->add_flag("--check", check, "also run the closure-based solver and compare");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*decide) return run_decide(path, json, trace, cert_path, opts);
    if (*wp) return run_wp(lhs, rhs);
    if (*fp) return run_fp(fp_path, lhs, rhs, check);
  } catch (const freelat::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const freelat::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const freelat::InconsistentPresentation& e) {
    std::cerr << e.what() << '\n';
    return kInconsistent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kOk;
}
