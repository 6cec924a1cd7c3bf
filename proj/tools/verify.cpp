// verify — command-line front end for certificate checking and XSD lowering.
//
// Exit codes are part of the interface: 0 = certified / success,
// 1 = rejected, 2 = unsupported input feature, 3 = malformed input or
// usage error.  Non-verbose mode prints exactly one verdict line on
// stdout; everything else goes to stderr.

#include "CLI11.hpp"

#include "termcert/checker.hpp"
#include "termcert/cpf.hpp"
#include "termcert/xsd.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitCertified = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUnsupported = 2;
constexpr int kExitInputError = 3;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

int run_check(const std::string& path, bool verbose, int jobs) {
  auto text = read_file(path);
  if (!text) {
    std::cout << "INPUT ERROR: cannot read file: " << path << "\n";
    return kExitInputError;
  }
  auto parsed = termcert::parse_cpf(*text);
  if (!parsed.ok()) {
    const auto& pe = parsed.error();
    if (pe.kind == termcert::ParseError::Kind::Unsupported) {
      std::cout << "UNSUPPORTED: " << pe.path << ": " << pe.message << "\n";
      return kExitUnsupported;
    }
    std::cout << "INPUT ERROR: " << termcert::describe(pe) << "\n";
    return kExitInputError;
  }
  termcert::CheckOptions opts;
  opts.jobs = jobs;
  if (verbose) opts.trace = &std::cerr;
  auto result = termcert::check_certificate(parsed.value(), opts);
  std::cout << termcert::render_verdict(result) << "\n";
  switch (result.status()) {
    case termcert::CheckResult::Status::Ok: return kExitCertified;
    case termcert::CheckResult::Status::Ko: return kExitRejected;
    case termcert::CheckResult::Status::Unsupported: return kExitUnsupported;
  }
  return kExitInputError;
}

int run_xsd2types(const std::string& path, const std::string& out_path) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << "error: cannot read file: " << path << "\n";
    return kExitInputError;
  }
  auto schema = termcert::xsd::parse_xsd(*text);
  if (!schema.ok()) {
    const auto& pe = schema.error();
    std::cerr << "error: " << termcert::describe(pe) << "\n";
    return pe.kind == termcert::ParseError::Kind::Unsupported
               ? kExitUnsupported
               : kExitInputError;
  }
  auto ir = termcert::xsd::lower(schema.value());
  std::string rendered =
      termcert::xsd::emit_ir(ir, termcert::xsd::order_types(ir));
  if (out_path.empty()) {
    std::cout << rendered;
    return kExitCertified;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return kExitInputError;
  }
  out << rendered;
  out.flush();
  if (!out) {
    std::cerr << "error: cannot write output file: " << out_path << "\n";
    return kExitInputError;
  }
  return kExitCertified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Termination certificate verifier"};
  app.set_version_flag("--version", "verify 0.1.0");
  app.require_subcommand(1);

  std::string check_file;
  bool verbose = false;
  int jobs = 1;
  auto* check = app.add_subcommand("check", "Check a termination certificate");
  check->add_option("file", check_file, "Certificate file (CPF XML)")
      ->required();
  check->add_flag("--verbose", verbose,
                  "Trace visited proof nodes and side conditions on stderr");
  check->add_option("--jobs", jobs, "Check sibling graph components with up to N threads")
      ->check(CLI::PositiveNumber);

  std::string xsd_file;
  std::string out_path;
  auto* xsd = app.add_subcommand("xsd2types", "Lower an XSD subset to type definitions");
  xsd->add_option("file", xsd_file, "Schema file (XSD subset)")->required();
  xsd->add_option("-o,--output", out_path, "Write the IR here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  if (check->parsed()) return run_check(check_file, verbose, jobs);
  return run_xsd2types(xsd_file, out_path);
}
