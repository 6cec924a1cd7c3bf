#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "termcert/parse_error.hpp"
#include "termcert/poly.hpp"
#include "termcert/result.hpp"
#include "termcert/term.hpp"

namespace termcert {

// Proof trees mirroring the accepted certificate grammar. Subproof pointers
// are always non-null; a component without a subproof stores null.

struct Proof;
struct DpProof;

struct REmpty {};

struct RuleRemoval {
  PolyInterpretation interp;
  std::vector<Rule> remaining;
  std::shared_ptr<const Proof> sub;
};

struct DpTrans {
  std::vector<Rule> dps;
  std::shared_ptr<const DpProof> sub;
};

struct Proof {
  std::variant<REmpty, RuleRemoval, DpTrans> node;
};

struct PEmpty {};

struct DpComponent {
  std::vector<Rule> dps;
  bool real_scc = false;
  std::shared_ptr<const DpProof> sub;  // null iff the certificate had none
};

struct DepGraphProc {
  std::vector<DpComponent> components;
};

struct RedPairProc {
  PolyInterpretation interp;
  std::vector<Rule> remaining;
  std::shared_ptr<const DpProof> sub;
};

struct DpProof {
  std::variant<PEmpty, DepGraphProc, RedPairProc> node;
};

struct Certificate {
  Trs input;
  Proof proof;
};

bool operator==(const Proof& a, const Proof& b);
bool operator==(const DpProof& a, const DpProof& b);
bool operator==(const Certificate& a, const Certificate& b);

// Every rule vector embedded in the proof, in tree order. Used for
// certificate-wide signature checks.
void collect_proof_rules(const Proof& p, std::vector<std::vector<Rule>>& out);

Result<Certificate, ParseError> parse_cpf(std::string_view bytes);

// Canonical textual form; reparsing yields a structurally equal certificate.
std::string serialize_cpf(const Certificate& c);

}  // namespace termcert
