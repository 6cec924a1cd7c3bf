#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "termcert/cpf.hpp"
#include "termcert/dp.hpp"

namespace termcert {

struct CheckError {
  enum class Kind {
    NonEmpty,            // rIsEmpty but rules remain
    NonEmptyDps,         // pIsEmpty but pairs remain
    MonotoneViolation,   // interpretation fails the monotonicity criterion
    BadPolynomial,       // polynomial mentions indices beyond the arity
    UnassignedSymbol,    // a symbol of the system has no interpretation
    ArityMismatch,       // interpretation arity differs from use
    NotStrict,           // removed rule or pair not strictly decreasing
    NotWeak,             // kept rule or pair not weakly decreasing
    AlienRemaining,      // remaining set lists something not in the base set
    NoProgress,          // nothing was removed
    SharpInTrs,          // dpTrans applied to a system with sharp symbols
    BadSharpNesting,     // sharp applied below or above another sharp
    MissingDp,           // a refined dependency pair is not listed
    AlienDp,             // a listed pair is not a dependency pair at all
    ComponentMismatch,   // components do not partition like the graph's SCCs
    FlagMismatch,        // realScc flag contradicts the recomputed graph
    MissingSubproof,     // real SCC without a subproof
    UnexpectedSubproof,  // trivial component with a subproof
    UnboundVariable,     // right-hand side variable without an index
    Unsupported,         // out-of-scope construct reached the checker
  };
  Kind kind = Kind::NonEmpty;
  std::string message;
  // Subproof indices from the proof root: ruleRemoval/dpTrans/redPairProc
  // descend through index 0, depGraphProc through the 0-based component
  // index.
  std::vector<int> path;
  // Node names from "proof" down, for rendering.
  std::vector<std::string> trail;
};

class CheckResult {
 public:
  enum class Status { Ok, Ko, Unsupported };

  static CheckResult ok() { return CheckResult(Status::Ok, std::nullopt); }
  static CheckResult ko(CheckError e) { return CheckResult(Status::Ko, std::move(e)); }
  static CheckResult unsupported(CheckError e) {
    e.kind = CheckError::Kind::Unsupported;
    return CheckResult(Status::Unsupported, std::move(e));
  }

  Status status() const { return status_; }
  bool is_ok() const { return status_ == Status::Ok; }
  bool is_ko() const { return status_ == Status::Ko; }
  bool is_unsupported() const { return status_ == Status::Unsupported; }

  const CheckError& error() const { return *error_; }  // Ko or Unsupported only

 private:
  CheckResult(Status s, std::optional<CheckError> e) : status_(s), error_(std::move(e)) {}
  Status status_;
  std::optional<CheckError> error_;
};

struct CheckOptions {
  std::ostream* trace = nullptr;  // per-step notes, independent of the verdict
  int jobs = 1;                   // sibling SCC subproofs checked with up to this many threads
};

// Total: never throws, inputs are never mutated. Identical certificates give
// identical results at any jobs setting.
CheckResult check_certificate(const Certificate& c, const CheckOptions& opts = {});

CheckResult check_empty(const Trs& R);
CheckResult check_rule_removal(const Trs& R, const RuleRemoval& step,
                               const CheckOptions& opts = {});
CheckResult check_dp_trans(const Trs& R, const DpTrans& step, const CheckOptions& opts = {});
CheckResult check_dp_proof(const DpProblem& p, const DpProof& proof,
                           const CheckOptions& opts = {});

std::string render_path(const CheckError& e);      // "proof/ruleRemoval"
std::string render_verdict(const CheckResult& r);  // CERTIFIED | REJECTED: ... | UNSUPPORTED: ...

}  // namespace termcert
