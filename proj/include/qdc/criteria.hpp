#pragma once

#include <functional>

#include "qdc/capacities.hpp"

// Entanglement criteria and the shell classification of dense-coding
// usefulness. Verdicts are three-valued; nothing is certified beyond what the
// computed witnesses actually establish.

namespace qdc {

struct PptResult {
  bool ppt;
  double min_eigenvalue;  // of the partially transposed matrix
};

// Positivity of the partial transpose across the cut. PPT is necessary for
// separability; a negative eigenvalue certifies entanglement.
PptResult is_ppt(const MultipartiteState& s, const Bipartition& cut,
                 double tol = kDefaultTol);

struct ReductionResult {
  bool violated;
  double min_eigenvalue_side_one;  // of rho^1 x I - rho
  double min_eigenvalue_side_two;  // of I x rho^2 - rho
};

// Reduction criterion across the cut; violation certifies distillability.
ReductionResult reduction_violated(const MultipartiteState& s, const Bipartition& cut,
                                   double tol = kDefaultTol);

enum class Verdict { yes, no, unknown };
std::string verdict_name(Verdict v);

// One classification criterion: its outcome, the number that produced it and
// the operation the number came from.
struct Evidence {
  Verdict verdict;
  double value;
  std::string source;
};

enum class Shell {
  SeparableOrPpt,    // PPT across the senders:receivers cut
  NptUndetermined,   // NPT but no distillability witness
  Distillable,       // witnessed distillable, no dense-coding advantage
  GlobalDenseCoding, // positive excess with both receivers together
  LoccDenseCoding,   // advantage certified for separated receivers
  LoDenseCoding,     // advantage without any receiver communication
};
std::string shell_name(Shell s);

struct CutResult {
  Bipartition cut;
  PptResult ppt;
  ReductionResult reduction;
};

struct ClassificationReport {
  Shell shell;
  std::map<std::string, Evidence> evidence;
  std::vector<CutResult> cut_results;
};

// A named decoding protocol with a known achieved rate, applicable to states
// recognized by its matcher.
struct Protocol {
  std::string name;
  double bits;
  std::function<bool(const MultipartiteState&, const DenseCodingLayout&)> matches;
};

class ProtocolRegistry {
 public:
  void add(Protocol p);
  const std::vector<Protocol>& protocols() const { return protocols_; }

  // First protocol that matches and beats the baseline by more than tol.
  const Protocol* find_achieving(const MultipartiteState& s, const DenseCodingLayout& layout,
                                 double baseline, double tol = kDefaultTol) const;

  // Built-in protocols; currently the four-qubit GHZ decoding scheme,
  // matched by local-unitary invariants (purity and all bipartition spectra).
  static const ProtocolRegistry& standard();

 private:
  std::vector<Protocol> protocols_;
};

// All 2^(n-1) - 1 bipartitions; side one always contains the first party.
std::vector<Bipartition> all_bipartitions(const MultipartiteState& s);

// Decision ladder across the senders:receivers cut:
//   PPT                                   -> SeparableOrPpt
//   lo_capacity beats the baseline        -> LoDenseCoding
//   no distillability witness             -> NptUndetermined
//   witnessed, excess <= 0                -> Distillable
//   excess > 0, registered protocol found -> LoccDenseCoding
//   excess > 0 otherwise                  -> GlobalDenseCoding
// Single-receiver layouts stop at GlobalDenseCoding; the locc verdict can be
// "no" (bound at or below baseline) or "unknown" (bound above, no protocol).
ClassificationReport classify(const MultipartiteState& s, const DenseCodingLayout& layout,
                              const ProtocolRegistry& registry = ProtocolRegistry::standard(),
                              bool all_cuts = false, double tol = kDefaultTol);

}  // namespace qdc
