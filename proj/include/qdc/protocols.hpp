#pragma once

#include "qdc/info.hpp"

// Unitary encoding sets, ensemble generation, projective measurement and the
// exact two-receiver decoding protocol for the four-qubit GHZ state.

namespace qdc {

// d^2 pairwise trace-orthogonal unitaries on a d-dimensional factor whose
// uniform twirl maps any operator X to Tr[X] I / d.
struct UnitarySet {
  Eigen::Index dim;
  std::vector<CMat> members;
};

// Shift-and-clock construction: member a*d + b is X^a Z^b with
// X|k> = |k+1 mod d> and Z|k> = exp(2 pi i k / d)|k>.
UnitarySet weyl_set(Eigen::Index d);

// Checks the defining properties (unitarity, trace orthogonality, twirl rule)
// and throws invalid_argument on the first violation.
void validate_unitary_set(const UnitarySet& set, double tol = kDefaultTol);

const std::array<CMat, 4>& pauli_matrices();  // I, X, Y, Z

// Ensemble over all sender index tuples: member (i1..iN) applies
// sets[k].members[ik] on sender k, with product probabilities.
Ensemble encode_ensemble(const MultipartiteState& s, const DenseCodingLayout& layout,
                         const std::vector<UnitarySet>& sets,
                         const std::vector<std::vector<double>>& probs,
                         std::size_t member_cap = 4096);

struct ProjectiveBranch {
  int projector_index;
  double probability;
  MultipartiteState post_state;
};

// Projective measurement on the listed parties. Projectors must be Hermitian,
// idempotent and sum to the identity on their factor; zero-probability
// branches are omitted.
std::vector<ProjectiveBranch> projective_measure(const MultipartiteState& s,
                                                 const std::vector<std::string>& parties,
                                                 const std::vector<CMat>& projectors,
                                                 double tol = kDefaultTol);

// The eight four-qubit message states shared by the two receivers after
// encoding the GHZ state, on parties B1a B1b B2a B2b (first pair held by the
// first receiver). Message m applies (U1, U2) with
// U1 = [I,Z,I,Z,X,Y,X,Y][m] on B1a and U2 = X when bit 1 of m is set, on B2a.
Ensemble ghz4_ensemble();

// The same eight states written out directly, indexed by message.
std::vector<CVec> ghz4_listed_kets();

struct RoundOutcome {
  int round;         // 1, 2 (parity measurements), 3 (sign measurements)
  std::string side;  // "B1" or "B2"
  int projector_index;
  double probability;  // conditional on the branch so far
};

struct MeasurementOutcomeRecord {
  int message;
  std::vector<RoundOutcome> outcomes;
  int decoded;
  MultipartiteState post_state;
  double probability;  // product of the round probabilities
};

// Exact branch enumeration of the decoding protocol: each receiver first
// measures the parity projectors {|00><00|+|11><11|, |01><01|+|10><10|} on
// its pair and announces the result; both then measure in the sign basis
// chosen by the announced parities. Decoded value is
// 4*parity(B1) + 2*parity(B2) + (sign(B1) xor sign(B2)).
std::vector<MeasurementOutcomeRecord> ghz4_locc_decode(int message);

// Joint distribution of (message, complete measurement transcript) with
// uniform messages; rows are messages, columns enumerate transcripts.
JointDistribution ghz4_transcript_distribution();

}  // namespace qdc
