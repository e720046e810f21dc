#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qdc/linalg.hpp"

namespace qdc {

struct Party {
  std::string label;
  Eigen::Index dim;
};

// Density operator together with an ordered list of labeled, dimensioned
// parties. Construction validates Hermiticity, positivity, unit trace and
// dimension bookkeeping; instances are immutable afterwards.
class MultipartiteState {
 public:
  MultipartiteState(std::vector<Party> parties, CMat matrix, double tol = kDefaultTol);

  const std::vector<Party>& parties() const { return parties_; }
  const CMat& matrix() const { return matrix_; }
  Dims dims() const;
  Eigen::Index dim() const { return matrix_.rows(); }
  std::size_t party_count() const { return parties_.size(); }
  std::vector<std::string> labels() const;

  std::size_t index_of(const std::string& label) const;
  std::vector<std::size_t> indices_of(const std::vector<std::string>& labels) const;

  // Reduced state on the given parties; kept parties stay in this state's
  // party order regardless of the order they are requested in.
  MultipartiteState marginal(const std::vector<std::string>& labels) const;
  CMat marginal_matrix(const std::vector<std::string>& labels) const;

 private:
  std::vector<Party> parties_;
  CMat matrix_;
};

MultipartiteState make_state(std::vector<Party> parties, CMat matrix,
                             double tol = kDefaultTol);

// Unordered two-sided split of a state's parties, by label.
struct Bipartition {
  std::vector<std::string> side_one;
  std::vector<std::string> side_two;
};

// Who encodes, who receives, and which receiver each sender transmits to.
struct DenseCodingLayout {
  std::vector<std::string> senders;
  std::vector<std::string> receivers;           // one or two labels
  std::map<std::string, std::string> routing;   // sender -> receiver

  void validate() const;
  void validate_against(const MultipartiteState& s) const;
  std::string receiver_for(const std::string& sender) const;
  Bipartition senders_receivers_cut() const;
  // Two-receiver split: {senders routed to B1} + B1 versus the rest.
  Bipartition routing_split() const;
};

DenseCodingLayout single_receiver_layout(std::vector<std::string> senders,
                                         std::string receiver);
DenseCodingLayout two_receiver_layout(std::vector<std::string> senders,
                                      std::array<std::string, 2> receivers,
                                      std::map<std::string, std::string> routing);

// Bell pair conventions: k = 0 -> (|01>-|10>)/sqrt(2), 1 -> (|01>+|10>)/sqrt(2),
// 2 -> (|00>-|11>)/sqrt(2), 3 -> (|00>+|11>)/sqrt(2).
CVec bell_ket(int k);
MultipartiteState bell(int k, const std::array<std::string, 2>& labels = {"A", "B"});
MultipartiteState singlet();

// p |psi-><psi-| + (1-p) I/4; positive exactly for p in [-1/3, 1].
MultipartiteState werner(double p, const std::array<std::string, 2>& labels = {"A", "B"});

std::vector<std::string> ghz_labels(int n);
MultipartiteState ghz(int n);
// p |GHZ><GHZ| + (1-p) I/2^n; positive exactly for p in [-1/(2^n-1), 1].
MultipartiteState noisy_ghz(int n, double p);
// Two-sender/two-receiver layout for ghz(n), n >= 3: A1 -> B1, the rest -> B2.
DenseCodingLayout ghz_layout(int n);

// Equal mixture of the four two-qubit Bell projectors, each paired with an
// identical copy: (1/4) sum_k P_k x P_k on parties A1 A2 B1 B2.
MultipartiteState smolin();

// Pure four-qubit state (|0000> + |0101> + |1000> + |1110>)/2. The labels
// argument assigns roles to ket positions; the default reads the ket order
// as A1 A2 B1 B2, the interleaved reading is available via
// {"A1", "B1", "A2", "B2"}.
MultipartiteState frank_state(
    const std::array<std::string, 4>& labels = {"A1", "A2", "B1", "B2"});

MultipartiteState tensor_states(const MultipartiteState& a, const MultipartiteState& b);

// Reorder parties: new position i holds old party perm[i]. Labels travel with
// their factors, so labeled marginals are unchanged.
MultipartiteState permute_parties(const MultipartiteState& s,
                                  const std::vector<std::size_t>& perm);

}  // namespace qdc
