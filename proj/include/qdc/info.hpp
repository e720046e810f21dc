#pragma once

#include "qdc/states.hpp"

// Entropies and information bounds. Everything is reported in bits.

namespace qdc {

double shannon_entropy(const std::vector<double>& dist, double tol = kDefaultTol);

// Entropy of a Hermitian positive matrix; eigenvalues in [-tol*max(1,tr), 0)
// are clamped to zero, anything lower is rejected.
double von_neumann_entropy(const CMat& m, double tol = kDefaultTol);
double von_neumann_entropy(const MultipartiteState& s, double tol = kDefaultTol);
double marginal_entropy(const MultipartiteState& s, const std::vector<std::string>& labels,
                        double tol = kDefaultTol);

// Probability-weighted states on a shared party structure.
class Ensemble {
 public:
  struct Item {
    double probability;
    MultipartiteState state;
  };

  Ensemble(std::vector<Item> items, double tol = kDefaultTol);

  const std::vector<Item>& items() const { return items_; }
  const std::vector<Party>& parties() const { return items_.front().state.parties(); }
  CMat average_matrix() const;
  MultipartiteState average_state() const;

 private:
  std::vector<Item> items_;
};

// Joint probabilities, rows indexed by message, columns by outcome.
class JointDistribution {
 public:
  explicit JointDistribution(Eigen::MatrixXd p, double tol = kDefaultTol);
  const Eigen::MatrixXd& p() const { return p_; }

 private:
  Eigen::MatrixXd p_;
};

double mutual_information(const JointDistribution& joint);

// S(avg) - sum_i p_i S(rho_i).
double holevo_chi(const Ensemble& e, double tol = kDefaultTol);

// Two-receiver local analogue across the cut:
// S(avg^1) + S(avg^2) - max over sides Z of sum_i p_i S(rho_i^Z).
double chi_locc(const Ensemble& e, const Bipartition& cut, double tol = kDefaultTol);

}  // namespace qdc
