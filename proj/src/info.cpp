#include "qdc/info.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace qdc {

namespace {

// Plain -sum x log2 x over nonnegative entries, no normalization checks.
double entropy_of(const std::vector<double>& xs) {
  double h = 0.0;
  for (double x : xs)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

}  // namespace

double shannon_entropy(const std::vector<double>& dist, double tol) {
  double sum = 0.0;
  std::vector<double> clamped;
  clamped.reserve(dist.size());
  for (double x : dist) {
    if (x < -tol)
      throw std::invalid_argument("shannon_entropy: negative probability");
    clamped.push_back(x < 0.0 ? 0.0 : x);
    sum += clamped.back();
  }
  if (std::abs(sum - 1.0) > tol) {
    std::ostringstream msg;
    msg << "shannon_entropy: probabilities sum to " << sum << ", not 1";
    throw std::invalid_argument(msg.str());
  }
  return entropy_of(clamped);
}

double von_neumann_entropy(const CMat& m, double tol) {
  const auto ev = hermitian_eigenvalues(m, tol);
  const double clamp = tol * std::max(1.0, std::abs(m.trace().real()));
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double lambda = ev(i);
    if (lambda < -clamp) {
      std::ostringstream msg;
      msg << "von_neumann_entropy: negative eigenvalue " << lambda << " beyond tolerance";
      throw std::invalid_argument(msg.str());
    }
    if (lambda > 0.0) h -= lambda * std::log2(lambda);
  }
  return h;
}

double von_neumann_entropy(const MultipartiteState& s, double tol) {
  return von_neumann_entropy(s.matrix(), tol);
}

double marginal_entropy(const MultipartiteState& s, const std::vector<std::string>& labels,
                        double tol) {
  return von_neumann_entropy(s.marginal_matrix(labels), tol);
}

Ensemble::Ensemble(std::vector<Item> items, double tol) : items_(std::move(items)) {
  if (items_.empty())
    throw std::invalid_argument("ensemble must be non-empty");
  double sum = 0.0;
  for (Item& item : items_) {
    if (item.probability < -tol)
      throw std::invalid_argument("ensemble probabilities must be nonnegative");
    if (item.probability < 0.0) item.probability = 0.0;
    sum += item.probability;
  }
  if (std::abs(sum - 1.0) > tol) {
    std::ostringstream msg;
    msg << "ensemble probabilities sum to " << sum << ", not 1";
    throw std::invalid_argument(msg.str());
  }
  const auto& first = items_.front().state.parties();
  for (const Item& item : items_) {
    const auto& parties = item.state.parties();
    bool same = parties.size() == first.size();
    for (std::size_t i = 0; same && i < parties.size(); ++i)
      same = parties[i].label == first[i].label && parties[i].dim == first[i].dim;
    if (!same)
      throw std::invalid_argument("ensemble members must share the same party structure");
  }
}

CMat Ensemble::average_matrix() const {
  CMat avg = CMat::Zero(items_.front().state.dim(), items_.front().state.dim());
  for (const Item& item : items_) avg += item.probability * item.state.matrix();
  return avg;
}

MultipartiteState Ensemble::average_state() const {
  return MultipartiteState(parties(), average_matrix());
}

JointDistribution::JointDistribution(Eigen::MatrixXd p, double tol) : p_(std::move(p)) {
  if (p_.rows() == 0 || p_.cols() == 0)
    throw std::invalid_argument("joint distribution must be non-empty");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p_.rows(); ++i)
    for (Eigen::Index j = 0; j < p_.cols(); ++j) {
      if (p_(i, j) < -tol)
        throw std::invalid_argument("joint distribution entries must be nonnegative");
      if (p_(i, j) < 0.0) p_(i, j) = 0.0;
      sum += p_(i, j);
    }
  if (std::abs(sum - 1.0) > tol) {
    std::ostringstream msg;
    msg << "joint distribution sums to " << sum << ", not 1";
    throw std::invalid_argument(msg.str());
  }
}

double mutual_information(const JointDistribution& joint) {
  const Eigen::MatrixXd& p = joint.p();
  std::vector<double> messages(p.rows());
  for (Eigen::Index i = 0; i < p.rows(); ++i) messages[i] = p.row(i).sum();
  double conditional = 0.0;
  for (Eigen::Index m = 0; m < p.cols(); ++m) {
    const double q = p.col(m).sum();
    if (q <= 0.0) continue;
    std::vector<double> given(p.rows());
    for (Eigen::Index i = 0; i < p.rows(); ++i) given[i] = p(i, m) / q;
    conditional += q * entropy_of(given);
  }
  return std::max(0.0, entropy_of(messages) - conditional);
}

double holevo_chi(const Ensemble& e, double tol) {
  double mixed = von_neumann_entropy(e.average_matrix(), tol);
  for (const auto& item : e.items())
    mixed -= item.probability * von_neumann_entropy(item.state, tol);
  return std::max(0.0, mixed);
}

double chi_locc(const Ensemble& e, const Bipartition& cut, double tol) {
  std::set<std::string> all;
  for (const Party& p : e.parties()) all.insert(p.label);
  std::set<std::string> covered;
  for (const auto& l : cut.side_one)
    if (!covered.insert(l).second)
      throw std::invalid_argument("chi_locc: duplicate label in cut: " + l);
  for (const auto& l : cut.side_two)
    if (!covered.insert(l).second)
      throw std::invalid_argument("chi_locc: duplicate label in cut: " + l);
  if (covered != all || cut.side_one.empty() || cut.side_two.empty())
    throw std::invalid_argument("chi_locc: cut must split all parties into two non-empty sides");

  const MultipartiteState avg = e.average_state();
  const double s1 = marginal_entropy(avg, cut.side_one, tol);
  const double s2 = marginal_entropy(avg, cut.side_two, tol);

  double avg_member_one = 0.0, avg_member_two = 0.0;
  for (const auto& item : e.items()) {
    avg_member_one += item.probability * marginal_entropy(item.state, cut.side_one, tol);
    avg_member_two += item.probability * marginal_entropy(item.state, cut.side_two, tol);
  }
  return s1 + s2 - std::max(avg_member_one, avg_member_two);
}

}  // namespace qdc
