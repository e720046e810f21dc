#include "qdc/states.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace qdc {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::string join_labels(const std::vector<std::string>& labels) {
  std::ostringstream out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out << " ";
    out << labels[i];
  }
  return out.str();
}

}  // namespace

MultipartiteState::MultipartiteState(std::vector<Party> parties, CMat matrix, double tol)
    : parties_(std::move(parties)), matrix_(std::move(matrix)) {
  if (parties_.empty())
    throw std::invalid_argument("state needs at least one party");
  std::set<std::string> seen;
  for (const Party& p : parties_) {
    if (p.label.empty())
      throw std::invalid_argument("party labels must be non-empty");
    if (p.dim < 2)
      throw std::invalid_argument("party dimensions must be at least 2");
    if (!seen.insert(p.label).second)
      throw std::invalid_argument("duplicate party label: " + p.label);
  }
  const Eigen::Index expected = dim_product(dims());
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != expected) {
    std::ostringstream msg;
    msg << "dimension mismatch: matrix is " << matrix_.rows() << "x" << matrix_.cols()
        << " but party dimensions require " << expected << "x" << expected;
    throw std::invalid_argument(msg.str());
  }
  if (!is_hermitian(matrix_, tol))
    throw std::invalid_argument("density matrix is not Hermitian within tolerance");
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > tol) {
    std::ostringstream msg;
    msg << "density matrix trace " << trace << " deviates from 1 beyond tolerance";
    throw std::invalid_argument(msg.str());
  }
  const auto ev = hermitian_eigenvalues(matrix_, tol);
  if (ev.minCoeff() < -tol) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite: eigenvalue " << ev.minCoeff();
    throw std::invalid_argument(msg.str());
  }
}

Dims MultipartiteState::dims() const {
  Dims d;
  d.reserve(parties_.size());
  for (const Party& p : parties_) d.push_back(p.dim);
  return d;
}

std::vector<std::string> MultipartiteState::labels() const {
  std::vector<std::string> out;
  out.reserve(parties_.size());
  for (const Party& p : parties_) out.push_back(p.label);
  return out;
}

std::size_t MultipartiteState::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < parties_.size(); ++i)
    if (parties_[i].label == label) return i;
  throw std::invalid_argument("unknown party label: " + label);
}

std::vector<std::size_t> MultipartiteState::indices_of(
    const std::vector<std::string>& labels) const {
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const std::string& l : labels) out.push_back(index_of(l));
  return out;
}

MultipartiteState MultipartiteState::marginal(const std::vector<std::string>& labels) const {
  if (labels.empty())
    throw std::invalid_argument("marginal: need at least one party");
  auto keep = indices_of(labels);
  std::sort(keep.begin(), keep.end());
  std::vector<Party> kept;
  for (std::size_t k : keep) kept.push_back(parties_[k]);
  return MultipartiteState(std::move(kept), partial_trace(matrix_, dims(), keep));
}

CMat MultipartiteState::marginal_matrix(const std::vector<std::string>& labels) const {
  return marginal(labels).matrix();
}

MultipartiteState make_state(std::vector<Party> parties, CMat matrix, double tol) {
  return MultipartiteState(std::move(parties), std::move(matrix), tol);
}

void DenseCodingLayout::validate() const {
  if (senders.empty())
    throw std::invalid_argument("layout needs at least one sender");
  if (receivers.empty() || receivers.size() > 2)
    throw std::invalid_argument("layout needs one or two receivers");
  std::set<std::string> seen;
  for (const auto& s : senders)
    if (!seen.insert(s).second)
      throw std::invalid_argument("duplicate label in layout: " + s);
  for (const auto& r : receivers)
    if (!seen.insert(r).second)
      throw std::invalid_argument("duplicate label in layout: " + r);
  for (const auto& [sender, receiver] : routing) {
    if (std::find(senders.begin(), senders.end(), sender) == senders.end())
      throw std::invalid_argument("routing key is not a sender: " + sender);
    if (std::find(receivers.begin(), receivers.end(), receiver) == receivers.end())
      throw std::invalid_argument("routing target is not a receiver: " + receiver);
  }
  if (receivers.size() == 2)
    for (const auto& s : senders)
      if (routing.find(s) == routing.end())
        throw std::invalid_argument("two-receiver layout must route every sender; missing: " + s);
}

void DenseCodingLayout::validate_against(const MultipartiteState& s) const {
  validate();
  std::set<std::string> layout_labels(senders.begin(), senders.end());
  layout_labels.insert(receivers.begin(), receivers.end());
  std::set<std::string> state_labels;
  for (const Party& p : s.parties()) state_labels.insert(p.label);
  if (layout_labels != state_labels)
    throw std::invalid_argument(
        "layout labels {" + join_labels({layout_labels.begin(), layout_labels.end()}) +
        "} do not partition state labels {" +
        join_labels({state_labels.begin(), state_labels.end()}) + "}");
}

std::string DenseCodingLayout::receiver_for(const std::string& sender) const {
  const auto it = routing.find(sender);
  if (it != routing.end()) return it->second;
  if (receivers.size() == 1) return receivers.front();
  throw std::invalid_argument("no routing entry for sender: " + sender);
}

Bipartition DenseCodingLayout::senders_receivers_cut() const {
  return Bipartition{senders, receivers};
}

Bipartition DenseCodingLayout::routing_split() const {
  if (receivers.size() != 2)
    throw std::invalid_argument("routing split requires a two-receiver layout");
  Bipartition cut;
  for (const auto& s : senders)
    (receiver_for(s) == receivers[0] ? cut.side_one : cut.side_two).push_back(s);
  cut.side_one.push_back(receivers[0]);
  cut.side_two.push_back(receivers[1]);
  return cut;
}

DenseCodingLayout single_receiver_layout(std::vector<std::string> senders,
                                         std::string receiver) {
  DenseCodingLayout layout;
  layout.senders = std::move(senders);
  layout.receivers = {std::move(receiver)};
  layout.validate();
  return layout;
}

DenseCodingLayout two_receiver_layout(std::vector<std::string> senders,
                                      std::array<std::string, 2> receivers,
                                      std::map<std::string, std::string> routing) {
  DenseCodingLayout layout;
  layout.senders = std::move(senders);
  layout.receivers = {std::move(receivers[0]), std::move(receivers[1])};
  layout.routing = std::move(routing);
  layout.validate();
  return layout;
}

CVec bell_ket(int k) {
  CVec v = CVec::Zero(4);
  switch (k) {
    case 0: v(1) = kInvSqrt2; v(2) = -kInvSqrt2; break;
    case 1: v(1) = kInvSqrt2; v(2) = kInvSqrt2; break;
    case 2: v(0) = kInvSqrt2; v(3) = -kInvSqrt2; break;
    case 3: v(0) = kInvSqrt2; v(3) = kInvSqrt2; break;
    default:
      throw std::invalid_argument("bell index must be in 0..3");
  }
  return v;
}

MultipartiteState bell(int k, const std::array<std::string, 2>& labels) {
  return MultipartiteState({{labels[0], 2}, {labels[1], 2}}, outer(bell_ket(k)));
}

MultipartiteState singlet() { return bell(0); }

MultipartiteState werner(double p, const std::array<std::string, 2>& labels) {
  if (p < -1.0 / 3.0 || p > 1.0)
    throw std::invalid_argument("werner parameter must lie in [-1/3, 1]");
  CMat m = p * outer(bell_ket(0)) + (1.0 - p) / 4.0 * CMat::Identity(4, 4);
  return MultipartiteState({{labels[0], 2}, {labels[1], 2}}, std::move(m));
}

std::vector<std::string> ghz_labels(int n) {
  if (n == 2) return {"A", "B"};
  std::vector<std::string> labels;
  for (int i = 1; i <= n - 2; ++i) labels.push_back("A" + std::to_string(i));
  labels.push_back("B1");
  labels.push_back("B2");
  return labels;
}

namespace {

CVec ghz_ket(int n) {
  if (n < 2 || n > 10)
    throw std::invalid_argument("ghz size must be in 2..10");
  const Eigen::Index dim = Eigen::Index(1) << n;
  CVec v = CVec::Zero(dim);
  v(0) = kInvSqrt2;
  v(dim - 1) = kInvSqrt2;
  return v;
}

std::vector<Party> qubit_parties(const std::vector<std::string>& labels) {
  std::vector<Party> parties;
  parties.reserve(labels.size());
  for (const auto& l : labels) parties.push_back({l, 2});
  return parties;
}

}  // namespace

MultipartiteState ghz(int n) {
  return MultipartiteState(qubit_parties(ghz_labels(n)), outer(ghz_ket(n)));
}

MultipartiteState noisy_ghz(int n, double p) {
  const CVec v = ghz_ket(n);
  const Eigen::Index dim = v.size();
  const double lo = -1.0 / (static_cast<double>(dim) - 1.0);
  if (p < lo || p > 1.0)
    throw std::invalid_argument("noisy ghz parameter is outside the positive range");
  CMat m = p * outer(v) + (1.0 - p) / static_cast<double>(dim) * CMat::Identity(dim, dim);
  return MultipartiteState(qubit_parties(ghz_labels(n)), std::move(m));
}

DenseCodingLayout ghz_layout(int n) {
  if (n < 3)
    throw std::invalid_argument("two-receiver ghz layout needs n >= 3");
  const auto labels = ghz_labels(n);
  std::vector<std::string> senders(labels.begin(), labels.end() - 2);
  std::map<std::string, std::string> routing;
  routing[senders[0]] = "B1";
  for (std::size_t i = 1; i < senders.size(); ++i) routing[senders[i]] = "B2";
  return two_receiver_layout(std::move(senders), {"B1", "B2"}, std::move(routing));
}

MultipartiteState smolin() {
  CMat m = CMat::Zero(16, 16);
  for (int k = 0; k < 4; ++k) {
    const CMat proj = outer(bell_ket(k));
    m += kron(proj, proj) / 4.0;
  }
  return MultipartiteState(qubit_parties({"A1", "A2", "B1", "B2"}), std::move(m));
}

MultipartiteState frank_state(const std::array<std::string, 4>& labels) {
  CVec v = CVec::Zero(16);
  v(0b0000) = 0.5;
  v(0b0101) = 0.5;
  v(0b1000) = 0.5;
  v(0b1110) = 0.5;
  return MultipartiteState(qubit_parties({labels[0], labels[1], labels[2], labels[3]}),
                           outer(v));
}

MultipartiteState tensor_states(const MultipartiteState& a, const MultipartiteState& b) {
  std::vector<Party> parties = a.parties();
  for (const Party& p : b.parties()) {
    for (const Party& q : parties)
      if (q.label == p.label)
        throw std::invalid_argument("tensor_states: label collision: " + p.label);
    parties.push_back(p);
  }
  return MultipartiteState(std::move(parties), kron(a.matrix(), b.matrix()));
}

MultipartiteState permute_parties(const MultipartiteState& s,
                                  const std::vector<std::size_t>& perm) {
  if (perm.size() != s.party_count())
    throw std::invalid_argument("permute_parties: permutation length mismatch");
  std::vector<Party> parties;
  parties.reserve(perm.size());
  for (std::size_t i : perm) {
    if (i >= s.party_count())
      throw std::invalid_argument("permute_parties: index out of range");
    parties.push_back(s.parties()[i]);
  }
  return MultipartiteState(std::move(parties),
                           permute_tensor_factors(s.matrix(), s.dims(), perm));
}

}  // namespace qdc
