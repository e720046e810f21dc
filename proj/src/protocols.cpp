#include "qdc/protocols.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qdc/random.hpp"

namespace qdc {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

CMat matrix_power(const CMat& m, Eigen::Index k) {
  CMat out = CMat::Identity(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < k; ++i) out = out * m;
  return out;
}

// Parity projectors on a qubit pair: even span {|00>, |11>}, odd the rest.
std::vector<CMat> parity_projectors() {
  CMat even = CMat::Zero(4, 4);
  even(0, 0) = 1.0;
  even(3, 3) = 1.0;
  CMat odd = CMat::Identity(4, 4) - even;
  return {even, odd};
}

CVec two_qubit_ket(int a, int b, Complex amp_a, Complex amp_b) {
  CVec v = CVec::Zero(4);
  v(a) += amp_a;
  v(b) += amp_b;
  return v;
}

// Sign basis on a qubit pair, ordered so that the subspace selected by the
// announced parity comes first: outcome index 0/1 carries the sign bit.
std::vector<CMat> sign_projectors(int parity) {
  CVec e_plus = two_qubit_ket(0, 3, kInvSqrt2, kInvSqrt2);
  CVec e_minus = two_qubit_ket(0, 3, kInvSqrt2, -kInvSqrt2);
  CVec g_plus = two_qubit_ket(1, 2, kInvSqrt2, kInvSqrt2);
  CVec g_minus = two_qubit_ket(1, 2, kInvSqrt2, -kInvSqrt2);
  std::vector<CVec> basis;
  if (parity == 0) {
    basis = {e_plus, e_minus, g_plus, g_minus};
  } else {
    basis = {g_plus, g_minus, e_plus, e_minus};
  }
  std::vector<CMat> projectors;
  projectors.reserve(4);
  for (const CVec& v : basis) projectors.push_back(outer(v));
  return projectors;
}

}  // namespace

UnitarySet weyl_set(Eigen::Index d) {
  if (d < 2) throw std::invalid_argument("weyl_set: dimension must be at least 2");
  CMat shift = CMat::Zero(d, d);
  for (Eigen::Index c = 0; c < d; ++c) shift((c + 1) % d, c) = 1.0;
  CMat clock = CMat::Zero(d, d);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    clock(k, k) = std::polar(1.0, step * static_cast<double>(k));
  }
  UnitarySet set;
  set.dim = d;
  set.members.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index a = 0; a < d; ++a) {
    CMat xa = matrix_power(shift, a);
    for (Eigen::Index b = 0; b < d; ++b) {
      set.members.push_back(xa * matrix_power(clock, b));
    }
  }
  return set;
}

void validate_unitary_set(const UnitarySet& set, double tol) {
  const Eigen::Index d = set.dim;
  if (d < 1) throw std::invalid_argument("unitary set: nonpositive dimension");
  if (set.members.size() != static_cast<std::size_t>(d * d)) {
    throw std::invalid_argument("unitary set: expected d^2 members");
  }
  const CMat id = CMat::Identity(d, d);
  for (const CMat& w : set.members) {
    if (w.rows() != d || w.cols() != d) {
      throw std::invalid_argument("unitary set: member dimension mismatch");
    }
    if ((dagger(w) * w - id).cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("unitary set: member is not unitary");
    }
  }
  for (std::size_t j = 0; j < set.members.size(); ++j) {
    for (std::size_t k = j; k < set.members.size(); ++k) {
      const double overlap = std::abs((dagger(set.members[j]) * set.members[k]).trace());
      const double expected = (j == k) ? static_cast<double>(d) : 0.0;
      if (std::abs(overlap - expected) > tol) {
        throw std::invalid_argument("unitary set: trace orthogonality fails");
      }
    }
  }
  // (1/d) sum_j W_j^dag X W_j must equal Tr[X] I for arbitrary X.
  std::mt19937_64 rng(0x5e7c0de);
  for (int trial = 0; trial < 3; ++trial) {
    CMat probe = ginibre(d, rng);
    CMat twirled = CMat::Zero(d, d);
    for (const CMat& w : set.members) twirled += dagger(w) * probe * w;
    twirled /= static_cast<double>(d);
    CMat expected = probe.trace() * id;
    const double scale = 1.0 + probe.cwiseAbs().maxCoeff();
    if ((twirled - expected).cwiseAbs().maxCoeff() > tol * scale) {
      throw std::invalid_argument("unitary set: trace rule fails");
    }
  }
}

const std::array<CMat, 4>& pauli_matrices() {
  static const std::array<CMat, 4> paulis = [] {
    std::array<CMat, 4> p;
    p[0] = CMat::Identity(2, 2);
    p[1] = CMat::Zero(2, 2);
    p[1](0, 1) = 1.0;
    p[1](1, 0) = 1.0;
    p[2] = CMat::Zero(2, 2);
    p[2](0, 1) = Complex(0.0, -1.0);
    p[2](1, 0) = Complex(0.0, 1.0);
    p[3] = CMat::Zero(2, 2);
    p[3](0, 0) = 1.0;
    p[3](1, 1) = -1.0;
    return p;
  }();
  return paulis;
}

Ensemble encode_ensemble(const MultipartiteState& s, const DenseCodingLayout& layout,
                         const std::vector<UnitarySet>& sets,
                         const std::vector<std::vector<double>>& probs,
                         std::size_t member_cap) {
  layout.validate_against(s);
  const std::size_t n_senders = layout.senders.size();
  if (sets.size() != n_senders || probs.size() != n_senders) {
    throw std::invalid_argument("encode_ensemble: one set and one distribution per sender");
  }
  const Dims dims = s.dims();
  std::size_t total = 1;
  for (std::size_t k = 0; k < n_senders; ++k) {
    const std::size_t party = s.index_of(layout.senders[k]);
    if (sets[k].dim != dims[party]) {
      throw std::invalid_argument("encode_ensemble: set dimension does not match sender " +
                                  layout.senders[k]);
    }
    if (probs[k].size() != sets[k].members.size()) {
      throw std::invalid_argument("encode_ensemble: distribution size does not match set");
    }
    double sum = 0.0;
    for (double p : probs[k]) {
      if (p < -kDefaultTol) {
        throw std::invalid_argument("encode_ensemble: negative probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw std::invalid_argument("encode_ensemble: distribution does not sum to 1");
    }
    if (probs[k].empty() || total > member_cap / probs[k].size()) {
      total = member_cap + 1;  // saturate, checked below
    } else {
      total *= probs[k].size();
    }
  }
  if (total > member_cap) {
    std::ostringstream msg;
    msg << "encode_ensemble: ensemble size exceeds cap of " << member_cap << " members";
    throw std::invalid_argument(msg.str());
  }

  std::vector<std::vector<CMat>> embedded(n_senders);
  for (std::size_t k = 0; k < n_senders; ++k) {
    const std::size_t party = s.index_of(layout.senders[k]);
    embedded[k].reserve(sets[k].members.size());
    for (const CMat& w : sets[k].members) {
      embedded[k].push_back(embed_on_factors(w, dims, {party}));
    }
  }

  std::vector<Ensemble::Item> items;
  items.reserve(total);
  std::vector<std::size_t> tuple(n_senders, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    CMat u = CMat::Identity(s.dim(), s.dim());
    double p = 1.0;
    for (std::size_t k = 0; k < n_senders; ++k) {
      u = embedded[k][tuple[k]] * u;
      p *= std::max(probs[k][tuple[k]], 0.0);
    }
    CMat encoded = u * s.matrix() * dagger(u);
    items.push_back({p, MultipartiteState(s.parties(), std::move(encoded))});
    for (std::size_t k = n_senders; k-- > 0;) {
      if (++tuple[k] < probs[k].size()) break;
      tuple[k] = 0;
    }
  }
  return Ensemble(std::move(items));
}

std::vector<ProjectiveBranch> projective_measure(const MultipartiteState& s,
                                                 const std::vector<std::string>& parties,
                                                 const std::vector<CMat>& projectors,
                                                 double tol) {
  const std::vector<std::size_t> targets = s.indices_of(parties);
  const Dims dims = s.dims();
  Eigen::Index block = 1;
  for (std::size_t t : targets) block *= dims[t];
  if (projectors.empty()) throw std::invalid_argument("projective_measure: no projectors");
  CMat sum = CMat::Zero(block, block);
  for (const CMat& p : projectors) {
    if (p.rows() != block || p.cols() != block) {
      throw std::invalid_argument("projective_measure: projector dimension mismatch");
    }
    if (!is_hermitian(p, tol)) {
      throw std::invalid_argument("projective_measure: projector is not Hermitian");
    }
    if ((p * p - p).cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("projective_measure: projector is not idempotent");
    }
    sum += p;
  }
  if ((sum - CMat::Identity(block, block)).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument(
        "projective_measure: incomplete projector set, members do not sum to identity");
  }

  std::vector<ProjectiveBranch> branches;
  for (std::size_t j = 0; j < projectors.size(); ++j) {
    CMat embedded = embed_on_factors(projectors[j], dims, targets);
    CMat unnormalized = embedded * s.matrix() * embedded;
    const double p = unnormalized.trace().real();
    if (p <= tol) continue;
    CMat post = unnormalized / p;
    post = (post + dagger(post)) / 2.0;
    branches.push_back({static_cast<int>(j), p, MultipartiteState(s.parties(), std::move(post))});
  }
  return branches;
}

std::vector<CVec> ghz4_listed_kets() {
  struct Entry {
    int first;
    int second;
    double sign;
  };
  // Index pairs in the grouped order (B1 pair, B2 pair).
  const std::array<Entry, 8> entries = {{{0, 15, 1.0},
                                         {0, 15, -1.0},
                                         {2, 13, 1.0},
                                         {2, 13, -1.0},
                                         {8, 7, 1.0},
                                         {8, 7, -1.0},
                                         {10, 5, 1.0},
                                         {10, 5, -1.0}}};
  std::vector<CVec> kets;
  kets.reserve(8);
  for (const Entry& e : entries) {
    CVec v = CVec::Zero(16);
    v(e.first) = kInvSqrt2;
    v(e.second) = e.sign * kInvSqrt2;
    kets.push_back(v);
  }
  return kets;
}

Ensemble ghz4_ensemble() {
  const std::vector<Party> parties = {{"B1a", 2}, {"B1b", 2}, {"B2a", 2}, {"B2b", 2}};
  const Dims dims = {2, 2, 2, 2};
  CVec base = CVec::Zero(16);
  base(0) = kInvSqrt2;
  base(15) = kInvSqrt2;
  const auto& paulis = pauli_matrices();
  // Message m encodes as (U1 on the transmitted B1 qubit, U2 on the
  // transmitted B2 qubit) with U1 cycling I,Z,I,Z,X,Y,X,Y and U2 = X on the
  // odd pairs of messages.
  const std::array<int, 8> u1_index = {0, 3, 0, 3, 1, 2, 1, 2};
  std::vector<Ensemble::Item> items;
  items.reserve(8);
  for (int m = 0; m < 8; ++m) {
    CMat u1 = embed_on_factors(paulis[static_cast<std::size_t>(u1_index[static_cast<std::size_t>(m)])],
                               dims, {0});
    CMat u2 = embed_on_factors(((m >> 1) & 1) ? paulis[1] : paulis[0], dims, {2});
    CVec ket = u1 * (u2 * base);
    items.push_back({1.0 / 8.0, MultipartiteState(parties, outer(ket))});
  }
  return Ensemble(std::move(items));
}

std::vector<MeasurementOutcomeRecord> ghz4_locc_decode(int message) {
  if (message < 0 || message > 7) {
    throw std::invalid_argument("ghz4_locc_decode: message must be in 0..7");
  }
  const Ensemble ensemble = ghz4_ensemble();
  const MultipartiteState& start = ensemble.items()[static_cast<std::size_t>(message)].state;
  const std::vector<std::string> b1_pair = {"B1a", "B1b"};
  const std::vector<std::string> b2_pair = {"B2a", "B2b"};
  const std::vector<CMat> parity = parity_projectors();

  std::vector<MeasurementOutcomeRecord> records;
  for (const ProjectiveBranch& br1 : projective_measure(start, b1_pair, parity)) {
    const int r1 = br1.projector_index;
    for (const ProjectiveBranch& br2 : projective_measure(br1.post_state, b2_pair, parity)) {
      const int r2 = br2.projector_index;
      // Both parities are now public; each side measures the sign basis
      // matching its own announced parity.
      for (const ProjectiveBranch& br3 :
           projective_measure(br2.post_state, b1_pair, sign_projectors(r1))) {
        const int i3 = br3.projector_index;
        for (const ProjectiveBranch& br4 :
             projective_measure(br3.post_state, b2_pair, sign_projectors(r2))) {
          const int i4 = br4.projector_index;
          const int decoded = 4 * r1 + 2 * r2 + ((i3 ^ i4) & 1);
          const double probability =
              br1.probability * br2.probability * br3.probability * br4.probability;
          records.push_back({message,
                             {{1, "B1", r1, br1.probability},
                              {2, "B2", r2, br2.probability},
                              {3, "B1", i3, br3.probability},
                              {3, "B2", i4, br4.probability}},
                             decoded,
                             br4.post_state,
                             probability});
        }
      }
    }
  }
  return records;
}

JointDistribution ghz4_transcript_distribution() {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(8, 64);
  for (int m = 0; m < 8; ++m) {
    for (const MeasurementOutcomeRecord& rec : ghz4_locc_decode(m)) {
      int col = 0;
      for (const RoundOutcome& out : rec.outcomes) {
        col = col * ((out.round == 3) ? 4 : 2) + out.projector_index;
      }
      p(m, col) += rec.probability / 8.0;
    }
  }
  return JointDistribution(p);
}

}  // namespace qdc
