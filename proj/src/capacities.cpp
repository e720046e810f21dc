#include "qdc/capacities.hpp"

#include <cmath>

#include "qdc/protocols.hpp"

namespace qdc {

namespace {

double log2_dim(const MultipartiteState& s, const std::string& label) {
  return std::log2(static_cast<double>(s.parties()[s.index_of(label)].dim));
}

// Per-side pieces of the local-operations capacity: baseline and raw excess
// of the routed marginal with its single receiver.
struct SidePiece {
  double baseline;
  double raw_excess;
};

std::array<SidePiece, 2> lo_pieces(const MultipartiteState& s,
                                   const DenseCodingLayout& layout) {
  const Bipartition split = layout.routing_split();
  std::array<SidePiece, 2> pieces{};
  const std::array<const std::vector<std::string>*, 2> sides{&split.side_one,
                                                             &split.side_two};
  for (int k = 0; k < 2; ++k) {
    const MultipartiteState side = s.marginal(*sides[k]);
    double baseline = 0.0;
    for (const auto& label : *sides[k])
      if (label != layout.receivers[k]) baseline += log2_dim(s, label);
    const double excess =
        marginal_entropy(side, {layout.receivers[k]}) - von_neumann_entropy(side);
    pieces[k] = {baseline, excess};
  }
  return pieces;
}

}  // namespace

double classical_baseline(const MultipartiteState& s, const DenseCodingLayout& layout) {
  layout.validate_against(s);
  double total = 0.0;
  for (const auto& sender : layout.senders) total += log2_dim(s, sender);
  return total;
}

namespace {

CapacityReport base_report(const MultipartiteState& s, const DenseCodingLayout& layout) {
  CapacityReport report;
  report.layout = layout;
  report.classical_baseline = classical_baseline(s, layout);
  report.state_entropy = von_neumann_entropy(s);
  report.receivers_entropy = marginal_entropy(s, layout.receivers);
  report.raw_excess = report.receivers_entropy - report.state_entropy;
  report.capacity = report.classical_baseline + std::max(0.0, report.raw_excess);
  return report;
}

}  // namespace

CapacityReport capacity_single_receiver(const MultipartiteState& s,
                                        const DenseCodingLayout& layout) {
  layout.validate_against(s);
  if (layout.receivers.size() != 1)
    throw std::invalid_argument("capacity_single_receiver needs a single-receiver layout");
  return base_report(s, layout);
}

CapacityReport capacity_global(const MultipartiteState& s, const DenseCodingLayout& layout) {
  layout.validate_against(s);
  if (layout.receivers.size() != 2)
    throw std::invalid_argument("capacity_global needs a two-receiver layout");
  return base_report(s, layout);
}

SplitEntropies split_entropies(const MultipartiteState& s, const DenseCodingLayout& layout) {
  layout.validate_against(s);
  if (layout.receivers.size() != 2)
    throw std::invalid_argument("split entropies need a two-receiver layout");
  const Bipartition split = layout.routing_split();
  return SplitEntropies{
      marginal_entropy(s, {layout.receivers[0]}),
      marginal_entropy(s, {layout.receivers[1]}),
      marginal_entropy(s, split.side_one),
      marginal_entropy(s, split.side_two),
  };
}

double locc_upper_bound(const MultipartiteState& s, const DenseCodingLayout& layout) {
  const SplitEntropies se = split_entropies(s, layout);
  return classical_baseline(s, layout) + se.receiver_one + se.receiver_two -
         std::max(se.side_one, se.side_two);
}

double lo_capacity(const MultipartiteState& s, const DenseCodingLayout& layout) {
  layout.validate_against(s);
  if (layout.receivers.size() != 2)
    throw std::invalid_argument("lo_capacity needs a two-receiver layout");
  const auto pieces = lo_pieces(s, layout);
  double total = 0.0;
  for (const SidePiece& piece : pieces)
    total += piece.baseline + std::max(0.0, piece.raw_excess);
  return total;
}

double lo_capacity_raw(const MultipartiteState& s, const DenseCodingLayout& layout) {
  layout.validate_against(s);
  if (layout.receivers.size() != 2)
    throw std::invalid_argument("lo_capacity needs a two-receiver layout");
  const auto pieces = lo_pieces(s, layout);
  double total = 0.0;
  for (const SidePiece& piece : pieces) total += piece.baseline + piece.raw_excess;
  return total;
}

CapacityReport capacity_report(const MultipartiteState& s, const DenseCodingLayout& layout) {
  layout.validate_against(s);
  if (layout.receivers.size() == 1) return capacity_single_receiver(s, layout);
  CapacityReport report = capacity_global(s, layout);
  report.split_entropies = split_entropies(s, layout);
  report.locc_upper_bound = locc_upper_bound(s, layout);
  report.lo_capacity = lo_capacity(s, layout);
  report.lo_capacity_raw = lo_capacity_raw(s, layout);
  return report;
}

double two_copy_chi(const MultipartiteState& s, const DenseCodingLayout& layout,
                    Eigen::Index doubled_dim_cap) {
  layout.validate_against(s);
  if (layout.receivers.size() != 1)
    throw std::invalid_argument("two_copy_chi needs a single-receiver layout");
  if (s.dim() * s.dim() > doubled_dim_cap)
    throw std::invalid_argument("two_copy_chi: doubled space exceeds the dimension cap");

  std::vector<Party> primed;
  for (const Party& p : s.parties()) primed.push_back({p.label + "'", p.dim});
  const MultipartiteState copy(primed, s.matrix());
  const MultipartiteState doubled = tensor_states(s, copy);

  DenseCodingLayout doubled_layout;
  doubled_layout.senders = layout.senders;
  for (const auto& sender : layout.senders) doubled_layout.senders.push_back(sender + "'");
  doubled_layout.receivers = {layout.receivers[0], layout.receivers[0] + "'"};
  for (const auto& sender : layout.senders) {
    doubled_layout.routing[sender] = layout.receivers[0];
    doubled_layout.routing[sender + "'"] = layout.receivers[0] + "'";
  }

  std::vector<UnitarySet> sets;
  std::vector<std::vector<double>> probs;
  for (const auto& sender : doubled_layout.senders) {
    const Eigen::Index d = doubled.parties()[doubled.index_of(sender)].dim;
    sets.push_back(weyl_set(d));
    probs.emplace_back(static_cast<std::size_t>(d * d),
                       1.0 / static_cast<double>(d * d));
  }
  const Ensemble encoded =
      encode_ensemble(doubled, doubled_layout, sets, probs, /*member_cap=*/65536);
  return holevo_chi(encoded) / 2.0;
}

ThresholdResult bisect_root(const std::function<double(double)>& f, double lo, double hi,
                            double x_tol, int max_iterations) {
  if (!(lo < hi)) throw std::invalid_argument("bisect_root: empty bracket");
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, lo, hi, 0.0, 0};
  if (f_hi == 0.0) return {hi, lo, hi, 0.0, 0};
  if ((f_lo > 0.0) == (f_hi > 0.0))
    throw NumericalError("bisect_root: no sign change on the bracket");

  int iterations = 0;
  double mid = (lo + hi) / 2.0;
  while (hi - lo > x_tol) {
    if (++iterations > max_iterations)
      throw NumericalError("bisect_root: iteration cap reached");
    mid = (lo + hi) / 2.0;
    const double f_mid = f(mid);
    if (f_mid == 0.0) break;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  mid = (lo + hi) / 2.0;
  return {mid, lo, hi, std::abs(f(mid)), iterations};
}

ThresholdResult werner_dc_threshold(double x_tol, double lo, double hi) {
  return bisect_root([](double p) { return von_neumann_entropy(werner(p)) - 1.0; }, lo, hi,
                     x_tol);
}

ThresholdResult noisy_ghz_dc_threshold(int n, const DenseCodingLayout& layout, double x_tol,
                                       double lo, double hi) {
  if (n < 3)
    throw std::invalid_argument("noisy_ghz_dc_threshold needs n >= 3");
  layout.validate_against(noisy_ghz(n, 0.5));
  const auto excess = [&](double p) {
    const MultipartiteState s = noisy_ghz(n, p);
    return marginal_entropy(s, layout.receivers) - von_neumann_entropy(s);
  };
  return bisect_root(excess, lo, hi, x_tol);
}

}  // namespace qdc
