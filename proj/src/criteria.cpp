#include "qdc/criteria.hpp"

#include <algorithm>
#include <set>

namespace qdc {
namespace {

// Sorted factor indices of one side; also checks that the cut partitions the
// state's parties exactly.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> cut_indices(
    const MultipartiteState& s, const Bipartition& cut) {
  if (cut.side_one.empty() || cut.side_two.empty()) {
    throw std::invalid_argument("bipartition: both sides must be non-empty");
  }
  std::vector<std::size_t> one = s.indices_of(cut.side_one);
  std::vector<std::size_t> two = s.indices_of(cut.side_two);
  std::set<std::size_t> seen(one.begin(), one.end());
  seen.insert(two.begin(), two.end());
  if (seen.size() != s.party_count() || one.size() + two.size() != s.party_count()) {
    throw std::invalid_argument("bipartition: sides must partition the parties");
  }
  std::sort(one.begin(), one.end());
  std::sort(two.begin(), two.end());
  return {one, two};
}

double min_eigenvalue_of(const CMat& m, double tol) {
  return hermitian_eigenvalues(m, tol)(0);
}

bool ghz4_profile(const MultipartiteState& s, const DenseCodingLayout& layout) {
  if (s.party_count() != 4) return false;
  for (const Party& p : s.parties()) {
    if (p.dim != 2) return false;
  }
  if (layout.senders.size() != 2 || layout.receivers.size() != 2) return false;
  // One sender routed to each receiver.
  if (layout.receiver_for(layout.senders[0]) == layout.receiver_for(layout.senders[1])) {
    return false;
  }
  const CMat& rho = s.matrix();
  if (std::abs((rho * rho).trace().real() - 1.0) > kDefaultTol) return false;
  // Every bipartition of the GHZ state carries exactly one bit: marginal
  // spectrum {1/2, 1/2, 0, ...}. The profile is local-unitary invariant.
  for (const Bipartition& cut : all_bipartitions(s)) {
    Eigen::VectorXd evs = hermitian_eigenvalues(s.marginal_matrix(cut.side_one));
    std::sort(evs.data(), evs.data() + evs.size(), std::greater<double>());
    if (std::abs(evs(0) - 0.5) > kDefaultTol) return false;
    if (std::abs(evs(1) - 0.5) > kDefaultTol) return false;
    for (Eigen::Index i = 2; i < evs.size(); ++i) {
      if (std::abs(evs(i)) > kDefaultTol) return false;
    }
  }
  return true;
}

}  // namespace

PptResult is_ppt(const MultipartiteState& s, const Bipartition& cut, double tol) {
  auto [one, two] = cut_indices(s, cut);
  (void)one;
  CMat transposed = partial_transpose(s.matrix(), s.dims(), two);
  const double min_ev = min_eigenvalue_of(transposed, tol);
  return {min_ev >= -tol, min_ev};
}

ReductionResult reduction_violated(const MultipartiteState& s, const Bipartition& cut,
                                   double tol) {
  auto [one, two] = cut_indices(s, cut);
  const Dims dims = s.dims();
  CMat reduced_one = embed_on_factors(s.marginal_matrix(cut.side_one), dims, one);
  CMat reduced_two = embed_on_factors(s.marginal_matrix(cut.side_two), dims, two);
  const double min_one = min_eigenvalue_of(reduced_one - s.matrix(), tol);
  const double min_two = min_eigenvalue_of(reduced_two - s.matrix(), tol);
  return {min_one < -tol || min_two < -tol, min_one, min_two};
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  throw std::invalid_argument("verdict_name: unknown verdict");
}

std::string shell_name(Shell s) {
  switch (s) {
    case Shell::SeparableOrPpt: return "S-or-PBE";
    case Shell::NptUndetermined: return "NPT-undetermined";
    case Shell::Distillable: return "D";
    case Shell::GlobalDenseCoding: return "G-DC";
    case Shell::LoccDenseCoding: return "LOCC-DC";
    case Shell::LoDenseCoding: return "LO-DC";
  }
  throw std::invalid_argument("shell_name: unknown shell");
}

void ProtocolRegistry::add(Protocol p) { protocols_.push_back(std::move(p)); }

const Protocol* ProtocolRegistry::find_achieving(const MultipartiteState& s,
                                                 const DenseCodingLayout& layout,
                                                 double baseline, double tol) const {
  for (const Protocol& p : protocols_) {
    if (p.bits > baseline + tol && p.matches(s, layout)) return &p;
  }
  return nullptr;
}

const ProtocolRegistry& ProtocolRegistry::standard() {
  static const ProtocolRegistry registry = [] {
    ProtocolRegistry r;
    r.add({"ghz4", 3.0, ghz4_profile});
    return r;
  }();
  return registry;
}

std::vector<Bipartition> all_bipartitions(const MultipartiteState& s) {
  const std::size_t n = s.party_count();
  if (n < 2) throw std::invalid_argument("all_bipartitions: need at least two parties");
  const std::vector<std::string> labels = s.labels();
  std::vector<Bipartition> cuts;
  const std::size_t limit = std::size_t{1} << (n - 1);
  for (std::size_t mask = 0; mask + 1 < limit; ++mask) {
    Bipartition cut;
    cut.side_one.push_back(labels[0]);
    for (std::size_t i = 1; i < n; ++i) {
      if (mask & (std::size_t{1} << (i - 1))) {
        cut.side_one.push_back(labels[i]);
      } else {
        cut.side_two.push_back(labels[i]);
      }
    }
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

ClassificationReport classify(const MultipartiteState& s, const DenseCodingLayout& layout,
                              const ProtocolRegistry& registry, bool all_cuts, double tol) {
  layout.validate_against(s);
  const CapacityReport report = capacity_report(s, layout);
  const bool two_receivers = layout.receivers.size() == 2;
  const Bipartition main_cut = layout.senders_receivers_cut();

  ClassificationReport out;
  const std::vector<Bipartition> cuts =
      all_cuts ? all_bipartitions(s) : std::vector<Bipartition>{main_cut};
  for (const Bipartition& cut : cuts) {
    out.cut_results.push_back({cut, is_ppt(s, cut, tol), reduction_violated(s, cut, tol)});
  }

  const PptResult ppt = is_ppt(s, main_cut, tol);
  const ReductionResult reduction = reduction_violated(s, main_cut, tol);
  const double baseline = report.classical_baseline;
  const double excess = report.raw_excess;
  const bool excess_positive = excess > tol;

  out.evidence.emplace("ppt", Evidence{ppt.ppt ? Verdict::yes : Verdict::no,
                                       ppt.min_eigenvalue, "is_ppt"});
  out.evidence.emplace(
      "reduction",
      Evidence{reduction.violated ? Verdict::yes : Verdict::no,
               std::min(reduction.min_eigenvalue_side_one, reduction.min_eigenvalue_side_two),
               "reduction_violated"});
  out.evidence.emplace("global_excess", Evidence{excess_positive ? Verdict::yes : Verdict::no,
                                                 excess, "capacity_report"});

  bool lo_beats_baseline = false;
  const Protocol* achieving = nullptr;
  if (two_receivers) {
    const double lo = *report.lo_capacity;
    lo_beats_baseline = lo > baseline + tol;
    out.evidence.emplace("lo_dc", Evidence{lo_beats_baseline ? Verdict::yes : Verdict::no,
                                           lo, "lo_capacity"});
    achieving = registry.find_achieving(s, layout, baseline, tol);
    const double locc_bound = *report.locc_upper_bound;
    if (achieving != nullptr) {
      out.evidence.emplace("locc_dc", Evidence{Verdict::yes, achieving->bits,
                                               "protocol:" + achieving->name});
    } else if (locc_bound <= baseline + tol) {
      out.evidence.emplace("locc_dc", Evidence{Verdict::no, locc_bound, "locc_upper_bound"});
    } else {
      out.evidence.emplace("locc_dc",
                           Evidence{Verdict::unknown, locc_bound, "locc_upper_bound"});
    }
  }

  const bool witnessed = reduction.violated || excess_positive || lo_beats_baseline;
  if (ppt.ppt) {
    out.shell = Shell::SeparableOrPpt;
  } else if (lo_beats_baseline) {
    out.shell = Shell::LoDenseCoding;
  } else if (!witnessed) {
    out.shell = Shell::NptUndetermined;
  } else if (!excess_positive) {
    out.shell = Shell::Distillable;
  } else if (achieving != nullptr) {
    out.shell = Shell::LoccDenseCoding;
  } else {
    out.shell = Shell::GlobalDenseCoding;
  }
  return out;
}

}  // namespace qdc
