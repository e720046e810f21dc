#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "qdc/criteria.hpp"
#include "qdc/random.hpp"

using namespace qdc;

namespace {

Bipartition ab_cut() { return {{"A"}, {"B"}}; }

DenseCodingLayout pair_layout() {
  return two_receiver_layout({"A1", "A2"}, {"B1", "B2"},
                             {{"A1", "B1"}, {"A2", "B2"}});
}

// Qutrit flip-Werner state q * 2Pa/ (d^2-d) + (1-q) * 2Ps/(d^2+d): NPT for
// q > 1/2 while the reduction criterion stays intact at every q.
MultipartiteState qutrit_werner(double q) {
  const int d = 3;
  CMat flip = CMat::Zero(9, 9);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) flip(i * d + j, j * d + i) = 1.0;
  CMat pa = (CMat::Identity(9, 9) - flip) / 2.0;
  CMat ps = (CMat::Identity(9, 9) + flip) / 2.0;
  return make_state({{"A", 3}, {"B", 3}}, q * pa / 3.0 + (1.0 - q) * ps / 6.0);
}

MultipartiteState max_mixed_pair(const std::array<std::string, 2>& labels) {
  return make_state({{labels[0], 2}, {labels[1], 2}}, CMat::Identity(4, 4) / 4.0);
}

}  // namespace

TEST_CASE("ppt criterion on the werner family") {
  CHECK(is_ppt(werner(1.0 / 3.0 - 0.01), ab_cut()).ppt);
  PptResult npt = is_ppt(werner(0.5), ab_cut());
  CHECK_FALSE(npt.ppt);
  CHECK(std::abs(npt.min_eigenvalue + 0.125) < 1e-9);

  // min eigenvalue of the partial transpose is (1 - 3p)/4
  for (double p : {0.0, 0.2, 0.4, 0.9}) {
    CHECK(std::abs(is_ppt(werner(p), ab_cut()).min_eigenvalue - (1.0 - 3.0 * p) / 4.0) <
          1e-9);
  }
}

TEST_CASE("ppt criterion on the smolin state") {
  MultipartiteState s = smolin();
  CHECK(is_ppt(s, {{"A1", "A2"}, {"B1", "B2"}}).ppt);
  CHECK(is_ppt(s, {{"A1", "B1"}, {"A2", "B2"}}).ppt);
  CHECK(is_ppt(s, {{"A1", "B2"}, {"A2", "B1"}}).ppt);

  for (const std::string& lone : {"A1", "A2", "B1", "B2"}) {
    std::vector<std::string> rest;
    for (const std::string& l : s.labels())
      if (l != lone) rest.push_back(l);
    PptResult r = is_ppt(s, {{lone}, rest});
    CHECK_FALSE(r.ppt);
    CHECK(std::abs(r.min_eigenvalue - oracle::kSmolinOneVsThreeMinEig) < 1e-9);
  }
}

TEST_CASE("reduction criterion") {
  ReductionResult singlet_red = reduction_violated(singlet(), ab_cut());
  CHECK(singlet_red.violated);
  CHECK(std::abs(singlet_red.min_eigenvalue_side_one + 0.5) < 1e-9);
  CHECK(std::abs(singlet_red.min_eigenvalue_side_two + 0.5) < 1e-9);

  CHECK_FALSE(reduction_violated(max_mixed_pair({"A", "B"}), ab_cut()).violated);
  CHECK_FALSE(reduction_violated(werner(0.2), ab_cut()).violated);

  // NPT without a reduction violation
  MultipartiteState qw = qutrit_werner(0.7);
  CHECK_FALSE(is_ppt(qw, ab_cut()).ppt);
  ReductionResult qw_red = reduction_violated(qw, ab_cut());
  CHECK_FALSE(qw_red.violated);
  CHECK(qw_red.min_eigenvalue_side_one > 0.0);
}

TEST_CASE("cut validation") {
  CHECK_THROWS_AS(is_ppt(singlet(), {{"A"}, {"C"}}), std::invalid_argument);
  CHECK_THROWS_AS(is_ppt(singlet(), {{"A"}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(is_ppt(ghz(3), {{"A1"}, {"B1"}}), std::invalid_argument);
  CHECK_THROWS_AS(reduction_violated(singlet(), {{"A", "B"}, {"B"}}),
                  std::invalid_argument);
}

TEST_CASE("all_bipartitions enumeration") {
  CHECK(all_bipartitions(singlet()).size() == 1);
  std::vector<Bipartition> cuts = all_bipartitions(ghz(4));
  CHECK(cuts.size() == 7);
  for (const Bipartition& cut : cuts) {
    CHECK(cut.side_one.front() == "A1");
    CHECK(cut.side_one.size() + cut.side_two.size() == 4);
  }
}

TEST_CASE("names for shells and verdicts") {
  CHECK(shell_name(Shell::SeparableOrPpt) == "S-or-PBE");
  CHECK(shell_name(Shell::NptUndetermined) == "NPT-undetermined");
  CHECK(shell_name(Shell::Distillable) == "D");
  CHECK(shell_name(Shell::GlobalDenseCoding) == "G-DC");
  CHECK(shell_name(Shell::LoccDenseCoding) == "LOCC-DC");
  CHECK(shell_name(Shell::LoDenseCoding) == "LO-DC");
  CHECK(verdict_name(Verdict::yes) == "yes");
  CHECK(verdict_name(Verdict::no) == "no");
  CHECK(verdict_name(Verdict::unknown) == "unknown");
}

TEST_CASE("protocol registry matching") {
  const ProtocolRegistry& reg = ProtocolRegistry::standard();
  REQUIRE(reg.protocols().size() == 1);
  CHECK(reg.protocols()[0].name == "ghz4");
  CHECK(reg.protocols()[0].bits == 3.0);

  const Protocol* hit = reg.find_achieving(ghz(4), ghz_layout(4), 2.0);
  REQUIRE(hit != nullptr);
  CHECK(hit->name == "ghz4");

  // the protocol must beat the baseline to count
  CHECK(reg.find_achieving(ghz(4), ghz_layout(4), 3.0) == nullptr);

  // mixedness breaks the profile
  CHECK(reg.find_achieving(noisy_ghz(4, 0.9), ghz_layout(4), 2.0) == nullptr);

  // both senders routed to one receiver breaks the profile
  DenseCodingLayout one_sided = two_receiver_layout(
      {"A1", "A2"}, {"B1", "B2"}, {{"A1", "B1"}, {"A2", "B1"}});
  CHECK(reg.find_achieving(ghz(4), one_sided, 2.0) == nullptr);

  // pure product of two bell pairs has a pure 2:2 marginal, so no match
  MultipartiteState pairs =
      tensor_states(bell(0, {"A1", "B1"}), bell(0, {"A2", "B2"}));
  CHECK(reg.find_achieving(pairs, pair_layout(), 2.0) == nullptr);

  // the profile is local-unitary invariant
  std::mt19937_64 rng(51);
  CMat u = kron(kron(haar_unitary(2, rng), haar_unitary(2, rng)),
                kron(haar_unitary(2, rng), haar_unitary(2, rng)));
  MultipartiteState rotated =
      make_state(ghz(4).parties(), u * ghz(4).matrix() * dagger(u));
  CHECK(reg.find_achieving(rotated, ghz_layout(4), 2.0) != nullptr);
}

TEST_CASE("classify: ppt shell") {
  ClassificationReport r = classify(werner(0.2), single_receiver_layout({"A"}, "B"));
  CHECK(r.shell == Shell::SeparableOrPpt);
  CHECK(r.evidence.at("ppt").verdict == Verdict::yes);
  CHECK(r.evidence.at("ppt").source == "is_ppt");
  CHECK(r.evidence.count("lo_dc") == 0);
  CHECK(r.cut_results.size() == 1);

  // smolin across its routed two-receiver layout is PPT on the main cut
  DenseCodingLayout layout = pair_layout();
  ClassificationReport sm = classify(smolin(), layout);
  CHECK(sm.shell == Shell::SeparableOrPpt);
  CHECK(sm.evidence.at("lo_dc").verdict == Verdict::no);
}

TEST_CASE("classify: npt-undetermined and distillable shells") {
  ClassificationReport qw =
      classify(qutrit_werner(0.7), single_receiver_layout({"A"}, "B"));
  CHECK(qw.shell == Shell::NptUndetermined);
  CHECK(qw.evidence.at("ppt").verdict == Verdict::no);
  CHECK(qw.evidence.at("reduction").verdict == Verdict::no);
  CHECK(qw.evidence.at("global_excess").verdict == Verdict::no);

  ClassificationReport w = classify(werner(0.5), single_receiver_layout({"A"}, "B"));
  CHECK(w.shell == Shell::Distillable);
  CHECK(w.evidence.at("reduction").verdict == Verdict::yes);
  CHECK(w.evidence.at("global_excess").verdict == Verdict::no);
}

TEST_CASE("classify: dense coding shells") {
  ClassificationReport g = classify(werner(0.9), single_receiver_layout({"A"}, "B"));
  CHECK(g.shell == Shell::GlobalDenseCoding);
  CHECK(g.evidence.at("global_excess").verdict == Verdict::yes);

  ClassificationReport ghz_report = classify(ghz(4), ghz_layout(4));
  CHECK(ghz_report.shell == Shell::LoccDenseCoding);
  CHECK(ghz_report.evidence.at("locc_dc").verdict == Verdict::yes);
  CHECK(ghz_report.evidence.at("locc_dc").source == "protocol:ghz4");
  CHECK(std::abs(ghz_report.evidence.at("locc_dc").value - 3.0) < 1e-12);
  CHECK(ghz_report.evidence.at("lo_dc").verdict == Verdict::no);

  MultipartiteState pairs =
      tensor_states(bell(0, {"A1", "B1"}), bell(0, {"A2", "B2"}));
  ClassificationReport lo = classify(pairs, pair_layout());
  CHECK(lo.shell == Shell::LoDenseCoding);
  CHECK(lo.evidence.at("lo_dc").verdict == Verdict::yes);
  CHECK(std::abs(lo.evidence.at("lo_dc").value - 4.0) < 1e-9);
}

TEST_CASE("classify: local advantage wins even without global excess") {
  // singlet next to a maximally mixed pair: global excess is zero, yet the
  // routed sides alone already beat the baseline
  MultipartiteState s =
      tensor_states(bell(0, {"A1", "B1"}), max_mixed_pair({"A2", "B2"}));
  ClassificationReport r = classify(s, pair_layout());
  CHECK(r.shell == Shell::LoDenseCoding);
  CHECK(r.evidence.at("global_excess").verdict == Verdict::no);
  CHECK(std::abs(r.evidence.at("lo_dc").value - 3.0) < 1e-9);
}

TEST_CASE("classify: all_cuts reports every bipartition") {
  ClassificationReport r =
      classify(smolin(), pair_layout(), ProtocolRegistry::standard(), true);
  CHECK(r.cut_results.size() == 7);
  int ppt_cuts = 0;
  int npt_cuts = 0;
  for (const CutResult& cr : r.cut_results) {
    if (cr.ppt.ppt) {
      ++ppt_cuts;
    } else {
      ++npt_cuts;
      CHECK(std::abs(cr.ppt.min_eigenvalue - oracle::kSmolinOneVsThreeMinEig) < 1e-9);
    }
  }
  CHECK(ppt_cuts == 3);
  CHECK(npt_cuts == 4);
}

TEST_CASE("classify is stable under party reordering") {
  MultipartiteState permuted = permute_parties(ghz(4), {1, 0, 3, 2});
  ClassificationReport r = classify(permuted, ghz_layout(4));
  CHECK(r.shell == Shell::LoccDenseCoding);
  CHECK(r.evidence.at("locc_dc").source == "protocol:ghz4");
}