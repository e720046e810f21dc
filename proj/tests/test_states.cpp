#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "qdc/info.hpp"
#include "qdc/linalg.hpp"
#include "qdc/random.hpp"
#include "qdc/states.hpp"

using namespace qdc;

namespace {

double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

std::string thrown_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("bell ket conventions") {
  CVec k0 = bell_ket(0);
  CHECK(std::abs(k0(0)) < 1e-12);
  CHECK(std::abs(k0(1) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(k0(2) + 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(k0(3)) < 1e-12);

  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(bell_ket(j).norm() - 1.0) < 1e-12);
    for (int k = 0; k < j; ++k)
      CHECK(std::abs(bell_ket(j).dot(bell_ket(k))) < 1e-12);
  }
  CHECK(std::abs(bell_ket(3)(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(bell_ket(3)(3) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK_THROWS_AS(bell_ket(4), std::invalid_argument);
  CHECK_THROWS_AS(bell_ket(-1), std::invalid_argument);
}

TEST_CASE("singlet and bell states") {
  MultipartiteState s = singlet();
  CHECK(max_abs(s.matrix() - bell(0).matrix()) == 0.0);
  CHECK(s.labels() == std::vector<std::string>{"A", "B"});
  CHECK(max_abs(s.marginal_matrix({"A"}) - CMat::Identity(2, 2) / 2.0) < 1e-12);
  CHECK(max_abs(s.marginal_matrix({"B"}) - CMat::Identity(2, 2) / 2.0) < 1e-12);

  MultipartiteState b3 = bell(3, {"X", "Y"});
  CHECK(b3.labels() == std::vector<std::string>{"X", "Y"});
  CHECK(max_abs(b3.matrix() - outer(bell_ket(3))) < 1e-12);
}

TEST_CASE("make_state validation is specific") {
  std::vector<Party> ab = {{"A", 2}, {"B", 2}};

  std::string dim_msg = thrown_message(
      [&] { make_state(ab, CMat::Identity(3, 3) / 3.0); });
  CHECK(dim_msg.find("dimension mismatch") != std::string::npos);

  std::string trace_msg = thrown_message(
      [&] { make_state(ab, CMat::Identity(4, 4) * 0.225); });
  CHECK(trace_msg.find("trace") != std::string::npos);

  CMat indefinite = CMat::Identity(4, 4) * 0.3;
  indefinite(3, 3) = -0.1;
  indefinite(0, 0) = 0.5;
  std::string psd_msg = thrown_message([&] { make_state(ab, indefinite); });
  CHECK(psd_msg.find("positive semidefinite") != std::string::npos);

  CMat skew = CMat::Identity(4, 4) / 4.0;
  skew(0, 1) = Complex(0.0, 0.5);
  std::string herm_msg = thrown_message([&] { make_state(ab, skew); });
  CHECK(herm_msg.find("Hermitian") != std::string::npos);

  CHECK_THROWS_AS(make_state({}, CMat::Identity(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(make_state({{"A", 2}, {"A", 2}}, CMat::Identity(4, 4) / 4.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_state({{"", 2}}, CMat::Identity(2, 2) / 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_state({{"A", 1}}, CMat::Identity(1, 1)), std::invalid_argument);
}

TEST_CASE("marginal ignores request order and matches brute force") {
  std::mt19937_64 rng(21);
  MultipartiteState s = random_state({{"A", 2}, {"B", 3}, {"C", 2}}, rng);

  MultipartiteState bc = s.marginal({"C", "B"});
  CHECK(bc.labels() == std::vector<std::string>{"B", "C"});
  CHECK(max_abs(bc.matrix() - oracle::pt_bruteforce(s.matrix(), {2, 3, 2}, {1, 2})) <
        1e-12);
  CHECK(max_abs(s.marginal_matrix({"A"}) -
                oracle::pt_bruteforce(s.matrix(), {2, 3, 2}, {0})) < 1e-12);
  CHECK_THROWS_AS(s.marginal({"Z"}), std::invalid_argument);
  CHECK_THROWS_AS(s.marginal({}), std::invalid_argument);
}

TEST_CASE("werner family") {
  CHECK(max_abs(werner(1.0).matrix() - singlet().matrix()) < 1e-12);
  CHECK(max_abs(werner(0.0).matrix() - CMat::Identity(4, 4) / 4.0) < 1e-12);

  Eigen::VectorXd evs = hermitian_eigenvalues(werner(0.5).matrix());
  for (int i = 0; i < 3; ++i) CHECK(std::abs(evs(i) - 0.125) < 1e-12);
  CHECK(std::abs(evs(3) - 0.625) < 1e-12);

  CHECK_NOTHROW(werner(-1.0 / 3.0));
  CHECK_THROWS_AS(werner(-1.0 / 3.0 - 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(werner(1.0 + 1e-6), std::invalid_argument);
  CHECK(werner(0.3, {"L", "R"}).labels() == std::vector<std::string>{"L", "R"});
}

TEST_CASE("ghz family and labels") {
  CHECK(ghz_labels(2) == std::vector<std::string>{"A", "B"});
  CHECK(ghz_labels(4) == std::vector<std::string>{"A1", "A2", "B1", "B2"});

  CHECK(max_abs(ghz(2).matrix() - bell(3).matrix()) < 1e-12);

  MultipartiteState g4 = ghz(4);
  CMat marg = g4.marginal_matrix({"B1", "B2"});
  CMat expected = CMat::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK(max_abs(marg - expected) < 1e-12);

  CHECK(max_abs(noisy_ghz(4, 0.0).matrix() - CMat::Identity(16, 16) / 16.0) < 1e-12);
  CHECK(max_abs(noisy_ghz(4, 1.0).matrix() - g4.matrix()) < 1e-12);
  CHECK_NOTHROW(noisy_ghz(3, -1.0 / 7.0));
  CHECK_THROWS_AS(noisy_ghz(3, -1.0 / 7.0 - 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(noisy_ghz(3, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(ghz(1), std::invalid_argument);

  DenseCodingLayout layout = ghz_layout(4);
  CHECK(layout.senders == std::vector<std::string>{"A1", "A2"});
  CHECK(layout.receivers == std::vector<std::string>{"B1", "B2"});
  CHECK(layout.receiver_for("A1") == "B1");
  CHECK(layout.receiver_for("A2") == "B2");
  Bipartition split = layout.routing_split();
  CHECK(split.side_one == std::vector<std::string>{"A1", "B1"});
  CHECK(split.side_two == std::vector<std::string>{"A2", "B2"});
  CHECK_THROWS_AS(ghz_layout(2), std::invalid_argument);
}

TEST_CASE("smolin state structure") {
  MultipartiteState s = smolin();
  CHECK(s.labels() == std::vector<std::string>{"A1", "A2", "B1", "B2"});

  CMat expected = CMat::Zero(16, 16);
  for (int k = 0; k < 4; ++k) {
    CMat proj = outer(bell_ket(k));
    expected += kron(proj, proj) / 4.0;
  }
  CHECK(max_abs(s.matrix() - expected) < 1e-12);

  Eigen::VectorXd evs = hermitian_eigenvalues(s.matrix());
  for (int i = 0; i < 12; ++i) CHECK(std::abs(evs(i)) < 1e-12);
  for (int i = 12; i < 16; ++i) CHECK(std::abs(evs(i) - 0.25) < 1e-12);

  for (const std::string& label : s.labels())
    CHECK(max_abs(s.marginal_matrix({label}) - CMat::Identity(2, 2) / 2.0) < 1e-12);

  CMat pt = partial_transpose(s.matrix(), {2, 2, 2, 2}, {2, 3});
  CHECK(hermitian_eigenvalues(pt).minCoeff() > -1e-12);
}

TEST_CASE("frank state and its two label orders") {
  MultipartiteState ket_order = frank_state();
  CHECK(ket_order.labels() == std::vector<std::string>{"A1", "A2", "B1", "B2"});

  CVec v = CVec::Zero(16);
  v(0) = 0.5;
  v(5) = 0.5;
  v(8) = 0.5;
  v(14) = 0.5;
  CHECK(max_abs(ket_order.matrix() - outer(v)) < 1e-12);
  CHECK(std::abs((ket_order.matrix() * ket_order.matrix()).trace().real() - 1.0) <
        1e-12);
  CHECK(std::abs(von_neumann_entropy(ket_order.marginal_matrix({"B1", "B2"})) - 1.5) <
        1e-9);
  CHECK(std::abs(von_neumann_entropy(ket_order.marginal_matrix({"B1"})) -
                 oracle::kBinaryEntropyQuarter) < 1e-9);

  MultipartiteState alt = frank_state({"A1", "B1", "A2", "B2"});
  CHECK(alt.labels() == std::vector<std::string>{"A1", "B1", "A2", "B2"});
  CHECK(max_abs(alt.matrix() - ket_order.matrix()) < 1e-12);
  CHECK(std::abs(von_neumann_entropy(alt.marginal_matrix({"B1"})) - 1.0) < 1e-9);
}

TEST_CASE("tensor_states and permute_parties") {
  MultipartiteState left = bell(0, {"A1", "B1"});
  MultipartiteState right = bell(0, {"A2", "B2"});
  MultipartiteState pair = tensor_states(left, right);
  CHECK(pair.labels() == std::vector<std::string>{"A1", "B1", "A2", "B2"});
  CHECK(pair.dim() == 16);
  CHECK(max_abs(pair.matrix() - kron(left.matrix(), right.matrix())) < 1e-12);
  CHECK_THROWS_AS(tensor_states(left, bell(0, {"A1", "C"})), std::invalid_argument);

  MultipartiteState frank = frank_state();
  MultipartiteState swapped = permute_parties(frank, {0, 1, 3, 2});
  CHECK(swapped.labels() == std::vector<std::string>{"A1", "A2", "B2", "B1"});
  CVec w = CVec::Zero(16);
  w(0) = 0.5;
  w(6) = 0.5;
  w(8) = 0.5;
  w(13) = 0.5;
  CHECK(max_abs(swapped.matrix() - outer(w)) < 1e-12);

  // labels travel with their factors, so labeled marginals are unchanged
  CHECK(max_abs(swapped.marginal_matrix({"B1", "B2"}) -
                frank.marginal_matrix({"B1", "B2"})) < 1e-12);

  std::mt19937_64 rng(22);
  MultipartiteState s = random_state({{"A", 2}, {"B", 2}, {"C", 3}}, rng);
  MultipartiteState fwd = permute_parties(s, {2, 0, 1});
  MultipartiteState back = permute_parties(fwd, {1, 2, 0});
  CHECK(max_abs(back.matrix() - s.matrix()) < 1e-12);
  CHECK(back.labels() == s.labels());
  CHECK_THROWS_AS(permute_parties(s, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(permute_parties(s, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("dense coding layout validation") {
  CHECK_THROWS_AS(single_receiver_layout({}, "B").validate(), std::invalid_argument);

  DenseCodingLayout three_receivers{{"A"}, {"B1", "B2", "B3"}, {}};
  CHECK_THROWS_AS(three_receivers.validate(), std::invalid_argument);

  DenseCodingLayout dup{{"A", "A"}, {"B"}, {}};
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  DenseCodingLayout overlap{{"A"}, {"A"}, {}};
  CHECK_THROWS_AS(overlap.validate(), std::invalid_argument);

  DenseCodingLayout bad_target{{"A1", "A2"}, {"B1", "B2"},
                               {{"A1", "B1"}, {"A2", "C"}}};
  CHECK_THROWS_AS(bad_target.validate(), std::invalid_argument);

  DenseCodingLayout unrouted{{"A1", "A2"}, {"B1", "B2"}, {{"A1", "B1"}}};
  CHECK_THROWS_AS(unrouted.validate(), std::invalid_argument);

  DenseCodingLayout good = two_receiver_layout({"A1", "A2"}, {"B1", "B2"},
                                               {{"A1", "B1"}, {"A2", "B2"}});
  CHECK_NOTHROW(good.validate());
  Bipartition cut = good.senders_receivers_cut();
  CHECK(cut.side_one == std::vector<std::string>{"A1", "A2"});
  CHECK(cut.side_two == std::vector<std::string>{"B1", "B2"});

  // single-receiver layouts route implicitly
  DenseCodingLayout single = single_receiver_layout({"A1", "A2"}, "B");
  CHECK(single.receiver_for("A1") == "B");
  CHECK_THROWS_AS(single.routing_split(), std::invalid_argument);

  MultipartiteState s = singlet();
  DenseCodingLayout wrong_labels = single_receiver_layout({"A"}, "C");
  CHECK_THROWS_AS(wrong_labels.validate_against(s), std::invalid_argument);
  CHECK_NOTHROW(single_receiver_layout({"A"}, "B").validate_against(s));
}
