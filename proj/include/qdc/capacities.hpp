#pragma once

#include <functional>
#include <optional>

#include "qdc/info.hpp"

// Closed-form dense-coding capacity quantities for one- and two-receiver
// layouts, plus bisection threshold solvers.
//
// Conventions, applied throughout:
//   raw excess      = S(rho^receivers) - S(rho)
//   clamped capacity = classical baseline + max(0, raw excess)
// Reports carry both; the local upper bound is reported unclamped.

namespace qdc {

struct SplitEntropies {
  double receiver_one;  // S(rho^{B1})
  double receiver_two;  // S(rho^{B2})
  double side_one;      // S over {senders routed to B1} + B1
  double side_two;      // S over the complementary side
};

struct CapacityReport {
  DenseCodingLayout layout;
  double classical_baseline = 0.0;  // sum of log2(sender dims)
  double capacity = 0.0;            // clamped
  double raw_excess = 0.0;
  double state_entropy = 0.0;
  double receivers_entropy = 0.0;
  // Present for two-receiver layouts only.
  std::optional<SplitEntropies> split_entropies;
  std::optional<double> locc_upper_bound;  // unclamped
  std::optional<double> lo_capacity;       // sum of clamped per-side capacities
  std::optional<double> lo_capacity_raw;   // same, unclamped
};

double classical_baseline(const MultipartiteState& s, const DenseCodingLayout& layout);

CapacityReport capacity_single_receiver(const MultipartiteState& s,
                                        const DenseCodingLayout& layout);

// Both receivers measured together: excess uses S(rho^{B1 B2}).
CapacityReport capacity_global(const MultipartiteState& s, const DenseCodingLayout& layout);

SplitEntropies split_entropies(const MultipartiteState& s, const DenseCodingLayout& layout);

// baseline + S(rho^{B1}) + S(rho^{B2}) - max(S(rho^1), S(rho^2)), unclamped.
double locc_upper_bound(const MultipartiteState& s, const DenseCodingLayout& layout);

// Sum of the two per-side single-receiver capacities on the routed marginals.
double lo_capacity(const MultipartiteState& s, const DenseCodingLayout& layout);
double lo_capacity_raw(const MultipartiteState& s, const DenseCodingLayout& layout);

// Full report for either layout kind; the CLI serializes exactly this.
CapacityReport capacity_report(const MultipartiteState& s, const DenseCodingLayout& layout);

// Literal additivity check: build the uniform product-Weyl encoding on two
// copies of the state, evaluate its Holevo quantity on the doubled space and
// halve it. Equals the unclamped single-copy value.
double two_copy_chi(const MultipartiteState& s, const DenseCodingLayout& layout,
                    Eigen::Index doubled_dim_cap = 4096);

struct ThresholdResult {
  double root;
  double lower;  // final bracket
  double upper;
  double residual;  // |f(root)|
  int iterations;
};

// Plain bisection; throws NumericalError when f(lo) and f(hi) do not differ
// in sign or the iteration cap is hit before the bracket shrinks to x_tol.
ThresholdResult bisect_root(const std::function<double(double)>& f, double lo, double hi,
                            double x_tol = 1e-7, int max_iterations = 200);

// Root of S(rho_p) = 1 for the noisy singlet family, i.e. where the
// single-receiver excess changes sign.
ThresholdResult werner_dc_threshold(double x_tol = 1e-7, double lo = 1.0 / 3.0,
                                    double hi = 1.0);

// Root in p of the raw excess of noisy_ghz(n, p) under the given layout.
ThresholdResult noisy_ghz_dc_threshold(int n, const DenseCodingLayout& layout,
                                       double x_tol = 1e-7, double lo = 0.0,
                                       double hi = 1.0);

}  // namespace qdc
