#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

// Dense linear algebra over multi-factor Hilbert spaces with explicit
// dimension bookkeeping. Factor order is always the tensor order of the
// `dims` vector; nothing here reorders factors implicitly.

namespace qdc {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Dims = std::vector<Eigen::Index>;

inline constexpr double kDefaultTol = 1e-9;

// Numerical failure (root not bracketed, solver did not converge), as
// opposed to invalid input. Callers map the two onto different exit codes.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Eigen::Index dim_product(const Dims& dims) {
  Eigen::Index p = 1;
  for (Eigen::Index d : dims) p *= d;
  return p;
}

namespace detail {

inline void check_square(Eigen::Index rows, Eigen::Index cols, const char* op) {
  if (rows != cols)
    throw std::invalid_argument(std::string(op) + ": matrix must be square");
}

inline void check_factorization(Eigen::Index dim, const Dims& dims, const char* op) {
  if (dims.empty())
    throw std::invalid_argument(std::string(op) + ": empty dimension list");
  for (Eigen::Index d : dims)
    if (d < 1)
      throw std::invalid_argument(std::string(op) + ": factor dimensions must be positive");
  if (dim_product(dims) != dim)
    throw std::invalid_argument(std::string(op) +
                                ": dimension list does not factor the matrix dimension");
}

inline std::vector<std::size_t> checked_subset(const std::vector<std::size_t>& subset,
                                               std::size_t n, const char* op) {
  std::vector<std::size_t> s = subset;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= n)
      throw std::invalid_argument(std::string(op) + ": factor index out of range");
    if (i > 0 && s[i] == s[i - 1])
      throw std::invalid_argument(std::string(op) + ": duplicate factor index");
  }
  return s;
}

// Strides of each factor in the composite index, last factor fastest.
inline std::vector<Eigen::Index> strides_of(const Dims& dims) {
  std::vector<Eigen::Index> s(dims.size());
  Eigen::Index acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

// Composite-index offsets contributed by a subset of factors: entry t is the
// full-space offset of the t-th combination of the subset's digits.
inline std::vector<Eigen::Index> subset_offsets(const Dims& dims,
                                                const std::vector<std::size_t>& subset) {
  const auto strides = strides_of(dims);
  std::vector<Eigen::Index> offsets{0};
  for (std::size_t k : subset) {
    std::vector<Eigen::Index> next;
    next.reserve(offsets.size() * static_cast<std::size_t>(dims[k]));
    for (Eigen::Index base : offsets)
      for (Eigen::Index digit = 0; digit < dims[k]; ++digit)
        next.push_back(base + digit * strides[k]);
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace detail

template <class A, class B>
auto kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
}

template <class A>
auto dagger(const Eigen::MatrixBase<A>& m) {
  return m.derived().adjoint().eval();
}

// |v><v| from a normalized column vector.
template <class V>
auto outer(const Eigen::MatrixBase<V>& v, double tol = kDefaultTol) {
  if (v.cols() != 1)
    throw std::invalid_argument("outer: expected a column vector");
  if (std::abs(v.norm() - 1.0) > tol)
    throw std::invalid_argument("outer: vector is not normalized within tolerance");
  return (v.derived() * v.derived().adjoint()).eval();
}

template <class A>
bool is_hermitian(const Eigen::MatrixBase<A>& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) return false;
  return (m.derived() - m.derived().adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// Real spectrum of a Hermitian matrix, ascending.
template <class A>
auto hermitian_eigenvalues(const Eigen::MatrixBase<A>& m, double tol = kDefaultTol) {
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian within tolerance");
  using Mat = Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat sym = (m.derived() + m.derived().adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("hermitian_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues().eval();
}

template <class A>
bool is_psd(const Eigen::MatrixBase<A>& m, double tol = kDefaultTol) {
  auto ev = hermitian_eigenvalues(m, tol);
  return ev.size() == 0 || ev.minCoeff() >= -tol;
}

// Trace out every factor not in `keep`; kept factors stay in their original
// relative order. An empty keep set yields the 1x1 full trace.
template <class A>
auto partial_trace(const Eigen::MatrixBase<A>& m, const Dims& dims,
                   const std::vector<std::size_t>& keep) {
  detail::check_square(m.rows(), m.cols(), "partial_trace");
  detail::check_factorization(m.rows(), dims, "partial_trace");
  const auto kept = detail::checked_subset(keep, dims.size(), "partial_trace");
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);

  const auto kept_off = detail::subset_offsets(dims, kept);
  const auto traced_off = detail::subset_offsets(dims, traced);
  const auto n = static_cast<Eigen::Index>(kept_off.size());

  Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      typename A::Scalar sum{};
      for (Eigen::Index t : traced_off)
        sum += m.derived()(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = sum;
    }
  return out;
}

// Transpose the listed factors, leaving the rest untouched.
template <class A>
auto partial_transpose(const Eigen::MatrixBase<A>& m, const Dims& dims,
                       const std::vector<std::size_t>& transpose) {
  detail::check_square(m.rows(), m.cols(), "partial_transpose");
  detail::check_factorization(m.rows(), dims, "partial_transpose");
  const auto tset = detail::checked_subset(transpose, dims.size(), "partial_transpose");

  const auto strides = detail::strides_of(dims);
  const Eigen::Index dim = m.rows();
  // Split every composite index into its transposed-part and kept-part offsets.
  std::vector<Eigen::Index> t_part(dim, 0), k_part(dim, 0);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index rest = idx;
    for (std::size_t f = 0; f < dims.size(); ++f) {
      const Eigen::Index digit = rest / strides[f];
      rest -= digit * strides[f];
      if (std::binary_search(tset.begin(), tset.end(), f))
        t_part[idx] += digit * strides[f];
      else
        k_part[idx] += digit * strides[f];
    }
  }

  Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      out(k_part[r] + t_part[c], k_part[c] + t_part[r]) = m.derived()(r, c);
  return out;
}

// Reorder tensor factors: new factor position i holds old factor perm[i].
template <class A>
auto permute_tensor_factors(const Eigen::MatrixBase<A>& m, const Dims& dims,
                            const std::vector<std::size_t>& perm) {
  detail::check_square(m.rows(), m.cols(), "permute_tensor_factors");
  detail::check_factorization(m.rows(), dims, "permute_tensor_factors");
  if (perm.size() != dims.size())
    throw std::invalid_argument("permute_tensor_factors: permutation length mismatch");
  {
    auto sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i)
        throw std::invalid_argument("permute_tensor_factors: not a permutation");
  }

  Dims new_dims(dims.size());
  for (std::size_t i = 0; i < perm.size(); ++i) new_dims[i] = dims[perm[i]];
  const auto old_strides = detail::strides_of(dims);
  const auto new_strides = detail::strides_of(new_dims);

  const Eigen::Index dim = m.rows();
  std::vector<Eigen::Index> map(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index rest = idx, to = 0;
    std::vector<Eigen::Index> digits(dims.size());
    for (std::size_t f = 0; f < dims.size(); ++f) {
      digits[f] = rest / old_strides[f];
      rest -= digits[f] * old_strides[f];
    }
    for (std::size_t i = 0; i < perm.size(); ++i) to += digits[perm[i]] * new_strides[i];
    map[idx] = to;
  }

  Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) out(map[r], map[c]) = m.derived()(r, c);
  return out;
}

// Operator acting as `op` on the listed factors (in the listed order) and as
// identity elsewhere, expressed in the original factor order.
template <class A>
CMat embed_on_factors(const Eigen::MatrixBase<A>& op, const Dims& dims,
                      const std::vector<std::size_t>& targets) {
  detail::check_square(op.rows(), op.cols(), "embed_on_factors");
  std::vector<std::size_t> seen = detail::checked_subset(targets, dims.size(), "embed_on_factors");
  Dims target_dims;
  Eigen::Index target_dim = 1;
  for (std::size_t t : targets) {
    target_dims.push_back(dims[t]);
    target_dim *= dims[t];
  }
  if (op.rows() != target_dim)
    throw std::invalid_argument("embed_on_factors: operator does not match target dimensions");

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (!std::binary_search(seen.begin(), seen.end(), i)) rest.push_back(i);

  Dims concat_dims = target_dims;
  Eigen::Index rest_dim = 1;
  for (std::size_t r : rest) {
    concat_dims.push_back(dims[r]);
    rest_dim *= dims[r];
  }

  CMat full = kron(CMat(op.template cast<Complex>()),
                   CMat(CMat::Identity(rest_dim, rest_dim)));

  // Map the (targets..., rest...) factor order back to the original order.
  std::vector<std::size_t> concat = targets;
  concat.insert(concat.end(), rest.begin(), rest.end());
  std::vector<std::size_t> perm(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const auto it = std::find(concat.begin(), concat.end(), i);
    perm[i] = static_cast<std::size_t>(it - concat.begin());
  }
  return permute_tensor_factors(full, concat_dims, perm);
}

}  // namespace qdc
