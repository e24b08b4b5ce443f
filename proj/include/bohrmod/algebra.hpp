#pragma once

#include <string>
#include <vector>

#include "bohrmod/matrix.hpp"

namespace bohrmod {

/// Block structure of a finite-dimensional C*-algebra: a direct sum of full
/// complex matrix blocks M_{n_1} + ... + M_{n_k}.
struct AlgebraShape {
  std::vector<int> block_dims;

  int block_count() const { return static_cast<int>(block_dims.size()); }
  int linear_dim() const;  // sum of n_i^2
  bool single_block() const { return block_dims.size() == 1; }

  void validate() const;  // nonempty, n_i >= 1, linear_dim <= kMaxDim

  /// Parses "2" or "2+3" (block dims joined by '+').
  static AlgebraShape parse(const std::string& text);
  std::string to_string() const;

  bool operator==(const AlgebraShape&) const = default;
};

/// Element of a block-sum C*-algebra, stored blockwise.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraShape shape, std::vector<CMat> blocks);

  static AlgebraElement zero(const AlgebraShape& shape);
  static AlgebraElement unit(const AlgebraShape& shape);
  /// Central element with the given scalar on each block diagonal.
  static AlgebraElement from_block_scalars(
      const AlgebraShape& shape, const std::vector<std::complex<double>>& s);
  static AlgebraElement random(const AlgebraShape& shape, Rng& rng);
  static AlgebraElement random_hermitian(const AlgebraShape& shape, Rng& rng);

  const AlgebraShape& shape() const { return shape_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const CMat& block(int i) const { return blocks_[static_cast<size_t>(i)]; }

  AlgebraElement operator+(const AlgebraElement& rhs) const;
  AlgebraElement operator-(const AlgebraElement& rhs) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& rhs) const;  // blockwise product
  AlgebraElement adjoint() const;

  /// |a| = (a*a)^{1/2}, blockwise.
  AlgebraElement abs() const;

  /// C*-norm: max over blocks of the operator norm.
  double norm() const;
  double frobenius_norm() const;

  /// Smallest eigenvalue across blocks (input treated as Hermitian).
  double min_eigenvalue(const Tolerance& tol = {}) const;
  /// Smallest singular value across blocks (invertibility margin).
  double min_singular_value() const;

  double self_adjoint_defect() const;  // ‖a − a*‖_F
  double central_defect() const;       // ‖a − blockwise tr-mean·I‖_F

  bool is_self_adjoint(const Tolerance& tol = {}) const;
  bool is_central(const Tolerance& tol = {}) const;

 private:
  AlgebraShape shape_;
  std::vector<CMat> blocks_;
};

AlgebraElement operator*(std::complex<double> lambda, const AlgebraElement& a);
AlgebraElement operator*(double lambda, const AlgebraElement& a);

/// ‖L − R‖_F / max(‖L‖_F, ‖R‖_F, 1).
double rel_residual(const AlgebraElement& lhs, const AlgebraElement& rhs);

/// lambda_min(b − a) across blocks (both treated as Hermitian).
double loewner_slack(const AlgebraElement& a, const AlgebraElement& b,
                     const Tolerance& tol = {});

}  // namespace bohrmod
