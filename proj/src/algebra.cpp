#include "bohrmod/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bohrmod/errors.hpp"

namespace bohrmod {

int AlgebraShape::linear_dim() const {
  int d = 0;
  for (int n : block_dims) d += n * n;
  return d;
}

void AlgebraShape::validate() const {
  if (block_dims.empty())
    throw std::invalid_argument("algebra shape needs at least one block");
  for (int n : block_dims) {
    if (n < 1)
      throw std::invalid_argument("algebra block dimension must be >= 1");
  }
  if (linear_dim() > kMaxDim)
    throw std::invalid_argument("algebra shape exceeds the dimension cap");
}

AlgebraShape AlgebraShape::parse(const std::string& text) {
  AlgebraShape shape;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, '+')) {
    size_t pos = 0;
    int n = 0;
    try {
      n = std::stoi(piece, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad algebra shape: '" + text + "'");
    }
    if (pos != piece.size())
      throw std::invalid_argument("bad algebra shape: '" + text + "'");
    shape.block_dims.push_back(n);
  }
  // getline swallows an empty trailing piece, so "2+" would parse as "2".
  const auto seps = std::count(text.begin(), text.end(), '+');
  if (shape.block_dims.size() != static_cast<size_t>(seps) + 1)
    throw std::invalid_argument("bad algebra shape: '" + text + "'");
  shape.validate();
  return shape;
}

std::string AlgebraShape::to_string() const {
  std::string out;
  for (size_t i = 0; i < block_dims.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(block_dims[i]);
  }
  return out;
}

AlgebraElement::AlgebraElement(AlgebraShape shape, std::vector<CMat> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  shape_.validate();
  if (blocks_.size() != shape_.block_dims.size())
    throw std::invalid_argument("block count does not match algebra shape");
  for (size_t i = 0; i < blocks_.size(); ++i) {
    int n = shape_.block_dims[i];
    if (blocks_[i].rows() != n || blocks_[i].cols() != n)
      throw std::invalid_argument("block size does not match algebra shape");
    if (!finite_entries(blocks_[i]))
      throw NumericError("algebra element has non-finite entries");
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraShape& shape) {
  std::vector<CMat> blocks;
  for (int n : shape.block_dims) blocks.push_back(CMat::Zero(n, n));
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::unit(const AlgebraShape& shape) {
  std::vector<CMat> blocks;
  for (int n : shape.block_dims) blocks.push_back(CMat::Identity(n, n));
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::from_block_scalars(
    const AlgebraShape& shape, const std::vector<std::complex<double>>& s) {
  if (s.size() != shape.block_dims.size())
    throw std::invalid_argument("scalar count does not match block count");
  std::vector<CMat> blocks;
  for (size_t i = 0; i < s.size(); ++i) {
    int n = shape.block_dims[i];
    blocks.push_back(s[i] * CMat::Identity(n, n));
  }
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::random(const AlgebraShape& shape, Rng& rng) {
  std::vector<CMat> blocks;
  for (int n : shape.block_dims) blocks.push_back(random_gaussian(n, n, rng));
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::random_hermitian(const AlgebraShape& shape,
                                                Rng& rng) {
  std::vector<CMat> blocks;
  for (int n : shape.block_dims)
    blocks.push_back(bohrmod::random_hermitian(n, rng));
  return {shape, std::move(blocks)};
}

namespace {

void require_same_shape(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.shape() == b.shape()))
    throw std::invalid_argument("algebra shapes do not match");
}

}  // namespace

AlgebraElement AlgebraElement::operator+(const AlgebraElement& rhs) const {
  require_same_shape(*this, rhs);
  std::vector<CMat> blocks;
  for (int i = 0; i < block_count(); ++i)
    blocks.push_back(blocks_[static_cast<size_t>(i)] + rhs.block(i));
  return {shape_, std::move(blocks)};
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& rhs) const {
  require_same_shape(*this, rhs);
  std::vector<CMat> blocks;
  for (int i = 0; i < block_count(); ++i)
    blocks.push_back(blocks_[static_cast<size_t>(i)] - rhs.block(i));
  return {shape_, std::move(blocks)};
}

AlgebraElement AlgebraElement::operator-() const {
  std::vector<CMat> blocks;
  for (const CMat& b : blocks_) blocks.push_back(-b);
  return {shape_, std::move(blocks)};
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& rhs) const {
  require_same_shape(*this, rhs);
  std::vector<CMat> blocks;
  for (int i = 0; i < block_count(); ++i)
    blocks.push_back(blocks_[static_cast<size_t>(i)] * rhs.block(i));
  return {shape_, std::move(blocks)};
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<CMat> blocks;
  for (const CMat& b : blocks_) blocks.push_back(b.adjoint());
  return {shape_, std::move(blocks)};
}

AlgebraElement AlgebraElement::abs() const {
  std::vector<CMat> blocks;
  for (const CMat& b : blocks_) blocks.push_back(sqrt_psd(b.adjoint() * b));
  return {shape_, std::move(blocks)};
}

double AlgebraElement::norm() const {
  double out = 0.0;
  for (const CMat& b : blocks_) out = std::max(out, operator_norm(b));
  return out;
}

double AlgebraElement::frobenius_norm() const {
  double sq = 0.0;
  for (const CMat& b : blocks_) sq += b.squaredNorm();
  return std::sqrt(sq);
}

double AlgebraElement::min_eigenvalue(const Tolerance& tol) const {
  double out = std::numeric_limits<double>::infinity();
  for (const CMat& b : blocks_) {
    HermitianEig eig = eig_hermitian(b, tol);
    out = std::min(out, eig.eigenvalues(0));
  }
  return out;
}

double AlgebraElement::min_singular_value() const {
  double out = std::numeric_limits<double>::infinity();
  for (const CMat& b : blocks_)
    out = std::min(out, bohrmod::min_singular_value(b));
  return out;
}

double AlgebraElement::self_adjoint_defect() const {
  double sq = 0.0;
  for (const CMat& b : blocks_) sq += (b - CMat(b.adjoint())).squaredNorm();
  return std::sqrt(sq);
}

double AlgebraElement::central_defect() const {
  double sq = 0.0;
  for (const CMat& b : blocks_) {
    std::complex<double> mean = b.trace() / double(b.rows());
    sq += (b - mean * CMat::Identity(b.rows(), b.cols())).squaredNorm();
  }
  return std::sqrt(sq);
}

bool AlgebraElement::is_self_adjoint(const Tolerance& tol) const {
  return self_adjoint_defect() <= tol.bound(frobenius_norm());
}

bool AlgebraElement::is_central(const Tolerance& tol) const {
  return central_defect() <= tol.bound(frobenius_norm());
}

AlgebraElement operator*(std::complex<double> lambda, const AlgebraElement& a) {
  std::vector<CMat> blocks;
  for (int i = 0; i < a.block_count(); ++i) blocks.push_back(lambda * a.block(i));
  return {a.shape(), std::move(blocks)};
}

AlgebraElement operator*(double lambda, const AlgebraElement& a) {
  return std::complex<double>(lambda, 0.0) * a;
}

double rel_residual(const AlgebraElement& lhs, const AlgebraElement& rhs) {
  double diff = (lhs - rhs).frobenius_norm();
  double scale =
      std::max({lhs.frobenius_norm(), rhs.frobenius_norm(), 1.0});
  return diff / scale;
}

double loewner_slack(const AlgebraElement& a, const AlgebraElement& b,
                     const Tolerance& tol) {
  return (b - a).min_eigenvalue(tol);
}

}  // namespace bohrmod
