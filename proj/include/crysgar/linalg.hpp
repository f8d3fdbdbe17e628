#pragma once

// Exact rational linear algebra: dense vectors/matrices over Q and affine
// subspaces of Q^d.  Sizes here are tiny (d <= 8), so everything is plain
// Gaussian elimination with exact pivots; no fraction-free tricks needed.

#include "crysgar/common.hpp"

#include <optional>
#include <vector>

namespace crysgar {

class QVector {
 public:
  QVector() = default;
  explicit QVector(std::size_t dim) : c_(dim, Rational(0)) {}
  QVector(std::initializer_list<Rational> xs) : c_(xs) {}
  explicit QVector(std::vector<Rational> xs) : c_(std::move(xs)) {}

  std::size_t dim() const { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }

  bool is_zero() const;

  QVector operator+(const QVector& o) const;
  QVector operator-(const QVector& o) const;
  QVector operator-() const;
  QVector operator*(const Rational& s) const;
  bool operator==(const QVector& o) const { return c_ == o.c_; }
  bool operator!=(const QVector& o) const { return !(*this == o); }

  const std::vector<Rational>& coords() const { return c_; }
  std::string str() const;

 private:
  std::vector<Rational> c_;
};

Rational dot(const QVector& a, const QVector& b);

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static QMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors.
  static QMatrix from_columns(const std::vector<QVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  QMatrix operator*(const QMatrix& o) const;
  QVector operator*(const QVector& v) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix transpose() const;
  bool operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const QMatrix& o) const { return !(*this == o); }

  QVector column(std::size_t j) const;
  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;  // row major
};

/// Rank of a set of vectors (exact).
std::size_t rank_of(const std::vector<QVector>& vecs);

/// Extract a maximal linearly independent subset, in input order.
std::vector<QVector> independent_subset(const std::vector<QVector>& vecs);

/// Is x in the linear span of `span`?
bool in_span(const std::vector<QVector>& span, const QVector& x);

/// Solution set of A x = b as {particular, kernel-basis}; nullopt if
/// inconsistent.
struct LinearSolution {
  QVector particular;
  std::vector<QVector> kernel;  // basis of the homogeneous solutions
};
std::optional<LinearSolution> solve(const QMatrix& A, const QVector& b);

/// An affine subspace of Q^d represented as point + span(basis).
/// The empty set is *not* representable; operations that can produce it
/// return std::optional.  Basis vectors are kept linearly independent but
/// otherwise unreduced; equality is decided by mutual containment.
class AffineSubspace {
 public:
  AffineSubspace(QVector point, std::vector<QVector> basis);

  /// The whole space Q^d.
  static AffineSubspace whole(std::size_t dim);
  /// A single point.
  static AffineSubspace point_space(const QVector& p);
  /// Linear span of vectors (through the origin).
  static AffineSubspace span_of(std::size_t dim, const std::vector<QVector>& vecs);

  std::size_t ambient_dim() const { return point_.dim(); }
  std::size_t dim() const { return basis_.size(); }
  const QVector& point() const { return point_; }
  const std::vector<QVector>& basis() const { return basis_; }

  bool contains_point(const QVector& x) const;
  bool contains(const AffineSubspace& other) const;
  bool operator==(const AffineSubspace& other) const;
  bool operator!=(const AffineSubspace& other) const { return !(*this == other); }

  /// Direction space as a linear subspace (same basis, through 0).
  AffineSubspace direction() const;
  AffineSubspace translate(const QVector& v) const;

  /// Intersection; nullopt when empty.
  std::optional<AffineSubspace> intersect(const AffineSubspace& other) const;

  /// Orthogonal projection of x onto this subspace (normal equations,
  /// exact over Q).
  QVector project(const QVector& x) const;

  /// The point of the subspace closest to the origin.  For a linear
  /// subspace this is 0; the name follows the convention that a move-set
  /// is "standard" when this point is the zero vector.
  QVector standard_form() const { return project(QVector(ambient_dim())); }

  /// Basis of the orthogonal complement of the *direction* of this
  /// subspace (a linear subspace of Q^d).
  std::vector<QVector> orth_complement_basis() const;

  std::string str() const;

 private:
  QVector point_;
  std::vector<QVector> basis_;
};

}  // namespace crysgar
