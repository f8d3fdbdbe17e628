#include "crysgar/isometry.hpp"

#include <sstream>

namespace crysgar {

EuclideanIsometry::EuclideanIsometry(QMatrix A, QVector b)
    : A_(std::move(A)), b_(std::move(b)) {
  CRYSGAR_CHECK(A_.rows() == A_.cols() && A_.rows() == b_.dim(),
                "isometry: shape mismatch");
  CRYSGAR_CHECK(A_.transpose() * A_ == QMatrix::identity(A_.rows()),
                "isometry: linear part not orthogonal");
}

EuclideanIsometry EuclideanIsometry::identity(std::size_t dim) {
  return EuclideanIsometry(QMatrix::identity(dim), QVector(dim));
}

EuclideanIsometry EuclideanIsometry::translation(const QVector& lambda) {
  return EuclideanIsometry(QMatrix::identity(lambda.dim()), lambda);
}

EuclideanIsometry EuclideanIsometry::reflection(const QVector& alpha, const Rational& c) {
  CRYSGAR_CHECK(!alpha.is_zero(), "reflection: zero normal vector");
  const std::size_t d = alpha.dim();
  Rational n2 = dot(alpha, alpha);
  QVector alpha_check = alpha * (Rational(2) / n2);
  QMatrix A = QMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) A.at(i, j) -= alpha_check[i] * alpha[j];
  QVector b = alpha_check * c;
  return EuclideanIsometry(std::move(A), std::move(b));
}

QVector EuclideanIsometry::apply(const QVector& x) const { return A_ * x + b_; }

EuclideanIsometry EuclideanIsometry::compose(const EuclideanIsometry& v) const {
  return EuclideanIsometry(A_ * v.A_, A_ * v.b_ + b_);
}

EuclideanIsometry EuclideanIsometry::inverse() const {
  QMatrix At = A_.transpose();
  QVector nb = -(At * b_);
  return EuclideanIsometry(std::move(At), std::move(nb));
}

EuclideanIsometry EuclideanIsometry::conjugate_by(const EuclideanIsometry& g) const {
  return g.compose(*this).compose(g.inverse());
}

bool EuclideanIsometry::is_identity() const {
  return A_ == QMatrix::identity(dim()) && b_.is_zero();
}

bool EuclideanIsometry::is_translation() const {
  return A_ == QMatrix::identity(dim());
}

AffineSubspace EuclideanIsometry::mov() const {
  QMatrix AmI = A_ - QMatrix::identity(dim());
  std::vector<QVector> cols;
  for (std::size_t j = 0; j < dim(); ++j) cols.push_back(AmI.column(j));
  return AffineSubspace(b_, cols);
}

bool EuclideanIsometry::elliptic() const { return mov().contains_point(QVector(dim())); }

QVector EuclideanIsometry::min_displacement() const { return mov().standard_form(); }

AffineSubspace EuclideanIsometry::min_set() const {
  // (A - I) eta + b = p*, with p* the minimal displacement.
  QMatrix AmI = A_ - QMatrix::identity(dim());
  auto sol = solve(AmI, min_displacement() - b_);
  CRYSGAR_CHECK(sol.has_value(), "min_set: displacement equation inconsistent");
  return AffineSubspace(sol->particular, sol->kernel);
}

AffineSubspace EuclideanIsometry::fix() const {
  CRYSGAR_CHECK(elliptic(), "fix: isometry is not elliptic");
  return min_set();
}

std::size_t EuclideanIsometry::dim_mov() const { return mov().dim(); }

std::size_t EuclideanIsometry::isom_length() const {
  return dim_mov() + (elliptic() ? 0 : 2);
}

bool EuclideanIsometry::is_reflection() const {
  return dim_mov() == 1 && elliptic() && compose(*this).is_identity();
}

std::string EuclideanIsometry::str() const {
  std::ostringstream os;
  os << "A=\n" << A_.str() << "b=" << b_.str();
  return os.str();
}

const std::string& EuclideanIsometry::key() const {
  if (key_cache_.empty()) {
    std::ostringstream os;
    for (std::size_t i = 0; i < A_.rows(); ++i)
      for (std::size_t j = 0; j < A_.cols(); ++j)
        os << to_string(A_.at(i, j)) << ",";
    os << "|";
    for (std::size_t i = 0; i < b_.dim(); ++i) os << to_string(b_[i]) << ",";
    key_cache_ = os.str();
  }
  return key_cache_;
}

bool isom_leq(const EuclideanIsometry& u, const EuclideanIsometry& v) {
  EuclideanIsometry rest = u.inverse().compose(v);
  return u.isom_length() + rest.isom_length() == v.isom_length();
}

}  // namespace crysgar
