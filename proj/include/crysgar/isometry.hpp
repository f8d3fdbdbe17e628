#pragma once

// Euclidean isometries of Q^d in the form eta -> A*eta + b with A
// orthogonal, together with their basic geometric invariants: the move-set
// Mov(u) = im(A - I) + b, the min-set Min(u) (points of minimal
// displacement), ellipticity (0 in Mov) and the reflection length of u in
// the full isometry group, which is dim Mov(u) for elliptic u and
// dim Mov(u) + 2 for hyperbolic u.

#include "crysgar/linalg.hpp"

#include <string>

namespace crysgar {

class EuclideanIsometry {
 public:
  EuclideanIsometry() = default;
  EuclideanIsometry(QMatrix A, QVector b);

  static EuclideanIsometry identity(std::size_t dim);
  static EuclideanIsometry translation(const QVector& lambda);
  /// Affine reflection through the hyperplane <alpha, eta> = c, i.e.
  /// eta -> eta - (<alpha,eta> - c) * alpha_check with
  /// alpha_check = 2 alpha / <alpha,alpha>.
  static EuclideanIsometry reflection(const QVector& alpha, const Rational& c);

  std::size_t dim() const { return b_.dim(); }
  const QMatrix& linear() const { return A_; }
  const QVector& trans() const { return b_; }

  QVector apply(const QVector& x) const;
  /// Left-action composition: (u.compose(v))(x) = u(v(x)).
  EuclideanIsometry compose(const EuclideanIsometry& v) const;
  EuclideanIsometry inverse() const;
  EuclideanIsometry conjugate_by(const EuclideanIsometry& g) const;  // g u g^-1

  bool operator==(const EuclideanIsometry& o) const {
    return A_ == o.A_ && b_ == o.b_;
  }
  bool operator!=(const EuclideanIsometry& o) const { return !(*this == o); }

  bool is_identity() const;
  bool is_translation() const;

  /// Move-set Mov(u) = { u(x) - x : x in Q^d } = im(A - I) + b.
  AffineSubspace mov() const;
  /// 0 in Mov(u)?  (Equivalently: u has a fixed point.)
  bool elliptic() const;
  /// The translation part of u after minimising displacement: the point of
  /// Mov(u) nearest the origin.  Zero iff elliptic.
  QVector min_displacement() const;
  /// Min-set: points realising the minimal displacement.  For elliptic u
  /// this is Fix(u).  Never empty.
  AffineSubspace min_set() const;
  /// Fixed-point set; requires elliptic.
  AffineSubspace fix() const;
  std::size_t dim_mov() const;
  /// Reflection length in the full isometry group of Q^d:
  /// dim Mov (+2 if hyperbolic).
  std::size_t isom_length() const;

  /// Is this an affine reflection (elliptic involution moving one
  /// dimension)?
  bool is_reflection() const;

  std::string str() const;
  /// Deterministic serialisation usable as an ordered map key.  Cached:
  /// isometries are immutable once constructed, so the first computation
  /// is reused (and travels along with copies).
  const std::string& key() const;

 private:
  QMatrix A_;
  QVector b_;
  mutable std::string key_cache_;
};

/// Reflection-length additivity u <= v in the absolute order on the full
/// isometry group: |u| + |u^-1 v| == |v|.
bool isom_leq(const EuclideanIsometry& u, const EuclideanIsometry& v);

}  // namespace crysgar
