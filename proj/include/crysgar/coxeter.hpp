#pragma once

// Crystallographic root systems of types B, C, D, E, F, G (family A is
// deliberately not supported) and the geometry of the associated euclidean
// reflection group: the bipartite affine Coxeter element w, its glide
// vector, the horizontal root subsystem and its components, the coarse
// translations below w, the factored translation vectors, and the
// horizontal reflections below w.  Everything here is exact and
// deterministic; all derived sets come with certificates (explicit
// reflection factorizations) rather than being assumed.

#include "crysgar/isometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crysgar {

enum class Family { B, C, D, E, F, G };

struct DynkinType {
  Family family;
  int rank;

  /// Parse strings like "C~2", "D~4", "E~8".  Family A raises
  /// UnsupportedError; malformed strings raise ParseError.
  static DynkinType parse(const std::string& text);
  std::string str() const;
  bool operator==(const DynkinType& o) const {
    return family == o.family && rank == o.rank;
  }
};

/// Total order on exact vectors (lexicographic on coordinates); used to
/// keep every enumerated set in a canonical order.
bool vec_less(const QVector& a, const QVector& b);

/// Flip sign so the first nonzero coordinate is positive.  Two opposite
/// root vectors describe the same wall family; this picks the
/// representative.
QVector canonical_sign(const QVector& v);

class RootSystem {
 public:
  explicit RootSystem(DynkinType type);

  const DynkinType& type() const { return type_; }
  std::size_t ambient_dim() const { return d_; }
  std::size_t rank() const { return n_; }

  const std::vector<QVector>& simple_roots() const { return simple_; }
  const QVector& highest_root() const { return highest_; }
  /// Coefficients of the highest root over the simple roots.
  const std::vector<Int>& marks() const { return marks_; }
  /// All roots, closed under the Weyl group, in canonical order.
  const std::vector<QVector>& roots() const { return roots_; }
  /// One representative per antipodal pair, in canonical order.
  const std::vector<QVector>& root_pairs() const { return pairs_; }
  bool is_root(const QVector& v) const;

  static QVector coroot(const QVector& alpha);

  /// Basis of the span of the roots.  Coincides with Q^d except in the
  /// ambient embeddings used for G2 (inside Q^3) and E6, E7 (inside Q^8).
  const std::vector<QVector>& essential_basis() const { return essential_; }

 private:
  DynkinType type_;
  std::size_t d_ = 0, n_ = 0;
  std::vector<QVector> simple_;
  QVector highest_;
  std::vector<Int> marks_;
  std::vector<QVector> roots_;
  std::vector<QVector> pairs_;
  std::vector<QVector> essential_;
};

/// A reflection of the affine reflection group, named by a canonically
/// signed root and an integer offset: the fixed wall is <root, x> = offset.
struct WallReflection {
  QVector root;
  Int offset;
  std::string str() const;
};

/// The full geometric package attached to the bipartite Coxeter element
/// w = iota_b * iota_g of an irreducible euclidean reflection group.
///
/// Node 0 of the extended diagram carries the affine reflection through
/// <highest_root, x> = 1; nodes 1..n carry the linear simple reflections.
/// The diagram is a tree (family A excluded), 2-coloured so that node 0 is
/// "blue"; iota_b and iota_g are the products of the blue resp. green
/// reflections (each set commutes pairwise).
class EuclideanCoxeter {
 public:
  explicit EuclideanCoxeter(DynkinType type);

  const DynkinType& type() const { return rs_.type(); }
  const RootSystem& roots() const { return rs_; }
  std::size_t rank() const { return rs_.rank(); }
  std::size_t ambient_dim() const { return rs_.ambient_dim(); }

  /// Affine simple reflections; index 0 is the one through the wall
  /// <highest_root, x> = 1.
  const std::vector<EuclideanIsometry>& diagram_reflections() const { return node_refl_; }
  const std::vector<bool>& node_is_blue() const { return blue_; }
  const EuclideanIsometry& iota_b() const { return iota_b_; }
  const EuclideanIsometry& iota_g() const { return iota_g_; }
  const EuclideanIsometry& w() const { return w_; }
  /// w0 = (node-0 reflection)^-1 * w, the complement of node 0 inside w.
  const EuclideanIsometry& w0() const { return w0_; }
  /// The n+1 reflections whose ordered product is w (blue block, then
  /// green block); this word is the base length certificate for w.
  const std::vector<EuclideanIsometry>& coxeter_word() const { return cox_word_; }

  const QVector& mu_check() const { return mu_check_; }
  /// Glide displacement of w; equals the orbit average of mu_check under
  /// the linear part, and the common vertical part of all coarse
  /// translation vectors.
  const QVector& gamma() const { return gamma_; }
  /// Order of the linear part of w.
  int e0() const { return e0_; }
  /// w^e0 = translation by e0 * gamma.
  const EuclideanIsometry& axis_translation() const { return t_axis_; }
  /// Conjugation by the axis translation w^e0.
  EuclideanIsometry axis_conjugate(const EuclideanIsometry& u) const;

  bool is_horizontal(const QVector& root) const;
  /// Horizontal root pairs (canonical representatives).
  const std::vector<QVector>& horizontal_pairs() const { return hpairs_; }
  /// Connected components of the horizontal subsystem, as index lists
  /// into horizontal_pairs().
  const std::vector<std::vector<std::size_t>>& horizontal_components() const {
    return hcomp_;
  }
  std::size_t k0() const { return hcomp_.size(); }
  /// Orthogonal projection of v onto the span of component i.
  QVector project_component(std::size_t i, const QVector& v) const;

  /// Translation vectors lambda with t_lambda below w in the reflection
  /// group order, each certified by an explicit factorization
  /// w = r * r' * (chain of rank-1 reflections).
  const std::vector<QVector>& coarse_vectors() const { return coarse_; }
  /// Elliptic complement h_lambda = t_lambda^-1 * w of each coarse vector.
  const std::vector<EuclideanIsometry>& coarse_complements() const { return coarse_h_; }

  /// Horizontal reflections below w (exactly two per horizontal pair).
  const std::vector<WallReflection>& horizontal_reflections() const { return hrefl_; }

  /// Factored translation vectors (empty when the horizontal system is
  /// connected): component projections of the coarse vectors, shifted by
  /// gamma / k0.
  const std::vector<QVector>& factored_vectors() const { return ft_; }

  EuclideanIsometry reflection(const QVector& root, const Rational& offset) const;
  EuclideanIsometry reflection(const WallReflection& wr) const;
  /// Recognise u as a reflection of the affine reflection group
  /// (root in the root system, integral offset), canonically signed.
  std::optional<WallReflection> identify_reflection(const EuclideanIsometry& u) const;

  /// All reflections of the group whose wall contains F (one per
  /// admissible root pair; the offset is forced by F).
  std::vector<WallReflection> reflections_fixing(const AffineSubspace& F) const;

  /// Factor an elliptic element of the group into dim Mov(h) reflections
  /// of the group (a minimal factorization; every prefix is elliptic).
  /// Returns nullopt when h admits no such factorization.
  std::optional<std::vector<WallReflection>> elliptic_reflection_chain(
      const EuclideanIsometry& h) const;

  /// Does u have, once the directions orthogonal to all roots are
  /// discarded, a single fixed point?  (dim Min == ambient - rank.)
  bool essentially_point_minset(const EuclideanIsometry& u) const;

 private:
  RootSystem rs_;
  std::vector<EuclideanIsometry> node_refl_;
  std::vector<QVector> node_root_;  // node 0: -highest, node i: alpha_i
  std::vector<bool> blue_;
  EuclideanIsometry iota_b_, iota_g_, w_, w0_;
  std::vector<EuclideanIsometry> cox_word_;
  QVector mu_check_;
  QVector gamma_;
  int e0_ = 0;
  EuclideanIsometry t_axis_;
  std::vector<QVector> hpairs_;
  std::vector<std::vector<std::size_t>> hcomp_;
  std::vector<std::vector<QVector>> hcomp_basis_;
  std::vector<QVector> coarse_;
  std::vector<EuclideanIsometry> coarse_h_;
  std::vector<WallReflection> hrefl_;
  std::vector<QVector> ft_;
};

}  // namespace crysgar
