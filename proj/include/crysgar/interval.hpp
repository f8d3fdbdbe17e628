#pragma once

// The dual interval attached to the bipartite Coxeter element w: atoms
// (vertical reflections with arbitrary integer offset, the finitely many
// horizontal reflections below w, and the factored translations), weights
// valued in (1/k0)Z, and the three-valued divisibility engine.
//
// A Simple is a *certified* interval element: its weight field is its
// honest length over the crystallographic generating set, established by
// construction (atoms, w itself, complements, tau-twists, and quotients
// along decided divisions).  Division queries return yes/no/unknown;
// unknown only ever arises when a vertical search direction degenerates to
// a full line of admissible offsets and the scan window clips it.  Unknown
// is never converted to yes or no.

#include "crysgar/coxeter.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crysgar {

enum class AtomKind { vertical, horizontal, factored };

struct Atom {
  AtomKind kind;
  EuclideanIsometry iso;
  Rational weight;
  std::string name;  // token form: r[i,k], hr[j], ft[j]
  // Reflection atoms carry their canonical wall; factored ones their vector.
  QVector root;
  Int offset;
  QVector vec;
};

/// Certified interval element: isometry plus its certified weight.
struct Simple {
  EuclideanIsometry iso;
  Rational weight;
  bool operator==(const Simple& o) const { return iso == o.iso && weight == o.weight; }
  bool operator!=(const Simple& o) const { return !(*this == o); }
};

/// Set of admissible integer offsets along one vertical root direction.
struct KSet {
  enum Kind { empty, single, all } kind = empty;
  Int k;  // meaningful only for single
};

/// Result of a common-atom search: the verdict says whether a common atom
/// exists; `atom` is set exactly when the verdict is yes.
struct AtomSearch {
  Verdict verdict = Verdict::no;
  std::optional<Atom> atom;
};

enum class Side { left, right };

class IntervalCtx {
 public:
  /// kwindow = 0 picks the default scan window 3*(rank+1) for the
  /// line-of-offsets fallback inside hyperbolic factor searches.
  explicit IntervalCtx(DynkinType type, long kwindow = 0);

  const EuclideanCoxeter& geo() const { return geo_; }
  std::size_t rank() const { return geo_.rank(); }
  long kwindow() const { return kwindow_; }

  /// Number of times a clipped window forced an unknown so far.
  long clipped_events() const { return clipped_events_; }

  /// Number of unknown verdicts handed to callers through the public
  /// division entry points (divides / common_atom / factor_search).
  /// Internal exploration that is later overridden by a definite answer
  /// does not count.
  long unknown_returns() const { return unknown_returns_; }

  // ---- atoms -----------------------------------------------------------

  /// Canonical representatives of the vertical root pairs, in canonical
  /// order; r[i,k] is the reflection through <pair[i], x> = k.
  const std::vector<QVector>& vertical_pairs() const { return vpairs_; }
  Atom vertical_atom(std::size_t pair_index, const Int& k) const;
  const std::vector<Atom>& horizontal_atoms() const { return hatoms_; }
  const std::vector<Atom>& factored_atoms() const { return fatoms_; }
  Rational min_atom_weight() const;

  /// Recognise an isometry as an atom of the interval.
  std::optional<Atom> atom_of_isometry(const EuclideanIsometry& u) const;

  // ---- simples ---------------------------------------------------------

  Simple one() const;
  Simple delta() const;  // w, weight rank+1
  bool is_one(const Simple& s) const;
  bool is_delta(const Simple& s) const;
  Simple atom_simple(const Atom& a) const { return Simple{a.iso, a.weight}; }

  /// delta-conjugation tau(s) = Delta^-1 s Delta and its inverse; both
  /// preserve certification.
  /// w^m, cached (tau-powers and normal-form bookkeeping hit this on
  /// every factor, so it must not recompute products).
  const EuclideanIsometry& w_power(long m) const;
  Simple tau(const Simple& s) const;
  Simple tau_inv(const Simple& s) const;
  Simple tau_pow(const Simple& s, long m) const;
  Atom tau_atom(const Atom& a, long m) const;

  /// Left and right complements: delta_l(s) = s^-1 w, delta_r(s) = w s^-1.
  Simple complement_left(const Simple& s) const;
  Simple complement_right(const Simple& s) const;

  /// Quotients; require a decided division (caller responsibility).
  Simple left_quotient(const Atom& a, const Simple& s) const;   // a^-1 s
  Simple right_quotient(const Simple& s, const Atom& a) const;  // s a^-1
  /// Certified product: valid when the division test (t divides the
  /// complement of s on the inner side) has been decided yes.
  Simple product(const Simple& s, const Simple& t) const;

  // ---- division --------------------------------------------------------

  /// Does atom a divide the certified simple s on the given side?
  Verdict divides(Side side, const Atom& a, const Simple& s);

  /// Admissible offsets k with r[pair,k] dividing s on the given side.
  /// Exact (never unknown, never windowed).
  KSet vertical_kset(Side side, std::size_t pair_index, const Simple& s);

  /// Search for an atom dividing both u and v on the given side.
  AtomSearch common_atom(Side side, const Simple& u, const Simple& v);

  /// All atoms dividing an elliptic simple (finite, exact).
  std::vector<Atom> atoms_dividing_elliptic(const Simple& s) const;

  /// Can v be written as an atom chain of total weight exactly q?
  /// Callers must guarantee q <= (true length of v); then yes-answers
  /// certify equality.  Memoized.
  Verdict factor_search(const EuclideanIsometry& v, const Rational& q);

 private:
  Verdict divides_impl(Side side, const Atom& a, const Simple& s);
  Verdict factor_search_impl(const EuclideanIsometry& v, const Rational& q);
  KSet vertical_kset_impl(Side side, std::size_t pair_index, const Simple& s);

  struct BoundaryLine {
    // Fixed point of the relevant complement of r[pair,k] as an affine
    // function of k: p(k) = p0 + k * dir.
    QVector p0, dir;
  };
  const BoundaryLine& boundary_line(Side side, std::size_t pair_index);
  KSet kset_point_in(const BoundaryLine& line, const AffineSubspace& F) const;
  EuclideanIsometry vertical_iso(std::size_t pair_index, const Int& k) const;

  EuclideanCoxeter geo_;
  long kwindow_;
  std::vector<QVector> vpairs_;
  std::vector<Atom> hatoms_;
  std::vector<Atom> fatoms_;
  std::map<std::string, BoundaryLine> boundary_cache_;
  std::map<std::string, Verdict> factor_memo_;
  std::map<std::string, KSet> kset_memo_;
  mutable std::map<long, EuclideanIsometry> wpow_;
  long clipped_events_ = 0;
  long unknown_returns_ = 0;
};

}  // namespace crysgar
