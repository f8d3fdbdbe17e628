#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crysgar/garside.hpp"

namespace crysgar {

/// Fixed coarse-geometry constants of the additional-length graph.
/// They are consumed as given inputs of the toolkit, not re-derived:
/// the graph is hyperbolicity-hyperbolic, preferred paths stay within
/// Hausdorff distance quasigeodesic of geodesics, and preferred-path
/// triangles are thinness-thin.
struct GraphConstants {
  long hyperbolicity = 60;
  long quasigeodesic = 39;
  long thinness = 2;
};

/// A vertex of the additional-length graph: a coset g * D^Z, stored via
/// its distinguished representative of infimum zero (left normal form).
/// Two vertices are equal iff their keys are equal.
struct ALVertex {
  GroupElement rep;
  std::string key;
};

/// One generator of a finite edge window used by graph explorations.
/// kind == simple: g is a single proper simple factor (always an edge).
/// kind == absorbable: g is an absorbable element; `absorber` stores the
/// element h certifying it (inf(hg) == inf(h) and sup(hg) == sup(h)).
/// Speculative absorbable edges without a certificate are not accepted.
struct EdgeGen {
  enum class Kind { simple, absorbable };
  Kind kind = Kind::simple;
  GroupElement g;
  std::optional<GroupElement> absorber;
  std::string name;
};

/// Result of an axis-projection scan: the value together with the window
/// that certified it (the predicate transition was strictly inside).
struct LambdaResult {
  long value = 0;
  long window = 0;
};

/// Outcome of the contraction check between two vertices.  When
/// `contained` is false the two key sequences act as a falsifier.
struct ContractionReport {
  long lambda1 = 0;
  long lambda2 = 0;
  bool contained = false;
  std::size_t start_index = 0;          ///< offset of the axis subpath in path_keys
  std::vector<std::string> axis_keys;   ///< vertices of A(X^{L1+1}, X^{L2-1})
  std::vector<std::string> path_keys;   ///< vertices of A(V1, V2)
};

/// Additional-length-graph toolkit over a Garside engine: vertices,
/// preferred paths, the axis projection, the contraction property and
/// witness-based distance bounds.  The true graph metric is not
/// computable here (the edge set is infinite); every numeric answer is
/// either exact coset/path combinatorics or an explicitly certified
/// upper bound, never a guess.
class ALGraph {
 public:
  explicit ALGraph(GarsideEngine& eng);

  GarsideEngine& engine() const { return eng_; }
  const GraphConstants& constants() const { return constants_; }

  /// The coset g * D^Z as a vertex; rep = g * D^{-inf(g)}.
  ALVertex vertex_of(const GroupElement& g) const;
  /// The base vertex (coset of the identity).
  ALVertex base() const;
  /// The axis vertex X^k (coset of x^k).
  ALVertex axis_vertex(long k) const;
  bool same_vertex(const ALVertex& a, const ALVertex& b) const;
  /// Left-translation action g . V.
  ALVertex translate(const GroupElement& g, const ALVertex& v) const;

  /// Preferred path from a to b: the a.rep left translate of the path of
  /// normal-form prefixes of the distinguished representative of
  /// a.rep^{-1} * b.  Successive vertices differ by one proper simple.
  std::vector<ALVertex> preferred_path(const ALVertex& a,
                                       const ALVertex& b) const;

  /// Axis projection: value = -max{ k : x does not left-divide the
  /// distinguished representative of x^k * v }, located by scanning k
  /// over [-window, window].  window <= 0 selects the default
  /// 5 * sup(rep) + 10.  Throws WindowError when the predicate
  /// transition is not strictly inside the window (caller should widen)
  /// and InternalError when the scanned pattern is not a half-line.
  LambdaResult lambda_scan(const ALVertex& v, long window = 0) const;
  long lambda(const ALVertex& v, long window = 0) const {
    return lambda_scan(v, window).value;
  }

  /// Verify that A(V1,V2) contains A(X^{L1+1}, X^{L2-1}) as a contiguous
  /// subsequence of vertices, where Li are the axis projections of the
  /// endpoints.  Requires lambda gap >= 3; throws Error otherwise.
  ContractionReport check_contraction(const ALVertex& v1, const ALVertex& v2,
                                      long window = 0) const;

  /// Sanity bound |L(V2) - L(V1)| <= 2 * (d_upper + 2K + 1) where K is
  /// the quasigeodesic constant and d_upper is any certified upper bound
  /// on the graph distance.  Returns whether it holds; false falsifies
  /// the implementation (the true inequality is stronger).
  bool lipschitz_check(const ALVertex& v1, const ALVertex& v2, long d_upper,
                       long window = 0) const;

  /// Certified upper bound on the graph distance between a and b:
  /// breadth-first search in the subgraph whose edges are generated by
  /// the window elements and their inverses.  Restricting edges only
  /// removes connections, so any value returned is a valid upper bound.
  /// nullopt means "no bound found within the exploration budget" and
  /// never asserts that the true distance is infinite.
  std::optional<long> witness_distance_upper(
      const ALVertex& a, const ALVertex& b,
      const std::vector<EdgeGen>& edge_window, long max_depth = 8,
      std::size_t max_vertices = 200000) const;

  /// Upper bound on the graph distance read off the preferred path:
  /// consecutive preferred-path vertices are joined by simple edges, so
  /// the path length certifies a bound without any search.
  long path_distance_upper(const ALVertex& a, const ALVertex& b) const;

  /// A finite default edge window: every atom (vertical ones with
  /// |offset| <= atom_k) plus the normal-form factors of x, deduplicated
  /// by key.  All entries are simple-kind generators.
  std::vector<EdgeGen> default_edge_window(long atom_k = 1) const;

  /// Minimal edge window consisting of the normal-form factors of x
  /// only; keeps breadth-first searches along the axis tractable.
  std::vector<EdgeGen> axis_edge_window() const;

  /// Deterministic DOT rendering of the ball of the given radius around
  /// `center` in the edge-window-restricted subgraph.  Vertices are
  /// labelled by the normal form of their representative; edges carry
  /// kind=simple|absorbable and the generator name.
  std::string neighborhood_dot(const ALVertex& center, long radius,
                               const std::vector<EdgeGen>& edge_window) const;

 private:
  /// Whether x left-divides the distinguished representative of the
  /// coset of g.  Only the leading canonical-length-of-x factors of the
  /// representative can matter, so the test is bounded.
  bool axis_divides_rep(const GroupElement& g) const;
  void validate_window(const std::vector<EdgeGen>& edge_window) const;

  GarsideEngine& eng_;
  IntervalCtx& ctx_;
  GraphConstants constants_;
  /// Completed scans keyed by vertex key and resolved window; a scan is
  /// a pure function of those, so replaying it is wasted work.
  mutable std::map<std::string, LambdaResult> lambda_memo_;
};

}  // namespace crysgar
