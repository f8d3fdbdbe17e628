#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crysgar/interval.hpp"

namespace crysgar {

/// Element of the Garside group generated by the interval: a power of the
/// Garside element Delta (= w) times a sequence of certified simples.
/// Values produced by GarsideEngine are in left normal form: all factors
/// proper (0 < weight < rank+1) and consecutive pairs left-weighted.
struct GroupElement {
  long delta_pow = 0;
  std::vector<Simple> factors;
};

/// Negative-positive split g = neg^-1 * pos with trivial meet.
struct NPForm {
  GroupElement neg;
  GroupElement pos;
};

enum class SlideStrategy { leftmost, rightmost };

/// Normal forms, arithmetic and the distinguished loxodromic element x in
/// the group of fractions of the interval monoid.
class GarsideEngine {
 public:
  explicit GarsideEngine(IntervalCtx& ctx);

  IntervalCtx& ctx() const { return ctx_; }
  long rank() const { return static_cast<long>(ctx_.rank()); }

  // --- constructors -----------------------------------------------------
  GroupElement one() const;
  GroupElement delta_power(long k) const;
  GroupElement from_simple(const Simple& s) const;
  GroupElement from_atom(const Atom& a) const;
  /// Normalize an arbitrary word Delta^dpow * raw[0] * ... * raw[back].
  GroupElement make(long dpow, std::vector<Simple> raw,
                    SlideStrategy strategy = SlideStrategy::leftmost) const;

  // --- normal form & invariants -----------------------------------------
  GroupElement left_normal_form(const GroupElement& g) const;
  /// Same group element, rewritten as Delta^p * t_1...t_q with every
  /// consecutive pair right-weighted.
  GroupElement right_normal_form(const GroupElement& g) const;
  long inf(const GroupElement& g) const { return g.delta_pow; }
  long canonical_length(const GroupElement& g) const {
    return static_cast<long>(g.factors.size());
  }
  long sup(const GroupElement& g) const {
    return g.delta_pow + static_cast<long>(g.factors.size());
  }
  bool is_positive(const GroupElement& g) const { return g.delta_pow >= 0; }

  bool pair_left_weighted(const Simple& s, const Simple& t) const;
  bool pair_right_weighted(const Simple& s, const Simple& t) const;

  // --- arithmetic ---------------------------------------------------------
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement power(const GroupElement& g, long m) const;
  /// Conjugation by Delta^m: Delta^-m g Delta^m.
  GroupElement tau_elem(const GroupElement& g, long m) const;
  bool equals(const GroupElement& a, const GroupElement& b) const;
  /// The isometry obtained by multiplying the whole word out (the
  /// Delta-power contributes w^delta_pow).
  EuclideanIsometry evaluate(const GroupElement& g) const;

  NPForm np_form(const GroupElement& g) const;
  /// u <= g in the group order (u^-1 g positive).
  bool positive_prefix(const GroupElement& u, const GroupElement& g) const;
  /// Greatest common left divisor of two positive elements.
  GroupElement meet_positive(const GroupElement& a, const GroupElement& b) const;

  /// Rigidity for normal forms: the junction pair (tau^inf(last), first)
  /// is left-weighted, so powers concatenate.
  bool is_rigid(const GroupElement& g) const;
  /// Right complement g^-1 Delta^sup(g) of a positive element with inf 0;
  /// for a left+right normal form s_1..s_q this has normal form
  /// d(s_q), tau(d(s_{q-1})), ..., tau^{q-1}(d(s_1)).
  GroupElement boundary_elem(const GroupElement& g) const;

  // --- absorbability tooling ----------------------------------------------
  /// True = provably NOT absorbable: some normal-form factor has weight
  /// >= rank, and no proper simple extends such a factor inside a proper
  /// simple (a cofactor would need weight < 1, forcing an impossible
  /// weight-1/3 complement when k0 = 3 and being outright absent otherwise).
  bool rho_refute_absorbable(const GroupElement& g) const;
  /// Exact check of the defining equations inf(hg) = inf(h), sup(hg) = sup(h).
  bool verify_absorption_certificate(const GroupElement& g,
                                     const GroupElement& h) const;
  /// Breadth-first search over products of at most `radius` atoms (vertical
  /// offsets clamped to |k| <= atom_k); returns the first absorber found.
  std::optional<GroupElement> bounded_absorber_search(const GroupElement& g,
                                                      int radius,
                                                      long atom_k = 1) const;
  /// { l : |l| <= bound, Delta^l g = g Delta^l }.
  std::set<long> delta_commutation_window(const GroupElement& g, long bound) const;

  // --- the loxodromic element x -------------------------------------------
  const Simple& iota_b_prime() const { return ibp_; }
  const Simple& iota_g_prime() const { return igp_; }
  const Simple& w0_simple() const { return w0s_; }
  const Atom& r0() const { return r0_; }
  /// Offsets k on the r0 root line excluded because r_{alpha,k} extends an
  /// atom of iota_b' (resp. of iota_g') to a simple.
  const std::set<Int>& r0_excluded() const { return r0_excluded_; }
  const GroupElement& x() const { return x_; }

  /// Deterministic display string: factors named as atoms when possible,
  /// otherwise by weight and fixed/min data.
  std::string str(const GroupElement& g) const;
  std::string factor_str(const Simple& s) const;
  /// Stable identity key (used for coset vertex dedup).
  std::string key(const GroupElement& g) const;

 private:
  void normalize_in_place(long& dpow, std::vector<Simple>& f,
                          SlideStrategy strategy) const;
  Atom find_r0(long search_bound);
  GroupElement build_x() const;
  std::string pair_memo_key(char side, const Simple& s, const Simple& t) const;

  IntervalCtx& ctx_;
  /// Pairs already known to be weighted (left 'L' / right 'R'); only
  /// stable verdicts are cached, violations change the pair anyway.
  mutable std::set<std::string> stable_pair_memo_;
  Simple ibp_, igp_, w0s_;
  Atom r0_;
  std::set<Int> r0_excluded_;
  GroupElement x_;
};

}  // namespace crysgar
