#include "crysgar/garside.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace crysgar {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

GarsideEngine::GarsideEngine(IntervalCtx& ctx) : ctx_(ctx) {
  const auto& geo = ctx_.geo();
  long blue = 0, green = 0;
  for (bool b : geo.node_is_blue()) (b ? blue : green)++;

  Simple ib{geo.iota_b(), Rational(blue)};
  Simple ig{geo.iota_g(), Rational(green)};
  CRYSGAR_CHECK(ib.iso.elliptic() && ib.iso.dim_mov() == static_cast<std::size_t>(blue),
                "blue block must be elliptic of length = #blue nodes");
  CRYSGAR_CHECK(ig.iso.elliptic() && ig.iso.dim_mov() == static_cast<std::size_t>(green),
                "green block must be elliptic of length = #green nodes");

  ibp_ = Simple{geo.axis_conjugate(ib.iso), ib.weight};
  igp_ = Simple{geo.axis_conjugate(ig.iso), ig.weight};
  CRYSGAR_CHECK(ibp_.iso.compose(igp_.iso) == geo.w(),
                "axis-conjugated blocks must still factor w");

  w0s_ = Simple{geo.w0(), Rational(rank())};
  CRYSGAR_CHECK(w0s_.iso.elliptic() &&
                    w0s_.iso.dim_mov() == static_cast<std::size_t>(rank()),
                "w0 must be elliptic of length = rank");

  r0_ = find_r0(3 * (rank() + 1));
  x_ = build_x();
}

// --- constructors ---------------------------------------------------------

GroupElement GarsideEngine::one() const { return GroupElement{0, {}}; }

GroupElement GarsideEngine::delta_power(long k) const { return GroupElement{k, {}}; }

GroupElement GarsideEngine::from_simple(const Simple& s) const {
  return make(0, {s});
}

GroupElement GarsideEngine::from_atom(const Atom& a) const {
  return make(0, {ctx_.atom_simple(a)});
}

GroupElement GarsideEngine::make(long dpow, std::vector<Simple> raw,
                                 SlideStrategy strategy) const {
  normalize_in_place(dpow, raw, strategy);
  return GroupElement{dpow, std::move(raw)};
}

// --- normal form ------------------------------------------------------------

void GarsideEngine::normalize_in_place(long& dpow, std::vector<Simple>& f,
                                       SlideStrategy strategy) const {
  const Rational top(rank() + 1);

  // Remove trivial factors; pull each full-weight factor out to the front
  // as a Delta, twisting the prefix it crosses.
  auto cleanup = [&]() {
    std::vector<Simple> out;
    out.reserve(f.size());
    for (auto& s : f) {
      CRYSGAR_CHECK(s.weight >= 0 && s.weight <= top, "factor weight out of range");
      if (ctx_.is_one(s)) continue;
      if (ctx_.is_delta(s)) {
        ++dpow;
        for (auto& t : out) t = ctx_.tau(t);
        continue;
      }
      out.push_back(std::move(s));
    }
    f = std::move(out);
  };

  cleanup();
  bool moved = true;
  while (moved) {
    moved = false;
    bool structural = false;
    const std::size_t m = f.size();
    for (std::size_t step = 0; step + 1 < m && !structural; ++step) {
      std::size_t i = (strategy == SlideStrategy::leftmost) ? step : (m - 2 - step);
      // Settle the pair (f[i], f[i+1]) completely.
      while (true) {
        std::string mk = pair_memo_key('L', f[i], f[i + 1]);
        if (stable_pair_memo_.count(mk)) break;
        AtomSearch ca = ctx_.common_atom(Side::left, ctx_.complement_left(f[i]), f[i + 1]);
        if (ca.verdict == Verdict::unknown)
          throw WindowError("normal form slide hit a clipped search window");
        if (ca.verdict == Verdict::no) {
          stable_pair_memo_.insert(std::move(mk));
          break;
        }
        f[i] = ctx_.product(f[i], ctx_.atom_simple(*ca.atom));
        f[i + 1] = ctx_.left_quotient(*ca.atom, f[i + 1]);
        moved = true;
        if (ctx_.is_delta(f[i]) || ctx_.is_one(f[i + 1])) {
          structural = true;  // factor list shape changes: clean and rescan
          break;
        }
      }
    }
    if (structural) cleanup();
  }
}

GroupElement GarsideEngine::left_normal_form(const GroupElement& g) const {
  return make(g.delta_pow, g.factors);
}

GroupElement GarsideEngine::right_normal_form(const GroupElement& g) const {
  long dpow = g.delta_pow;
  std::vector<Simple> f = g.factors;
  const Rational top(rank() + 1);

  auto cleanup = [&]() {
    std::vector<Simple> out;
    out.reserve(f.size());
    for (auto& s : f) {
      CRYSGAR_CHECK(s.weight >= 0 && s.weight <= top, "factor weight out of range");
      if (ctx_.is_one(s)) continue;
      if (ctx_.is_delta(s)) {
        ++dpow;
        for (auto& t : out) t = ctx_.tau(t);
        continue;
      }
      out.push_back(std::move(s));
    }
    f = std::move(out);
  };

  cleanup();
  bool moved = true;
  while (moved) {
    moved = false;
    bool structural = false;
    for (std::size_t step = 0; step + 1 < f.size() && !structural; ++step) {
      std::size_t i = f.size() - 2 - step;
      while (true) {
        std::string mk = pair_memo_key('R', f[i], f[i + 1]);
        if (stable_pair_memo_.count(mk)) break;
        AtomSearch ca =
            ctx_.common_atom(Side::right, f[i], ctx_.complement_right(f[i + 1]));
        if (ca.verdict == Verdict::unknown)
          throw WindowError("normal form slide hit a clipped search window");
        if (ca.verdict == Verdict::no) {
          stable_pair_memo_.insert(std::move(mk));
          break;
        }
        f[i + 1] = ctx_.product(ctx_.atom_simple(*ca.atom), f[i + 1]);
        f[i] = ctx_.right_quotient(f[i], *ca.atom);
        moved = true;
        if (ctx_.is_delta(f[i + 1]) || ctx_.is_one(f[i])) {
          structural = true;
          break;
        }
      }
    }
    if (structural) cleanup();
  }
  return GroupElement{dpow, std::move(f)};
}

std::string GarsideEngine::pair_memo_key(char side, const Simple& s,
                                         const Simple& t) const {
  std::string k(1, side);
  k += s.iso.key();
  k += '/';
  k += to_string(s.weight);
  k += '|';
  k += t.iso.key();
  k += '/';
  k += to_string(t.weight);
  return k;
}

bool GarsideEngine::pair_left_weighted(const Simple& s, const Simple& t) const {
  std::string mk = pair_memo_key('L', s, t);
  if (stable_pair_memo_.count(mk)) return true;
  AtomSearch ca = ctx_.common_atom(Side::left, ctx_.complement_left(s), t);
  if (ca.verdict == Verdict::unknown)
    throw WindowError("left-weightedness test hit a clipped search window");
  if (ca.verdict == Verdict::no) {
    stable_pair_memo_.insert(std::move(mk));
    return true;
  }
  return false;
}

bool GarsideEngine::pair_right_weighted(const Simple& s, const Simple& t) const {
  std::string mk = pair_memo_key('R', s, t);
  if (stable_pair_memo_.count(mk)) return true;
  AtomSearch ca = ctx_.common_atom(Side::right, s, ctx_.complement_right(t));
  if (ca.verdict == Verdict::unknown)
    throw WindowError("right-weightedness test hit a clipped search window");
  if (ca.verdict == Verdict::no) {
    stable_pair_memo_.insert(std::move(mk));
    return true;
  }
  return false;
}

// --- arithmetic -------------------------------------------------------------

GroupElement GarsideEngine::multiply(const GroupElement& a, const GroupElement& b) const {
  std::vector<Simple> f;
  f.reserve(a.factors.size() + b.factors.size());
  for (const auto& s : a.factors) f.push_back(ctx_.tau_pow(s, b.delta_pow));
  for (const auto& s : b.factors) f.push_back(s);
  return make(a.delta_pow + b.delta_pow, std::move(f));
}

GroupElement GarsideEngine::inverse(const GroupElement& g) const {
  const long q = static_cast<long>(g.factors.size());
  const long dpow = -q - g.delta_pow;
  std::vector<Simple> f;
  f.reserve(g.factors.size());
  for (long j = q - 1; j >= 0; --j) {
    Simple c = ctx_.complement_left(g.factors[static_cast<std::size_t>(j)]);
    f.push_back(ctx_.tau_pow(c, (q - 1 - j) + dpow));
  }
  return make(dpow, std::move(f));
}

GroupElement GarsideEngine::power(const GroupElement& g, long m) const {
  if (m < 0) return inverse(power(g, -m));
  GroupElement acc = one();
  for (long i = 0; i < m; ++i) acc = multiply(acc, g);
  return acc;
}

GroupElement GarsideEngine::tau_elem(const GroupElement& g, long m) const {
  std::vector<Simple> f;
  f.reserve(g.factors.size());
  for (const auto& s : g.factors) f.push_back(ctx_.tau_pow(s, m));
  return make(g.delta_pow, std::move(f));
}

bool GarsideEngine::equals(const GroupElement& a, const GroupElement& b) const {
  if (a.delta_pow != b.delta_pow || a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i)
    if (a.factors[i] != b.factors[i]) return false;
  return true;
}

EuclideanIsometry GarsideEngine::evaluate(const GroupElement& g) const {
  const auto& w = ctx_.geo().w();
  EuclideanIsometry acc = EuclideanIsometry::identity(ctx_.geo().ambient_dim());
  for (long i = 0; i < g.delta_pow; ++i) acc = acc.compose(w);
  for (long i = 0; i > g.delta_pow; --i) acc = acc.compose(w.inverse());
  for (const auto& s : g.factors) acc = acc.compose(s.iso);
  return acc;
}

NPForm GarsideEngine::np_form(const GroupElement& g) const {
  if (g.delta_pow >= 0) return NPForm{one(), g};
  const long r = -g.delta_pow;
  const long q = static_cast<long>(g.factors.size());
  const long m = std::min(r, q);
  std::vector<Simple> head(g.factors.begin(), g.factors.begin() + m);
  std::vector<Simple> tail(g.factors.begin() + m, g.factors.end());
  GroupElement neg = inverse(make(g.delta_pow, std::move(head)));
  GroupElement pos = make(0, std::move(tail));
  CRYSGAR_CHECK(neg.delta_pow >= 0 && pos.delta_pow >= 0,
                "negative-positive split produced a non-positive part");
  if (neg.delta_pow == 0 && !neg.factors.empty() && !pos.factors.empty()) {
    // Trivial meet <=> the two heads share no atom.
    AtomSearch ca = ctx_.common_atom(Side::left, neg.factors[0], pos.factors[0]);
    if (ca.verdict == Verdict::unknown)
      throw WindowError("negative-positive meet check hit a clipped window");
    CRYSGAR_CHECK(ca.verdict == Verdict::no,
                  "negative-positive split must have trivial meet");
  }
  return NPForm{std::move(neg), std::move(pos)};
}

bool GarsideEngine::positive_prefix(const GroupElement& u, const GroupElement& g) const {
  return multiply(inverse(u), g).delta_pow >= 0;
}

GroupElement GarsideEngine::meet_positive(const GroupElement& a,
                                          const GroupElement& b) const {
  CRYSGAR_CHECK(a.delta_pow >= 0 && b.delta_pow >= 0,
                "meet_positive needs positive arguments");
  GroupElement x = a, y = b, d = one();
  while (true) {
    if (x.delta_pow >= 1 && y.delta_pow >= 1) {
      d = multiply(d, delta_power(1));
      x = multiply(delta_power(-1), x);
      y = multiply(delta_power(-1), y);
      continue;
    }
    if ((x.delta_pow == 0 && x.factors.empty()) ||
        (y.delta_pow == 0 && y.factors.empty()))
      break;
    Simple hx = x.delta_pow >= 1 ? ctx_.delta() : x.factors[0];
    Simple hy = y.delta_pow >= 1 ? ctx_.delta() : y.factors[0];
    AtomSearch ca = ctx_.common_atom(Side::left, hx, hy);
    if (ca.verdict == Verdict::unknown)
      throw WindowError("meet computation hit a clipped search window");
    if (ca.verdict == Verdict::no) break;
    GroupElement ag = from_atom(*ca.atom);
    GroupElement agi = inverse(ag);
    d = multiply(d, ag);
    x = multiply(agi, x);
    y = multiply(agi, y);
    CRYSGAR_CHECK(x.delta_pow >= 0 && y.delta_pow >= 0,
                  "meet step left a non-divisor residue");
  }
  return d;
}

bool GarsideEngine::is_rigid(const GroupElement& g) const {
  CRYSGAR_CHECK(!g.factors.empty(), "rigidity needs at least one factor");
  Simple junction = ctx_.tau_pow(g.factors.back(), g.delta_pow);
  return pair_left_weighted(junction, g.factors.front());
}

GroupElement GarsideEngine::boundary_elem(const GroupElement& g) const {
  CRYSGAR_CHECK(g.delta_pow == 0, "boundary is defined for inf-zero elements");
  return multiply(inverse(g), delta_power(sup(g)));
}

// --- absorbability ------------------------------------------------------------

bool GarsideEngine::rho_refute_absorbable(const GroupElement& g) const {
  GroupElement h;
  if (g.delta_pow == 0)
    h = g;
  else if (sup(g) == 0)
    h = inverse(g);
  else
    return false;
  const Rational bound(rank());
  for (const auto& s : h.factors)
    if (s.weight >= bound) return true;
  return false;
}

bool GarsideEngine::verify_absorption_certificate(const GroupElement& g,
                                                  const GroupElement& h) const {
  if (!(g.delta_pow == 0 || sup(g) == 0)) return false;
  GroupElement hg = multiply(h, g);
  return inf(hg) == inf(h) && sup(hg) == sup(h);
}

std::optional<GroupElement> GarsideEngine::bounded_absorber_search(
    const GroupElement& g, int radius, long atom_k) const {
  std::vector<Atom> alphabet;
  for (std::size_t pi = 0; pi < ctx_.vertical_pairs().size(); ++pi)
    for (long k = -atom_k; k <= atom_k; ++k) alphabet.push_back(ctx_.vertical_atom(pi, k));
  for (const auto& a : ctx_.horizontal_atoms()) alphabet.push_back(a);
  for (const auto& a : ctx_.factored_atoms()) alphabet.push_back(a);

  std::deque<std::pair<GroupElement, int>> queue;
  std::set<std::string> seen;
  queue.emplace_back(one(), 0);
  seen.insert(key(one()));
  while (!queue.empty()) {
    auto [h, depth] = queue.front();
    queue.pop_front();
    if (verify_absorption_certificate(g, h)) return h;
    if (depth == radius) continue;
    for (const auto& a : alphabet) {
      GroupElement next = multiply(h, from_atom(a));
      std::string k = key(next);
      if (seen.insert(k).second) queue.emplace_back(std::move(next), depth + 1);
    }
  }
  return std::nullopt;
}

std::set<long> GarsideEngine::delta_commutation_window(const GroupElement& g,
                                                       long bound) const {
  CRYSGAR_CHECK(bound >= 1, "commutation window bound must be >= 1");
  std::set<long> out;
  for (long l = -bound; l <= bound; ++l)
    if (equals(tau_elem(g, l), g)) out.insert(l);
  return out;
}

// --- the loxodromic element -----------------------------------------------------

Atom GarsideEngine::find_r0(long search_bound) {
  const auto& geo = ctx_.geo();
  const QVector& alpha = ctx_.vertical_pairs()[0];

  auto exclude_from = [&](const std::vector<Atom>& atoms, bool inverse_side) {
    for (const auto& r : atoms) {
      CRYSGAR_CHECK(r.kind == AtomKind::vertical,
                    "block atoms must be vertical reflections");
      EuclideanIsometry m = inverse_side ? geo.w().compose(r.iso.inverse())
                                         : r.iso.inverse().compose(geo.w());
      CRYSGAR_CHECK(m.elliptic() && geo.essentially_point_minset(m),
                    "complement of a vertical reflection must pin a point");
      Rational c = dot(alpha, m.min_set().point());
      if (is_integer(c)) r0_excluded_.insert(c.get_num());
    }
  };
  // r_{alpha,k} * r is simple exactly when the wall <alpha,.> = k passes
  // through the fixed point of w r^-1; r * r_{alpha,l} is simple exactly
  // when the wall <alpha,.> = l passes through the fixed point of r^-1 w.
  exclude_from(ctx_.atoms_dividing_elliptic(ibp_), /*inverse_side=*/true);
  exclude_from(ctx_.atoms_dividing_elliptic(igp_), /*inverse_side=*/false);

  for (long m = 0; m <= search_bound; ++m) {
    for (long sgn : {+1, -1}) {
      long cand = sgn * m;
      if (sgn < 0 && m == 0) continue;
      if (r0_excluded_.count(Int(cand))) continue;
      Atom r0 = ctx_.vertical_atom(0, cand);
      Simple r0s = ctx_.atom_simple(r0);
      CRYSGAR_CHECK(pair_left_weighted(r0s, ibp_) && pair_right_weighted(r0s, ibp_),
                    "(r0, iota_b') must be weighted on both sides");
      CRYSGAR_CHECK(pair_left_weighted(igp_, r0s) && pair_right_weighted(igp_, r0s),
                    "(iota_g', r0) must be weighted on both sides");
      return r0;
    }
  }
  throw InternalError("r0 search bound exhausted");
}

GroupElement GarsideEngine::build_x() const {
  Simple r0s = ctx_.atom_simple(r0_);
  std::vector<Simple> f = {r0s, ibp_, w0s_, igp_, r0s};
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    CRYSGAR_CHECK(pair_left_weighted(f[i], f[i + 1]),
                  "defining word of x must be left-weighted as written");
    CRYSGAR_CHECK(pair_right_weighted(f[i], f[i + 1]),
                  "defining word of x must be right-weighted as written");
  }
  GroupElement x{0, f};
  GroupElement renorm = make(0, f);
  CRYSGAR_CHECK(equals(x, renorm), "x must already be in normal form");
  CRYSGAR_CHECK(is_rigid(x), "x must be rigid");
  return x;
}

// --- display -----------------------------------------------------------------

std::string GarsideEngine::factor_str(const Simple& s) const {
  if (ctx_.is_delta(s)) return "D";
  if (auto a = ctx_.atom_of_isometry(s.iso); a && a->weight == s.weight) return a->name;
  if (s == ibp_) return "ib'";
  if (s == igp_) return "ig'";
  if (s == w0s_) return "w0";
  std::ostringstream os;
  os << "s{w=" << to_string(s.weight) << "," << std::hex
     << fnv1a(s.iso.key()) << "}";
  return os.str();
}

std::string GarsideEngine::str(const GroupElement& g) const {
  std::ostringstream os;
  os << "D^" << g.delta_pow;
  for (const auto& s : g.factors) os << " . " << factor_str(s);
  return os.str();
}

std::string GarsideEngine::key(const GroupElement& g) const {
  std::ostringstream os;
  os << g.delta_pow << "#";
  for (const auto& s : g.factors) os << s.iso.key() << "|" << to_string(s.weight) << ";";
  return os.str();
}

}  // namespace crysgar
