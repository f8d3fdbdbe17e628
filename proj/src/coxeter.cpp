#include "crysgar/coxeter.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace crysgar {

DynkinType DynkinType::parse(const std::string& text) {
  auto bad = [&]() -> DynkinType {
    throw ParseError("cannot parse type '" + text +
                     "' (expected e.g. B~3, C~2, D~4, E~6, F~4, G~2)");
  };
  if (text.size() < 3 || text[1] != '~') return bad();
  char fam = text[0];
  int rank = 0;
  try {
    std::size_t pos = 0;
    rank = std::stoi(text.substr(2), &pos);
    if (pos != text.size() - 2) return bad();
  } catch (const std::exception&) {
    return bad();
  }
  if (rank < 1 || rank > 16)
    throw UnsupportedError("rank out of supported range in '" + text + "'");
  switch (fam) {
    case 'A':
      throw UnsupportedError("family A is not supported here");
    case 'B':
      // The rank-2 member of this family coincides with C~2 (same
      // diagram, rescaled roots); keep a single name for it.
      if (rank < 3)
        throw UnsupportedError("B~n needs n >= 3 (B~2 coincides with C~2)");
      return {Family::B, rank};
    case 'C':
      if (rank < 2) throw UnsupportedError("C~n needs n >= 2");
      return {Family::C, rank};
    case 'D':
      if (rank < 4) throw UnsupportedError("D~n needs n >= 4");
      return {Family::D, rank};
    case 'E':
      if (rank < 6 || rank > 8) throw UnsupportedError("E~n needs n in {6,7,8}");
      return {Family::E, rank};
    case 'F':
      if (rank != 4) throw UnsupportedError("F~n needs n = 4");
      return {Family::F, rank};
    case 'G':
      if (rank != 2) throw UnsupportedError("G~n needs n = 2");
      return {Family::G, rank};
    default:
      return bad();
  }
}

std::string DynkinType::str() const {
  char f = '?';
  switch (family) {
    case Family::B: f = 'B'; break;
    case Family::C: f = 'C'; break;
    case Family::D: f = 'D'; break;
    case Family::E: f = 'E'; break;
    case Family::F: f = 'F'; break;
    case Family::G: f = 'G'; break;
  }
  return std::string(1, f) + "~" + std::to_string(rank);
}

bool vec_less(const QVector& a, const QVector& b) {
  CRYSGAR_CHECK(a.dim() == b.dim(), "vec_less: dim mismatch");
  for (std::size_t i = 0; i < a.dim(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

QVector canonical_sign(const QVector& v) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v[i] > 0) return v;
    if (v[i] < 0) return -v;
  }
  return v;
}

namespace {

QVector unit(std::size_t d, std::size_t i) {
  QVector v(d);
  v[i] = 1;
  return v;
}

struct Table {
  std::size_t d;
  std::vector<QVector> simple;
  QVector highest;
  std::vector<Int> marks;
  std::size_t root_count;
};

Table make_table(const DynkinType& t) {
  const std::size_t n = static_cast<std::size_t>(t.rank);
  Table tb;
  switch (t.family) {
    case Family::B: {
      tb.d = n;
      for (std::size_t i = 0; i + 1 < n; ++i)
        tb.simple.push_back(unit(n, i) - unit(n, i + 1));
      tb.simple.push_back(unit(n, n - 1));
      tb.highest = unit(n, 0) + unit(n, 1);
      tb.marks.assign(n, 2);
      tb.marks[0] = 1;
      tb.root_count = 2 * n * n;
      break;
    }
    case Family::C: {
      tb.d = n;
      for (std::size_t i = 0; i + 1 < n; ++i)
        tb.simple.push_back(unit(n, i) - unit(n, i + 1));
      tb.simple.push_back(unit(n, n - 1) * Rational(2));
      tb.highest = unit(n, 0) * Rational(2);
      tb.marks.assign(n, 2);
      tb.marks[n - 1] = 1;
      tb.root_count = 2 * n * n;
      break;
    }
    case Family::D: {
      tb.d = n;
      for (std::size_t i = 0; i + 1 < n; ++i)
        tb.simple.push_back(unit(n, i) - unit(n, i + 1));
      tb.simple.push_back(unit(n, n - 2) + unit(n, n - 1));
      tb.highest = unit(n, 0) + unit(n, 1);
      tb.marks.assign(n, 2);
      tb.marks[0] = 1;
      tb.marks[n - 2] = 1;
      tb.marks[n - 1] = 1;
      tb.root_count = 2 * n * (n - 1);
      break;
    }
    case Family::E: {
      tb.d = 8;
      QVector a1(8);
      a1[0] = rat(1, 2);
      a1[7] = rat(1, 2);
      for (std::size_t i = 1; i <= 6; ++i) a1[i] = rat(-1, 2);
      tb.simple.push_back(a1);
      tb.simple.push_back(unit(8, 0) + unit(8, 1));
      for (std::size_t i = 0; i + 3 <= n; ++i)
        tb.simple.push_back(unit(8, i + 1) - unit(8, i));
      if (n == 6) {
        QVector mu(8);
        for (std::size_t i = 0; i < 5; ++i) mu[i] = rat(1, 2);
        mu[5] = rat(-1, 2);
        mu[6] = rat(-1, 2);
        mu[7] = rat(1, 2);
        tb.highest = mu;
        tb.marks = {1, 2, 2, 3, 2, 1};
        tb.root_count = 72;
      } else if (n == 7) {
        tb.highest = unit(8, 7) - unit(8, 6);
        tb.marks = {2, 2, 3, 4, 3, 2, 1};
        tb.root_count = 126;
      } else {
        tb.highest = unit(8, 6) + unit(8, 7);
        tb.marks = {2, 3, 4, 6, 5, 4, 3, 2};
        tb.root_count = 240;
      }
      break;
    }
    case Family::F: {
      tb.d = 4;
      tb.simple.push_back(unit(4, 1) - unit(4, 2));
      tb.simple.push_back(unit(4, 2) - unit(4, 3));
      tb.simple.push_back(unit(4, 3));
      QVector a4(4);
      a4[0] = rat(1, 2);
      a4[1] = rat(-1, 2);
      a4[2] = rat(-1, 2);
      a4[3] = rat(-1, 2);
      tb.simple.push_back(a4);
      tb.highest = unit(4, 0) + unit(4, 1);
      tb.marks = {2, 3, 4, 2};
      tb.root_count = 48;
      break;
    }
    case Family::G: {
      tb.d = 3;
      tb.simple.push_back(unit(3, 0) - unit(3, 1));
      QVector a2(3);
      a2[0] = -2;
      a2[1] = 1;
      a2[2] = 1;
      tb.simple.push_back(a2);
      QVector mu(3);
      mu[0] = -1;
      mu[1] = -1;
      mu[2] = 2;
      tb.highest = mu;
      tb.marks = {3, 2};
      tb.root_count = 12;
      break;
    }
  }
  return tb;
}

}  // namespace

RootSystem::RootSystem(DynkinType type) : type_(type) {
  Table tb = make_table(type);
  d_ = tb.d;
  n_ = tb.simple.size();
  CRYSGAR_CHECK(n_ == static_cast<std::size_t>(type.rank), "root table: rank mismatch");
  simple_ = tb.simple;
  highest_ = tb.highest;
  marks_ = tb.marks;

  // The highest root must expand over the simples with the tabled marks.
  QVector acc(d_);
  for (std::size_t i = 0; i < n_; ++i) acc = acc + simple_[i] * Rational(marks_[i]);
  CRYSGAR_CHECK(acc == highest_, "root table: marks do not reproduce highest root");

  // Close {simples} under the simple reflections (linear parts only).
  auto cmpv = [](const QVector& a, const QVector& b) { return vec_less(a, b); };
  std::set<QVector, decltype(cmpv)> closed(cmpv);
  std::vector<QVector> frontier;
  for (const auto& a : simple_) {
    closed.insert(a);
    closed.insert(-a);
    frontier.push_back(a);
    frontier.push_back(-a);
  }
  std::vector<EuclideanIsometry> gens;
  for (const auto& a : simple_) gens.push_back(EuclideanIsometry::reflection(a, 0));
  while (!frontier.empty()) {
    std::vector<QVector> next;
    for (const auto& b : frontier)
      for (const auto& s : gens) {
        QVector im = s.linear() * b;
        if (closed.insert(im).second) next.push_back(im);
      }
    frontier = std::move(next);
  }
  roots_.assign(closed.begin(), closed.end());
  CRYSGAR_CHECK(roots_.size() == tb.root_count, "root closure: unexpected root count");
  CRYSGAR_CHECK(is_root(highest_), "root closure: highest root missing");

  for (const auto& r : roots_) {
    QVector c = canonical_sign(r);
    if (c == r) pairs_.push_back(r);
  }

  essential_ = independent_subset(simple_);
  CRYSGAR_CHECK(essential_.size() == n_, "simple roots are not independent");
}

bool RootSystem::is_root(const QVector& v) const {
  auto it = std::lower_bound(roots_.begin(), roots_.end(), v,
                             [](const QVector& a, const QVector& b) { return vec_less(a, b); });
  return it != roots_.end() && *it == v;
}

QVector RootSystem::coroot(const QVector& alpha) {
  Rational n2 = dot(alpha, alpha);
  CRYSGAR_CHECK(n2 != 0, "coroot of zero vector");
  return alpha * (Rational(2) / n2);
}

std::string WallReflection::str() const {
  std::ostringstream os;
  os << "r(" << root.str() << ", " << offset.get_str() << ")";
  return os.str();
}

EuclideanCoxeter::EuclideanCoxeter(DynkinType type) : rs_(type) {
  const std::size_t d = rs_.ambient_dim();
  const std::size_t n = rs_.rank();

  // Diagram nodes: 0 = wall <mu, x> = 1, i = wall <alpha_i, x> = 0.
  node_root_.push_back(-rs_.highest_root());
  node_refl_.push_back(reflection(rs_.highest_root(), 1));
  for (std::size_t i = 0; i < n; ++i) {
    node_root_.push_back(rs_.simple_roots()[i]);
    node_refl_.push_back(reflection(rs_.simple_roots()[i], 0));
  }

  // Extended diagram adjacency and 2-colouring (blue = colour of node 0).
  std::size_t edges = 0;
  std::vector<std::vector<std::size_t>> adj(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (dot(node_root_[i], node_root_[j]) != 0) {
        adj[i].push_back(j);
        adj[j].push_back(i);
        ++edges;
      }
  CRYSGAR_CHECK(edges == n, "extended diagram is not a tree");
  std::vector<int> colour(n + 1, -1);
  std::vector<std::size_t> stack = {0};
  colour[0] = 0;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : adj[v]) {
      if (colour[u] == -1) {
        colour[u] = 1 - colour[v];
        stack.push_back(u);
      } else {
        CRYSGAR_CHECK(colour[u] != colour[v], "extended diagram not bipartite");
      }
    }
  }
  blue_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    CRYSGAR_CHECK(colour[i] != -1, "extended diagram disconnected");
    blue_[i] = (colour[i] == 0);
  }
  // Same-colour nodes are non-adjacent, hence their roots orthogonal and
  // their reflections commute; the colour-block products are unambiguous.
  iota_b_ = EuclideanIsometry::identity(d);
  iota_g_ = EuclideanIsometry::identity(d);
  for (std::size_t i = 0; i <= n; ++i) {
    if (blue_[i]) {
      iota_b_ = iota_b_.compose(node_refl_[i]);
      cox_word_.push_back(node_refl_[i]);
    } else {
      iota_g_ = iota_g_.compose(node_refl_[i]);
    }
  }
  for (std::size_t i = 0; i <= n; ++i)
    if (!blue_[i]) cox_word_.push_back(node_refl_[i]);
  w_ = iota_b_.compose(iota_g_);
  CRYSGAR_CHECK(!w_.elliptic(), "Coxeter element should be hyperbolic");
  CRYSGAR_CHECK(w_.isom_length() == n + 1, "Coxeter element has wrong reflection length");

  mu_check_ = RootSystem::coroot(rs_.highest_root());
  CRYSGAR_CHECK(w_.apply(QVector(d)) == mu_check_,
                "w(0) should be the highest coroot");
  w0_ = node_refl_[0].compose(w_);

  // Order of the linear part, glide vector two ways, axis translation.
  const QMatrix A = w_.linear();
  QMatrix P = A;
  e0_ = 1;
  while (P != QMatrix::identity(d)) {
    P = P * A;
    ++e0_;
    CRYSGAR_CHECK(e0_ <= 64, "linear part order exceeds cap");
  }
  QVector avg(d), pw = mu_check_;
  EuclideanIsometry wk = w_;
  avg = avg + mu_check_;
  for (int i = 1; i < e0_; ++i) {
    pw = A * pw;
    avg = avg + pw;
  }
  avg = avg * rat(1, e0_);
  gamma_ = w_.min_displacement();
  CRYSGAR_CHECK(gamma_ == avg, "glide vector disagrees with orbit average");
  CRYSGAR_CHECK(!gamma_.is_zero(), "glide vector vanished");
  for (int i = 1; i < e0_; ++i) wk = wk.compose(w_);
  t_axis_ = EuclideanIsometry::translation(gamma_ * Rational(e0_));
  CRYSGAR_CHECK(wk == t_axis_, "w^e0 is not the axis translation");

  // Horizontal subsystem and its components.
  for (const auto& p : rs_.root_pairs())
    if (dot(p, gamma_) == 0) hpairs_.push_back(p);
  std::vector<int> comp(hpairs_.size(), -1);
  int nc = 0;
  for (std::size_t i = 0; i < hpairs_.size(); ++i) {
    if (comp[i] != -1) continue;
    comp[i] = nc;
    std::vector<std::size_t> st = {i};
    while (!st.empty()) {
      std::size_t v = st.back();
      st.pop_back();
      for (std::size_t u = 0; u < hpairs_.size(); ++u)
        if (comp[u] == -1 && dot(hpairs_[v], hpairs_[u]) != 0) {
          comp[u] = nc;
          st.push_back(u);
        }
    }
    ++nc;
  }
  hcomp_.resize(nc);
  hcomp_basis_.resize(nc);
  for (std::size_t i = 0; i < hpairs_.size(); ++i) {
    hcomp_[comp[i]].push_back(i);
    hcomp_basis_[comp[i]].push_back(hpairs_[i]);
  }
  for (auto& b : hcomp_basis_) b = independent_subset(b);
  CRYSGAR_CHECK(!hcomp_.empty(), "no horizontal roots found");

  // Coarse translations: t_lambda below w forces lambda = k * coroot with
  // lambda in Mov(w); the vertical projection condition pins k per root.
  const AffineSubspace movw = w_.mov();
  const Rational g2 = dot(gamma_, gamma_);
  auto cmpv = [](const QVector& a, const QVector& b) { return vec_less(a, b); };
  std::set<QVector, decltype(cmpv)> seen(cmpv);
  std::vector<QVector> candidates;
  for (const auto& alpha : rs_.roots()) {
    QVector ac = RootSystem::coroot(alpha);
    Rational proj = dot(ac, gamma_);
    if (proj == 0) continue;
    Rational k = g2 / proj;
    if (!is_integer(k)) continue;
    QVector lambda = ac * k;
    if (!movw.contains_point(lambda)) continue;
    if (seen.insert(lambda).second) candidates.push_back(lambda);
  }
  std::sort(candidates.begin(), candidates.end(), cmpv);
  for (const auto& lambda : candidates) {
    EuclideanIsometry h =
        EuclideanIsometry::translation(-lambda).compose(w_);
    if (!h.elliptic() || h.dim_mov() != n - 1) continue;
    auto chain = elliptic_reflection_chain(h);
    if (!chain) continue;
    coarse_.push_back(lambda);
    coarse_h_.push_back(h);
  }
  CRYSGAR_CHECK(!coarse_.empty(), "no coarse translations certified");

  // Horizontal reflections below w: the reflections fixing the fixed
  // space of some coarse complement.  Their roots are automatically
  // horizontal (the fixed spaces contain the axis direction).
  std::map<std::string, WallReflection> hr;
  for (const auto& h : coarse_h_)
    for (const auto& wr : reflections_fixing(h.fix())) {
      CRYSGAR_CHECK(is_horizontal(wr.root),
                    "coarse complement divisor with vertical root");
      hr.emplace(wr.str(), wr);
    }
  for (const auto& kv : hr) hrefl_.push_back(kv.second);
  // Count: exactly two walls per horizontal pair.
  std::map<std::string, int> per_pair;
  for (const auto& wr : hrefl_) per_pair[wr.root.str()] += 1;
  CRYSGAR_CHECK(per_pair.size() == hpairs_.size(),
                "some horizontal pair has no reflection below w");
  for (const auto& kv : per_pair)
    CRYSGAR_CHECK(kv.second == 2, "horizontal pair does not contribute exactly two walls");

  // Factored translation vectors (only when the horizontal system is
  // disconnected): per-component projections of the coarse vectors,
  // shifted by the k0-th part of the glide.
  if (k0() >= 2) {
    std::set<QVector, decltype(cmpv)> fts(cmpv);
    const QVector gpart = gamma_ * rat(1, static_cast<long>(k0()));
    for (const auto& lambda : coarse_) {
      const QVector lh = lambda - gamma_;
      QVector recon(d);
      for (std::size_t i = 0; i < k0(); ++i) {
        QVector piece = project_component(i, lh);
        recon = recon + piece;
        fts.insert(piece + gpart);
      }
      CRYSGAR_CHECK(recon == lh,
                    "horizontal part of coarse vector escapes the component spans");
    }
    ft_.assign(fts.begin(), fts.end());
  }
}

EuclideanIsometry EuclideanCoxeter::axis_conjugate(const EuclideanIsometry& u) const {
  return t_axis_.compose(u).compose(t_axis_.inverse());
}

bool EuclideanCoxeter::is_horizontal(const QVector& root) const {
  return dot(root, gamma_) == 0;
}

QVector EuclideanCoxeter::project_component(std::size_t i, const QVector& v) const {
  CRYSGAR_CHECK(i < hcomp_basis_.size(), "component index out of range");
  return AffineSubspace::span_of(ambient_dim(), hcomp_basis_[i]).project(v);
}

EuclideanIsometry EuclideanCoxeter::reflection(const QVector& root,
                                               const Rational& offset) const {
  return EuclideanIsometry::reflection(root, offset);
}

EuclideanIsometry EuclideanCoxeter::reflection(const WallReflection& wr) const {
  return EuclideanIsometry::reflection(wr.root, Rational(wr.offset));
}

std::optional<WallReflection> EuclideanCoxeter::identify_reflection(
    const EuclideanIsometry& u) const {
  if (!u.is_reflection()) return std::nullopt;
  QVector dir = u.mov().basis()[0];
  for (const auto& alpha : rs_.root_pairs()) {
    if (!in_span({alpha}, dir)) continue;
    // Offset from the image of the origin: r(0) = c * coroot(alpha).
    Rational c = dot(alpha, u.apply(QVector(u.dim()))) / 2;
    if (!is_integer(c)) return std::nullopt;
    if (reflection(alpha, c) != u) return std::nullopt;
    return WallReflection{alpha, c.get_num()};
  }
  return std::nullopt;
}

std::vector<WallReflection> EuclideanCoxeter::reflections_fixing(
    const AffineSubspace& F) const {
  std::vector<WallReflection> out;
  for (const auto& alpha : rs_.root_pairs()) {
    bool perp = true;
    for (const auto& b : F.basis())
      if (dot(alpha, b) != 0) {
        perp = false;
        break;
      }
    if (!perp) continue;
    Rational c = dot(alpha, F.point());
    if (!is_integer(c)) continue;
    out.push_back(WallReflection{alpha, c.get_num()});
  }
  return out;
}

std::optional<std::vector<WallReflection>> EuclideanCoxeter::elliptic_reflection_chain(
    const EuclideanIsometry& h) const {
  if (!h.elliptic()) return std::nullopt;
  std::vector<WallReflection> chain;
  std::set<std::string> dead;
  // DFS: peel one reflection at a time; any wall containing Fix(current)
  // divides it, so the next factor always exists while current != 1.
  auto rec = [&](auto&& self, const EuclideanIsometry& cur) -> bool {
    if (cur.is_identity()) return true;
    if (dead.count(cur.key())) return false;
    for (const auto& wr : reflections_fixing(cur.fix())) {
      EuclideanIsometry r = reflection(wr);
      EuclideanIsometry rest = r.compose(cur);
      CRYSGAR_CHECK(rest.elliptic() && rest.dim_mov() + 1 == cur.dim_mov(),
                    "peeling a containing wall must shorten an elliptic");
      chain.push_back(wr);
      if (self(self, rest)) return true;
      chain.pop_back();
    }
    dead.insert(cur.key());
    return false;
  };
  if (!rec(rec, h)) return std::nullopt;
  return chain;
}

bool EuclideanCoxeter::essentially_point_minset(const EuclideanIsometry& u) const {
  return u.min_set().dim() == ambient_dim() - rank();
}

}  // namespace crysgar
