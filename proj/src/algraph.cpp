#include "crysgar/algraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace crysgar {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

ALGraph::ALGraph(GarsideEngine& eng) : eng_(eng), ctx_(eng.ctx()) {}

ALVertex ALGraph::vertex_of(const GroupElement& g) const {
  GroupElement rep = eng_.multiply(g, eng_.delta_power(-eng_.inf(g)));
  CRYSGAR_CHECK(eng_.inf(rep) == 0,
                "distinguished representative must have infimum zero");
  std::string key = eng_.key(rep);
  return ALVertex{std::move(rep), std::move(key)};
}

ALVertex ALGraph::base() const { return vertex_of(eng_.one()); }

ALVertex ALGraph::axis_vertex(long k) const {
  return vertex_of(eng_.power(eng_.x(), k));
}

bool ALGraph::same_vertex(const ALVertex& a, const ALVertex& b) const {
  return a.key == b.key;
}

ALVertex ALGraph::translate(const GroupElement& g, const ALVertex& v) const {
  return vertex_of(eng_.multiply(g, v.rep));
}

std::vector<ALVertex> ALGraph::preferred_path(const ALVertex& a,
                                              const ALVertex& b) const {
  CRYSGAR_CHECK(eng_.inf(a.rep) == 0 && eng_.inf(b.rep) == 0,
                "preferred path endpoints must carry distinguished representatives");
  GroupElement diff = eng_.multiply(eng_.inverse(a.rep), b.rep);
  GroupElement target = eng_.multiply(diff, eng_.delta_power(-eng_.inf(diff)));
  std::vector<ALVertex> path;
  path.reserve(target.factors.size() + 1);
  path.push_back(a);
  GroupElement acc = a.rep;
  for (const Simple& s : target.factors) {
    acc = eng_.multiply(acc, eng_.from_simple(s));
    path.push_back(vertex_of(acc));
  }
  CRYSGAR_CHECK(path.back().key == b.key,
                "preferred path must end at its target vertex");
  return path;
}

bool ALGraph::axis_divides_rep(const GroupElement& g) const {
  const GroupElement& x = eng_.x();
  long lx = eng_.canonical_length(x);
  long q = eng_.canonical_length(g);
  // sup is monotone along left divisibility, so a short representative
  // cannot be divisible by x.
  if (q < lx) return false;
  // The product of the first lx normal-form factors of the representative
  // is its meet with D^lx, and x left-divides the representative iff it
  // left-divides that meet.
  std::vector<Simple> head;
  head.reserve(static_cast<std::size_t>(lx));
  for (long i = 0; i < lx; ++i)
    head.push_back(ctx_.tau_pow(g.factors[static_cast<std::size_t>(i)],
                                -g.delta_pow));
  return eng_.positive_prefix(x, eng_.make(0, std::move(head)));
}

LambdaResult ALGraph::lambda_scan(const ALVertex& v, long window) const {
  CRYSGAR_CHECK(eng_.inf(v.rep) == 0,
                "axis projection input must carry a distinguished representative");
  if (window <= 0) window = 5 * eng_.sup(v.rep) + 10;
  const std::string memo_key = v.key + "#" + std::to_string(window);
  if (auto it = lambda_memo_.find(memo_key); it != lambda_memo_.end())
    return it->second;
  // Scan P(k) = "x left-divides the distinguished representative of the
  // coset x^k * v" for k in [-window, window], building x^k * rep
  // incrementally.  P must be a half-line: false below some k*, true from
  // k*+1 on; the answer is -k* = 1 - (first true k).
  GroupElement g = eng_.multiply(eng_.power(eng_.x(), -window), v.rep);
  std::optional<long> first_true;
  for (long k = -window; k <= window; ++k) {
    bool p = axis_divides_rep(g);
    if (p && !first_true) first_true = k;
    if (!p && first_true)
      throw InternalError(
          "axis divisibility pattern along the scan is not a half-line");
    if (k < window) g = eng_.multiply(eng_.x(), g);
  }
  if (!first_true)
    throw WindowError(
        "axis projection: no divisibility transition inside the window; "
        "widen the window");
  if (*first_true == -window)
    throw WindowError(
        "axis projection: divisibility transition at or below the window "
        "bottom; widen the window");
  LambdaResult result{1 - *first_true, window};
  lambda_memo_.emplace(memo_key, result);
  return result;
}

ContractionReport ALGraph::check_contraction(const ALVertex& v1,
                                             const ALVertex& v2,
                                             long window) const {
  ContractionReport report;
  report.lambda1 = lambda(v1, window);
  report.lambda2 = lambda(v2, window);
  if (report.lambda2 - report.lambda1 < 3)
    throw Error("contraction check requires an axis-projection gap of at least 3");
  std::vector<ALVertex> path = preferred_path(v1, v2);
  std::vector<ALVertex> axis = preferred_path(axis_vertex(report.lambda1 + 1),
                                              axis_vertex(report.lambda2 - 1));
  report.path_keys.reserve(path.size());
  for (const ALVertex& p : path) report.path_keys.push_back(p.key);
  report.axis_keys.reserve(axis.size());
  for (const ALVertex& p : axis) report.axis_keys.push_back(p.key);
  auto it = std::search(report.path_keys.begin(), report.path_keys.end(),
                        report.axis_keys.begin(), report.axis_keys.end());
  report.contained = it != report.path_keys.end();
  report.start_index =
      report.contained
          ? static_cast<std::size_t>(it - report.path_keys.begin())
          : 0;
  return report;
}

bool ALGraph::lipschitz_check(const ALVertex& v1, const ALVertex& v2,
                              long d_upper, long window) const {
  CRYSGAR_CHECK(d_upper >= 0, "distance upper bound must be nonnegative");
  long l1 = lambda(v1, window);
  long l2 = lambda(v2, window);
  long gap = l2 >= l1 ? l2 - l1 : l1 - l2;
  return gap <= 2 * (d_upper + 2 * constants_.quasigeodesic + 1);
}

void ALGraph::validate_window(const std::vector<EdgeGen>& edge_window) const {
  for (const EdgeGen& e : edge_window) {
    if (e.kind == EdgeGen::Kind::simple) {
      CRYSGAR_CHECK(eng_.inf(e.g) == 0 && eng_.canonical_length(e.g) == 1,
                    "simple edge generators must be one proper simple factor");
    } else {
      CRYSGAR_CHECK(eng_.canonical_length(e.g) >= 1,
                    "absorbable edge generators must not be powers of the "
                    "Garside element");
      CRYSGAR_CHECK(e.absorber.has_value(),
                    "absorbable edge generators require a stored certificate");
      CRYSGAR_CHECK(eng_.verify_absorption_certificate(e.g, *e.absorber),
                    "absorbable edge generator certificate failed");
    }
  }
}

std::optional<long> ALGraph::witness_distance_upper(
    const ALVertex& a, const ALVertex& b,
    const std::vector<EdgeGen>& edge_window, long max_depth,
    std::size_t max_vertices) const {
  validate_window(edge_window);
  CRYSGAR_CHECK(max_depth >= 0, "max_depth must be nonnegative");
  if (a.key == b.key) return 0;
  // Steps include inverses: an edge generated by right multiplication is
  // an edge of the graph in both directions.
  std::vector<GroupElement> steps;
  steps.reserve(2 * edge_window.size());
  for (const EdgeGen& e : edge_window) {
    steps.push_back(e.g);
    steps.push_back(eng_.inverse(e.g));
  }
  // Bidirectional level-by-level search; a vertex discovered from both
  // endpoints certifies a path of the combined length.  Exploring from
  // either endpoint walks the same undirected subgraph, so any meeting
  // point yields a valid upper bound.
  struct SideState {
    std::map<std::string, long> dist;
    std::vector<ALVertex> frontier;
    long radius = 0;
  };
  SideState sa, sb;
  sa.dist.emplace(a.key, 0);
  sa.frontier.push_back(a);
  sb.dist.emplace(b.key, 0);
  sb.frontier.push_back(b);
  std::size_t visited = 2;
  while (!sa.frontier.empty() && !sb.frontier.empty() &&
         sa.radius + sb.radius < max_depth) {
    SideState& grow = sa.frontier.size() <= sb.frontier.size() ? sa : sb;
    SideState& other = (&grow == &sa) ? sb : sa;
    std::vector<ALVertex> next;
    std::optional<long> best;
    for (const ALVertex& cur : grow.frontier) {
      for (const GroupElement& step : steps) {
        ALVertex nb = vertex_of(eng_.multiply(cur.rep, step));
        if (nb.key == cur.key) continue;
        auto hit = other.dist.find(nb.key);
        if (hit != other.dist.end()) {
          long total = grow.radius + 1 + hit->second;
          if (!best || total < *best) best = total;
          continue;
        }
        if (grow.dist.count(nb.key)) continue;
        if (++visited > max_vertices) return best;  // keep any bound found
        grow.dist.emplace(nb.key, grow.radius + 1);
        next.push_back(std::move(nb));
      }
    }
    if (best) return best;
    grow.radius += 1;
    grow.frontier = std::move(next);
  }
  return std::nullopt;
}

long ALGraph::path_distance_upper(const ALVertex& a, const ALVertex& b) const {
  return static_cast<long>(preferred_path(a, b).size()) - 1;
}

std::vector<EdgeGen> ALGraph::default_edge_window(long atom_k) const {
  CRYSGAR_CHECK(atom_k >= 0, "atom offset bound must be nonnegative");
  std::vector<EdgeGen> out;
  std::set<std::string> seen;
  auto add_simple = [&](const Simple& s, const std::string& name) {
    GroupElement e = eng_.from_simple(s);
    if (eng_.canonical_length(e) != 1 || eng_.inf(e) != 0) return;  // not proper
    if (!seen.insert(eng_.key(e)).second) return;
    out.push_back(EdgeGen{EdgeGen::Kind::simple, std::move(e), std::nullopt, name});
  };
  for (std::size_t i = 0; i < ctx_.vertical_pairs().size(); ++i)
    for (long k = -atom_k; k <= atom_k; ++k) {
      Atom a = ctx_.vertical_atom(i, Int(k));
      add_simple(ctx_.atom_simple(a), a.name);
    }
  for (const Atom& a : ctx_.horizontal_atoms())
    add_simple(ctx_.atom_simple(a), a.name);
  for (const Atom& a : ctx_.factored_atoms())
    add_simple(ctx_.atom_simple(a), a.name);
  for (const Simple& s : eng_.x().factors) add_simple(s, eng_.factor_str(s));
  return out;
}

std::vector<EdgeGen> ALGraph::axis_edge_window() const {
  std::vector<EdgeGen> out;
  std::set<std::string> seen;
  for (const Simple& s : eng_.x().factors) {
    GroupElement e = eng_.from_simple(s);
    if (!seen.insert(eng_.key(e)).second) continue;
    out.push_back(EdgeGen{EdgeGen::Kind::simple, std::move(e), std::nullopt,
                          eng_.factor_str(s)});
  }
  return out;
}

std::string ALGraph::neighborhood_dot(
    const ALVertex& center, long radius,
    const std::vector<EdgeGen>& edge_window) const {
  validate_window(edge_window);
  CRYSGAR_CHECK(radius >= 0, "radius must be nonnegative");
  struct Step {
    const EdgeGen* gen;
    GroupElement g;
  };
  std::vector<Step> steps;
  steps.reserve(2 * edge_window.size());
  for (const EdgeGen& e : edge_window) {
    steps.push_back(Step{&e, e.g});
    steps.push_back(Step{&e, eng_.inverse(e.g)});
  }
  std::map<std::string, std::size_t> id;
  std::vector<ALVertex> nodes;
  std::map<std::string, long> depth;
  auto intern = [&](const ALVertex& v) {
    auto it = id.find(v.key);
    if (it != id.end()) return it->second;
    std::size_t n = nodes.size();
    id.emplace(v.key, n);
    nodes.push_back(v);
    return n;
  };
  std::deque<std::size_t> frontier;
  frontier.push_back(intern(center));
  depth[center.key] = 0;
  struct EdgeRec {
    std::size_t a, b;
    std::string name;
    bool absorbable;
  };
  std::vector<EdgeRec> edges;
  std::set<std::string> edge_seen;
  while (!frontier.empty()) {
    std::size_t cur = frontier.front();
    frontier.pop_front();
    ALVertex v = nodes[cur];  // copy: nodes may grow below
    long d = depth.at(v.key);
    if (d >= radius) continue;
    for (const Step& step : steps) {
      ALVertex nb = vertex_of(eng_.multiply(v.rep, step.g));
      if (nb.key == v.key) continue;
      if (!depth.count(nb.key)) {
        depth[nb.key] = d + 1;
        frontier.push_back(intern(nb));
      }
      std::size_t n = id.at(nb.key);
      std::size_t lo = std::min(cur, n), hi = std::max(cur, n);
      std::string ekey =
          std::to_string(lo) + ":" + std::to_string(hi) + ":" + step.gen->name;
      if (edge_seen.insert(ekey).second)
        edges.push_back(EdgeRec{lo, hi, step.gen->name,
                                step.gen->kind == EdgeGen::Kind::absorbable});
    }
  }
  std::ostringstream os;
  os << "graph additional_length_neighborhood {\n";
  os << "  node [shape=box fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < nodes.size(); ++i)
    os << "  v" << i << " [label=\"" << dot_escape(eng_.str(nodes[i].rep))
       << "\"];\n";
  for (const EdgeRec& e : edges)
    os << "  v" << e.a << " -- v" << e.b
       << " [kind=" << (e.absorbable ? "absorbable" : "simple") << " label=\""
       << dot_escape(e.name) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace crysgar
