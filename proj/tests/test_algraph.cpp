#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "crysgar/algraph.hpp"

using namespace crysgar;

namespace {

struct Fixture {
  IntervalCtx ctx;
  GarsideEngine eng;
  ALGraph graph;
  explicit Fixture(const char* type)
      : ctx(DynkinType::parse(type)), eng(ctx), graph(eng) {}
};

std::vector<std::string> keys_of(const std::vector<ALVertex>& path) {
  std::vector<std::string> keys;
  for (const ALVertex& v : path) keys.push_back(v.key);
  return keys;
}

}  // namespace

TEST_CASE("vertices are cosets modulo delta powers") {
  Fixture f("C~2");
  for (long k : {-2L, 0L, 3L})
    CHECK(f.graph.same_vertex(f.graph.vertex_of(f.eng.delta_power(k)),
                              f.graph.base()));

  const GroupElement& x = f.eng.x();
  for (long k : {-2L, 1L, 3L}) {
    ALVertex v = f.graph.vertex_of(f.eng.power(x, k));
    CHECK(f.graph.same_vertex(v, f.graph.axis_vertex(k)));
    CHECK(f.eng.inf(v.rep) == 0);
  }

  // Coset soundness: g and g*delta give one vertex; g and g*r0 do not.
  GroupElement g = f.eng.multiply(x, f.eng.from_simple(f.eng.w0_simple()));
  CHECK(f.graph.same_vertex(
      f.graph.vertex_of(g),
      f.graph.vertex_of(f.eng.multiply(g, f.eng.delta_power(2)))));
  CHECK(!f.graph.same_vertex(
      f.graph.vertex_of(g),
      f.graph.vertex_of(f.eng.multiply(g, f.eng.from_atom(f.eng.r0())))));
}

TEST_CASE("preferred path to the first axis vertex") {
  Fixture f("C~2");
  std::vector<ALVertex> path =
      f.graph.preferred_path(f.graph.base(), f.graph.axis_vertex(1));
  REQUIRE(path.size() == 6);
  CHECK(f.graph.same_vertex(path.front(), f.graph.base()));
  CHECK(f.graph.same_vertex(path.back(), f.graph.axis_vertex(1)));
  // The j-th vertex is the length-j normal-form prefix of x.
  const GroupElement& x = f.eng.x();
  for (std::size_t j = 0; j < path.size(); ++j) {
    std::vector<Simple> prefix(x.factors.begin(), x.factors.begin() + j);
    CHECK(f.graph.same_vertex(path[j],
                              f.graph.vertex_of(f.eng.make(0, prefix))));
  }
}

TEST_CASE("preferred paths are symmetric and equivariant") {
  Fixture f("C~2");
  ALVertex a = f.graph.vertex_of(f.eng.from_simple(f.eng.w0_simple()));
  ALVertex b = f.graph.axis_vertex(2);

  std::vector<ALVertex> fwd = f.graph.preferred_path(a, b);
  std::vector<ALVertex> bwd = f.graph.preferred_path(b, a);
  std::vector<std::string> rev = keys_of(bwd);
  std::reverse(rev.begin(), rev.end());
  CHECK(keys_of(fwd) == rev);

  // Left translation by a group element moves paths to paths.
  GroupElement g = f.eng.multiply(f.eng.from_atom(f.eng.r0()),
                                  f.eng.delta_power(-1));
  std::vector<ALVertex> moved =
      f.graph.preferred_path(f.graph.translate(g, a), f.graph.translate(g, b));
  std::vector<std::string> translated;
  for (const ALVertex& v : fwd) translated.push_back(f.graph.translate(g, v).key);
  CHECK(keys_of(moved) == translated);

  // Consecutive vertices differ by one simple: path length equals the
  // canonical length of the connecting element.
  GroupElement conn = f.eng.multiply(f.eng.inverse(a.rep), b.rep);
  ALVertex target = f.graph.vertex_of(conn);
  CHECK(fwd.size() == static_cast<std::size_t>(
                          f.eng.canonical_length(target.rep)) + 1);
}

TEST_CASE("preferred paths pass through the gcd coset") {
  Fixture f("C~2");
  ALVertex v1 = f.graph.vertex_of(f.eng.from_simple(f.eng.w0_simple()));
  ALVertex v2 = f.graph.axis_vertex(1);
  GroupElement meet = f.eng.meet_positive(v1.rep, v2.rep);
  std::vector<std::string> keys =
      keys_of(f.graph.preferred_path(v1, v2));
  std::string gcd_key = f.graph.vertex_of(meet).key;
  CHECK(std::find(keys.begin(), keys.end(), gcd_key) != keys.end());
}

TEST_CASE("axis projection anchors and stability") {
  Fixture f("C~2");
  CHECK(f.graph.lambda(f.graph.base()) == 0);
  for (long k = -5; k <= 5; ++k) {
    LambdaResult r = f.graph.lambda_scan(f.graph.axis_vertex(k));
    CHECK(r.value == k);
    // Doubling the window leaves the value fixed.
    CHECK(f.graph.lambda(f.graph.axis_vertex(k), 2 * r.window) == k);
  }

  // Equivariance along the axis on an off-axis sample.
  ALVertex v = f.graph.vertex_of(f.eng.from_simple(f.eng.iota_b_prime()));
  long lv = f.graph.lambda(v);
  CHECK(f.graph.lambda(f.graph.translate(f.eng.x(), v)) == lv + 1);
}

TEST_CASE("window too small is an error, not an answer") {
  Fixture f("C~2");
  // X^5 has projection 5; a window of 2 cannot certify it.
  CHECK_THROWS_AS(f.graph.lambda(f.graph.axis_vertex(5), 2), WindowError);
}

TEST_CASE("contraction of preferred paths toward the axis") {
  Fixture f("C~2");
  ContractionReport rep =
      f.graph.check_contraction(f.graph.base(), f.graph.axis_vertex(5));
  CHECK(rep.lambda1 == 0);
  CHECK(rep.lambda2 == 5);
  CHECK(rep.contained);
  // The protected stretch A(X^1, X^4) has 16 vertices (3 blocks of 5
  // plus the endpoint).
  CHECK(rep.axis_keys.size() == 16);
  // It sits inside the path as a contiguous block.
  REQUIRE(rep.start_index + rep.axis_keys.size() <= rep.path_keys.size());
  for (std::size_t i = 0; i < rep.axis_keys.size(); ++i)
    CHECK(rep.path_keys[rep.start_index + i] == rep.axis_keys[i]);

  // An off-axis instance.
  ALVertex v1 = f.graph.vertex_of(f.eng.from_simple(f.eng.w0_simple()));
  ALVertex v2 = f.graph.translate(f.eng.power(f.eng.x(), 6),
                                  f.graph.vertex_of(f.eng.from_atom(f.eng.r0())));
  ContractionReport rep2 = f.graph.check_contraction(v1, v2);
  CHECK(rep2.contained);
  CHECK(rep2.lambda2 - rep2.lambda1 >= 3);

  // The projection gap must be at least 3.
  CHECK_THROWS_AS(f.graph.check_contraction(f.graph.base(),
                                            f.graph.axis_vertex(2)),
                  Error);
}

TEST_CASE("lipschitz sanity bound") {
  Fixture f("C~2");
  ALVertex v = f.graph.vertex_of(f.eng.from_simple(f.eng.iota_g_prime()));
  CHECK(f.graph.lipschitz_check(v, v, 0));
  for (long k = 1; k <= 5; ++k) {
    long d_upper =
        f.graph.path_distance_upper(f.graph.base(), f.graph.axis_vertex(k));
    CHECK(d_upper == 5 * k);
    CHECK(f.graph.lipschitz_check(f.graph.base(), f.graph.axis_vertex(k),
                                  d_upper));
  }
}

TEST_CASE("witness distance bounds") {
  Fixture f("C~2");
  // One simple step apart: distance exactly one in any window that
  // contains the connecting simple.
  ALVertex b = f.graph.vertex_of(f.eng.from_simple(f.eng.w0_simple()));
  auto d1 = f.graph.witness_distance_upper(f.graph.base(), b,
                                           f.graph.default_edge_window(1));
  REQUIRE(d1.has_value());
  CHECK(*d1 == 1);

  // The preferred path to X^1 certifies distance at most 5.
  auto d5 = f.graph.witness_distance_upper(f.graph.base(), f.graph.axis_vertex(1),
                                           f.graph.axis_edge_window());
  REQUIRE(d5.has_value());
  CHECK(*d5 <= 5);
  CHECK(*d5 >= 1);

  // Distance bounds never contradict the projection-based necessary
  // condition.
  CHECK(f.graph.lipschitz_check(f.graph.base(), f.graph.axis_vertex(1), *d5));
}

TEST_CASE("neighborhood rendering is deterministic DOT") {
  Fixture f("C~2");
  std::vector<EdgeGen> window = f.graph.default_edge_window(1);
  std::string dot1 = f.graph.neighborhood_dot(f.graph.base(), 1, window);
  std::string dot2 = f.graph.neighborhood_dot(f.graph.base(), 1, window);
  CHECK(dot1 == dot2);
  CHECK(dot1.find("graph additional_length_neighborhood") != std::string::npos);
  CHECK(dot1.find("kind=simple") != std::string::npos);
  // Radius zero renders only the center.
  std::string dot0 = f.graph.neighborhood_dot(f.graph.base(), 0, window);
  CHECK(dot0.find("--") == std::string::npos);
}
