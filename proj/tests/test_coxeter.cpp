#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "crysgar/coxeter.hpp"

using namespace crysgar;

namespace {

// Reflection closure of the simple roots, computed independently of
// RootSystem's own enumeration.
std::set<std::string> closure_oracle(const std::vector<QVector>& simples) {
  std::vector<QVector> pool;
  std::set<std::string> seen;
  auto add = [&](const QVector& v) {
    if (seen.insert(v.str()).second) pool.push_back(v);
  };
  for (const QVector& a : simples) {
    add(a);
    add(-a);
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    QVector b = pool[i];
    for (std::size_t j = 0; j < pool.size(); ++j) {
      const QVector& a = pool[j];
      Rational coef = Rational(2) * dot(a, b) / dot(a, a);
      add(b - pool[j] * coef);
    }
  }
  return seen;
}

// The axis direction as an integer combination of roots:
// highest root minus the marked sum over the blue non-affine nodes.
QVector axis_combination(const EuclideanCoxeter& geo) {
  const RootSystem& rs = geo.roots();
  QVector g = rs.highest_root();
  for (std::size_t node = 1; node < geo.node_is_blue().size(); ++node) {
    if (!geo.node_is_blue()[node]) continue;
    Rational m(rs.marks()[node - 1]);
    g = g - rs.simple_roots()[node - 1] * m;
  }
  return g;
}

}  // namespace

TEST_CASE("type parsing accepts the supported grammar only") {
  CHECK(DynkinType::parse("C~2").str() == "C~2");
  CHECK(DynkinType::parse("E~8").rank == 8);
  CHECK_THROWS_AS(DynkinType::parse("A~3"), UnsupportedError);
  CHECK_THROWS_AS(DynkinType::parse("D~3"), UnsupportedError);
  CHECK_THROWS_AS(DynkinType::parse("E~9"), UnsupportedError);
  CHECK_THROWS_AS(DynkinType::parse("F~5"), UnsupportedError);
  CHECK_THROWS_AS(DynkinType::parse("C2"), ParseError);
  CHECK_THROWS_AS(DynkinType::parse("C~"), ParseError);
  CHECK_THROWS_AS(DynkinType::parse("X~2"), ParseError);
  CHECK_THROWS_AS(DynkinType::parse(""), ParseError);
}

TEST_CASE("root counts and reflection closure") {
  struct Row {
    const char* type;
    std::size_t count;
  };
  for (Row row : {Row{"C~2", 8}, Row{"G~2", 12}, Row{"B~3", 18}}) {
    RootSystem rs{DynkinType::parse(row.type)};
    CHECK(rs.roots().size() == row.count);
    std::set<std::string> oracle = closure_oracle(rs.simple_roots());
    CHECK(oracle.size() == rs.roots().size());
    for (const QVector& r : rs.roots()) CHECK(oracle.count(r.str()) == 1);
    for (const QVector& r : rs.roots()) CHECK(rs.is_root(-r));
    // One canonical representative per antipodal pair.
    CHECK(rs.root_pairs().size() * 2 == rs.roots().size());
  }
}

TEST_CASE("highest root by exhaustive height maximization") {
  for (const char* type : {"C~2", "G~2", "B~3"}) {
    RootSystem rs{DynkinType::parse(type)};
    QMatrix S = QMatrix::from_columns(rs.simple_roots());
    Rational best;
    QVector best_root;
    std::vector<Rational> best_coords;
    int maximizers = 0;
    for (const QVector& r : rs.roots()) {
      auto sol = solve(S, r);
      REQUIRE(sol.has_value());
      REQUIRE(sol->kernel.empty());
      Rational height(0);
      for (const Rational& c : sol->particular.coords()) height += c;
      if (maximizers == 0 || height > best) {
        best = height;
        best_root = r;
        best_coords = sol->particular.coords();
        maximizers = 1;
      } else if (height == best) {
        ++maximizers;
      }
    }
    CHECK(maximizers == 1);
    CHECK(best_root == rs.highest_root());
    REQUIRE(best_coords.size() == rs.marks().size());
    for (std::size_t i = 0; i < best_coords.size(); ++i) {
      CHECK(best_coords[i] == Rational(rs.marks()[i]));
      CHECK(rs.marks()[i] >= 1);
    }
    // The highest root is long.
    for (const QVector& r : rs.roots())
      CHECK(dot(rs.highest_root(), rs.highest_root()) >= dot(r, r));
  }
}

TEST_CASE("coroot formula") {
  RootSystem rs{DynkinType::parse("C~2")};
  const QVector& mu = rs.highest_root();
  QVector cr = RootSystem::coroot(mu);
  CHECK(cr == mu * (Rational(2) / dot(mu, mu)));
}

TEST_CASE("bipartite structure") {
  for (const char* type : {"C~2", "G~2", "B~3"}) {
    EuclideanCoxeter geo{DynkinType::parse(type)};
    const auto& refl = geo.diagram_reflections();
    const auto& blue = geo.node_is_blue();
    REQUIRE(refl.size() == geo.rank() + 1);
    CHECK(blue[0]);  // the affine node is blue by convention

    CHECK(geo.iota_b().compose(geo.iota_b()).is_identity());
    CHECK(geo.iota_g().compose(geo.iota_g()).is_identity());
    CHECK(geo.w() == geo.iota_b().compose(geo.iota_g()));

    for (std::size_t i = 0; i < refl.size(); ++i)
      for (std::size_t j = 0; j < refl.size(); ++j)
        if (blue[i] == blue[j])
          CHECK(refl[i].compose(refl[j]) == refl[j].compose(refl[i]));

    // The ordered Coxeter word multiplies out to w.
    EuclideanIsometry prod = EuclideanIsometry::identity(geo.ambient_dim());
    for (const EuclideanIsometry& r : geo.coxeter_word()) prod = prod.compose(r);
    CHECK(prod == geo.w());
    CHECK(geo.coxeter_word().size() == geo.rank() + 1);

    CHECK(!geo.w().elliptic());
    // The axis line plus any inert directions of the embedding.
    CHECK(geo.w().min_set().dim() == 1 + geo.ambient_dim() - geo.rank());
  }
}

TEST_CASE("axis, glide vector and the two-sided axis formula") {
  for (const char* type : {"C~2", "G~2", "B~3"}) {
    EuclideanCoxeter geo{DynkinType::parse(type)};
    const RootSystem& rs = geo.roots();

    // Both expressions for the axis direction agree: highest minus the
    // blue marked sum equals the green marked sum.
    QVector from_blue = axis_combination(geo);
    QVector from_green(geo.ambient_dim());
    for (std::size_t node = 1; node < geo.node_is_blue().size(); ++node) {
      if (geo.node_is_blue()[node]) continue;
      Rational m(rs.marks()[node - 1]);
      from_green = from_green + rs.simple_roots()[node - 1] * m;
    }
    CHECK(from_blue == from_green);
    CHECK(!from_blue.is_zero());

    // The stored glide vector spans the same line.
    CHECK(in_span({geo.gamma()}, from_blue));
    CHECK(in_span({from_blue}, geo.gamma()));

    // Displacement along the axis is constant and equals the glide.
    AffineSubspace axis = geo.w().min_set();
    QVector p = axis.point();
    for (long t : {-1L, 0L, 2L}) {
      QVector q = p + axis.basis()[0] * Rational(t);
      CHECK(geo.w().apply(q) - q == geo.gamma());
    }

    // Every diagram wall is vertical, with the signed pairing formula:
    // <mu, axis> = <mu, mu>, and for node i: -mark * <a,a> on the blue
    // side, +mark * <a,a> on the green side.
    CHECK(dot(rs.highest_root(), from_blue) == dot(rs.highest_root(), rs.highest_root()));
    for (std::size_t node = 1; node < geo.node_is_blue().size(); ++node) {
      const QVector& a = rs.simple_roots()[node - 1];
      Rational maa = Rational(rs.marks()[node - 1]) * dot(a, a);
      Rational expect = geo.node_is_blue()[node] ? Rational(-maa) : maa;
      CHECK(dot(a, from_blue) == expect);
      CHECK(dot(a, from_blue) != 0);
    }
  }
}

TEST_CASE("order of the twist and the axis translation") {
  for (const char* type : {"C~2", "C~3", "G~2", "B~3"}) {
    EuclideanCoxeter geo{DynkinType::parse(type)};
    int e0 = geo.e0();
    REQUIRE(e0 >= 1);
    EuclideanIsometry wp = EuclideanIsometry::identity(geo.ambient_dim());
    for (int i = 0; i < e0; ++i) wp = wp.compose(geo.w());
    CHECK(wp == geo.axis_translation());
    CHECK(wp == EuclideanIsometry::translation(geo.gamma() * Rational(e0)));
    // Minimality: no smaller positive power is a translation.
    EuclideanIsometry acc = EuclideanIsometry::identity(geo.ambient_dim());
    for (int i = 1; i < e0; ++i) {
      acc = acc.compose(geo.w());
      CHECK(!acc.is_translation());
    }
  }
}

TEST_CASE("axis conjugation shifts vertical walls and fixes horizontal ones") {
  struct Row {
    const char* type;
    long shift;
  };
  // The wall offset advances by <mu, e0*glide>: 2 in family C (long
  // roots have square length 4 there), 1 in the other families.
  for (Row row : {Row{"C~2", 2}, Row{"C~3", 2}, Row{"G~2", 1}, Row{"B~3", 1}}) {
    EuclideanCoxeter geo{DynkinType::parse(row.type)};
    const QVector& mu = geo.roots().highest_root();
    CHECK(dot(mu, geo.gamma() * Rational(geo.e0())) == Rational(row.shift));
    for (long i = -2; i <= 2; ++i) {
      CHECK(geo.axis_conjugate(geo.reflection(mu, Rational(i))) ==
            geo.reflection(mu, Rational(i + row.shift)));
    }
    REQUIRE(!geo.horizontal_reflections().empty());
    for (const WallReflection& wr : geo.horizontal_reflections()) {
      EuclideanIsometry r = geo.reflection(wr);
      CHECK(geo.axis_conjugate(r) == r);
    }
  }
}

TEST_CASE("horizontal component count") {
  CHECK(EuclideanCoxeter{DynkinType::parse("C~2")}.k0() == 1);
  CHECK(EuclideanCoxeter{DynkinType::parse("C~3")}.k0() == 1);
  CHECK(EuclideanCoxeter{DynkinType::parse("G~2")}.k0() == 1);
  CHECK(EuclideanCoxeter{DynkinType::parse("B~3")}.k0() >= 2);
  CHECK(EuclideanCoxeter{DynkinType::parse("D~4")}.k0() >= 2);
  CHECK(EuclideanCoxeter{DynkinType::parse("D~4")}.k0() <= 3);
}

TEST_CASE("coarse translations are certified below w") {
  EuclideanCoxeter geo{DynkinType::parse("B~3")};
  REQUIRE(!geo.coarse_vectors().empty());
  REQUIRE(geo.coarse_vectors().size() == geo.coarse_complements().size());
  for (std::size_t i = 0; i < geo.coarse_vectors().size(); ++i) {
    EuclideanIsometry t = EuclideanIsometry::translation(geo.coarse_vectors()[i]);
    const EuclideanIsometry& h = geo.coarse_complements()[i];
    CHECK(h.elliptic());
    CHECK(t.compose(h) == geo.w());
    CHECK(isom_leq(t, geo.w()));
    // The vertical part of every coarse vector is the glide vector.
    QVector horiz = geo.coarse_vectors()[i] - geo.gamma();
    CHECK(dot(horiz, geo.gamma()) == 0);
  }
}

TEST_CASE("factored translation vectors split the coarse ones") {
  for (const char* type : {"B~3", "D~4"}) {
    EuclideanCoxeter geo{DynkinType::parse(type)};
    std::size_t k0 = geo.k0();
    REQUIRE(k0 >= 2);
    REQUIRE(!geo.factored_vectors().empty());
    std::set<std::string> ft;
    for (const QVector& v : geo.factored_vectors()) ft.insert(v.str());
    QVector gpart = geo.gamma() * rat(1, static_cast<long>(k0));
    for (const QVector& lambda : geo.coarse_vectors()) {
      QVector lh = lambda - geo.gamma();
      QVector sum(geo.ambient_dim());
      for (std::size_t i = 0; i < k0; ++i) {
        QVector piece = geo.project_component(i, lh) + gpart;
        CHECK(ft.count(piece.str()) == 1);
        sum = sum + piece;
      }
      // The k0 factored translations commute and multiply back to the
      // coarse translation.
      CHECK(sum == lambda);
    }
    // Each factored vector carries exactly the k0-th part of the glide.
    for (const QVector& v : geo.factored_vectors())
      CHECK(dot(v - gpart, geo.gamma()) == 0);
  }
  // Connected horizontal systems have no factored translations.
  CHECK(EuclideanCoxeter{DynkinType::parse("C~2")}.factored_vectors().empty());
  CHECK(EuclideanCoxeter{DynkinType::parse("G~2")}.factored_vectors().empty());
}

TEST_CASE("w0 is a full elliptic fixing the origin") {
  for (const char* type : {"C~2", "B~3"}) {
    EuclideanCoxeter geo{DynkinType::parse(type)};
    const EuclideanIsometry& w0 = geo.w0();
    CHECK(w0.elliptic());
    CHECK(w0.apply(QVector(geo.ambient_dim())) == QVector(geo.ambient_dim()));
    CHECK(w0.dim_mov() == geo.rank());
    CHECK(geo.essentially_point_minset(w0));
    CHECK(geo.diagram_reflections()[0].compose(w0) == geo.w());
  }
}

TEST_CASE("reflection recognition round-trips") {
  EuclideanCoxeter geo{DynkinType::parse("C~2")};
  for (const WallReflection& wr : geo.horizontal_reflections()) {
    auto back = geo.identify_reflection(geo.reflection(wr));
    REQUIRE(back.has_value());
    CHECK(back->root == wr.root);
    CHECK(back->offset == wr.offset);
  }
  const QVector& mu = geo.roots().highest_root();
  auto id = geo.identify_reflection(geo.reflection(mu, Rational(3)));
  REQUIRE(id.has_value());
  CHECK(id->root == canonical_sign(mu));
  CHECK(geo.identify_reflection(geo.w()) == std::nullopt);
  CHECK(geo.identify_reflection(
            EuclideanIsometry::identity(geo.ambient_dim())) == std::nullopt);
}

TEST_CASE("elliptic elements factor into minimal reflection chains") {
  for (const char* type : {"C~2", "B~3"}) {
    EuclideanCoxeter geo{DynkinType::parse(type)};
    auto chain = geo.elliptic_reflection_chain(geo.w0());
    REQUIRE(chain.has_value());
    CHECK(chain->size() == geo.w0().dim_mov());
    EuclideanIsometry prefix = EuclideanIsometry::identity(geo.ambient_dim());
    std::size_t k = 0;
    for (const WallReflection& wr : *chain) {
      prefix = prefix.compose(geo.reflection(wr));
      ++k;
      CHECK(prefix.elliptic());
      CHECK(prefix.dim_mov() == k);
    }
    CHECK(prefix == geo.w0());
    // Hyperbolic input has no such chain.
    CHECK(geo.elliptic_reflection_chain(geo.w()) == std::nullopt);
  }
}
