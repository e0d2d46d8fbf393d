#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sparse_tsp/instance.hpp"

using namespace sparse_tsp;

namespace {

ParseError::Kind parse_kind(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error");
  return ParseError::Kind::MalformedHeader;
}

constexpr std::string_view kTriangle =
    "NAME : tri\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n";

}  // namespace

TEST_SUITE("tsplib") {
  TEST_CASE("three-node file parses with its coordinates in file order") {
    const auto inst = parse_instance(kTriangle);
    CHECK(inst.name() == "tri");
    CHECK(inst.dimension() == 3);
    CHECK(inst.point(1) == Point{3, 0});
    CHECK(inst.point(2) == Point{0, 4});
    CHECK(inst.distance(1, 2) == 5);
  }

  TEST_CASE("keyword order, spacing and extra keywords are tolerated") {
    const auto inst = parse_instance(
        "  EDGE_WEIGHT_TYPE: EUC_2D\nCOMMENT : three points, one comment\nDIMENSION 3\n"
        "TYPE:TSP\nNAME:x\nNODE_COORD_SECTION\n  1   0.5   0 \n2 3 0\n\n3 0 4\n");
    CHECK(inst.dimension() == 3);
    CHECK(inst.point(0).x == doctest::Approx(0.5));
  }

  TEST_CASE("ids are renumbered in file order") {
    const auto inst = parse_instance(
        "TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n7 1 1\n3 2 2\n9 5 5\nEOF\n");
    CHECK(inst.point(0) == Point{1, 1});
    CHECK(inst.point(2) == Point{5, 5});
  }

  TEST_CASE("each malformed input has its own diagnostic") {
    CHECK(parse_kind("TYPE : TSP\nDIMENSION : 5\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 0\n3 2 "
                     "0\n4 3 0\nEOF\n") == ParseError::Kind::DimensionMismatch);
    CHECK(parse_kind("TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_SECTION\n1 2 3\nEOF\n") ==
          ParseError::Kind::UnsupportedWeightType);
    CHECK(parse_kind("TYPE : ATSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 0\n3 2 "
                     "0\n") == ParseError::Kind::UnsupportedType);
    CHECK(parse_kind("DIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 0\n3 2 0\n") ==
          ParseError::Kind::MalformedHeader);
    CHECK(parse_kind("TYPE : TSP\nDIMENSION : three\nEDGE_WEIGHT_TYPE : EUC_2D\n") == ParseError::Kind::MalformedHeader);
    CHECK(parse_kind("TYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 x\n3 2 "
                     "0\n") == ParseError::Kind::BadCoordinate);
  }

  TEST_CASE("EUC_2D rounds the norm half up") {
    CHECK(euc2d_distance({0, 0}, {3, 4}) == 5);
    CHECK(euc2d_distance({0, 0}, {1, 1}) == 1);
    CHECK(euc2d_distance({2, 7}, {2, 7}) == 0);
    CHECK(euc2d_distance({0, 0}, {0.5, 0}) == 1);
    CHECK(euc2d_distance({0, 0}, {2.5, 0}) == 3);
    CHECK(euc2d_distance({0, 0}, {1.49, 0}) == 1);
  }

  TEST_CASE("distance is symmetric and zero only for equal points") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coord(-1000, 1000);
    for (int t = 0; t < 2000; ++t) {
      const Point p{std::round(coord(rng)), std::round(coord(rng))};
      const Point q{std::round(coord(rng)), std::round(coord(rng))};
      CHECK(euc2d_distance(p, q) == euc2d_distance(q, p));
      CHECK((euc2d_distance(p, q) == 0) == (p == q));
      CHECK(euc2d_distance(p, q) == static_cast<Length>(std::floor(std::hypot(p.x - q.x, p.y - q.y) + 0.5)));
    }
  }

  TEST_CASE("cached and on-demand distances agree") {
    const auto a = oracle::random_instance(40, 9);
    const EuclideanInstance b(a.name(), std::vector<Point>(a.coords().begin(), a.coords().end()), 10);
    CHECK(a.has_distance_cache());
    CHECK_FALSE(b.has_distance_cache());
    for (Vertex i = 0; i < 40; ++i) {
      for (Vertex j = 0; j < 40; ++j) CHECK(a.distance(i, j) == b.distance(i, j));
    }
  }

  TEST_CASE("instance invariants are enforced") {
    CHECK_THROWS_AS(EuclideanInstance("two", {{0, 0}, {1, 1}}), ContractError);
    CHECK_THROWS_AS(EuclideanInstance("nan", {{0, 0}, {1, 1}, {NAN, 0}}), ContractError);
  }

  TEST_CASE("instances round-trip through the writer") {
    for (unsigned seed = 1; seed <= 20; ++seed) {
      std::mt19937 rng(seed);
      std::uniform_real_distribution<double> coord(-1e7, 1e7);
      std::vector<Point> pts(25);
      for (auto& p : pts) p = {coord(rng), coord(rng)};
      const EuclideanInstance inst("r" + std::to_string(seed), pts);
      const auto text = write_instance(inst);
      const auto back = parse_instance(text);
      CHECK(back == inst);
      CHECK(write_instance(back) == text);
    }
  }

  TEST_CASE("tour file lists 1-based ids and ends with -1") {
    const std::vector<Vertex> order{0, 1, 2};
    const auto text = write_tour(order, "t");
    CHECK(text.find("TOUR_SECTION\n1\n2\n3\n-1\n") != std::string::npos);
    CHECK(parse_tour(text, 3) == order);
  }

  TEST_CASE("random 50-vertex tours round-trip byte for byte") {
    std::vector<Vertex> order(50);
    for (int i = 0; i < 50; ++i) order[static_cast<std::size_t>(i)] = i;
    std::mt19937 rng(11);
    for (int t = 0; t < 20; ++t) {
      std::shuffle(order.begin(), order.end(), rng);
      const auto text = write_tour(order, "p");
      const auto back = parse_tour(text, 50);
      CHECK(back == order);
      CHECK(write_tour(back, "p") == text);
    }
  }

  TEST_CASE("tour parser rejects vertex 0, repeats and out-of-range ids") {
    auto kind = [](std::string_view text, int dim) {
      try {
        parse_tour(text, dim);
      } catch (const ParseError& e) {
        return e.kind();
      }
      return ParseError::Kind::MalformedHeader;
    };
    CHECK(kind("TOUR_SECTION\n0\n1\n2\n-1\n", 3) == ParseError::Kind::BadTour);
    CHECK(kind("TOUR_SECTION\n1\n2\n2\n-1\n", 3) == ParseError::Kind::BadTour);
    CHECK(kind("TOUR_SECTION\n1\n2\n4\n-1\n", 3) == ParseError::Kind::BadTour);
    CHECK(kind("TOUR_SECTION\n1\n2\n3\n", 3) == ParseError::Kind::BadTour);
    CHECK(kind("TOUR_SECTION\n1\n2\n-1\n", 3) == ParseError::Kind::DimensionMismatch);
    CHECK_THROWS_AS(parse_tour("TOUR_SECTION\n1\n2\n2\n-1\n"), ParseError);
  }

  TEST_CASE("tour length is recomputed with the closing edge") {
    const auto inst = parse_instance(kTriangle);
    const auto tour = Tour::on_instance(inst, {0, 2, 1});
    CHECK(tour.length() == 12);
    CHECK_THROWS_AS(Tour::on_instance(inst, {0, 1, 1}), ContractError);
    CHECK_THROWS_AS(Tour::on_instance(inst, {0, 1}), ContractError);
  }
}
