#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparse_tsp/common.hpp"

namespace sparse_tsp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// TSPLIB EUC_2D metric: the Euclidean norm rounded half-up to an integer.
Length euc2d_distance(const Point& p, const Point& q) noexcept;

/// A named planar point set under the EUC_2D metric. Immutable once built;
/// copies share the cached distance table.
class EuclideanInstance {
 public:
  static constexpr std::size_t kDefaultMatrixThreshold = 5000;

  EuclideanInstance(std::string name, std::vector<Point> coords,
                    std::size_t matrix_threshold = kDefaultMatrixThreshold);

  const std::string& name() const noexcept { return name_; }
  int dimension() const noexcept { return static_cast<int>(coords_.size()); }
  std::span<const Point> coords() const noexcept { return coords_; }
  const Point& point(Vertex v) const { return coords_[static_cast<std::size_t>(v)]; }

  Length distance(Vertex i, Vertex j) const noexcept;
  bool has_distance_cache() const noexcept { return cache_ != nullptr; }

  friend bool operator==(const EuclideanInstance& a, const EuclideanInstance& b) {
    return a.name_ == b.name_ && a.coords_ == b.coords_;
  }

 private:
  std::string name_;
  std::vector<Point> coords_;
  // Strict upper triangle, row-major; absent above the threshold or when a
  // distance does not fit in 32 bits.
  std::shared_ptr<const std::vector<std::int32_t>> cache_;
};

/// A cyclic permutation of all vertices with its total length (closing edge
/// included).
class Tour {
 public:
  Tour() = default;

  /// Validates that `order` is a permutation of 0..n-1 and sums `weight` over
  /// consecutive pairs, wrapping. Throws ContractError otherwise.
  template <class WeightFn>
  static Tour from_order(std::vector<Vertex> order, WeightFn&& weight) {
    check_permutation(order);
    Length total = 0;
    const std::size_t n = order.size();
    for (std::size_t i = 0; i < n; ++i) total += weight(order[i], order[(i + 1) % n]);
    return Tour(std::move(order), total);
  }

  static Tour on_instance(const EuclideanInstance& instance, std::vector<Vertex> order);

  std::span<const Vertex> order() const noexcept { return order_; }
  const std::vector<Vertex>& order_vector() const noexcept { return order_; }
  Length length() const noexcept { return length_; }
  int size() const noexcept { return static_cast<int>(order_.size()); }

  /// Throws ContractError unless `order` holds each of 0..n-1 exactly once.
  static void check_permutation(std::span<const Vertex> order);

  friend bool operator==(const Tour&, const Tour&) = default;

 private:
  Tour(std::vector<Vertex> order, Length length) : order_(std::move(order)), length_(length) {}

  std::vector<Vertex> order_;
  Length length_ = 0;
};

/// Parses the TSPLIB subset used by the VLSI collection: TYPE TSP,
/// EDGE_WEIGHT_TYPE EUC_2D, NODE_COORD_SECTION. Node ids are renumbered in
/// file order. Throws ParseError with a kind per failure class.
EuclideanInstance parse_instance(std::string_view text);
EuclideanInstance load_instance(const std::string& path);

/// Writes a TSPLIB file whose coordinates round-trip exactly through
/// parse_instance.
std::string write_instance(const EuclideanInstance& instance);

/// TSPLIB tour file with a TOUR_SECTION of 1-based ids terminated by -1.
std::string write_tour(std::span<const Vertex> order, std::string_view name);

/// Returns the zero-based order listed in a TOUR_SECTION. When `dimension` is
/// positive, ids outside 1..dimension and tours of the wrong size are
/// rejected; repeated ids are always rejected.
std::vector<Vertex> parse_tour(std::string_view text, int dimension = 0);

std::string read_text_file(const std::string& path);

}  // namespace sparse_tsp
