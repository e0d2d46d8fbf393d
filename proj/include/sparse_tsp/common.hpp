#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace sparse_tsp {

/// Integer tour/edge length. Every metric and penalty weight is integral.
using Length = std::int64_t;

/// Zero-based vertex index. Files use 1-based ids; conversion happens at I/O.
using Vertex = int;

inline constexpr Length kInfiniteLength = std::numeric_limits<Length>::max();

/// Input text does not follow one of the supported file formats.
class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    MalformedHeader,
    UnsupportedType,
    UnsupportedWeightType,
    DimensionMismatch,
    BadCoordinate,
    BadTour,
    BadEdgeList,
  };

  ParseError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A caller violated an operation's precondition (invalid tour, degree-deficient
/// graph, out-of-range parameter).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Rng = std::mt19937_64;

/// Uniform draw in [0, bound). Unlike std::uniform_int_distribution the result
/// is identical across standard library implementations.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const unsigned __int128 product = static_cast<unsigned __int128>(rng()) * bound;
  return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace sparse_tsp
