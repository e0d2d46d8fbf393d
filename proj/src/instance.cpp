#include "sparse_tsp/instance.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace sparse_tsp {

Length euc2d_distance(const Point& p, const Point& q) noexcept {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return static_cast<Length>(std::floor(std::sqrt(dx * dx + dy * dy) + 0.5));
}

namespace {

std::size_t triangle_index(std::size_t n, std::size_t i, std::size_t j) {
  // i < j
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace

EuclideanInstance::EuclideanInstance(std::string name, std::vector<Point> coords,
                                     std::size_t matrix_threshold)
    : name_(std::move(name)), coords_(std::move(coords)) {
  if (coords_.size() < 3) {
    throw ContractError("instance needs at least 3 cities, got " + std::to_string(coords_.size()));
  }
  for (const Point& p : coords_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ContractError("instance '" + name_ + "' has a non-finite coordinate");
    }
  }
  const std::size_t n = coords_.size();
  if (n > matrix_threshold) return;

  auto table = std::make_shared<std::vector<std::int32_t>>(n * (n - 1) / 2);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Length d = euc2d_distance(coords_[i], coords_[j]);
      if (d > std::numeric_limits<std::int32_t>::max()) return;
      (*table)[idx++] = static_cast<std::int32_t>(d);
    }
  }
  cache_ = std::move(table);
}

Length EuclideanInstance::distance(Vertex i, Vertex j) const noexcept {
  if (i == j) return 0;
  if (cache_) {
    const auto a = static_cast<std::size_t>(std::min(i, j));
    const auto b = static_cast<std::size_t>(std::max(i, j));
    return (*cache_)[triangle_index(coords_.size(), a, b)];
  }
  return euc2d_distance(coords_[static_cast<std::size_t>(i)], coords_[static_cast<std::size_t>(j)]);
}

void Tour::check_permutation(std::span<const Vertex> order) {
  const std::size_t n = order.size();
  if (n < 3) throw ContractError("tour must visit at least 3 vertices");
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
      throw ContractError("tour vertex " + std::to_string(v) + " out of range");
    }
    if (seen[static_cast<std::size_t>(v)]++) {
      throw ContractError("tour repeats vertex " + std::to_string(v));
    }
  }
}

Tour Tour::on_instance(const EuclideanInstance& instance, std::vector<Vertex> order) {
  if (static_cast<int>(order.size()) != instance.dimension()) {
    throw ContractError("tour size does not match instance dimension");
  }
  return from_order(std::move(order), [&](Vertex a, Vertex b) { return instance.distance(a, b); });
}

// ---------------------------------------------------------------------------
// TSPLIB text

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// "KEY : value", "KEY: value", "KEY:value" and "KEY value" are all accepted.
struct HeaderLine {
  std::string key;
  std::string value;
};

HeaderLine split_header(std::string_view line) {
  line = trim(line);
  std::size_t key_end = 0;
  while (key_end < line.size() && (std::isalnum(static_cast<unsigned char>(line[key_end])) ||
                                   line[key_end] == '_')) {
    ++key_end;
  }
  HeaderLine h{upper(line.substr(0, key_end)), {}};
  std::string_view rest = trim(line.substr(key_end));
  if (!rest.empty() && rest.front() == ':') rest = trim(rest.substr(1));
  h.value = std::string(rest);
  return h;
}

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_long(std::string_view token, long long& out) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool is_section_keyword(const std::string& key) {
  return key == "NODE_COORD_SECTION" || key == "TOUR_SECTION" || key == "EDGE_WEIGHT_SECTION" ||
         key == "DISPLAY_DATA_SECTION" || key == "EDGE_DATA_SECTION" || key == "FIXED_EDGES_SECTION";
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace

EuclideanInstance parse_instance(std::string_view text) {
  using K = ParseError::Kind;
  const auto lines = split_lines(text);

  std::string name;
  std::string type;
  std::string weight_type;
  long long dimension = -1;
  std::vector<Point> coords;
  bool saw_coords = false;

  std::size_t i = 0;
  while (i < lines.size()) {
    const std::string_view raw = trim(lines[i]);
    ++i;
    if (raw.empty()) continue;
    const HeaderLine h = split_header(raw);
    if (h.key.empty()) {
      throw ParseError(K::MalformedHeader, "unrecognised line: '" + std::string(raw) + "'");
    }
    if (h.key == "EOF") break;
    if (h.key == "NAME") {
      name = h.value;
    } else if (h.key == "TYPE") {
      type = upper(h.value);
    } else if (h.key == "COMMENT") {
      // ignored
    } else if (h.key == "DIMENSION") {
      if (!parse_long(h.value, dimension) || dimension < 0) {
        throw ParseError(K::MalformedHeader, "DIMENSION is not a nonnegative integer: '" + h.value + "'");
      }
    } else if (h.key == "EDGE_WEIGHT_TYPE") {
      weight_type = upper(h.value);
      if (weight_type != "EUC_2D") {
        throw ParseError(K::UnsupportedWeightType,
                         "unsupported EDGE_WEIGHT_TYPE '" + h.value + "' (only EUC_2D)");
      }
    } else if (h.key == "NODE_COORD_SECTION") {
      saw_coords = true;
      while (i < lines.size()) {
        const std::string_view line = trim(lines[i]);
        if (line.empty()) {
          ++i;
          continue;
        }
        const auto tokens = split_ws(line);
        long long id = 0;
        if (!parse_long(tokens[0], id)) break;  // next keyword
        ++i;
        if (tokens.size() != 3) {
          throw ParseError(K::BadCoordinate, "coordinate line needs 'id x y': '" + std::string(line) + "'");
        }
        Point p;
        if (!parse_double(tokens[1], p.x) || !parse_double(tokens[2], p.y) || !std::isfinite(p.x) ||
            !std::isfinite(p.y)) {
          throw ParseError(K::BadCoordinate, "bad coordinate on line: '" + std::string(line) + "'");
        }
        coords.push_back(p);
      }
    } else if (is_section_keyword(h.key)) {
      throw ParseError(K::MalformedHeader, "unsupported section " + h.key);
    } else if (h.key == "EDGE_WEIGHT_FORMAT" || h.key == "NODE_COORD_TYPE" ||
               h.key == "DISPLAY_DATA_TYPE" || h.key == "CAPACITY") {
      // accepted and ignored
    } else {
      throw ParseError(K::MalformedHeader, "unknown keyword " + h.key);
    }
  }

  if (type.empty()) throw ParseError(K::MalformedHeader, "missing TYPE");
  if (type != "TSP") throw ParseError(K::UnsupportedType, "unsupported TYPE '" + type + "' (only TSP)");
  if (weight_type.empty()) throw ParseError(K::MalformedHeader, "missing EDGE_WEIGHT_TYPE");
  if (dimension < 0) throw ParseError(K::MalformedHeader, "missing DIMENSION");
  if (!saw_coords) throw ParseError(K::MalformedHeader, "missing NODE_COORD_SECTION");
  if (static_cast<long long>(coords.size()) != dimension) {
    throw ParseError(K::DimensionMismatch, "DIMENSION " + std::to_string(dimension) + " but " +
                                               std::to_string(coords.size()) + " coordinates listed");
  }
  if (dimension < 3) throw ParseError(K::DimensionMismatch, "DIMENSION must be at least 3");
  return EuclideanInstance(std::move(name), std::move(coords));
}

EuclideanInstance load_instance(const std::string& path) { return parse_instance(read_text_file(path)); }

std::string write_instance(const EuclideanInstance& instance) {
  std::ostringstream out;
  out << "NAME : " << instance.name() << '\n'
      << "TYPE : TSP\n"
      << "DIMENSION : " << instance.dimension() << '\n'
      << "EDGE_WEIGHT_TYPE : EUC_2D\n"
      << "NODE_COORD_SECTION\n";
  int id = 1;
  for (const Point& p : instance.coords()) {
    out << id++ << ' ' << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  }
  out << "EOF\n";
  return out.str();
}

std::string write_tour(std::span<const Vertex> order, std::string_view name) {
  std::ostringstream out;
  out << "NAME : " << name << '\n'
      << "TYPE : TOUR\n"
      << "DIMENSION : " << order.size() << '\n'
      << "TOUR_SECTION\n";
  for (Vertex v : order) out << (v + 1) << '\n';
  out << "-1\nEOF\n";
  return out.str();
}

std::vector<Vertex> parse_tour(std::string_view text, int dimension) {
  using K = ParseError::Kind;
  const auto lines = split_lines(text);
  long long declared = -1;
  std::vector<Vertex> order;
  bool in_section = false;
  bool terminated = false;

  for (const std::string_view raw_line : lines) {
    const std::string_view line = trim(raw_line);
    if (line.empty()) continue;
    if (!in_section) {
      const HeaderLine h = split_header(line);
      if (h.key == "TOUR_SECTION") {
        in_section = true;
      } else if (h.key == "DIMENSION") {
        if (!parse_long(h.value, declared)) throw ParseError(K::MalformedHeader, "bad DIMENSION in tour file");
      } else if (h.key == "TYPE") {
        if (upper(h.value) != "TOUR") throw ParseError(K::UnsupportedType, "tour file TYPE must be TOUR");
      } else if (h.key == "EOF") {
        break;
      } else if (h.key != "NAME" && h.key != "COMMENT") {
        throw ParseError(K::MalformedHeader, "unexpected line in tour header: '" + std::string(line) + "'");
      }
      continue;
    }
    if (terminated) {
      if (upper(line) == "EOF") break;
      throw ParseError(K::BadTour, "content after tour terminator: '" + std::string(line) + "'");
    }
    for (const std::string_view token : split_ws(line)) {
      long long id = 0;
      if (!parse_long(token, id)) throw ParseError(K::BadTour, "non-integer tour entry '" + std::string(token) + "'");
      if (id == -1) {
        terminated = true;
        break;
      }
      if (id < 1 || (dimension > 0 && id > dimension) || id > std::numeric_limits<int>::max()) {
        throw ParseError(K::BadTour, "tour vertex " + std::to_string(id) + " out of range");
      }
      order.push_back(static_cast<Vertex>(id - 1));
    }
  }
  if (!in_section) throw ParseError(K::MalformedHeader, "missing TOUR_SECTION");
  if (!terminated) throw ParseError(K::BadTour, "TOUR_SECTION not terminated by -1");

  const long long expected = dimension > 0 ? dimension : (declared > 0 ? declared : static_cast<long long>(order.size()));
  if (static_cast<long long>(order.size()) != expected) {
    throw ParseError(K::DimensionMismatch, "tour lists " + std::to_string(order.size()) + " vertices, expected " +
                                               std::to_string(expected));
  }
  std::vector<char> seen(order.size(), 0);
  for (Vertex v : order) {
    if (static_cast<std::size_t>(v) >= order.size()) {
      throw ParseError(K::BadTour, "tour vertex " + std::to_string(v + 1) + " out of range");
    }
    if (seen[static_cast<std::size_t>(v)]++) {
      throw ParseError(K::BadTour, "tour repeats vertex " + std::to_string(v + 1));
    }
  }
  return order;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sparse_tsp
