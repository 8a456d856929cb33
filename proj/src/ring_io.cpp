#include "nilsolve/ring_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "nilsolve/error.hpp"

namespace nilsolve {

namespace {

std::uint64_t parse_count(const std::string& token, const char* what) {
  std::uint64_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw Error(ErrorCode::ParseError, std::string("expected ") + what + ", got '" + token + "'");
  return value;
}

std::string next_token(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) throw Error(ErrorCode::ParseError, std::string("unexpected end of input, expected ") + what);
  return token;
}

}  // namespace

void write_ring(std::ostream& out, const FiniteRing& ring) {
  const std::size_t m = ring.order();
  out << "ring " << m << '\n';
  for (auto table : {ring.add_table(), ring.mul_table()}) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) out << (j == 0 ? "" : " ") << table[i * m + j];
      out << '\n';
    }
  }
  if (ring.has_labels()) {
    out << "labels";
    for (const auto& label : ring.labels()) out << ' ' << label;
    out << '\n';
  }
}

FiniteRing read_ring(std::istream& in) {
  if (next_token(in, "'ring'") != "ring") throw Error(ErrorCode::ParseError, "file must start with 'ring'");
  const std::uint64_t m = parse_count(next_token(in, "order"), "order");
  if (m == 0 || m > kMaxRingOrder) throw Error(ErrorCode::ParseError, "ring order out of range");
  std::vector<Elem> add(m * m), mul(m * m);
  for (auto* table : {&add, &mul})
    for (auto& entry : *table) {
      const std::uint64_t v = parse_count(next_token(in, "table entry"), "table entry");
      if (v >= m) throw Error(ErrorCode::ParseError, "table entry " + std::to_string(v) + " out of range");
      entry = static_cast<Elem>(v);
    }
  std::vector<std::string> labels;
  std::string token;
  if (in >> token) {
    if (token != "labels") throw Error(ErrorCode::ParseError, "trailing garbage '" + token + "'");
    labels.resize(m);
    for (auto& label : labels) label = next_token(in, "label");
    if (in >> token) throw Error(ErrorCode::ParseError, "trailing garbage '" + token + "'");
  }
  return validate_ring(m, std::move(add), std::move(mul), std::move(labels));
}

void save_ring(const std::filesystem::path& path, const FiniteRing& ring) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  write_ring(out, ring);
  if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + path.string());
}

FiniteRing load_ring(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  return read_ring(in);
}

}  // namespace nilsolve
