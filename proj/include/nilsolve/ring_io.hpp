#pragma once

#include <filesystem>
#include <iosfwd>

#include "nilsolve/ring.hpp"

namespace nilsolve {

// Plain-text ring format:
//
//   ring <m>
//   <m rows of the addition table, m integers each>
//   <m rows of the multiplication table>
//   [labels <m tokens>]
//
// Tokens are whitespace separated. Anything after the tables (or after the
// labels) is rejected.

void write_ring(std::ostream& out, const FiniteRing& ring);
FiniteRing read_ring(std::istream& in);

void save_ring(const std::filesystem::path& path, const FiniteRing& ring);
FiniteRing load_ring(const std::filesystem::path& path);

}  // namespace nilsolve
