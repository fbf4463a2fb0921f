#pragma once

#include "hartree/grid.hpp"

#include <filesystem>
#include <iosfwd>

namespace hartree {

// Binary field dump:
//   "HFLD1\n" | u64 LE header length | UTF-8 JSON {"N":..,"M":..,"L":..}
//   | M^N little-endian float64 values, row-major.
void write_field(std::ostream &os, const Field &f);
void write_field(const std::filesystem::path &path, const Field &f);

// Throws std::runtime_error on a malformed stream.
Field read_field(std::istream &is);
Field read_field(const std::filesystem::path &path);

} // namespace hartree
