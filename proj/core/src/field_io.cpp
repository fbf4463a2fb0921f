#include "hartree/field_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace hartree {

namespace {

constexpr std::string_view kMagic = "HFLD1\n";

template <class T> T to_little_endian(T value) {
  if constexpr (std::endian::native == std::endian::little) {
    return value;
  } else {
    std::array<unsigned char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    std::reverse(bytes.begin(), bytes.end());
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
  }
}

template <class T> void put(std::ostream &os, T value) {
  value = to_little_endian(value);
  os.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

template <class T> T get(std::istream &is) {
  T value{};
  is.read(reinterpret_cast<char *>(&value), sizeof(T));
  if (!is)
    throw std::runtime_error("field stream truncated");
  return to_little_endian(value);
}

} // namespace

void write_field(std::ostream &os, const Field &f) {
  const auto &spec = f.spec();
  nlohmann::json header{{"N", spec.N()}, {"M", spec.M()}, {"L", spec.L()}};
  const std::string text = header.dump();
  os.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
  put<std::uint64_t>(os, text.size());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (double x : f.values())
    put<double>(os, x);
  if (!os)
    throw std::runtime_error("failed to write field");
}

void write_field(const std::filesystem::path &path, const Field &f) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_field(os, f);
}

Field read_field(std::istream &is) {
  std::string magic(kMagic.size(), '\0');
  is.read(magic.data(), static_cast<std::streamsize>(magic.size()));
  if (!is || magic != kMagic)
    throw std::runtime_error("not a field dump (bad magic)");
  const auto length = get<std::uint64_t>(is);
  if (length > (1u << 20))
    throw std::runtime_error("field header too long");
  std::string text(length, '\0');
  is.read(text.data(), static_cast<std::streamsize>(length));
  if (!is)
    throw std::runtime_error("field stream truncated");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(std::string("bad field header: ") + e.what());
  }
  const GridSpec spec(header.at("N").get<int>(), header.at("L").get<double>(),
                      header.at("M").get<std::size_t>());
  std::vector<double> values(spec.size());
  for (auto &x : values)
    x = get<double>(is);
  return Field(spec, std::move(values));
}

Field read_field(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw std::runtime_error("cannot open " + path.string());
  return read_field(is);
}

} // namespace hartree
