#include "hartree/field_io.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

using namespace hartree;

TEST(FieldIo, RoundTripBitExact) {
  std::mt19937_64 gen(8);
  const GridSpec s(3, 2.5, 16);
  const auto f = test::random_bumps(s, gen, true);
  std::stringstream ss;
  write_field(ss, f);
  const auto g = read_field(ss);
  EXPECT_EQ(g.spec(), s);
  EXPECT_EQ(std::memcmp(f.values().data(), g.values().data(), f.size() * sizeof(double)), 0);
}

TEST(FieldIo, LayoutMatchesFormat) {
  const GridSpec s(1, 1.0, 16);
  Field f(s);
  f[0] = 1.0;
  std::stringstream ss;
  write_field(ss, f);
  const std::string bytes = ss.str();
  ASSERT_GE(bytes.size(), 14u);
  EXPECT_EQ(bytes.substr(0, 6), "HFLD1\n");
  std::uint64_t len = 0;
  for (int i = 7; i >= 0; --i)
    len = (len << 8) | static_cast<unsigned char>(bytes[6 + static_cast<std::size_t>(i)]);
  const std::string header = bytes.substr(14, len);
  EXPECT_NE(header.find("\"N\""), std::string::npos);
  EXPECT_NE(header.find("\"M\""), std::string::npos);
  EXPECT_NE(header.find("\"L\""), std::string::npos);
  EXPECT_EQ(bytes.size(), 14 + len + 16 * 8);
  // First value 1.0 little-endian: 00 .. 00 f0 3f.
  EXPECT_EQ(static_cast<unsigned char>(bytes[14 + len + 7]), 0x3f);
  EXPECT_EQ(static_cast<unsigned char>(bytes[14 + len + 6]), 0xf0);
}

TEST(FieldIo, RejectsMalformed) {
  std::stringstream bad("HFLD2\nxxxxxxxx");
  EXPECT_THROW(read_field(bad), std::runtime_error);
  const GridSpec s(1, 1.0, 16);
  std::stringstream ss;
  write_field(ss, Field(s));
  std::string cut = ss.str();
  cut.resize(cut.size() - 8);
  std::stringstream truncated(cut);
  EXPECT_THROW(read_field(truncated), std::runtime_error);
}
