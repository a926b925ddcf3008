#include "ttrpca/tensor_io.hpp"

#include "test_oracles.hpp"

#include <doctest.h>

#include <cstring>
#include <sstream>
#include <stdexcept>

using namespace ttrpca;

namespace {

std::string to_bytes(const DenseTensor& t) {
  std::ostringstream out(std::ios::binary);
  write_tnsr(out, t);
  return out.str();
}

DenseTensor from_bytes(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  return read_tnsr(in, "test");
}

}  // namespace

TEST_SUITE("tensor_io") {

TEST_CASE("write/read round trip is bit exact") {
  std::mt19937 gen(3);
  const DenseTensor t = oracle::gaussian_tensor({3, 4, 2, 5}, gen);
  const DenseTensor back = from_bytes(to_bytes(t));
  REQUIRE(back.dims() == t.dims());
  for (Index i = 0; i < t.size(); ++i) {
    CHECK(back[i] == t[i]);  // exact, not approximate
  }
}

TEST_CASE("header layout is as documented") {
  Vector v(4);
  v << 1.0, 2.0, 3.0, 4.0;
  const std::string bytes = to_bytes(DenseTensor({2, 2}, v));
  REQUIRE(bytes.size() == 9 + 8 + 32);
  CHECK(bytes.compare(0, 4, "TNSR") == 0);
  CHECK(bytes[4] == 1);                      // version
  CHECK(static_cast<unsigned char>(bytes[5]) == 2);  // K, little-endian
  CHECK(bytes[6] == 0);
  CHECK(static_cast<unsigned char>(bytes[9]) == 2);  // d_1
  CHECK(static_cast<unsigned char>(bytes[13]) == 2);  // d_2
  // 1.0 encodes as 0x3FF0000000000000 little-endian.
  CHECK(static_cast<unsigned char>(bytes[17 + 7]) == 0x3F);
  CHECK(static_cast<unsigned char>(bytes[17 + 6]) == 0xF0);
}

TEST_CASE("read errors name the byte offset") {
  std::mt19937 gen(5);
  const std::string bytes = to_bytes(oracle::gaussian_tensor({2, 3}, gen));

  SUBCASE("bad magic") {
    std::string bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_WITH_AS(from_bytes(bad),
                         doctest::Contains("at byte offset 0"),
                         std::runtime_error);
  }
  SUBCASE("bad version") {
    std::string bad = bytes;
    bad[4] = 9;
    CHECK_THROWS_WITH_AS(from_bytes(bad),
                         doctest::Contains("at byte offset 4"),
                         std::runtime_error);
  }
  SUBCASE("order out of range") {
    std::string bad = bytes;
    bad[5] = 120;
    CHECK_THROWS_WITH_AS(from_bytes(bad),
                         doctest::Contains("at byte offset 5"),
                         std::runtime_error);
  }
  SUBCASE("zero extent") {
    std::string bad = bytes;
    bad[9] = 0;
    CHECK_THROWS_WITH_AS(from_bytes(bad), doctest::Contains("zero extent"),
                         std::runtime_error);
  }
  SUBCASE("truncated payload") {
    const std::string bad = bytes.substr(0, bytes.size() - 5);
    CHECK_THROWS_WITH_AS(from_bytes(bad), doctest::Contains("byte offset"),
                         std::runtime_error);
  }
  SUBCASE("truncated header") {
    const std::string bad = bytes.substr(0, 6);
    CHECK_THROWS_WITH_AS(from_bytes(bad), doctest::Contains("byte offset"),
                         std::runtime_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_tnsr("/nonexistent/path.tnsr"), std::runtime_error);
  }
}

}  // TEST_SUITE
