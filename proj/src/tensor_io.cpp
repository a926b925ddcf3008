#include "ttrpca/tensor_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace ttrpca {

namespace {

constexpr char kMagic[4] = {'T', 'N', 'S', 'R'};
constexpr unsigned char kVersion = 1;

[[noreturn]] void fail(const std::string& name, std::uint64_t offset,
                       const std::string& what) {
  throw std::runtime_error(name + ": " + what + " at byte offset " +
                           std::to_string(offset));
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char b[4] = {
      static_cast<unsigned char>(v),
      static_cast<unsigned char>(v >> 8),
      static_cast<unsigned char>(v >> 16),
      static_cast<unsigned char>(v >> 24),
  };
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t decode_u32(const unsigned char* b) {
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void encode_f64(double v, unsigned char* b) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
}

double decode_f64(const unsigned char* b) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

// Reads exactly n bytes or throws with the offset where input ran out.
void read_exact(std::istream& in, unsigned char* buf, std::size_t n,
                const std::string& name, std::uint64_t offset,
                const char* what) {
  in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n));
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got != n) {
    fail(name, offset + got,
         std::string("unexpected end of input while reading ") + what);
  }
}

}  // namespace

void write_tnsr(std::ostream& out, const DenseTensor& t) {
  out.write(kMagic, 4);
  out.put(static_cast<char>(kVersion));
  put_u32(out, static_cast<std::uint32_t>(t.order()));
  for (Index d : t.dims()) put_u32(out, static_cast<std::uint32_t>(d));

  constexpr Index kChunk = 4096;
  std::vector<unsigned char> buf(8 * kChunk);
  const double* src = t.data();
  for (Index i = 0; i < t.size(); i += kChunk) {
    const Index n = std::min(kChunk, t.size() - i);
    for (Index j = 0; j < n; ++j) encode_f64(src[i + j], buf.data() + 8 * j);
    out.write(reinterpret_cast<const char*>(buf.data()), 8 * n);
  }
  if (!out) throw std::runtime_error("TNSR1 write failed");
}

void write_tnsr(const std::string& path, const DenseTensor& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_tnsr(out, t);
  if (!out) throw std::runtime_error(path + ": write failed");
}

DenseTensor read_tnsr(std::istream& in, const std::string& name) {
  std::uint64_t offset = 0;
  unsigned char header[9];
  read_exact(in, header, 9, name, offset, "TNSR1 header");
  if (std::memcmp(header, kMagic, 4) != 0) {
    fail(name, 0, "bad magic, not a TNSR1 file");
  }
  if (header[4] != kVersion) {
    fail(name, 4, "unsupported TNSR1 version " + std::to_string(header[4]));
  }
  const std::uint32_t order = decode_u32(header + 5);
  if (order < 2 || order > static_cast<std::uint32_t>(kMaxOrder)) {
    fail(name, 5, "tensor order " + std::to_string(order) + " out of range");
  }
  offset = 9;

  std::vector<Index> dims(order);
  for (std::uint32_t k = 0; k < order; ++k) {
    unsigned char b[4];
    read_exact(in, b, 4, name, offset, "extent");
    const std::uint32_t d = decode_u32(b);
    if (d == 0) fail(name, offset, "zero extent");
    dims[k] = static_cast<Index>(d);
    offset += 4;
  }

  Index total = 0;
  try {
    total = extent_product(dims);
  } catch (const std::invalid_argument& e) {
    fail(name, 9, e.what());
  }

  Vector values(total);
  constexpr Index kChunk = 4096;
  std::vector<unsigned char> buf(8 * kChunk);
  for (Index i = 0; i < total; i += kChunk) {
    const Index n = std::min(kChunk, total - i);
    read_exact(in, buf.data(), static_cast<std::size_t>(8 * n), name, offset,
               "tensor data");
    for (Index j = 0; j < n; ++j) values[i + j] = decode_f64(buf.data() + 8 * j);
    offset += static_cast<std::uint64_t>(8 * n);
  }
  return DenseTensor(std::move(dims), std::move(values));
}

DenseTensor read_tnsr(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  return read_tnsr(in, path);
}

}  // namespace ttrpca
