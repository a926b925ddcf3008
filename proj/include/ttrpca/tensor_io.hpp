#pragma once

#include "ttrpca/tensor.hpp"

#include <iosfwd>
#include <string>

namespace ttrpca {

/// Binary tensor file format "TNSR1":
///   bytes 0..3   magic "TNSR"
///   byte  4      version (1)
///   bytes 5..8   unsigned 32-bit order K, little-endian
///   then         K unsigned 32-bit extents, little-endian
///   then         prod(d_k) doubles, little-endian, column-major
///
/// Read errors throw std::runtime_error naming the byte offset of the
/// failure.
void write_tnsr(std::ostream& out, const DenseTensor& t);
void write_tnsr(const std::string& path, const DenseTensor& t);

DenseTensor read_tnsr(std::istream& in, const std::string& name = "<stream>");
DenseTensor read_tnsr(const std::string& path);

}  // namespace ttrpca
