#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "ssc/error.hpp"

namespace ssc {

// Little-endian primitives shared by the WAV, cache and checkpoint codecs.
// Explicit byte packing keeps the on-disk formats identical across platforms.

inline void write_u16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

inline void write_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

inline void write_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline void write_f32(std::ostream& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  write_u32(out, bits);
}

inline void read_exact(std::istream& in, char* buf, std::size_t n, const char* what) {
  in.read(buf, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw TruncationError(std::string("unexpected end of file while reading ") + what);
  }
}

inline std::uint16_t read_u16(std::istream& in, const char* what = "u16") {
  unsigned char b[2];
  read_exact(in, reinterpret_cast<char*>(b), 2, what);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

inline std::uint32_t read_u32(std::istream& in, const char* what = "u32") {
  unsigned char b[4];
  read_exact(in, reinterpret_cast<char*>(b), 4, what);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline std::uint64_t read_u64(std::istream& in, const char* what = "u64") {
  const std::uint64_t lo = read_u32(in, what);
  const std::uint64_t hi = read_u32(in, what);
  return lo | (hi << 32);
}

inline float read_f32(std::istream& in, const char* what = "f32") {
  const std::uint32_t bits = read_u32(in, what);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

}  // namespace ssc
