// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/core/binary_io.hpp"

#include <bit>
#include <cstring>
#include <iterator>

#include "rlforge/core/error.hpp"

namespace rlforge {
namespace {

template <typename U>
void store_le(U v, unsigned char* out) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
}

template <typename U>
U load_le(const unsigned char* in) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(in[i]) << (8 * i);
  return v;
}

}  // namespace

LeWriter::LeWriter(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw IoError("cannot open for writing: " + path.string());
  buffer_.reserve(1 << 16);
}

void LeWriter::put_bytes(const unsigned char* bytes, std::size_t n) {
  buffer_.insert(buffer_.end(), bytes, bytes + n);
  if (buffer_.size() >= (1 << 20)) {
    out_.write(reinterpret_cast<const char*>(buffer_.data()), static_cast<std::streamsize>(buffer_.size()));
    buffer_.clear();
  }
}

void LeWriter::magic(std::string_view four_cc) {
  put_bytes(reinterpret_cast<const unsigned char*>(four_cc.data()), four_cc.size());
}

void LeWriter::u32(std::uint32_t v) {
  unsigned char b[4];
  store_le(v, b);
  put_bytes(b, 4);
}

void LeWriter::f32(float v) {
  unsigned char b[4];
  store_le(std::bit_cast<std::uint32_t>(v), b);
  put_bytes(b, 4);
}

void LeWriter::f64(double v) {
  unsigned char b[8];
  store_le(std::bit_cast<std::uint64_t>(v), b);
  put_bytes(b, 8);
}

void LeWriter::f64_array(const std::vector<double>& values) {
  for (double v : values) f64(v);
}

void LeWriter::close() {
  out_.write(reinterpret_cast<const char*>(buffer_.data()), static_cast<std::streamsize>(buffer_.size()));
  buffer_.clear();
  out_.close();
  if (!out_) throw IoError("write failed: " + path_.string());
}

LeReader::LeReader(const std::filesystem::path& path) : path_(path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) throw MissingInputError("no such file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  bytes_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

const unsigned char* LeReader::take(std::size_t n) {
  if (pos_ + n > bytes_.size()) throw DataError("truncated file: " + path_.string());
  const unsigned char* p = bytes_.data() + pos_;
  pos_ += n;
  return p;
}

void LeReader::expect_magic(std::string_view four_cc) {
  const unsigned char* p = take(four_cc.size());
  if (std::memcmp(p, four_cc.data(), four_cc.size()) != 0) {
    throw DataError("bad magic in " + path_.string() + ", expected " + std::string(four_cc));
  }
}

std::uint32_t LeReader::u32() { return load_le<std::uint32_t>(take(4)); }
float LeReader::f32() { return std::bit_cast<float>(load_le<std::uint32_t>(take(4))); }
double LeReader::f64() { return std::bit_cast<double>(load_le<std::uint64_t>(take(8))); }

std::vector<double> LeReader::f64_array(std::size_t n) {
  std::vector<double> out(n);
  for (auto& v : out) v = f64();
  return out;
}

void LeReader::expect_end() {
  if (pos_ != bytes_.size()) throw DataError("trailing bytes in " + path_.string());
}

}  // namespace rlforge
