// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace rlforge {

// Little-endian primitive writer; byte order is explicit so files are
// portable regardless of host endianness.
class LeWriter {
 public:
  explicit LeWriter(const std::filesystem::path& path);

  void magic(std::string_view four_cc);
  void u32(std::uint32_t v);
  void f32(float v);
  void f64(double v);
  void f64_array(const std::vector<double>& values);
  void close();

 private:
  void put_bytes(const unsigned char* bytes, std::size_t n);

  std::filesystem::path path_;
  std::ofstream out_;
  std::vector<unsigned char> buffer_;
};

class LeReader {
 public:
  explicit LeReader(const std::filesystem::path& path);

  void expect_magic(std::string_view four_cc);
  std::uint32_t u32();
  float f32();
  double f64();
  std::vector<double> f64_array(std::size_t n);
  void expect_end();

 private:
  const unsigned char* take(std::size_t n);

  std::filesystem::path path_;
  std::vector<unsigned char> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace rlforge
