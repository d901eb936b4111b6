// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/radar/cube_io.hpp"

#include <fmt/format.h>

#include "rlforge/core/binary_io.hpp"
#include "rlforge/core/error.hpp"

namespace rlforge::radar {
namespace {

void write_header(LeWriter& w, std::string_view magic, std::uint32_t d0, std::uint32_t d1, std::uint32_t d2,
                  const FrameMeta& meta) {
  w.magic(magic);
  w.u32(d0);
  w.u32(d1);
  w.u32(d2);
  w.f64(meta.timestamp);
  w.f64(meta.pose.position.x());
  w.f64(meta.pose.position.y());
  w.f64(meta.pose.position.z());
  w.f64(meta.pose.yaw_deg);
  w.f64(meta.pose.pitch_deg);
  w.f64(meta.pose.roll_deg);
}

struct Header {
  std::uint32_t dims[3];
  FrameMeta meta;
};

Header read_header(LeReader& r, std::string_view magic) {
  r.expect_magic(magic);
  Header h{};
  for (auto& d : h.dims) d = r.u32();
  h.meta.timestamp = r.f64();
  h.meta.pose.position.x() = r.f64();
  h.meta.pose.position.y() = r.f64();
  h.meta.pose.position.z() = r.f64();
  h.meta.pose.yaw_deg = r.f64();
  h.meta.pose.pitch_deg = r.f64();
  h.meta.pose.roll_deg = r.f64();
  h.meta.pose.timestamp = h.meta.timestamp;
  return h;
}

void write_complex(LeWriter& w, const ComplexVector& data) {
  for (const Complex& c : data) {
    w.f32(static_cast<float>(c.real()));
    w.f32(static_cast<float>(c.imag()));
  }
}

void read_complex(LeReader& r, ComplexVector& data, std::size_t n) {
  data.resize(n);
  for (auto& c : data) {
    const double re = r.f32();
    const double im = r.f32();
    c = {re, im};
  }
}

}  // namespace

void write_raw(const std::filesystem::path& path, const RawAdcCube& raw) {
  LeWriter w(path);
  write_header(w, "RDC1", raw.channels(), raw.chirps(), raw.samples_per_chirp(), raw.meta);
  write_complex(w, raw.samples);
  w.close();
}

RawAdcCube read_raw(const std::filesystem::path& path, const RadarConfig& config) {
  LeReader r(path);
  const Header h = read_header(r, "RDC1");
  if (static_cast<int>(h.dims[0]) != config.virtual_channels() ||
      static_cast<int>(h.dims[1]) != config.chirps_per_tx ||
      static_cast<int>(h.dims[2]) != config.samples_per_chirp) {
    throw ConfigError(fmt::format("{}: raw cube is {}x{}x{}, config expects {}x{}x{}", path.string(), h.dims[0],
                                  h.dims[1], h.dims[2], config.virtual_channels(), config.chirps_per_tx,
                                  config.samples_per_chirp));
  }
  RawAdcCube raw(config, h.meta);
  read_complex(r, raw.samples, raw.samples.size());
  r.expect_end();
  return raw;
}

void write_rd(const std::filesystem::path& path, const RdMapStack& stack) {
  LeWriter w(path);
  write_header(w, "RDM1", stack.channels, stack.range_bins, stack.doppler_bins, stack.meta);
  w.f64_array(stack.range_axis);
  w.f64_array(stack.velocity_axis);
  write_complex(w, stack.data);
  w.close();
}

RdMapStack read_rd(const std::filesystem::path& path) {
  LeReader r(path);
  const Header h = read_header(r, "RDM1");
  RdMapStack s;
  s.meta = h.meta;
  s.channels = static_cast<int>(h.dims[0]);
  s.range_bins = static_cast<int>(h.dims[1]);
  s.doppler_bins = static_cast<int>(h.dims[2]);
  s.range_axis = r.f64_array(h.dims[1]);
  s.velocity_axis = r.f64_array(h.dims[2]);
  read_complex(r, s.data, static_cast<std::size_t>(h.dims[0]) * h.dims[1] * h.dims[2]);
  r.expect_end();
  return s;
}

void write_rda(const std::filesystem::path& path, const RdaCube& cube) {
  LeWriter w(path);
  write_header(w, "RDA1", cube.range_bins, cube.doppler_bins, cube.azimuth_bins, cube.meta);
  w.f64_array(cube.range_axis);
  w.f64_array(cube.velocity_axis);
  w.f64_array(cube.azimuth_axis);
  write_complex(w, cube.data);
  w.close();
}

RdaCube read_rda(const std::filesystem::path& path) {
  LeReader r(path);
  const Header h = read_header(r, "RDA1");
  RdaCube c;
  c.meta = h.meta;
  c.range_bins = static_cast<int>(h.dims[0]);
  c.doppler_bins = static_cast<int>(h.dims[1]);
  c.azimuth_bins = static_cast<int>(h.dims[2]);
  c.range_axis = r.f64_array(h.dims[0]);
  c.velocity_axis = r.f64_array(h.dims[1]);
  c.azimuth_axis = r.f64_array(h.dims[2]);
  read_complex(r, c.data, static_cast<std::size_t>(h.dims[0]) * h.dims[1] * h.dims[2]);
  r.expect_end();
  return c;
}

void write_ra(const std::filesystem::path& path, const RaImage& image) {
  LeWriter w(path);
  write_header(w, "RAI1", image.db.rows(), image.db.cols(), 1, image.meta);
  w.f64_array(image.range_axis);
  w.f64_array(image.azimuth_axis);
  for (double v : image.db.data()) w.f32(static_cast<float>(v));
  w.close();
}

RaImage read_ra(const std::filesystem::path& path) {
  LeReader r(path);
  const Header h = read_header(r, "RAI1");
  if (h.dims[2] != 1) throw DataError(path.string() + ": RA image must have a unit third dimension");
  RaImage img;
  img.meta = h.meta;
  img.range_axis = r.f64_array(h.dims[0]);
  img.azimuth_axis = r.f64_array(h.dims[1]);
  img.db = Grid2<double>(static_cast<int>(h.dims[0]), static_cast<int>(h.dims[1]));
  for (double& v : img.db.data()) v = r.f32();
  r.expect_end();
  return img;
}

}  // namespace rlforge::radar
