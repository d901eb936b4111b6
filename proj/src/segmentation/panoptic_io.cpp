// Copyright 2026 The rlforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "rlforge/segmentation/panoptic_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>

#include <fmt/format.h>

#include "rlforge/core/error.hpp"

namespace rlforge::segmentation {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

thread_local std::string png_message;

void png_error_handler(png_structp png, png_const_charp message) {
  png_message = message;
  png_longjmp(png, 1);
}
void png_warning_handler(png_structp, png_const_charp) {}

// libpng reports errors by longjmp; nothing with a destructor is created
// between setjmp and the end of the libpng calls.
template <typename T>
void write_gray(const std::filesystem::path& path, const Grid2<T>& image) {
  constexpr int kDepth = sizeof(T) * 8;
  if (image.rows() <= 0 || image.cols() <= 0) throw IoError("cannot write an empty PNG: " + path.string());
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot open for writing: " + path.string());
  // Big-endian samples, as PNG stores them.
  std::vector<png_byte> bytes(image.size() * sizeof(T));
  for (std::size_t i = 0; i < image.size(); ++i) {
    const T v = image.data()[i];
    if constexpr (sizeof(T) == 1) {
      bytes[i] = v;
    } else {
      bytes[2 * i] = static_cast<png_byte>(v >> 8);
      bytes[2 * i + 1] = static_cast<png_byte>(v & 0xff);
    }
  }
  const std::size_t stride = static_cast<std::size_t>(image.cols()) * sizeof(T);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_handler, png_warning_handler);
  png_infop info = png_create_info_struct(png);
  if (png == nullptr || info == nullptr) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(fmt::format("{}: {}", path.string(), png_message));
  }
  png_init_io(png, file.get());
  png_set_compression_level(png, 1);
  png_set_IHDR(png, info, image.cols(), image.rows(), kDepth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = 0; r < image.rows(); ++r) png_write_row(png, bytes.data() + r * stride);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(file.get()) != 0) throw IoError("write failed: " + path.string());
}

template <typename T>
Grid2<T> read_gray(const std::filesystem::path& path) {
  constexpr int kDepth = sizeof(T) * 8;
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw MissingInputError("cannot read " + path.string());
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_handler, png_warning_handler);
  png_infop info = png_create_info_struct(png);
  if (png == nullptr || info == nullptr) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng initialisation failed");
  }
  std::vector<png_byte> bytes;
  int width = 0, height = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError(fmt::format("{}: {}", path.string(), png_message));
  }
  png_init_io(png, file.get());
  png_read_info(png, info);
  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  const int interlace = png_get_interlace_type(png, info);
  if (color != PNG_COLOR_TYPE_GRAY || depth != kDepth || interlace != PNG_INTERLACE_NONE) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError(fmt::format("{}: expected a {}-bit single-channel non-interlaced PNG (color type {}, depth {})",
                                path.string(), kDepth, color, depth));
  }
  const std::size_t stride = static_cast<std::size_t>(width) * sizeof(T);
  bytes.resize(stride * height);
  for (int r = 0; r < height; ++r) png_read_row(png, bytes.data() + r * stride, nullptr);
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  Grid2<T> image(height, width);
  for (std::size_t i = 0; i < image.size(); ++i) {
    if constexpr (sizeof(T) == 1) {
      image.data()[i] = bytes[i];
    } else {
      image.data()[i] = static_cast<T>((bytes[2 * i] << 8) | bytes[2 * i + 1]);
    }
  }
  return image;
}

}  // namespace

void write_png(const std::filesystem::path& path, const Grid2<std::uint8_t>& image) { write_gray(path, image); }
void write_png(const std::filesystem::path& path, const Grid2<std::uint16_t>& image) { write_gray(path, image); }
Grid2<std::uint8_t> read_png8(const std::filesystem::path& path) { return read_gray<std::uint8_t>(path); }
Grid2<std::uint16_t> read_png16(const std::filesystem::path& path) { return read_gray<std::uint16_t>(path); }

PanopticPaths PanopticPaths::for_stem(const std::filesystem::path& stem) {
  const std::string s = stem.string();
  return {s + "_class.png", s + "_instance.png", s + ".json"};
}

Json sidecar_json(const PanopticFrame& frame) {
  Json instances = Json::array();
  for (const auto& [id, score] : frame.scores) instances.push_back({{"id", id}, {"score", score}});
  return Json{{"timestamp", frame.timestamp}, {"pose", pose_to_json(frame.camera_pose)}, {"instances", instances}};
}

void save_panoptic(const PanopticFrame& frame, const PanopticPaths& paths) {
  write_png(paths.class_png, frame.class_map);
  if (!paths.instance_png.empty() && frame.has_instances) write_png(paths.instance_png, frame.instance_map);
  if (!paths.sidecar.empty()) write_json_file(paths.sidecar, sidecar_json(frame));
}

PanopticFrame load_panoptic(const PanopticPaths& paths) {
  PanopticFrame frame;
  frame.class_map = read_png8(paths.class_png);
  if (!paths.instance_png.empty()) {
    frame.instance_map = read_png16(paths.instance_png);
    frame.has_instances = true;
  } else {
    frame.has_instances = false;
  }
  if (!paths.sidecar.empty()) {
    const Json j = read_json_file(paths.sidecar);
    try {
      frame.timestamp = j.at("timestamp").get<double>();
      frame.camera_pose = pose_from_json(j.at("pose"));
      frame.camera_pose.timestamp = frame.timestamp;
      for (const Json& inst : j.value("instances", Json::array())) {
        frame.scores[inst.at("id").get<std::uint16_t>()] = inst.at("score").get<double>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(fmt::format("{}: {}", paths.sidecar.string(), e.what()));
    }
  }
  frame.validate();
  return frame;
}

PanopticFrame load_panoptic(const std::filesystem::path& class_png, const std::filesystem::path& instance_png) {
  return load_panoptic(PanopticPaths{class_png, instance_png, {}});
}

}  // namespace rlforge::segmentation
