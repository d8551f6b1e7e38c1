// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/io/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <string>
#include <vector>

#include "adalut/errors.hpp"

namespace adalut::io {

namespace {

struct File {
  std::FILE* fp = nullptr;
  File(const std::filesystem::path& path, const char* mode) : fp(std::fopen(path.c_str(), mode)) {}
  ~File() {
    if (fp) std::fclose(fp);
  }
  File(const File&) = delete;
  File& operator=(const File&) = delete;
};

struct ReadHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~ReadHandles() { png_destroy_read_struct(&png, info ? &info : nullptr, nullptr); }
};

struct WriteHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~WriteHandles() { png_destroy_write_struct(&png, info ? &info : nullptr); }
};

void on_warning(png_structp, png_const_charp) {}

template <typename T>
void deinterleave(const std::vector<T>& rows, Image<T>& out) {
  const int w = out.width();
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < kChannels; ++c)
        out.at(c, y, x) = rows[(static_cast<std::size_t>(y) * w + x) * kChannels + c];
}

template <typename T>
void write_impl(const std::filesystem::path& path, const Image<T>& image, int depth) {
  if (image.empty()) throw IoError("refusing to write an empty image: " + path.string());
  File file(path, "wb");
  if (!file.fp) throw IoError("cannot open for writing: " + path.string());

  const int w = image.width(), h = image.height();
  std::vector<T> interleaved(static_cast<std::size_t>(kChannels) * w * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < kChannels; ++c)
        interleaved[(static_cast<std::size_t>(y) * w + x) * kChannels + c] = image.at(c, y, x);
  std::vector<png_bytep> rows(h);
  for (int y = 0; y < h; ++y)
    rows[y] = reinterpret_cast<png_bytep>(interleaved.data() + static_cast<std::size_t>(y) * w * kChannels);

  WriteHandles hs;
  hs.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, on_warning);
  if (!hs.png) throw IoError("libpng initialization failed");
  hs.info = png_create_info_struct(hs.png);
  if (!hs.info) throw IoError("libpng initialization failed");
  if (setjmp(png_jmpbuf(hs.png))) throw IoError("PNG encoding failed: " + path.string());

  png_init_io(hs.png, file.fp);
  png_set_IHDR(hs.png, hs.info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), depth, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(hs.png, hs.info);
  if (depth == 16) png_set_swap(hs.png);
  png_write_image(hs.png, rows.data());
  png_write_end(hs.png, nullptr);
}

}  // namespace

PngImage read_png(const std::filesystem::path& path) {
  File file(path, "rb");
  if (!file.fp) throw IoError("cannot open image: " + path.string());
  png_byte sig[8];
  if (std::fread(sig, 1, 8, file.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw IoError("not a PNG file: " + path.string());

  ReadHandles hs;
  hs.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, on_warning);
  if (!hs.png) throw IoError("libpng initialization failed");
  hs.info = png_create_info_struct(hs.png);
  if (!hs.info) throw IoError("libpng initialization failed");

  std::vector<std::uint8_t> buffer8;
  std::vector<std::uint16_t> buffer16;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(hs.png))) throw IoError("corrupt PNG: " + path.string());

  png_init_io(hs.png, file.fp);
  png_set_sig_bytes(hs.png, 8);
  png_read_info(hs.png, hs.info);

  const png_uint_32 w = png_get_image_width(hs.png, hs.info);
  const png_uint_32 h = png_get_image_height(hs.png, hs.info);
  const int color = png_get_color_type(hs.png, hs.info);
  const int depth = png_get_bit_depth(hs.png, hs.info);

  if ((color & PNG_COLOR_MASK_ALPHA) || png_get_valid(hs.png, hs.info, PNG_INFO_tRNS))
    throw IoError("images with an alpha channel are not supported: " + path.string());
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(hs.png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(hs.png);
  if (color == PNG_COLOR_TYPE_GRAY) png_set_gray_to_rgb(hs.png);
  if (depth == 16) png_set_swap(hs.png);
  png_read_update_info(hs.png, hs.info);

  const bool wide = depth == 16;
  const std::size_t samples = static_cast<std::size_t>(w) * h * kChannels;
  rows.resize(h);
  if (wide) {
    buffer16.resize(samples);
    for (png_uint_32 y = 0; y < h; ++y)
      rows[y] = reinterpret_cast<png_bytep>(buffer16.data() + static_cast<std::size_t>(y) * w * kChannels);
  } else {
    buffer8.resize(samples);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = buffer8.data() + static_cast<std::size_t>(y) * w * kChannels;
  }
  png_read_image(hs.png, rows.data());
  png_read_end(hs.png, nullptr);

  if (wide) {
    ImageU16 out(static_cast<int>(h), static_cast<int>(w));
    deinterleave(buffer16, out);
    return out;
  }
  ImageU8 out(static_cast<int>(h), static_cast<int>(w));
  deinterleave(buffer8, out);
  return out;
}

ImageF to_float(const PngImage& image) {
  return std::visit([](const auto& img) { return adalut::to_float(img); }, image);
}

int bit_depth(const PngImage& image) noexcept { return image.index() == 0 ? 8 : 16; }

void write_png(const std::filesystem::path& path, const ImageU8& image) { write_impl(path, image, 8); }
void write_png(const std::filesystem::path& path, const ImageU16& image) { write_impl(path, image, 16); }

}  // namespace adalut::io
