#include "selfpair/png_codec.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <string>

namespace selfpair {

namespace {

struct ErrorSink {
  std::string message;
};

void on_png_error(png_structp png, png_const_charp msg) {
  auto* sink = static_cast<ErrorSink*>(png_get_error_ptr(png));
  if (sink != nullptr) sink->message = msg;
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

}  // namespace

struct PngReader::Impl {
  std::string path;
  PngMode mode;
  std::FILE* file = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;
  ErrorSink errors;
  int bit_depth = 8;
  std::size_t rowbytes = 0;
  std::vector<png_byte> row;
  std::vector<png_byte> whole;  // interlaced files only
  bool interlaced = false;

  ~Impl() {
    if (png != nullptr) png_destroy_read_struct(&png, info != nullptr ? &info : nullptr, nullptr);
    if (file != nullptr) std::fclose(file);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::UndecodableFile, path + ": " + what);
  }
};

namespace {

// All libpng calls that may longjmp live in these small functions with only
// trivially destructible locals.
bool png_open(PngReader::Impl& s, int& w, int& h, int& ch) {
  if (setjmp(png_jmpbuf(s.png))) return false;
  png_init_io(s.png, s.file);
  png_read_info(s.png, s.info);
  const png_byte color = png_get_color_type(s.png, s.info);
  const int depth = png_get_bit_depth(s.png, s.info);
  s.interlaced = png_get_interlace_type(s.png, s.info) != PNG_INTERLACE_NONE;

  if (s.mode == PngMode::image) {
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(s.png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(s.png);
    if (depth == 16) png_set_strip_16(s.png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(s.png);
  } else {
    if (color & PNG_COLOR_MASK_COLOR) {
      if (color != PNG_COLOR_TYPE_PALETTE) {
        s.errors.message = "label masks must be single-channel";
        return false;
      }
    }
    if (depth < 8) png_set_packing(s.png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(s.png);
  }
  if (s.interlaced) png_set_interlace_handling(s.png);
  png_read_update_info(s.png, s.info);

  w = static_cast<int>(png_get_image_width(s.png, s.info));
  h = static_cast<int>(png_get_image_height(s.png, s.info));
  ch = png_get_channels(s.png, s.info);
  s.bit_depth = png_get_bit_depth(s.png, s.info);
  s.rowbytes = png_get_rowbytes(s.png, s.info);
  return true;
}

bool png_read_one(PngReader::Impl& s, png_bytep row) {
  if (setjmp(png_jmpbuf(s.png))) return false;
  png_read_row(s.png, row, nullptr);
  return true;
}

bool png_read_all(PngReader::Impl& s, png_bytepp rows) {
  if (setjmp(png_jmpbuf(s.png))) return false;
  png_read_image(s.png, rows);
  return true;
}

}  // namespace

PngReader::PngReader(const std::filesystem::path& path, PngMode mode)
    : impl_(std::make_unique<Impl>()) {
  Impl& s = *impl_;
  s.path = path.string();
  s.mode = mode;
  s.file = std::fopen(s.path.c_str(), "rb");
  if (s.file == nullptr) s.fail("cannot open");
  png_byte sig[8];
  if (std::fread(sig, 1, 8, s.file) != 8 || png_sig_cmp(sig, 0, 8) != 0) s.fail("not a PNG file");
  std::rewind(s.file);

  s.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &s.errors, on_png_error, on_png_warning);
  if (s.png == nullptr) s.fail("libpng init failed");
  s.info = png_create_info_struct(s.png);
  if (s.info == nullptr) s.fail("libpng init failed");

  if (!png_open(s, width_, height_, channels_)) s.fail(s.errors.message);
  if (mode == PngMode::image && channels_ != 1 && channels_ != 3) {
    s.fail("unsupported channel layout");
  }
  if (mode == PngMode::label && channels_ != 1) s.fail("label masks must be single-channel");
  s.row.resize(s.rowbytes);

  if (s.interlaced) {
    s.whole.resize(s.rowbytes * static_cast<std::size_t>(height_));
    std::vector<png_bytep> rows(static_cast<std::size_t>(height_));
    for (int r = 0; r < height_; ++r) rows[r] = s.whole.data() + s.rowbytes * r;
    if (!png_read_all(s, rows.data())) s.fail(s.errors.message);
  }
}

PngReader::~PngReader() = default;

void PngReader::read_row(std::span<std::uint16_t> out) {
  Impl& s = *impl_;
  if (next_row_ >= height_) s.fail("read past the last row");
  const png_byte* src;
  if (s.interlaced) {
    src = s.whole.data() + s.rowbytes * next_row_;
  } else {
    if (!png_read_one(s, s.row.data())) s.fail(s.errors.message);
    src = s.row.data();
  }
  const std::size_t n = static_cast<std::size_t>(width_) * channels_;
  if (out.size() < n) throw Error(ErrorCode::InvalidArgument, "row buffer too small");
  if (s.bit_depth == 16) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = static_cast<std::uint16_t>((src[2 * i] << 8) | src[2 * i + 1]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = src[i];
  }
  ++next_row_;
}

void PngReader::skip_rows(int count) {
  std::vector<std::uint16_t> scratch(static_cast<std::size_t>(width_) * channels_);
  for (int i = 0; i < count; ++i) read_row(scratch);
}

PngSize read_png_size(const std::filesystem::path& path) {
  PngReader reader(path, PngMode::image);
  return {reader.width(), reader.height()};
}

namespace {

Rect resolve_region(const Rect& region, int w, int h, const std::filesystem::path& path) {
  if (region.width == 0 && region.height == 0) return Rect{0, 0, h, w};
  if (region.row < 0 || region.col < 0 || region.height < 1 || region.width < 1 ||
      region.row + region.height > h || region.col + region.width > w) {
    throw Error(ErrorCode::UndecodableFile, path.string() + ": tile outside the image");
  }
  return region;
}

}  // namespace

RasterImage read_image(const std::filesystem::path& path, const Rect& region) {
  PngReader reader(path, PngMode::image);
  const Rect r = resolve_region(region, reader.width(), reader.height(), path);
  const int ch = reader.channels();
  std::vector<std::uint16_t> row(static_cast<std::size_t>(reader.width()) * ch);
  std::vector<std::uint8_t> data;
  data.reserve(static_cast<std::size_t>(r.area()) * ch);
  reader.skip_rows(r.row);
  for (int y = 0; y < r.height; ++y) {
    reader.read_row(row);
    for (std::size_t i = static_cast<std::size_t>(r.col) * ch;
         i < static_cast<std::size_t>(r.col + r.width) * ch; ++i) {
      data.push_back(static_cast<std::uint8_t>(row[i]));
    }
  }
  return RasterImage(r.width, r.height, ch, std::move(data));
}

LabelRaster read_label(const std::filesystem::path& path, const Rect& region) {
  PngReader reader(path, PngMode::label);
  const Rect r = resolve_region(region, reader.width(), reader.height(), path);
  std::vector<std::uint16_t> row(static_cast<std::size_t>(reader.width()));
  LabelRaster out{r.width, r.height, {}};
  out.values.reserve(static_cast<std::size_t>(r.area()));
  reader.skip_rows(r.row);
  for (int y = 0; y < r.height; ++y) {
    reader.read_row(row);
    out.values.insert(out.values.end(), row.begin() + r.col, row.begin() + r.col + r.width);
  }
  return out;
}

SemanticMask read_mask(const std::filesystem::path& path) {
  const LabelRaster raster = read_label(path);
  std::vector<std::uint8_t> cells(raster.values.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = raster.values[i] != 0 ? 1 : 0;
  return SemanticMask(raster.width, raster.height, std::move(cells));
}

namespace {

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void flush_nothing(png_structp) {}

bool png_encode(png_structp png, png_infop info, std::vector<std::uint8_t>* out, int w, int h,
                int color, png_bytepp rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_set_write_fn(png, out, append_bytes, flush_nothing);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8, color,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows);
  png_write_end(png, nullptr);
  return true;
}

std::vector<std::uint8_t> encode_raw(int w, int h, int channels, const std::uint8_t* pixels) {
  ErrorSink errors;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &errors, on_png_error,
                                            on_png_warning);
  if (png == nullptr) throw Error(ErrorCode::IoFailure, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::IoFailure, "libpng init failed");
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(h));
  for (int r = 0; r < h; ++r) {
    rows[r] = const_cast<png_bytep>(pixels + static_cast<std::size_t>(r) * w * channels);
  }
  std::vector<std::uint8_t> out;
  const int color = channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY;
  const bool ok = png_encode(png, info, &out, w, h, color, rows.data());
  png_destroy_write_struct(&png, &info);
  if (!ok) throw Error(ErrorCode::IoFailure, "PNG encode failed: " + errors.message);
  return out;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const RasterImage& image) {
  return encode_raw(image.width(), image.height(), image.channels(), image.data().data());
}

std::vector<std::uint8_t> encode_png(const SemanticMask& mask) {
  std::vector<std::uint8_t> bytes(mask.data().begin(), mask.data().end());
  for (auto& v : bytes) v = v ? 255 : 0;
  return encode_raw(mask.width(), mask.height(), 1, bytes.data());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(ErrorCode::IoFailure, "write failed: " + path.string());
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(f), {});
}

}  // namespace selfpair
