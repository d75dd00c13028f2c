#include "gcpid/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "gcpid/error.hpp"

#ifdef GCPID_HAVE_PNG
#include <png.h>
#endif

namespace gcpid::io {

namespace fs = std::filesystem;

namespace {

std::vector<unsigned char> read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for reading");
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>());
}

// Header token reader for netpbm: skips whitespace and '#' comments.
class PnmHeader {
 public:
  PnmHeader(const std::vector<unsigned char>& bytes, const fs::path& path)
      : bytes_(bytes), path_(path) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw IoError(path_.string() + ": malformed PPM header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) throw IoError(path_.string() + ": PPM header value too large");
      ++pos_;
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw IoError(path_.string() + ": malformed PPM header");
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

Image decode_ppm(const std::vector<unsigned char>& bytes, const fs::path& path) {
  PnmHeader header(bytes, path);
  header.skip(2);
  const int width = header.next_int();
  const int height = header.next_int();
  const int maxval = header.next_int();
  if (width <= 0 || height <= 0) throw IoError(path.string() + ": invalid PPM dimensions");
  if (maxval != 255) {
    throw IoError(path.string() + ": unsupported PPM bit depth (maxval " +
                  std::to_string(maxval) + ", expected 255)");
  }
  const std::size_t offset = header.raster_offset();
  const std::size_t plane = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < offset + 3 * plane) {
    throw IoError(path.string() + ": truncated PPM raster (" +
                  std::to_string(bytes.size() - offset) + " of " + std::to_string(3 * plane) +
                  " bytes)");
  }
  std::vector<double> data(3 * plane);
  for (std::size_t i = 0; i < plane; ++i) {
    for (std::size_t c = 0; c < 3; ++c) data[c * plane + i] = bytes[offset + 3 * i + c];
  }
  return Image(height, width, 3, std::move(data));
}

void write_bytes(const fs::path& path, const std::string& header,
                 const std::vector<unsigned char>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
  out.close();
  if (!out) throw IoError(path.string() + ": write failed");
}

std::vector<unsigned char> interleave(const Raster8& r) {
  const std::size_t plane = static_cast<std::size_t>(r.width) * static_cast<std::size_t>(r.height);
  std::vector<unsigned char> out(3 * plane);
  for (std::size_t i = 0; i < plane; ++i) {
    for (std::size_t c = 0; c < 3; ++c) out[3 * i + c] = r.data[c * plane + i];
  }
  return out;
}

bool is_png(const std::vector<unsigned char>& bytes) {
  static constexpr std::array<unsigned char, 8> sig = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  return bytes.size() >= sig.size() && std::equal(sig.begin(), sig.end(), bytes.begin());
}

std::string lower_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

#ifdef GCPID_HAVE_PNG
Image decode_png(const std::vector<unsigned char>& bytes, const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw IoError(path.string() + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw IoError(path.string() + ": unsupported PNG bit depth (16-bit)");
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError(path.string() + ": " + msg);
  }
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  const std::size_t plane = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> data(3 * plane);
  for (std::size_t i = 0; i < plane; ++i) {
    for (std::size_t c = 0; c < 3; ++c) data[c * plane + i] = buf[3 * i + c];
  }
  return Image(height, width, 3, std::move(data));
}

void encode_png(const Raster8& r, const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(r.width);
  image.height = static_cast<png_uint_32>(r.height);
  image.format = PNG_FORMAT_RGB;
  const auto buf = interleave(r);
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, buf.data(), 0, nullptr)) {
    throw IoError(path.string() + ": " + image.message);
  }
}
#endif

}  // namespace

bool png_supported() noexcept {
#ifdef GCPID_HAVE_PNG
  return true;
#else
  return false;
#endif
}

Image load_image(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw IoError(path.string() + ": no such file");
  const auto bytes = read_all(path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') return decode_ppm(bytes, path);
  if (is_png(bytes)) {
#ifdef GCPID_HAVE_PNG
    return decode_png(bytes, path);
#else
    throw IoError(path.string() + ": PNG support not compiled in");
#endif
  }
  throw IoError(path.string() + ": unsupported format (expected binary PPM P6 or PNG)");
}

void save_image(const Image& img, const fs::path& path) {
  if (img.channels() != 3) throw IoError(path.string() + ": only 3-channel images are written");
  const Raster8 r = quantize(img);
  if (lower_extension(path) == ".png") {
#ifdef GCPID_HAVE_PNG
    encode_png(r, path);
    return;
#else
    throw IoError(path.string() + ": PNG support not compiled in");
#endif
  }
  const std::string header =
      "P6\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n255\n";
  write_bytes(path, header, interleave(r));
}

VideoSequence load_video(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError(dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lower_extension(entry.path());
    if (ext == ".ppm" || ext == ".png") files.push_back(entry.path());
  }
  if (files.empty()) throw IoError(dir.string() + ": no .ppm or .png frames");
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  std::vector<Image> frames;
  frames.reserve(files.size());
  for (const auto& f : files) frames.push_back(load_image(f));
  for (const auto& f : frames) {
    if (!f.same_shape(frames.front())) throw IoError(dir.string() + ": frames differ in size");
  }
  return VideoSequence(std::move(frames));
}

void save_video(const VideoSequence& video, const fs::path& dir, const std::string& ext) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir.string() + ": cannot create directory (" + ec.message() + ")");
  for (int f = 0; f < video.frame_count(); ++f) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%05d", f);
    save_image(video.frame(f), dir / (std::string(name) + ext));
  }
}

}  // namespace gcpid::io
