#pragma once

#include <filesystem>

#include "gcpid/image.hpp"

namespace gcpid::io {

/// Reads a binary PPM (P6, maxval 255) or an 8-bit PNG as a 3-channel Image.
/// The format is chosen from the file signature. Throws IoError naming the
/// path on missing files, malformed or truncated data, and other bit depths.
Image load_image(const std::filesystem::path& path);

/// Quantizes and writes a 3-channel image; ".png" selects PNG, anything else PPM.
void save_image(const Image& img, const std::filesystem::path& path);

/// Frames are the .ppm/.png files of a directory in lexicographic order.
VideoSequence load_video(const std::filesystem::path& dir);

/// Writes frame_00000.<ext>, frame_00001.<ext>, ... creating dir if needed.
void save_video(const VideoSequence& video, const std::filesystem::path& dir,
                const std::string& ext = ".ppm");

/// True when PNG support was compiled in.
bool png_supported() noexcept;

}  // namespace gcpid::io
