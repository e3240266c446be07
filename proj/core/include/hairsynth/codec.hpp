#pragma once

#include "hairsynth/image.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace hairsynth {

enum class ImageFormat { png, ppm };

inline constexpr std::size_t kDefaultMaxPixels = std::size_t{1} << 26;

/// Decodes 8-bit PNG (gray, palette, RGB or RGBA) or binary PPM (P6,
/// maxval 255). The format is sniffed from the leading bytes. Channels map
/// as c/255; a missing alpha channel becomes 1. Images with more than
/// `max_pixels` pixels raise ImageTooLargeError once the header is read.
Image decode_image(std::span<const std::uint8_t> bytes, std::size_t max_pixels = kDefaultMaxPixels);

/// PNG is written as 8-bit RGBA at a fixed zlib level; PPM drops alpha.
std::vector<std::uint8_t> encode_image(const Image& img, ImageFormat format);

/// Picks PPM for a `.ppm` extension, PNG otherwise.
ImageFormat format_for_path(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

Image load_image(const std::filesystem::path& path);
void save_image(const Image& img, const std::filesystem::path& path);

} // namespace hairsynth
