#include "hairsynth/codec.hpp"

#include "hairsynth/error.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

namespace hairsynth {

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
constexpr std::uint32_t kMaxDimension = 1u << 15;

// libpng reports failures through longjmp, so everything that must survive an
// error lives in this struct rather than in locals of the setjmp frame.
struct PngReadState {
    std::span<const std::uint8_t> bytes;
    std::size_t offset = 0;
    std::string message;
    bool unsupported_depth = false;
    bool too_large = false;
    std::size_t max_pixels = kDefaultMaxPixels;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> rgba;
    std::vector<png_bytep> rows;
};

void png_read_error(png_structp png, png_const_charp msg) {
    auto* state = static_cast<PngReadState*>(png_get_error_ptr(png));
    state->message = msg ? msg : "unknown libpng error";
    png_longjmp(png, 1);
}

void png_silent_warning(png_structp, png_const_charp) {}

void png_read_bytes(png_structp png, png_bytep out, png_size_t length) {
    auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (length > state->bytes.size() - state->offset) {
        png_error(png, "unexpected end of PNG stream");
    }
    std::memcpy(out, state->bytes.data() + state->offset, length);
    state->offset += length;
}

bool run_png_read(PngReadState& state) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state, png_read_error, png_silent_warning);
    if (!png) {
        state.message = "out of memory creating PNG reader";
        return false;
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        state.message = "out of memory creating PNG info";
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_set_read_fn(png, &state, png_read_bytes);
    png_set_user_limits(png, kMaxDimension, kMaxDimension);
    png_read_info(png, info);

    if (static_cast<std::size_t>(png_get_image_width(png, info)) * png_get_image_height(png, info) >
        state.max_pixels) {
        state.too_large = true;
        state.message = "PNG is " + std::to_string(png_get_image_width(png, info)) + "x" +
                        std::to_string(png_get_image_height(png, info)) + ", above the " +
                        std::to_string(state.max_pixels) + " pixel limit";
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if (bit_depth > 8) {
        state.unsupported_depth = true;
        state.message = "PNG bit depth " + std::to_string(bit_depth) + " is not supported (8-bit only)";
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
    if (!(color_type & PNG_COLOR_MASK_ALPHA) && !png_get_valid(png, info, PNG_INFO_tRNS)) {
        png_set_filler(png, 0xff, PNG_FILLER_AFTER);
    }
    png_set_interlace_handling(png);
    png_read_update_info(png, info);

    state.width = png_get_image_width(png, info);
    state.height = png_get_image_height(png, info);
    const std::size_t stride = static_cast<std::size_t>(state.width) * 4;
    if (png_get_rowbytes(png, info) != stride) {
        png_error(png, "unexpected PNG row layout after conversion");
    }
    state.rgba.resize(stride * state.height);
    state.rows.resize(state.height);
    for (std::uint32_t y = 0; y < state.height; ++y) state.rows[y] = state.rgba.data() + y * stride;
    png_read_image(png, state.rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

Image decode_png(std::span<const std::uint8_t> bytes, std::size_t max_pixels) {
    PngReadState state;
    state.bytes = bytes;
    state.max_pixels = max_pixels;
    if (!run_png_read(state)) {
        if (state.too_large) throw ImageTooLargeError(state.message);
        if (state.unsupported_depth) throw UnsupportedBitDepthError(state.message);
        throw FormatError("malformed PNG: " + state.message, state.offset);
    }
    std::vector<double> samples(state.rgba.size());
    std::transform(state.rgba.begin(), state.rgba.end(), samples.begin(),
                   [](std::uint8_t v) { return static_cast<double>(v) / 255.0; });
    return Image(static_cast<int>(state.width), static_cast<int>(state.height), std::move(samples));
}

class PpmHeaderReader {
public:
    explicit PpmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t offset() const noexcept { return pos_; }

    void skip_whitespace_and_comments() {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
                ++pos_;
            } else {
                return;
            }
        }
    }

    std::uint32_t read_uint(const char* what) {
        skip_whitespace_and_comments();
        const std::size_t start = pos_;
        std::uint64_t value = 0;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > std::numeric_limits<std::uint32_t>::max()) {
                throw FormatError(std::string("PPM ") + what + " is out of range", start);
            }
            ++pos_;
        }
        if (pos_ == start) {
            throw FormatError(std::string("malformed PPM: expected ") + what, pos_);
        }
        return static_cast<std::uint32_t>(value);
    }

    void expect_single_whitespace() {
        if (pos_ >= bytes_.size()) throw FormatError("malformed PPM: header ends before pixel data", pos_);
        const auto c = bytes_[pos_];
        if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
            throw FormatError("malformed PPM: expected whitespace after maxval", pos_);
        }
        ++pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;
};

Image decode_ppm(std::span<const std::uint8_t> bytes, std::size_t max_pixels) {
    PpmHeaderReader reader(bytes);
    const std::uint32_t width = reader.read_uint("width");
    const std::uint32_t height = reader.read_uint("height");
    const std::size_t maxval_offset = reader.offset();
    const std::uint32_t maxval = reader.read_uint("maxval");
    if (width == 0 || height == 0 || width > kMaxDimension || height > kMaxDimension) {
        throw FormatError("PPM dimensions " + std::to_string(width) + "x" + std::to_string(height) +
                              " are out of range",
                          maxval_offset);
    }
    if (static_cast<std::size_t>(width) * height > max_pixels) {
        throw ImageTooLargeError("PPM is " + std::to_string(width) + "x" + std::to_string(height) + ", above the " +
                                 std::to_string(max_pixels) + " pixel limit");
    }
    if (maxval != 255) {
        throw UnsupportedBitDepthError("PPM maxval " + std::to_string(maxval) + " is not supported (255 only)");
    }
    reader.expect_single_whitespace();
    const std::size_t data_start = reader.offset();
    const std::size_t needed = static_cast<std::size_t>(width) * height * 3;
    if (bytes.size() - data_start < needed) {
        throw FormatError("truncated PPM pixel data: need " + std::to_string(needed) + " bytes, have " +
                              std::to_string(bytes.size() - data_start),
                          bytes.size());
    }
    std::vector<double> samples(static_cast<std::size_t>(width) * height * 4);
    const std::uint8_t* src = bytes.data() + data_start;
    for (std::size_t p = 0; p < static_cast<std::size_t>(width) * height; ++p) {
        samples[p * 4] = src[p * 3] / 255.0;
        samples[p * 4 + 1] = src[p * 3 + 1] / 255.0;
        samples[p * 4 + 2] = src[p * 3 + 2] / 255.0;
        samples[p * 4 + 3] = 1.0;
    }
    return Image(static_cast<int>(width), static_cast<int>(height), std::move(samples));
}

struct PngWriteState {
    std::vector<std::uint8_t> out;
    std::string message;
    std::vector<std::uint8_t> rgba;
    std::vector<png_bytep> rows;
};

void png_write_error(png_structp png, png_const_charp msg) {
    auto* state = static_cast<PngWriteState*>(png_get_error_ptr(png));
    state->message = msg ? msg : "unknown libpng error";
    png_longjmp(png, 1);
}

void png_write_bytes(png_structp png, png_bytep data, png_size_t length) {
    auto* state = static_cast<PngWriteState*>(png_get_io_ptr(png));
    state->out.insert(state->out.end(), data, data + length);
}

void png_flush_noop(png_structp) {}

bool run_png_write(PngWriteState& state, std::uint32_t width, std::uint32_t height) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &state, png_write_error, png_silent_warning);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_set_write_fn(png, &state, png_write_bytes, png_flush_noop);
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB_ALPHA, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, state.rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

std::vector<std::uint8_t> encode_png(const Image& img) {
    PngWriteState state;
    state.rgba.resize(img.samples().size());
    std::transform(img.samples().begin(), img.samples().end(), state.rgba.begin(), quantize_channel);
    const std::size_t stride = static_cast<std::size_t>(img.width()) * 4;
    state.rows.resize(img.height());
    for (int y = 0; y < img.height(); ++y) state.rows[y] = state.rgba.data() + y * stride;
    if (!run_png_write(state, static_cast<std::uint32_t>(img.width()), static_cast<std::uint32_t>(img.height()))) {
        throw Error("PNG encoding failed: " + state.message);
    }
    return std::move(state.out);
}

std::vector<std::uint8_t> encode_ppm(const Image& img) {
    const std::string header =
        "P6\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + img.pixel_count() * 3);
    const auto samples = img.samples();
    for (std::size_t p = 0; p < img.pixel_count(); ++p) {
        for (int c = 0; c < 3; ++c) out.push_back(quantize_channel(samples[p * 4 + c]));
    }
    return out;
}

} // namespace

Image decode_image(std::span<const std::uint8_t> bytes, std::size_t max_pixels) {
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') return decode_ppm(bytes, max_pixels);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '7') {
        throw FormatError(std::string("PPM/PNM variant P") + static_cast<char>(bytes[1]) +
                              " is not supported (binary P6 only)",
                          1);
    }
    const std::size_t sig_len = std::min<std::size_t>(bytes.size(), sizeof kPngSignature);
    if (sig_len > 0 && std::equal(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(sig_len), kPngSignature)) {
        if (sig_len < sizeof kPngSignature) throw FormatError("truncated PNG signature", bytes.size());
        return decode_png(bytes, max_pixels);
    }
    std::size_t mismatch = 0;
    while (mismatch < sig_len && bytes[mismatch] == kPngSignature[mismatch]) ++mismatch;
    throw FormatError("unrecognized image format (expected PNG or binary PPM)", mismatch);
}

std::vector<std::uint8_t> encode_image(const Image& img, ImageFormat format) {
    return format == ImageFormat::png ? encode_png(img) : encode_ppm(img);
}

ImageFormat format_for_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".ppm" ? ImageFormat::ppm : ImageFormat::png;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

Image load_image(const std::filesystem::path& path) { return decode_image(read_file_bytes(path)); }

void save_image(const Image& img, const std::filesystem::path& path) {
    write_file_bytes(path, encode_image(img, format_for_path(path)));
}

} // namespace hairsynth
