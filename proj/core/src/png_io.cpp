#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "lfiqa/error.hpp"
#include "lfiqa/lfio.hpp"

namespace lfiqa {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f != nullptr) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_handler(png_structp png, png_const_charp message) {
    auto* what = static_cast<std::string*>(png_get_error_ptr(png));
    if (what != nullptr) *what = message;
    png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

}  // namespace

RgbImage read_png(const std::filesystem::path& file) {
    FilePtr fp(std::fopen(file.c_str(), "rb"));
    if (!fp) {
        throw IoError("cannot open image " + file.string());
    }
    png_byte header[8];
    if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8) != 0) {
        throw IoError("not a PNG file: " + file.string());
    }

    std::string message;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_handler,
                                             png_warning_handler);
    if (png == nullptr) throw IoError("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("libpng initialisation failed");
    }

    // Everything that may longjmp lives between setjmp and the destroy call;
    // only trivially destructible locals are touched in that region.
    std::vector<png_byte> pixels;
    std::vector<png_bytep> row_ptrs;
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int depth = 0;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("unreadable image " + file.string() + ": " + message);
    }
    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int color_type = png_get_color_type(png, info);
    depth = png_get_bit_depth(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
    if (depth == 16) png_set_swap(png);  // native little-endian 16-bit samples
    png_read_update_info(png, info);

    width = png_get_image_width(png, info);
    height = png_get_image_height(png, info);
    depth = png_get_bit_depth(png, info);
    const std::size_t row_bytes = png_get_rowbytes(png, info);
    pixels.resize(row_bytes * height);
    row_ptrs.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) row_ptrs[y] = pixels.data() + y * row_bytes;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    const auto rows = static_cast<Eigen::Index>(height);
    const auto cols = static_cast<Eigen::Index>(width);
    RgbImage img{Plane(rows, cols), Plane(rows, cols), Plane(rows, cols)};
    if (depth == 16) {
        const double max_value = 65535.0;
        for (Eigen::Index x = 0; x < rows; ++x) {
            const auto* row = reinterpret_cast<const std::uint16_t*>(row_ptrs[static_cast<std::size_t>(x)]);
            for (Eigen::Index y = 0; y < cols; ++y) {
                img.r(x, y) = row[3 * y] / max_value;
                img.g(x, y) = row[3 * y + 1] / max_value;
                img.b(x, y) = row[3 * y + 2] / max_value;
            }
        }
    } else {
        const double max_value = 255.0;
        for (Eigen::Index x = 0; x < rows; ++x) {
            const png_byte* row = row_ptrs[static_cast<std::size_t>(x)];
            for (Eigen::Index y = 0; y < cols; ++y) {
                img.r(x, y) = row[3 * y] / max_value;
                img.g(x, y) = row[3 * y + 1] / max_value;
                img.b(x, y) = row[3 * y + 2] / max_value;
            }
        }
    }
    return img;
}

void write_png(const RgbImage& image, const std::filesystem::path& file, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16) {
        throw ContractError("PNG bit depth must be 8 or 16");
    }
    FilePtr fp(std::fopen(file.c_str(), "wb"));
    if (!fp) throw IoError("cannot create image " + file.string());

    const auto rows = image.rows();
    const auto cols = image.cols();
    const int channels_bytes = bit_depth / 8;
    const double max_value = bit_depth == 16 ? 65535.0 : 255.0;
    std::vector<png_byte> pixels(static_cast<std::size_t>(rows * cols * 3 * channels_bytes));
    auto quantize = [max_value](double v) {
        const double c = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        return static_cast<unsigned>(std::lround(c * max_value));
    };
    std::size_t idx = 0;
    for (Eigen::Index x = 0; x < rows; ++x) {
        for (Eigen::Index y = 0; y < cols; ++y) {
            for (const Plane* p : {&image.r, &image.g, &image.b}) {
                const unsigned q = quantize((*p)(x, y));
                if (bit_depth == 16) {
                    pixels[idx++] = static_cast<png_byte>(q >> 8);  // PNG is big-endian
                    pixels[idx++] = static_cast<png_byte>(q & 0xFF);
                } else {
                    pixels[idx++] = static_cast<png_byte>(q);
                }
            }
        }
    }
    std::vector<png_bytep> row_ptrs(static_cast<std::size_t>(rows));
    const std::size_t row_bytes = static_cast<std::size_t>(cols * 3 * channels_bytes);
    for (Eigen::Index x = 0; x < rows; ++x) row_ptrs[static_cast<std::size_t>(x)] = pixels.data() + x * row_bytes;

    std::string message;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_handler,
                                              png_warning_handler);
    if (png == nullptr) throw IoError("libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("failed to write " + file.string() + ": " + message);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(cols), static_cast<png_uint_32>(rows), bit_depth,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace lfiqa
