#pragma once

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "unlearn_eval/core/errors.hpp"
#include "unlearn_eval/core/hash.hpp"
#include "unlearn_eval/core/types.hpp"

namespace unlearn_eval {
namespace imageio {

namespace detail {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw Error(ErrorCode::IoError, "cannot open file: " + path);
    return f;
}

// libjpeg reports failures through its error manager; route them to longjmp
// so decode errors surface as exceptions instead of exit().
struct JpegErrorMgr {
    jpeg_error_mgr base;
    std::jmp_buf jump;
};

inline void jpeg_error_exit(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(mgr->jump, 1);
}

inline ImageBuffer decode_png(const std::string& path) {
    FilePtr fp = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error(ErrorCode::DecodeError, "png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error(ErrorCode::DecodeError, "png_create_info_struct failed");
    }

    ImageBuffer image;
    std::vector<png_bytep> row_pointers;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(ErrorCode::DecodeError, "corrupt PNG: " + path);
    }

    png_init_io(png, fp.get());
    png_read_info(png, info);

    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
        png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_read_update_info(png, info);

    image.width = static_cast<int>(png_get_image_width(png, info));
    image.height = static_cast<int>(png_get_image_height(png, info));
    if (image.width < 1 || image.height < 1 || png_get_channels(png, info) != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(ErrorCode::DecodeError, "unsupported PNG layout: " + path);
    }
    image.rgb.resize(static_cast<std::size_t>(image.width) * image.height * 3);
    row_pointers.resize(static_cast<std::size_t>(image.height));
    for (int y = 0; y < image.height; ++y) {
        row_pointers[static_cast<std::size_t>(y)] =
            image.rgb.data() + static_cast<std::size_t>(y) * image.width * 3;
    }
    png_read_image(png, row_pointers.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return image;
}

inline ImageBuffer decode_jpeg(const std::string& path) {
    FilePtr fp = open_file(path, "rb");
    jpeg_decompress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_error_exit;

    ImageBuffer image;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw Error(ErrorCode::DecodeError, "corrupt JPEG: " + path);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, fp.get());
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    image.width = static_cast<int>(cinfo.output_width);
    image.height = static_cast<int>(cinfo.output_height);
    image.rgb.resize(static_cast<std::size_t>(image.width) * image.height * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = image.rgb.data() +
                       static_cast<std::size_t>(cinfo.output_scanline) * image.width * 3;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return image;
}

inline ImageBuffer decode_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open file: " + path);
    std::string magic;
    int width = 0, height = 0, maxval = 0;
    in >> magic >> width >> height >> maxval;
    if (magic != "P6" || width < 1 || height < 1 || maxval != 255 || !in) {
        throw Error(ErrorCode::DecodeError, "corrupt PPM header: " + path);
    }
    in.get();  // single whitespace after maxval
    ImageBuffer image;
    image.width = width;
    image.height = height;
    image.rgb.resize(static_cast<std::size_t>(width) * height * 3);
    in.read(reinterpret_cast<char*>(image.rgb.data()),
            static_cast<std::streamsize>(image.rgb.size()));
    if (in.gcount() != static_cast<std::streamsize>(image.rgb.size())) {
        throw Error(ErrorCode::DecodeError, "truncated PPM payload: " + path);
    }
    return image;
}

}  // namespace detail

// Decode a PNG/JPEG/PPM file to RGB8, dispatching on magic bytes.
inline ImageBuffer decode_file(const std::string& path) {
    unsigned char magic[3] = {0, 0, 0};
    {
        std::ifstream probe(path, std::ios::binary);
        if (!probe) throw Error(ErrorCode::IoError, "cannot open file: " + path);
        probe.read(reinterpret_cast<char*>(magic), 3);
        if (probe.gcount() < 3) throw Error(ErrorCode::DecodeError, "file too short: " + path);
    }
    if (magic[0] == 0x89 && magic[1] == 'P' && magic[2] == 'N') return detail::decode_png(path);
    if (magic[0] == 0xff && magic[1] == 0xd8) return detail::decode_jpeg(path);
    if (magic[0] == 'P' && magic[1] == '6') return detail::decode_ppm(path);
    throw Error(ErrorCode::DecodeError, "unrecognized image format: " + path);
}

// Resolve an ImageRef to pixels (in-memory buffer wins over path).
inline std::shared_ptr<const ImageBuffer> decode(const ImageRef& ref) {
    if (ref.pixels) {
        require(ref.pixels->valid(), ErrorCode::DecodeError, "invalid in-memory image buffer");
        return ref.pixels;
    }
    require(!ref.path.empty(), ErrorCode::DecodeError, "image reference has neither path nor pixels");
    return std::make_shared<const ImageBuffer>(decode_file(ref.path));
}

inline void write_png(const std::string& path, const ImageBuffer& image) {
    require(image.valid(), ErrorCode::PreconditionFailed, "write_png: invalid image buffer");
    detail::FilePtr fp = detail::open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error(ErrorCode::IoError, "png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error(ErrorCode::IoError, "png_create_info_struct failed");
    }
    std::vector<png_bytep> rows(static_cast<std::size_t>(image.height));
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorCode::IoError, "failed writing PNG: " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
                 static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    for (int y = 0; y < image.height; ++y) {
        rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(
            image.rgb.data() + static_cast<std::size_t>(y) * image.width * 3);
    }
    png_set_rows(png, info, rows.data());
    png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
    png_destroy_write_struct(&png, &info);
}

inline void write_ppm(const std::string& path, const ImageBuffer& image) {
    require(image.valid(), ErrorCode::PreconditionFailed, "write_ppm: invalid image buffer");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open file for writing: " + path);
    out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.rgb.data()),
              static_cast<std::streamsize>(image.rgb.size()));
}

// Content hash over dimensions + pixel bytes; keys the embedding cache.
inline std::string content_hash(const ImageBuffer& image) {
    std::uint64_t h = fnv1a64(&image.width, sizeof(image.width));
    h = fnv1a64(&image.height, sizeof(image.height), h);
    h = fnv1a64(image.rgb.data(), image.rgb.size(), h);
    return hex64(h);
}

}  // namespace imageio
}  // namespace unlearn_eval
