#include "mproj/image_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <vector>

#include <png.h>

namespace mproj {

namespace {

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Cursor over a PGM header: whitespace and '#' comments separate tokens.
struct PgmCursor {
  const std::vector<unsigned char>& bytes;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  }

  long number(const std::string& file) {
    skip_space();
    long value = 0;
    std::size_t digits = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      value = value * 10 + (bytes[pos++] - '0');
      if (value > (1L << 30)) throw IoError(file + ": header value out of range");
      ++digits;
    }
    if (digits == 0) throw IoError(file + ": malformed PGM header");
    return value;
  }
};

}  // namespace

Image read_pgm(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  const std::string file = path.string();
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw IoError(file + ": not a P2/P5 PGM file");
  }
  const bool binary = bytes[1] == '5';
  PgmCursor cur{bytes, 2};
  const long width = cur.number(file);
  const long height = cur.number(file);
  const long maxval = cur.number(file);
  if (width < 1 || height < 1) throw IoError(file + ": empty image");
  if (maxval < 1 || maxval > 255) throw IoError(file + ": only 8-bit PGM (maxval <= 255) is supported");

  Image img(height, width);
  const double scale = 255.0 / double(maxval);
  const std::size_t count = std::size_t(width) * std::size_t(height);
  if (binary) {
    if (cur.pos >= bytes.size() || !std::isspace(bytes[cur.pos])) throw IoError(file + ": malformed PGM header");
    ++cur.pos;
    if (bytes.size() - cur.pos < count) throw IoError(file + ": truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) img.data()[i] = double(bytes[cur.pos + i]) * scale;
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = cur.number(file);
      if (v > maxval) throw IoError(file + ": sample exceeds maxval");
      img.data()[i] = double(v) * scale;
    }
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << img.cols() << ' ' << img.rows() << "\n255\n";
  std::vector<char> pixels(std::size_t(img.size()));
  for (Eigen::Index i = 0; i < img.size(); ++i) {
    pixels[std::size_t(i)] = char(static_cast<unsigned char>(std::clamp(std::round(img.data()[i]), 0.0, 255.0)));
  }
  out.write(pixels.data(), std::streamsize(pixels.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

Image read_png(const std::filesystem::path& path) {
  const std::string file = path.string();
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, file.c_str())) {
    throw IoError(file + ": " + image.message);
  }
  if (image.format != PNG_FORMAT_GRAY) {
    png_image_free(&image);
    throw IoError(file + ": only 8-bit grayscale PNG without alpha is supported");
  }
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    throw IoError(file + ": " + image.message);
  }
  Image img(image.height, image.width);
  for (std::size_t i = 0; i < buffer.size(); ++i) img.data()[i] = double(buffer[i]);
  return img;
}

Image read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 8> sig{};
  in.read(sig.data(), sig.size());
  static constexpr std::array<unsigned char, 8> kPngSig{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (in.gcount() == 8 && std::equal(kPngSig.begin(), kPngSig.end(), sig.begin(),
                                     [](unsigned char a, char b) { return a == static_cast<unsigned char>(b); })) {
    return read_png(path);
  }
  if (in.gcount() >= 2 && sig[0] == 'P' && (sig[1] == '2' || sig[1] == '5')) return read_pgm(path);
  throw IoError(path.string() + ": unrecognized image format (expected PGM or PNG)");
}

Image resize_bilinear(const Image& img, Eigen::Index rows, Eigen::Index cols) {
  if (rows < 1 || cols < 1) throw InputError("resize: target size must be positive");
  if (rows == img.rows() && cols == img.cols()) return img;
  auto coord = [](Eigen::Index dst, Eigen::Index in, Eigen::Index out) {
    const double s = (double(dst) + 0.5) * double(in) / double(out) - 0.5;
    return std::clamp(s, 0.0, double(in - 1));
  };
  Image out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double sr = coord(r, img.rows(), rows);
    const Eigen::Index r0 = Eigen::Index(sr);
    const Eigen::Index r1 = std::min(r0 + 1, img.rows() - 1);
    const double fr = sr - double(r0);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double sc = coord(c, img.cols(), cols);
      const Eigen::Index c0 = Eigen::Index(sc);
      const Eigen::Index c1 = std::min(c0 + 1, img.cols() - 1);
      const double fc = sc - double(c0);
      const double top = img(r0, c0) * (1 - fc) + img(r0, c1) * fc;
      const double bottom = img(r1, c0) * (1 - fc) + img(r1, c1) * fc;
      out(r, c) = top * (1 - fr) + bottom * fr;
    }
  }
  return out;
}

}  // namespace mproj
