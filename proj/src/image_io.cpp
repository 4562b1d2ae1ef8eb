#include "foc/image_io.hpp"

#include <zlib.h>

#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <string>

namespace foc {

namespace {

constexpr std::array<unsigned char, 8> kPngSignature = {137, 80, 78, 71, 13, 10, 26, 10};

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

std::uint32_t read_be32(const unsigned char* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
         (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void append_be32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v >> 24));
  out.push_back(static_cast<unsigned char>(v >> 16));
  out.push_back(static_cast<unsigned char>(v >> 8));
  out.push_back(static_cast<unsigned char>(v));
}

void append_chunk(std::vector<unsigned char>& out, const char type[4],
                  const std::vector<unsigned char>& data) {
  append_be32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t type_at = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const uLong crc = crc32(crc32(0L, Z_NULL, 0), out.data() + type_at,
                          static_cast<uInt>(4 + data.size()));
  append_be32(out, static_cast<std::uint32_t>(crc));
}

int paeth_predictor(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

// ---------------------------------------------------------------------------
// PNG
// ---------------------------------------------------------------------------

RawGray decode_png(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSignature.data(), 8) != 0) {
    throw ParseError("not a PNG file");
  }

  int width = 0, height = 0, bit_depth = 0;
  bool saw_ihdr = false, saw_iend = false;
  std::vector<unsigned char> idat;

  std::size_t pos = 8;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t len = read_be32(&bytes[pos]);
    if (pos + 12 + len > bytes.size()) throw ParseError("truncated PNG chunk");
    const char* type = reinterpret_cast<const char*>(&bytes[pos + 4]);
    const unsigned char* data = &bytes[pos + 8];

    if (std::memcmp(type, "IHDR", 4) == 0) {
      if (len != 13) throw ParseError("bad IHDR length");
      width = static_cast<int>(read_be32(data));
      height = static_cast<int>(read_be32(data + 4));
      bit_depth = data[8];
      const int color_type = data[9];
      const int interlace = data[12];
      if (width <= 0 || height <= 0) throw ParseError("bad PNG dimensions");
      if (color_type != 0) throw UnsupportedBitDepth("only grayscale PNG is supported");
      if (bit_depth != 8 && bit_depth != 16) {
        throw UnsupportedBitDepth("only 8-bit and 16-bit PNG is supported");
      }
      if (interlace != 0) throw ParseError("interlaced PNG is not supported");
      saw_ihdr = true;
    } else if (std::memcmp(type, "IDAT", 4) == 0) {
      idat.insert(idat.end(), data, data + len);
    } else if (std::memcmp(type, "IEND", 4) == 0) {
      saw_iend = true;
      break;
    }
    pos += 12 + len;
  }
  if (!saw_ihdr || !saw_iend || idat.empty()) throw ParseError("incomplete PNG stream");

  const int bpp = bit_depth / 8;
  const std::size_t stride = static_cast<std::size_t>(width) * bpp;
  const std::size_t raw_size = (stride + 1) * height;
  std::vector<unsigned char> raw(raw_size);
  uLongf out_len = static_cast<uLongf>(raw_size);
  const int rc = uncompress(raw.data(), &out_len, idat.data(),
                            static_cast<uLong>(idat.size()));
  if (rc != Z_OK || out_len != raw_size) throw ParseError("corrupt PNG pixel data");

  // Undo per-row filtering in place.
  std::vector<unsigned char> pixels(static_cast<std::size_t>(height) * stride);
  for (int y = 0; y < height; ++y) {
    const unsigned char filter = raw[y * (stride + 1)];
    const unsigned char* src = &raw[y * (stride + 1) + 1];
    unsigned char* dst = &pixels[y * stride];
    const unsigned char* prev = y > 0 ? &pixels[(y - 1) * stride] : nullptr;
    for (std::size_t i = 0; i < stride; ++i) {
      const int a = i >= static_cast<std::size_t>(bpp) ? dst[i - bpp] : 0;
      const int b = prev ? prev[i] : 0;
      const int c = (prev && i >= static_cast<std::size_t>(bpp)) ? prev[i - bpp] : 0;
      int v = src[i];
      switch (filter) {
        case 0: break;
        case 1: v += a; break;
        case 2: v += b; break;
        case 3: v += (a + b) / 2; break;
        case 4: v += paeth_predictor(a, b, c); break;
        default: throw ParseError("unknown PNG filter type");
      }
      dst[i] = static_cast<unsigned char>(v & 0xff);
    }
  }

  RawGray out;
  out.width = width;
  out.height = height;
  out.max_value = bit_depth == 8 ? 255 : 65535;
  out.samples.resize(static_cast<std::size_t>(width) * height);
  if (bpp == 1) {
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] = pixels[i];
  } else {
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      out.samples[i] = static_cast<std::uint16_t>((pixels[2 * i] << 8) | pixels[2 * i + 1]);
    }
  }
  return out;
}

std::vector<unsigned char> encode_png(const Grid8& pixels) {
  const int width = static_cast<int>(pixels.cols());
  const int height = static_cast<int>(pixels.rows());
  const std::size_t stride = static_cast<std::size_t>(width);

  std::vector<unsigned char> raw((stride + 1) * height);
  for (int y = 0; y < height; ++y) {
    raw[y * (stride + 1)] = 0;  // filter type: none
    std::memcpy(&raw[y * (stride + 1) + 1], pixels.data() + y * stride, stride);
  }

  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<unsigned char> compressed(bound);
  if (compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()),
                Z_DEFAULT_COMPRESSION) != Z_OK) {
    throw IoError("PNG compression failed");
  }
  compressed.resize(bound);

  std::vector<unsigned char> ihdr;
  append_be32(ihdr, static_cast<std::uint32_t>(width));
  append_be32(ihdr, static_cast<std::uint32_t>(height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(0);  // color type: grayscale
  ihdr.push_back(0);  // compression
  ihdr.push_back(0);  // filter
  ihdr.push_back(0);  // interlace

  std::vector<unsigned char> out(kPngSignature.begin(), kPngSignature.end());
  append_chunk(out, "IHDR", ihdr);
  append_chunk(out, "IDAT", compressed);
  append_chunk(out, "IEND", {});
  return out;
}

// ---------------------------------------------------------------------------
// PGM (P5)
// ---------------------------------------------------------------------------

// Reads the next whitespace-delimited token, skipping '#' comments.
std::string next_pgm_token(const std::vector<unsigned char>& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (std::isspace(bytes[pos])) {
      ++pos;
    } else if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  std::string token;
  while (pos < bytes.size() && !std::isspace(bytes[pos])) {
    token.push_back(static_cast<char>(bytes[pos++]));
  }
  if (token.empty()) throw ParseError("truncated PGM header");
  return token;
}

int parse_pgm_int(const std::string& token) {
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("bad numeric field in PGM header");
    }
  }
  return std::stoi(token);
}

RawGray decode_pgm(const std::vector<unsigned char>& bytes) {
  std::size_t pos = 0;
  if (next_pgm_token(bytes, pos) != "P5") throw ParseError("not a binary PGM file");
  const int width = parse_pgm_int(next_pgm_token(bytes, pos));
  const int height = parse_pgm_int(next_pgm_token(bytes, pos));
  const int max_value = parse_pgm_int(next_pgm_token(bytes, pos));
  if (width <= 0 || height <= 0) throw ParseError("bad PGM dimensions");
  if (max_value <= 0 || max_value > 65535) throw ParseError("bad PGM maxval");
  ++pos;  // single whitespace byte after maxval

  RawGray out;
  out.width = width;
  out.height = height;
  out.max_value = max_value;
  out.samples.resize(static_cast<std::size_t>(width) * height);
  const int bpp = max_value > 255 ? 2 : 1;
  if (pos + out.samples.size() * bpp > bytes.size()) throw ParseError("truncated PGM pixel data");
  if (bpp == 1) {
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] = bytes[pos + i];
  } else {
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      out.samples[i] = static_cast<std::uint16_t>((bytes[pos + 2 * i] << 8) | bytes[pos + 2 * i + 1]);
    }
  }
  return out;
}

Grid8 to_grid8(const RawGray& raw) {
  if (raw.max_value != 255) {
    throw UnsupportedBitDepth("expected 8-bit grayscale data");
  }
  Grid8 grid(raw.height, raw.width);
  for (int y = 0; y < raw.height; ++y) {
    for (int x = 0; x < raw.width; ++x) {
      grid(y, x) = static_cast<std::uint8_t>(raw.samples[static_cast<std::size_t>(y) * raw.width + x]);
    }
  }
  return grid;
}

}  // namespace

RawGray read_gray_raw(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = read_file(path);
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature.data(), 8) == 0) {
    return decode_png(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
    return decode_pgm(bytes);
  }
  throw ParseError("unrecognized image format: " + path.string());
}

GrayImage read_gray_image(const std::filesystem::path& path) {
  return GrayImage(to_grid8(read_gray_raw(path)));
}

BinaryMask read_mask(const std::filesystem::path& path) {
  return BinaryMask::from_grid(to_grid8(read_gray_raw(path)));
}

ProbabilityMap read_probability_map(const std::filesystem::path& path) {
  const RawGray raw = read_gray_raw(path);
  GridF values(raw.height, raw.width);
  const double scale = 1.0 / raw.max_value;
  for (int y = 0; y < raw.height; ++y) {
    for (int x = 0; x < raw.width; ++x) {
      values(y, x) = raw.samples[static_cast<std::size_t>(y) * raw.width + x] * scale;
    }
  }
  return ProbabilityMap::from_grid(std::move(values));
}

void write_png(const std::filesystem::path& path, const GrayImage& img) {
  write_file(path, encode_png(img.pixels));
}

void write_png(const std::filesystem::path& path, const BinaryMask& mask) {
  write_file(path, encode_png(mask.pixels));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::vector<unsigned char> bytes;
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  bytes.insert(bytes.end(), header.begin(), header.end());
  bytes.insert(bytes.end(), img.pixels.data(), img.pixels.data() + img.pixels.size());
  write_file(path, bytes);
}

void write_gray_image(const std::filesystem::path& path, const GrayImage& img) {
  const std::string ext = path.extension().string();
  if (ext == ".png") {
    write_png(path, img);
  } else if (ext == ".pgm") {
    write_pgm(path, img);
  } else {
    throw IoError("unsupported image extension: " + ext);
  }
}

}  // namespace foc
