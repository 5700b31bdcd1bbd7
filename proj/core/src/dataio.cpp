#include "mmf/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "mmf/errors.hpp"

namespace mmf::dataio {

namespace {

uint32_t read_be32(std::span<const uint8_t> b, size_t off) {
  return (static_cast<uint32_t>(b[off]) << 24) | (static_cast<uint32_t>(b[off + 1]) << 16) |
         (static_cast<uint32_t>(b[off + 2]) << 8) | static_cast<uint32_t>(b[off + 3]);
}

}  // namespace

IdxImages parse_idx_images(std::span<const uint8_t> bytes) {
  if (bytes.size() < 8) throw error(errc::truncated_stream, "idx image stream shorter than header");
  if (read_be32(bytes, 0) != 0x00000803u)
    throw error(errc::bad_magic, "idx image magic is not 0x00000803");
  if (bytes.size() < 16) throw error(errc::truncated_stream, "idx image header truncated");
  const uint64_t count = read_be32(bytes, 4);
  const uint64_t rows = read_be32(bytes, 8);
  const uint64_t cols = read_be32(bytes, 12);
  if (rows == 0 || cols == 0 || rows > 1u << 16 || cols > 1u << 16 || count > 1u << 28)
    throw error(errc::dim_overflow, "idx image dimensions out of range");
  const uint64_t payload = count * rows * cols;
  if (bytes.size() - 16 < payload) throw error(errc::truncated_stream, "idx image payload truncated");
  IdxImages out;
  out.count = static_cast<int>(count);
  out.rows = static_cast<int>(rows);
  out.cols = static_cast<int>(cols);
  out.pixels.assign(bytes.begin() + 16, bytes.begin() + 16 + static_cast<ptrdiff_t>(payload));
  return out;
}

std::vector<uint8_t> parse_idx_labels(std::span<const uint8_t> bytes) {
  if (bytes.size() < 8) throw error(errc::truncated_stream, "idx label stream shorter than header");
  if (read_be32(bytes, 0) != 0x00000801u)
    throw error(errc::bad_magic, "idx label magic is not 0x00000801");
  const uint64_t count = read_be32(bytes, 4);
  if (count > 1u << 28) throw error(errc::dim_overflow, "idx label count out of range");
  if (bytes.size() - 8 < count) throw error(errc::truncated_stream, "idx label payload truncated");
  return std::vector<uint8_t>(bytes.begin() + 8, bytes.begin() + 8 + static_cast<ptrdiff_t>(count));
}

bool mnist_present(const std::filesystem::path& dir) {
  for (const char* name : {"train-images-idx3-ubyte", "train-labels-idx1-ubyte",
                           "t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte"})
    if (!std::filesystem::exists(dir / name)) return false;
  return true;
}

MnistData load_mnist(const std::filesystem::path& dir) {
  MnistData d;
  d.train_images = parse_idx_images(read_file(dir / "train-images-idx3-ubyte"));
  d.train_labels = parse_idx_labels(read_file(dir / "train-labels-idx1-ubyte"));
  d.test_images = parse_idx_images(read_file(dir / "t10k-images-idx3-ubyte"));
  d.test_labels = parse_idx_labels(read_file(dir / "t10k-labels-idx1-ubyte"));
  return d;
}

BinaryImage binarize(const Image8& gray, uint8_t threshold) {
  BinaryImage out;
  out.dims = gray.dims;
  out.pixels.resize(gray.pixels.size());
  for (size_t i = 0; i < gray.pixels.size(); ++i)
    out.pixels[i] = gray.pixels[i] >= threshold ? 1 : 0;
  return out;
}

BinaryImage resize_binary(const BinaryImage& img, Dims out_dims) {
  if (out_dims.width < 4 || out_dims.height < 4)
    throw error(errc::invalid_argument, "resize_binary: output dims below 4x4");
  if (out_dims == img.dims) return img;
  BinaryImage out;
  out.dims = out_dims;
  out.pixels.resize(static_cast<size_t>(out_dims.count()));
  const double sx = static_cast<double>(img.dims.width) / out_dims.width;
  const double sy = static_cast<double>(img.dims.height) / out_dims.height;
  for (int oy = 0; oy < out_dims.height; ++oy) {
    const double y0 = oy * sy, y1 = (oy + 1) * sy;
    for (int ox = 0; ox < out_dims.width; ++ox) {
      const double x0 = ox * sx, x1 = (ox + 1) * sx;
      double acc = 0.0;
      for (int iy = static_cast<int>(y0); iy < img.dims.height && iy < y1; ++iy) {
        const double hy = std::min<double>(y1, iy + 1) - std::max<double>(y0, iy);
        if (hy <= 0) continue;
        for (int ix = static_cast<int>(x0); ix < img.dims.width && ix < x1; ++ix) {
          const double wx = std::min<double>(x1, ix + 1) - std::max<double>(x0, ix);
          if (wx <= 0) continue;
          if (img.pixels[static_cast<size_t>(iy) * img.dims.width + ix])
            acc += wx * hy;
        }
      }
      const double mean = acc / (sx * sy);
      out.pixels[static_cast<size_t>(oy) * out_dims.width + ox] = mean >= 0.5 ? 1 : 0;
    }
  }
  return out;
}

namespace {

// 16x16 stroke glyphs. Strokes are two pixels wide so they survive the
// box-filter downscale to small grids.
const char* const kGlyphs[10][16] = {
    {
        "................",
        "................",
        ".....######.....",
        "....##....##....",
        "...##......##...",
        "...##......##...",
        "...##......##...",
        "...##......##...",
        "...##......##...",
        "...##......##...",
        "...##......##...",
        "...##......##...",
        "....##....##....",
        ".....######.....",
        "................",
        "................",
    },
    {
        "................",
        "................",
        ".......##.......",
        "......###.......",
        ".....####.......",
        "....##.##.......",
        ".......##.......",
        ".......##.......",
        ".......##.......",
        ".......##.......",
        ".......##.......",
        ".......##.......",
        "....########....",
        "....########....",
        "................",
        "................",
    },
    {
        "................",
        "................",
        "....######......",
        "...##....##.....",
        "..........##....",
        "..........##....",
        ".........##.....",
        "........##......",
        ".......##.......",
        "......##........",
        ".....##.........",
        "....##..........",
        "...##########...",
        "...##########...",
        "................",
        "................",
    },
    {
        "................",
        "................",
        "....######......",
        "...##....##.....",
        "..........##....",
        "..........##....",
        ".........##.....",
        "......####......",
        ".........##.....",
        "..........##....",
        "..........##....",
        "...##....##.....",
        "....######......",
        "................",
        "................",
    },
    {
        "................",
        "................",
        "........###.....",
        ".......####.....",
        "......##.##.....",
        ".....##..##.....",
        "....##...##.....",
        "...##....##.....",
        "...##########...",
        "...##########...",
        ".........##.....",
        ".........##.....",
        ".........##.....",
        "................",
        "................",
        "................",
    },
    {
        "................",
        "................",
        "...#########....",
        "...#########....",
        "...##...........",
        "...##...........",
        "...#######......",
        "........####....",
        "..........##....",
        "..........##....",
        "..........##....",
        "...##....##.....",
        "....######......",
        "................",
        "................",
    },
    {
        "................",
        "................",
        ".....#######....",
        "....##..........",
        "...##...........",
        "...##...........",
        "...########.....",
        "...##.....##....",
        "...##......##...",
        "...##......##...",
        "...##......##...",
        "....##....##....",
        ".....######.....",
        "................",
        "................",
    },
    {
        "................",
        "................",
        "...##########...",
        "...##########...",
        "..........##....",
        ".........##.....",
        "........##......",
        ".......##.......",
        "......##........",
        "......##........",
        ".....##.........",
        ".....##.........",
        ".....##.........",
        "................",
        "................",
        "................",
    },
    {
        "................",
        "................",
        ".....######.....",
        "....##....##....",
        "....##....##....",
        "....##....##....",
        ".....######.....",
        "....##....##....",
        "...##......##...",
        "...##......##...",
        "...##......##...",
        "....##....##....",
        ".....######.....",
        "................",
        "................",
    },
    {
        "................",
        "................",
        ".....######.....",
        "....##....##....",
        "...##......##...",
        "...##......##...",
        "....##....##....",
        ".....#######....",
        "..........##....",
        "..........##....",
        ".........##.....",
        "........##......",
        ".....####.......",
        "................",
        "................",
    },
};

BinaryImage render_glyph(int label, Dims dims, int dx, int dy, bool dilate) {
  BinaryImage img;
  img.dims = dims;
  img.pixels.assign(static_cast<size_t>(dims.count()), 0);
  for (int y = 0; y < dims.height; ++y) {
    for (int x = 0; x < dims.width; ++x) {
      const int gx = static_cast<int>((x - dx) * 16.0 / dims.width);
      const int gy = static_cast<int>((y - dy) * 16.0 / dims.height);
      if (gx < 0 || gx >= 16 || gy < 0 || gy >= 16) continue;
      if (kGlyphs[label][gy][gx] == '#')
        img.pixels[static_cast<size_t>(y) * dims.width + x] = 1;
    }
  }
  if (dilate) {
    BinaryImage fat = img;
    for (int y = 0; y < dims.height; ++y)
      for (int x = 0; x < dims.width; ++x) {
        if (!img.pixels[static_cast<size_t>(y) * dims.width + x]) continue;
        if (x + 1 < dims.width) fat.pixels[static_cast<size_t>(y) * dims.width + x + 1] = 1;
        if (y + 1 < dims.height) fat.pixels[static_cast<size_t>(y + 1) * dims.width + x] = 1;
      }
    img = fat;
  }
  return img;
}

}  // namespace

std::vector<DigitImage> synth_digits(Rng& rng, int n, Dims dims) {
  if (n < 1) throw error(errc::invalid_argument, "synth_digits: n must be >= 1");
  if (dims.width < 4 || dims.height < 4)
    throw error(errc::invalid_argument, "synth_digits: dims below 4x4");
  std::vector<DigitImage> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    DigitImage d;
    d.label = static_cast<uint8_t>(rng.uniform_index(10));
    const int dx = static_cast<int>(rng.uniform_index(5)) - 2;
    const int dy = static_cast<int>(rng.uniform_index(5)) - 2;
    const bool dilate = rng.bernoulli(0.35);
    d.image = render_glyph(d.label, dims, dx, dy, dilate);
    out.push_back(std::move(d));
  }
  return out;
}

Image8 quantize_u8(const SpecklePattern& speckle) {
  Image8 out;
  out.dims = speckle.dims;
  out.pixels.resize(speckle.intensity.size());
  double peak = 0.0;
  for (double v : speckle.intensity) peak = std::max(peak, v);
  if (peak <= 0.0) return out;  // all-zero image
  for (size_t i = 0; i < speckle.intensity.size(); ++i)
    out.pixels[i] = static_cast<uint8_t>(std::floor(speckle.intensity[i] / peak * 255.0 + 0.5));
  return out;
}

// ---- container format ----
//
// Little-endian. Magic "MMFD", version u32=1, record count u64,
// speckle dims u16 w,h, digit dims u16 w,h, K u16, records, CRC-32 footer
// over every preceding byte. Digit rows are bit-packed MSB-first, each row
// padded to a whole byte.

namespace {

constexpr uint32_t kDatasetVersion = 1;

std::vector<uint8_t> pack_bits(const BinaryImage& img) {
  const int row_bytes = (img.dims.width + 7) / 8;
  std::vector<uint8_t> out(static_cast<size_t>(row_bytes) * img.dims.height, 0);
  for (int y = 0; y < img.dims.height; ++y)
    for (int x = 0; x < img.dims.width; ++x)
      if (img.pixels[static_cast<size_t>(y) * img.dims.width + x])
        out[static_cast<size_t>(y) * row_bytes + (x >> 3)] |= static_cast<uint8_t>(0x80u >> (x & 7));
  return out;
}

BinaryImage unpack_bits(std::span<const uint8_t> bytes, Dims dims) {
  const int row_bytes = (dims.width + 7) / 8;
  BinaryImage img;
  img.dims = dims;
  img.pixels.resize(static_cast<size_t>(dims.count()));
  for (int y = 0; y < dims.height; ++y)
    for (int x = 0; x < dims.width; ++x)
      img.pixels[static_cast<size_t>(y) * dims.width + x] =
          (bytes[static_cast<size_t>(y) * row_bytes + (x >> 3)] >> (7 - (x & 7))) & 1;
  return img;
}

}  // namespace

void write_dataset(const std::filesystem::path& path, const DatasetContainer& c) {
  ByteWriter w;
  w.bytes(std::span(reinterpret_cast<const uint8_t*>("MMFD"), 4));
  w.u32(kDatasetVersion);
  w.u64(c.records.size());
  w.u16(static_cast<uint16_t>(c.speckle_dims.width));
  w.u16(static_cast<uint16_t>(c.speckle_dims.height));
  w.u16(static_cast<uint16_t>(c.digit_dims.width));
  w.u16(static_cast<uint16_t>(c.digit_dims.height));
  w.u16(c.n_actuators);
  for (const auto& r : c.records) {
    if (r.speckle_u8.dims != c.speckle_dims || r.digit.dims != c.digit_dims ||
        r.speckle_raw.size() != static_cast<size_t>(c.speckle_dims.count()) ||
        r.theta.size() != c.n_actuators)
      throw error(errc::shape_mismatch, "write_dataset: record does not match header dims");
    w.bytes(r.speckle_u8.pixels);
    for (float v : r.speckle_raw) w.f32(v);
    w.bytes(pack_bits(r.digit));
    w.u8(r.label);
    w.u32(r.config_id);
    for (float v : r.theta) w.f32(v);
  }
  ByteWriter footer;
  footer.u32(crc32(w.data()));
  std::vector<uint8_t> all = w.data();
  all.insert(all.end(), footer.data().begin(), footer.data().end());
  write_file(path, all);
}

DatasetContainer read_dataset(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (bytes.size() < 4) throw error(errc::truncated_stream, "dataset file shorter than magic");
  if (std::memcmp(bytes.data(), "MMFD", 4) != 0)
    throw error(errc::bad_magic, "dataset magic is not MMFD");
  ByteReader r(std::span(bytes).subspan(4));
  const uint32_t version = r.u32();
  if (version != kDatasetVersion)
    throw error(errc::version_mismatch, "dataset version " + std::to_string(version));
  DatasetContainer c;
  const uint64_t count = r.u64();
  c.speckle_dims.width = r.u16();
  c.speckle_dims.height = r.u16();
  c.digit_dims.width = r.u16();
  c.digit_dims.height = r.u16();
  c.n_actuators = r.u16();
  const uint64_t speckle_px = static_cast<uint64_t>(c.speckle_dims.count());
  const uint64_t digit_bytes =
      static_cast<uint64_t>((c.digit_dims.width + 7) / 8) * c.digit_dims.height;
  const uint64_t rec_size = speckle_px * 5 + digit_bytes + 1 + 4 + 4ull * c.n_actuators;
  if (rec_size > 0 && count > (bytes.size() / rec_size) + 1)
    throw error(errc::truncated_stream, "dataset record count exceeds file size");
  c.records.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    DatasetRecord rec;
    rec.speckle_u8.dims = c.speckle_dims;
    auto su8 = r.bytes(speckle_px);
    rec.speckle_u8.pixels.assign(su8.begin(), su8.end());
    rec.speckle_raw.resize(speckle_px);
    for (auto& v : rec.speckle_raw) v = r.f32();
    rec.digit = unpack_bits(r.bytes(digit_bytes), c.digit_dims);
    rec.label = r.u8();
    rec.config_id = r.u32();
    rec.theta.resize(c.n_actuators);
    for (auto& v : rec.theta) v = r.f32();
    c.records.push_back(std::move(rec));
  }
  const size_t payload_end = 4 + r.pos();
  if (bytes.size() < payload_end + 4)
    throw error(errc::truncated_stream, "dataset checksum footer missing");
  ByteReader f(std::span(bytes).subspan(payload_end));
  const uint32_t expect = f.u32();
  const uint32_t actual = crc32(std::span(bytes).first(payload_end));
  if (expect != actual) throw error(errc::checksum_mismatch, "dataset checksum mismatch");
  return c;
}

}  // namespace mmf::dataio
