#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmf/image.hpp"

namespace mmf {

// CRC-32 (IEEE 802.3, reflected, poly 0xEDB88320).
uint32_t crc32(std::span<const uint8_t> bytes, uint32_t seed = 0);

std::vector<uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const uint8_t> bytes);

// Little-endian byte stream helpers used by the dataset and checkpoint formats.
class ByteWriter {
 public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u16(uint16_t v);
  void u32(uint32_t v);
  void u64(uint64_t v);
  void f32(float v);
  void bytes(std::span<const uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  const std::vector<uint8_t>& data() const { return buf_; }

 private:
  std::vector<uint8_t> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> b) : b_(b) {}
  uint8_t u8();
  uint16_t u16();
  uint32_t u32();
  uint64_t u64();
  float f32();
  std::span<const uint8_t> bytes(size_t n);
  size_t pos() const { return pos_; }
  size_t remaining() const { return b_.size() - pos_; }

 private:
  void need(size_t n) const;
  std::span<const uint8_t> b_;
  size_t pos_ = 0;
};

// Manifest: UTF-8 "key = value" lines, '#' comments. Keys keep insertion order.
using Manifest = std::vector<std::pair<std::string, std::string>>;
void write_manifest(const std::filesystem::path& path, const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path);
std::string manifest_get(const Manifest& m, const std::string& key);

// Binary PGM (P5), maxval 255.
void write_pgm(const std::filesystem::path& path, const Image8& img);

// Quotes nothing; callers emit plain numeric/identifier cells.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string format_double(double v);

}  // namespace mmf
