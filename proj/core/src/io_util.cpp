#include "mmf/io_util.hpp"

#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mmf/errors.hpp"

namespace mmf {

namespace {

std::array<uint32_t, 256> make_crc_table() {
  std::array<uint32_t, 256> t{};
  for (uint32_t i = 0; i < 256; ++i) {
    uint32_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    t[i] = c;
  }
  return t;
}

}  // namespace

uint32_t crc32(std::span<const uint8_t> bytes, uint32_t seed) {
  static const auto table = make_crc_table();
  uint32_t c = seed ^ 0xFFFFFFFFu;
  for (uint8_t b : bytes) c = table[(c ^ b) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

std::vector<uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw error(errc::io_failure, "cannot open " + path.string());
  f.seekg(0, std::ios::end);
  const auto sz = static_cast<size_t>(f.tellg());
  f.seekg(0);
  std::vector<uint8_t> buf(sz);
  if (sz > 0) f.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(sz));
  if (!f) throw error(errc::io_failure, "short read on " + path.string());
  return buf;
}

void write_file(const std::filesystem::path& path, std::span<const uint8_t> bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw error(errc::io_failure, "cannot create " + path.string());
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw error(errc::io_failure, "short write on " + path.string());
}

void ByteWriter::u16(uint16_t v) {
  buf_.push_back(static_cast<uint8_t>(v));
  buf_.push_back(static_cast<uint8_t>(v >> 8));
}
void ByteWriter::u32(uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void ByteWriter::u64(uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void ByteWriter::f32(float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  u32(bits);
}

void ByteReader::need(size_t n) const {
  if (pos_ + n > b_.size()) throw error(errc::truncated_stream, "byte stream truncated");
}
uint8_t ByteReader::u8() {
  need(1);
  return b_[pos_++];
}
uint16_t ByteReader::u16() {
  need(2);
  uint16_t v = static_cast<uint16_t>(b_[pos_] | (b_[pos_ + 1] << 8));
  pos_ += 2;
  return v;
}
uint32_t ByteReader::u32() {
  need(4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b_[pos_ + i]) << (8 * i);
  pos_ += 4;
  return v;
}
uint64_t ByteReader::u64() {
  need(8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b_[pos_ + i]) << (8 * i);
  pos_ += 8;
  return v;
}
float ByteReader::f32() {
  uint32_t bits = u32();
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}
std::span<const uint8_t> ByteReader::bytes(size_t n) {
  need(n);
  auto s = b_.subspan(pos_, n);
  pos_ += n;
  return s;
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  std::ostringstream out;
  for (const auto& [k, v] : m) out << k << " = " << v << "\n";
  const std::string s = out.str();
  write_file(path, std::span(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

Manifest read_manifest(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  Manifest m;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) m.emplace_back(std::move(key), std::move(val));
  }
  return m;
}

std::string manifest_get(const Manifest& m, const std::string& key) {
  for (const auto& [k, v] : m)
    if (k == key) return v;
  throw error(errc::config_error, "manifest key missing: " + key);
}

void write_pgm(const std::filesystem::path& path, const Image8& img) {
  std::ostringstream head;
  head << "P5\n" << img.dims.width << " " << img.dims.height << "\n255\n";
  std::vector<uint8_t> out;
  const std::string h = head.str();
  out.insert(out.end(), h.begin(), h.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  write_file(path, out);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  const std::string s = out.str();
  write_file(path, std::span(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace mmf
