#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mmf/image.hpp"
#include "mmf/io_util.hpp"
#include "mmf/rng.hpp"

namespace mmf::dataio {

// ---- IDX (MNIST container) ----

struct IdxImages {
  int count = 0;
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> pixels;  // count * rows * cols, row-major per image
};

IdxImages parse_idx_images(std::span<const uint8_t> bytes);
std::vector<uint8_t> parse_idx_labels(std::span<const uint8_t> bytes);

// The four canonical MNIST files under `dir`; empty optional-like flag via found().
struct MnistData {
  IdxImages train_images, test_images;
  std::vector<uint8_t> train_labels, test_labels;
};
bool mnist_present(const std::filesystem::path& dir);
MnistData load_mnist(const std::filesystem::path& dir);

// ---- pixel-domain transforms ----

// pixel -> 1 iff gray >= threshold.
BinaryImage binarize(const Image8& gray, uint8_t threshold);

// Box-filter area average followed by re-thresholding at 0.5; ties map to 1.
BinaryImage resize_binary(const BinaryImage& img, Dims out_dims);

// Procedural stroke-template digits: fallback input source when no MNIST
// files are available. Ten glyph templates, +-2 px translation jitter,
// occasional stroke dilation. Labels drawn uniformly.
std::vector<DigitImage> synth_digits(Rng& rng, int n, Dims dims);

// Linear map [0, max_intensity] -> [0, 255], round-half-up.
Image8 quantize_u8(const SpecklePattern& speckle);

// ---- dataset container ("MMFD") ----

struct DatasetRecord {
  Image8 speckle_u8;
  std::vector<float> speckle_raw;  // same dims as speckle_u8
  BinaryImage digit;
  uint8_t label = 0;
  uint32_t config_id = 0;
  std::vector<float> theta;  // length K
};

struct DatasetContainer {
  Dims speckle_dims;
  Dims digit_dims;
  uint16_t n_actuators = 0;
  std::vector<DatasetRecord> records;
};

void write_dataset(const std::filesystem::path& path, const DatasetContainer& c);
DatasetContainer read_dataset(const std::filesystem::path& path);

}  // namespace mmf::dataio
