#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mmf/image.hpp"

namespace mmf::metrics {

// Fraction of pixels where the two binary images agree.
double pixel_accuracy(const BinaryImage& a, const BinaryImage& b);

// Intersection-over-union of foreground masks. Both empty -> 1, exactly one
// empty -> 0.
double jaccard_index(const BinaryImage& a, const BinaryImage& b);

// Pearson correlation over the pixels selected by `mask`, accumulated in
// 64-bit regardless of storage precision. Throws errc::constant_input when
// either masked series is constant.
double pearson_masked(std::span<const double> x, std::span<const double> y,
                      std::span<const uint8_t> mask);
double pearson_masked(const SpecklePattern& x, const SpecklePattern& y);

// True positive rate of exact label matches.
double classification_success(std::span<const uint8_t> predictions,
                              std::span<const uint8_t> truths);

struct EvalReport {
  std::string partition;  // "known" or "unknown"
  int64_t samples = 0;
  double accuracy_mean = 0.0, accuracy_std = 0.0;
  double jaccard_mean = 0.0, jaccard_std = 0.0;
  double classification_success = 0.0;  // complement of the error rate
};

struct MeanStd {
  double mean = 0.0, std = 0.0;
};
MeanStd mean_std(std::span<const double> values);

void write_eval_csv(const std::filesystem::path& path, const std::vector<EvalReport>& reports);

}  // namespace mmf::metrics
