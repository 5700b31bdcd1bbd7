#pragma once

#include <stdexcept>
#include <string>

namespace mmf {

// Error categories. The CLI maps them to process exit codes:
// config errors -> 2, data/format errors -> 3, numeric failures -> 4.
enum class errc {
  bad_magic,
  truncated_stream,
  dim_overflow,
  version_mismatch,
  checksum_mismatch,
  shape_mismatch,
  constant_input,
  invalid_argument,
  calibration_failure,
  non_finite,
  config_error,
  io_failure,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::bad_magic: return "bad_magic";
    case errc::truncated_stream: return "truncated_stream";
    case errc::dim_overflow: return "dim_overflow";
    case errc::version_mismatch: return "version_mismatch";
    case errc::checksum_mismatch: return "checksum_mismatch";
    case errc::shape_mismatch: return "shape_mismatch";
    case errc::constant_input: return "constant_input";
    case errc::invalid_argument: return "invalid_argument";
    case errc::calibration_failure: return "calibration_failure";
    case errc::non_finite: return "non_finite";
    case errc::config_error: return "config_error";
    case errc::io_failure: return "io_failure";
  }
  return "unknown";
}

}  // namespace mmf
