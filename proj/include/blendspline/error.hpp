#pragma once

#include <stdexcept>
#include <string>

namespace blendspline {

/// Failure categories raised by the library.
enum class Errc {
  order_too_small,
  grid_too_small,
  invalid_grid,
  index_out_of_range,
  length_mismatch,
  singular_denominator,
  zero_denominator,
  out_of_domain,
  degenerate_span,
  bad_region,
  parse_error,
  io_error,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::order_too_small: return "order-too-small";
    case Errc::grid_too_small: return "grid-too-small";
    case Errc::invalid_grid: return "invalid-grid";
    case Errc::index_out_of_range: return "index-out-of-range";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::singular_denominator: return "singular-denominator";
    case Errc::zero_denominator: return "zero-denominator";
    case Errc::out_of_domain: return "out-of-domain";
    case Errc::degenerate_span: return "degenerate-span";
    case Errc::bad_region: return "bad-region";
    case Errc::parse_error: return "parse-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// True for failures caused by the numerical preconditions of the scheme
  /// (as opposed to malformed input or I/O).
  bool numerical() const noexcept {
    return code_ != Errc::parse_error && code_ != Errc::io_error;
  }

 private:
  Errc code_;
};

}  // namespace blendspline
