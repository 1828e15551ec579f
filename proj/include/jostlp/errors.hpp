#pragma once

#include <stdexcept>
#include <string>

namespace jostlp {

//! Base error for all failures raised by this library.
struct error : std::runtime_error {
  explicit error(const std::string &msg) : std::runtime_error(msg) {}
};

//! Bad inputs: malformed configs, invalid grids, out-of-domain parameters.
struct validation_error : error {
  explicit validation_error(const std::string &msg) : error(msg) {}
};

//! A mathematical hypothesis of the experiment is violated (distinct exit
//! status on the CLI); the message quotes the violated hypothesis.
struct hypothesis_error : error {
  explicit hypothesis_error(const std::string &msg) : error(msg) {}
};

//! Numerical failure: residual above tolerance, frequency coverage too
//! coarse, degenerate fits, denominators below floor.
struct numeric_error : error {
  explicit numeric_error(const std::string &msg) : error(msg) {}
};

} // namespace jostlp
