#ifndef PRETRANS_ERROR_HPP
#define PRETRANS_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pretrans {

// Status codes shared with the C API.
enum class errc : int {
  ok = 0,
  parse = 1,
  range = 2,
  budget = 3,
  unsupported = 4,
  io = 5,
  invalid_argument = 6,
  internal = 7,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

class parse_error : public error {
 public:
  parse_error(const std::string& msg, std::size_t pos)
      : error(errc::parse, msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

class budget_error : public error {
 public:
  budget_error(const std::string& msg, std::size_t partial = 0)
      : error(errc::budget, msg), partial_(partial) {}
  // Size reached before the budget tripped (0 when not meaningful).
  std::size_t partial() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

}  // namespace pretrans

#endif  // PRETRANS_ERROR_HPP
