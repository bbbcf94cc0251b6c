#pragma once

#include <stdexcept>
#include <string>

namespace syz {

/// Library-wide exception for violated preconditions and malformed input.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the text front ends; carries a position when one is known.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}
  explicit ParseError(const std::string& what) : Error(what), pos_(0) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

}  // namespace syz
