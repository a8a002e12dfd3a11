#ifndef NF_ERRORS_HPP
#define NF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexing/parsing failure with a 1-based source position.
struct ParseError : Error {
  ParseError(std::string msg, int line, int col, std::string file = {})
      : Error(format(msg, line, col, file)),
        message(std::move(msg)),
        line(line),
        col(col),
        file(std::move(file)) {}

  std::string message;
  int line;
  int col;
  std::string file;

  static std::string format(const std::string& msg, int line, int col,
                            const std::string& file) {
    std::string where = file.empty() ? "" : file + ":";
    return where + std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
  }
};

// Finite-model construction or lookup failure.
struct ModelError : Error {
  using Error::Error;
};

}  // namespace nf

#endif
