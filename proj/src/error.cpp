#include "nfc/error.hpp"

namespace nfc {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error(ErrorKind::Parse, "parse",
            msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

}  // namespace nfc
