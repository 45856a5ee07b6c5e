#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace citemesh {

/// Fatal input problem: undecodable bytes, unreadable file, broken framing.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input that cannot satisfy an operation's contract.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Record-level findings collected while parsing one input file. Errors name
/// records that were skipped; warnings name records that were kept anyway.
struct ParseReport {
  std::string encoding;
  std::string encoding_note;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
};

}  // namespace citemesh
