#pragma once

#include <stdexcept>
#include <string>

namespace deltashape {

/// Error categories surfaced by the library. The CLI maps a subset of these
/// to stable process exit codes.
enum class Errc {
  Index,
  Dimension,
  Lookup,
  KindViolation,
  Construction,
  Degeneracy,
  InsufficientKeypoints,
  Domain,
  Emptiness,
  Chain,
  Extraction,
  Config,
  Io,
  Consistency,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace deltashape
