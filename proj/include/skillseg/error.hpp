// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace skillseg {

/// Failure classes surfaced to callers; the CLI maps each to its own exit code.
enum class ErrorKind {
  kInvalidArgument,  // precondition violated by the caller
  kIo,               // missing or unreadable file
  kSchema,           // file content does not follow the expected layout
  kInvariant,        // a domain invariant (contiguity, normalization, ...) is broken
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::kInvalidArgument, what);
}

}  // namespace skillseg
