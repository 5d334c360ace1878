#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lidarcap {

enum class Errc {
  EmptySeries,
  NonMonotoneTime,
  PoseGap,
  ParseError,
  MissingKey,
  NonFiniteValue,
  BadValue,
  BadClass,
  NonOrthonormalRotation,
  BadIntrinsics,
  DimensionMismatch,
  DuplicateClipId,
  ZeroVector,
  IncompatibleTags,
  NoChange,
  LengthExceedsPool,
  EmptyInput,
  NoLidarPoints,
  NoProjectablePoints,
  EmptyCandidate,
  UnknownClip,
  BadParams,
  BadConfig,
  Io,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries a machine-readable code.
// Loader errors also carry the 1-based line number of the offending record.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::optional<std::size_t> line = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  Errc code_;
  std::optional<std::size_t> line_;
};

}  // namespace lidarcap
