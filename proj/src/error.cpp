#include "lidarcap/error.hpp"

namespace lidarcap {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::NonMonotoneTime: return "NonMonotoneTime";
    case Errc::PoseGap: return "PoseGap";
    case Errc::ParseError: return "ParseError";
    case Errc::MissingKey: return "MissingKey";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::BadValue: return "BadValue";
    case Errc::BadClass: return "BadClass";
    case Errc::NonOrthonormalRotation: return "NonOrthonormalRotation";
    case Errc::BadIntrinsics: return "BadIntrinsics";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DuplicateClipId: return "DuplicateClipId";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::IncompatibleTags: return "IncompatibleTags";
    case Errc::NoChange: return "NoChange";
    case Errc::LengthExceedsPool: return "LengthExceedsPool";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NoLidarPoints: return "NoLidarPoints";
    case Errc::NoProjectablePoints: return "NoProjectablePoints";
    case Errc::EmptyCandidate: return "EmptyCandidate";
    case Errc::UnknownClip: return "UnknownClip";
    case Errc::BadParams: return "BadParams";
    case Errc::BadConfig: return "BadConfig";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

namespace {
std::string decorate(Errc code, const std::string& message, std::optional<std::size_t> line) {
  std::string out(to_string(code));
  if (line) out += " at line " + std::to_string(*line);
  out += ": ";
  out += message;
  return out;
}
}  // namespace

Error::Error(Errc code, const std::string& message, std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, message, line)), code_(code), line_(line) {}

}  // namespace lidarcap
