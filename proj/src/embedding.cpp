#include "lidarcap/embedding.hpp"

#include <cmath>

#include "lidarcap/error.hpp"

namespace lidarcap {

EmbeddingIndex::EmbeddingIndex(std::vector<EmbeddingRecord> records) : records_(std::move(records)) {
  norms_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    const std::size_t line = i + 1;
    if (r.vec.empty()) throw Error(Errc::BadValue, "embedding of " + r.clip_id + " is empty", line);
    if (i == 0) dim_ = r.vec.size();
    if (r.vec.size() != dim_)
      throw Error(Errc::DimensionMismatch,
                  "expected dimension " + std::to_string(dim_) + ", got " + std::to_string(r.vec.size()), line);
    if (!std::isfinite(r.t_record)) throw Error(Errc::NonFiniteValue, "t_record is not finite", line);
    double sq = 0.0;
    for (double x : r.vec) {
      if (!std::isfinite(x)) throw Error(Errc::NonFiniteValue, "embedding of " + r.clip_id + " has a non-finite entry", line);
      sq += x * x;
    }
    if (sq == 0.0) throw Error(Errc::ZeroVector, "embedding of " + r.clip_id + " is the zero vector", line);
    if (!by_id_.emplace(r.clip_id, i).second) throw Error(Errc::DuplicateClipId, "duplicate clip_id \"" + r.clip_id + "\"", line);
    norms_.push_back(std::sqrt(sq));
  }
}

std::optional<std::size_t> EmbeddingIndex::find(std::string_view clip_id) const {
  auto it = by_id_.find(std::string(clip_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

}  // namespace lidarcap
