#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lidarcap {

struct EmbeddingRecord {
  std::string clip_id;
  double t_record = 0.0;
  std::vector<double> vec;
  std::string caption;
  friend bool operator==(const EmbeddingRecord&, const EmbeddingRecord&) = default;
};

// Immutable store of clip embeddings. Construction rejects empty, non-finite
// and zero vectors, ragged dimensions and duplicate clip ids (line numbers in
// errors are 1-based record positions).
class EmbeddingIndex {
 public:
  EmbeddingIndex() = default;
  explicit EmbeddingIndex(std::vector<EmbeddingRecord> records);

  const std::vector<EmbeddingRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  double norm(std::size_t i) const { return norms_[i]; }
  std::optional<std::size_t> find(std::string_view clip_id) const;

 private:
  std::vector<EmbeddingRecord> records_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::size_t dim_ = 0;
};

}  // namespace lidarcap
