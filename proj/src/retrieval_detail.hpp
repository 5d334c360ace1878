#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lidarcap/retrieval_eval.hpp"

namespace lidarcap::detail {

// Best `k` indices for query `q`, ordered by descending similarity then clip id.
std::vector<std::size_t> rank_neighbors(const EmbeddingIndex& index, std::size_t q, std::size_t k,
                                        std::optional<TimeExclusion> exclusion);

// Per-query B/C scores against pre-tokenized captions.
QueryScore score_query(const EmbeddingIndex& index, const std::vector<std::vector<std::string>>& tokens, std::size_t q,
                       std::size_t k, double half_window);

std::vector<std::vector<std::string>> tokenize_captions(const EmbeddingIndex& index);

// Sorts per-query rows by clip id and averages them in that order.
VbmReport assemble_report(std::vector<QueryScore> rows, std::size_t k, double half_window);

}  // namespace lidarcap::detail
