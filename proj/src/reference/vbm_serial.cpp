#include "lidarcap/error.hpp"
#include "lidarcap/retrieval_eval.hpp"
#include "../retrieval_detail.hpp"

namespace lidarcap::reference {

VbmReport vbm_serial(const EmbeddingIndex& index, std::size_t k, double half_window) {
  if (k == 0) throw Error(Errc::BadParams, "k must be at least 1");
  if (!(half_window >= 0.0)) throw Error(Errc::BadParams, "time window must be non-negative");
  const auto tokens = detail::tokenize_captions(index);
  std::vector<QueryScore> rows;
  rows.reserve(index.size());
  for (std::size_t q = 0; q < index.size(); ++q) rows.push_back(detail::score_query(index, tokens, q, k, half_window));
  return detail::assemble_report(std::move(rows), k, half_window);
}

}  // namespace lidarcap::reference
