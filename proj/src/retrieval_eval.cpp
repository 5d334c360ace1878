#include "lidarcap/retrieval_eval.hpp"

#include <algorithm>
#include <cmath>

#include "lidarcap/error.hpp"
#include "retrieval_detail.hpp"

namespace lidarcap {

double cosine_similarity(std::span<const double> a, std::span<const double> b) noexcept {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::optional<double> visual_bias_measure(double B_k, double C_k) noexcept {
  if (B_k == 0.0) return std::nullopt;
  return 100.0 * (B_k - C_k) / B_k;
}

namespace detail {

std::vector<std::size_t> rank_neighbors(const EmbeddingIndex& index, std::size_t q, std::size_t k,
                                        std::optional<TimeExclusion> exclusion) {
  const auto& recs = index.records();
  const auto& query = recs[q].vec;
  struct Candidate {
    double sim;
    std::size_t i;
  };
  std::vector<Candidate> cands;
  cands.reserve(recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (i == q) continue;
    if (exclusion && std::abs(recs[i].t_record - exclusion->t_center) <= exclusion->half_window) continue;
    double dot = 0.0;
    const auto& v = recs[i].vec;
    for (std::size_t d = 0; d < v.size(); ++d) dot += query[d] * v[d];
    cands.push_back({dot / (index.norm(q) * index.norm(i)), i});
  }
  auto better = [&](const Candidate& a, const Candidate& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return recs[a.i].clip_id < recs[b.i].clip_id;
  };
  const std::size_t take = std::min(k, cands.size());
  std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(take), cands.end(), better);
  std::vector<std::size_t> out(take);
  for (std::size_t j = 0; j < take; ++j) out[j] = cands[j].i;
  return out;
}

std::vector<std::vector<std::string>> tokenize_captions(const EmbeddingIndex& index) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(index.size());
  for (const auto& r : index.records()) tokens.push_back(tokenize(r.caption));
  return tokens;
}

namespace {

double mean_bleu(const std::vector<std::vector<std::string>>& tokens, std::size_t q,
                 const std::vector<std::size_t>& neighbors) {
  if (neighbors.empty()) return 0.0;
  double sum = 0.0;
  std::span<const std::vector<std::string>> ref(&tokens[q], 1);
  for (std::size_t n : neighbors) sum += bleu4_tokens(tokens[n], ref);
  return sum / static_cast<double>(neighbors.size());
}

}  // namespace

QueryScore score_query(const EmbeddingIndex& index, const std::vector<std::vector<std::string>>& tokens, std::size_t q,
                       std::size_t k, double half_window) {
  const auto& rec = index.records()[q];
  auto open = rank_neighbors(index, q, k, std::nullopt);
  auto constrained = rank_neighbors(index, q, k, TimeExclusion{rec.t_record, half_window});
  QueryScore s;
  s.clip_id = rec.clip_id;
  s.b = mean_bleu(tokens, q, open);
  s.c = mean_bleu(tokens, q, constrained);
  s.short_unconstrained = open.size() < k;
  s.short_constrained = constrained.size() < k;
  return s;
}

VbmReport assemble_report(std::vector<QueryScore> rows, std::size_t k, double half_window) {
  std::sort(rows.begin(), rows.end(), [](const QueryScore& a, const QueryScore& b) { return a.clip_id < b.clip_id; });
  VbmReport r;
  r.k = k;
  r.window = half_window;
  double sb = 0.0, sc = 0.0;
  for (const auto& row : rows) {
    sb += row.b;
    sc += row.c;
    r.any_short = r.any_short || row.short_unconstrained || row.short_constrained;
  }
  if (!rows.empty()) {
    r.B_k = sb / static_cast<double>(rows.size());
    r.C_k = sc / static_cast<double>(rows.size());
  }
  r.vbm = visual_bias_measure(r.B_k, r.C_k);
  r.per_query = std::move(rows);
  return r;
}

}  // namespace detail

TopK cosine_topk(std::string_view query, const EmbeddingIndex& index, std::size_t k,
                 std::optional<TimeExclusion> exclusion) {
  auto q = index.find(query);
  if (!q) throw Error(Errc::UnknownClip, std::string(query));
  if (k == 0) throw Error(Errc::BadParams, "k must be at least 1");
  auto ranked = detail::rank_neighbors(index, *q, k, exclusion);
  TopK out;
  out.short_list = ranked.size() < k;
  for (std::size_t i : ranked) out.clip_ids.push_back(index.records()[i].clip_id);
  return out;
}

VbmReport vbm(const EmbeddingIndex& index, std::size_t k, double half_window) {
  if (k == 0) throw Error(Errc::BadParams, "k must be at least 1");
  if (!(half_window >= 0.0)) throw Error(Errc::BadParams, "time window must be non-negative");
  const auto tokens = detail::tokenize_captions(index);
  const auto n = static_cast<std::ptrdiff_t>(index.size());
  std::vector<QueryScore> rows(index.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t q = 0; q < n; ++q) {
    rows[static_cast<std::size_t>(q)] = detail::score_query(index, tokens, static_cast<std::size_t>(q), k, half_window);
  }
  return detail::assemble_report(std::move(rows), k, half_window);
}

}  // namespace lidarcap
