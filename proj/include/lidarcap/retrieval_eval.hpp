#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lidarcap/embedding.hpp"

namespace lidarcap {

inline constexpr double kBleuSmoothing = 1e-9;

// Lowercases, splits punctuation into separate tokens, splits on whitespace.
std::vector<std::string> tokenize(std::string_view text);

// Sentence BLEU-4: geometric mean of clipped 1..4-gram precisions times the
// brevity penalty (closest reference length, shorter on ties). Zero match
// counts are replaced by `smoothing`; pass 0 for the unsmoothed score.
// Throws EmptyCandidate.
double bleu4(std::string_view candidate, std::span<const std::string> references, double smoothing = kBleuSmoothing);
double bleu4_tokens(const std::vector<std::string>& candidate, std::span<const std::vector<std::string>> references,
                    double smoothing = kBleuSmoothing);

struct TimeExclusion {
  double t_center = 0.0;
  double half_window = 0.0;
};

struct TopK {
  std::vector<std::string> clip_ids;
  bool short_list = false;  // fewer than k candidates survived
};

double cosine_similarity(std::span<const double> a, std::span<const double> b) noexcept;

// Ranks every other clip by descending cosine similarity (ties on ascending
// clip id), skipping clips recorded within the exclusion window. Throws UnknownClip.
TopK cosine_topk(std::string_view query, const EmbeddingIndex& index, std::size_t k,
                 std::optional<TimeExclusion> exclusion = std::nullopt);

struct QueryScore {
  std::string clip_id;
  double b = 0.0;  // mean BLEU-4 over unconstrained neighbors
  double c = 0.0;  // mean BLEU-4 over time-separated neighbors
  bool short_unconstrained = false;
  bool short_constrained = false;
};

struct VbmReport {
  std::size_t k = 0;
  double window = 0.0;
  double B_k = 0.0;
  double C_k = 0.0;
  std::optional<double> vbm;  // undefined when B_k == 0
  bool any_short = false;
  std::vector<QueryScore> per_query;  // ordered by clip id
};

// 100 * (B - C) / B, or nullopt when B == 0.
std::optional<double> visual_bias_measure(double B_k, double C_k) noexcept;

// Every clip queries the rest of the index twice: unconstrained and with the
// window centered on its own recording time. Queries run across OpenMP threads;
// the result is independent of thread count.
VbmReport vbm(const EmbeddingIndex& index, std::size_t k, double half_window);

namespace reference {

VbmReport vbm_serial(const EmbeddingIndex& index, std::size_t k, double half_window);

}  // namespace reference

}  // namespace lidarcap
