#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "lidarcap/error.hpp"
#include "lidarcap/retrieval_eval.hpp"

namespace lidarcap {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      flush();
    } else if (std::ispunct(c)) {
      flush();
      tokens.emplace_back(1, ch);
    } else {
      cur += static_cast<char>(std::tolower(c));
    }
  }
  flush();
  return tokens;
}

namespace {

using NgramCounts = std::map<std::string, int>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t j = 1; j < n; ++j) {
      key += '\x1f';
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

double bleu4_tokens(const std::vector<std::string>& candidate, std::span<const std::vector<std::string>> references,
                    double smoothing) {
  if (candidate.empty()) throw Error(Errc::EmptyCandidate, "candidate has no tokens");
  if (references.empty()) throw Error(Errc::BadParams, "BLEU needs at least one reference");

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    NgramCounts cand = count_ngrams(candidate, n);
    NgramCounts max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, c] : count_ngrams(ref, n)) max_ref[gram] = std::max(max_ref[gram], c);
    }
    long matches = 0;
    for (const auto& [gram, c] : cand) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matches += std::min(c, it->second);
    }
    const std::size_t total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
    double precision;
    if (matches > 0) {
      precision = static_cast<double>(matches) / static_cast<double>(total);
    } else {
      if (smoothing <= 0.0) return 0.0;
      precision = smoothing / static_cast<double>(std::max<std::size_t>(total, 1));
    }
    log_sum += std::log(precision);
  }

  const double c = static_cast<double>(candidate.size());
  std::size_t r = references.front().size();
  for (const auto& ref : references) {
    auto d = [&](std::size_t len) { return std::abs(static_cast<double>(len) - c); };
    if (d(ref.size()) < d(r) || (d(ref.size()) == d(r) && ref.size() < r)) r = ref.size();
  }
  const double bp = c > static_cast<double>(r) ? 1.0 : std::exp(1.0 - static_cast<double>(r) / c);
  return bp * std::exp(log_sum / 4.0);
}

double bleu4(std::string_view candidate, std::span<const std::string> references, double smoothing) {
  std::vector<std::vector<std::string>> refs;
  refs.reserve(references.size());
  for (const auto& r : references) refs.push_back(tokenize(r));
  return bleu4_tokens(tokenize(candidate), refs, smoothing);
}

}  // namespace lidarcap
