#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lidarcap/behavior_tagging.hpp"

namespace lidarcap {

// Verb-phrase fragment for one motion tag, in the two grammatical forms the
// templates need. `is_clause` marks the approach-while-host-moves filler,
// which reads as a clause and is rewritten per template slot.
struct MotionFiller {
  std::string_view continuous_form;
  std::string_view infinitive_form;
  bool is_clause = false;
};

MotionFiller motion_filler(NeighborMotion motion, bool host_stationary) noexcept;

// Lane wording for an object class, e.g. "host lane" or "right sidewalk".
std::string lane_phrase(ObjectClass cls, LaneTag lane);

std::string first_sentence(const ConcatenatedTag& tag, bool host_stationary);
std::string followup_sentence(const ConcatenatedTag& prev, const ConcatenatedTag& cur, bool host_stationary);

struct NeighborCaption {
  std::string text;
  std::size_t length = 0;
};

NeighborCaption neighbor_caption(const UnifiedTagSequence& seq, bool host_stationary);

// Distinct renderable first and follow-up sentences.
struct TemplatePool {
  std::vector<std::string> first_sentences;
  std::vector<std::string> followups;

  std::size_t first_size() const noexcept { return first_sentences.size(); }
  std::size_t followup_size() const noexcept { return followups.size(); }

  static TemplatePool enumerate(bool include_host_lateral = false);
};

// Every filler and lane phrase the templater can emit; used for sentence audits.
std::vector<std::string> all_filler_phrases();
std::vector<std::string> all_lane_phrases();

using BigCount = boost::multiprecision::cpp_int;

// |A| * |B|! / (|B| - (n-1))!; throws LengthExceedsPool when n - 1 > |B|.
BigCount caption_space_size(std::size_t first_pool, std::size_t followup_pool, std::size_t n);

}  // namespace lidarcap
