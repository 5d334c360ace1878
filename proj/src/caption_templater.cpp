#include "lidarcap/caption_templater.hpp"

#include <set>

#include "lidarcap/error.hpp"

namespace lidarcap {

namespace {

struct Voice {
  std::string_view subject;    // It / They
  std::string_view be;         // is / are
  std::string_view continues;  // continues / continue
  std::string_view possessive; // its / their
};

// Pedestrians carry no gender attribute, so they take singular "they".
Voice voice_of(ObjectClass cls) noexcept {
  if (cls == ObjectClass::Pedestrian) return {"They", "are", "continue", "their"};
  return {"It", "is", "continues", "its"};
}

std::string_view noun_of(ObjectClass cls) noexcept {
  switch (cls) {
    case ObjectClass::Truck: return "truck";
    case ObjectClass::Bike: return "bike";
    case ObjectClass::Pedestrian: return "pedestrian";
    case ObjectClass::Car:
    case ObjectClass::Other: break;
  }
  return "car";
}

std::string_view travel_verb(ObjectClass cls) noexcept {
  switch (cls) {
    case ObjectClass::Bike: return "riding";
    case ObjectClass::Pedestrian: return "walking";
    default: return "traveling";
  }
}

bool uses_sidewalk(ObjectClass cls) noexcept { return cls == ObjectClass::Pedestrian || cls == ObjectClass::Bike; }

void check_compatible(const ConcatenatedTag& tag) {
  if (tag.lane == LaneTag::Oncoming && tag.motion != NeighborMotion::Approach)
    throw Error(Errc::IncompatibleTags, "oncoming lane only pairs with approach, got " + to_string(tag));
}

std::string cat(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto p : parts) out += p;
  return out;
}

}  // namespace

MotionFiller motion_filler(NeighborMotion motion, bool host_stationary) noexcept {
  switch (motion) {
    case NeighborMotion::Away: return {"moving away from the host", "move away from the host", false};
    case NeighborMotion::Constant:
      return {"maintaining a constant distance from host", "maintain a constant distance from host", false};
    case NeighborMotion::Stationary: return {"stationary", "be stationary", false};
    case NeighborMotion::Approach:
      if (host_stationary) return {"approaching host", "approach host", false};
      return {"distance from host is reducing", "reduce", true};
  }
  return {"", "", false};
}

std::string lane_phrase(ObjectClass cls, LaneTag lane) {
  switch (lane) {
    case LaneTag::Right: return uses_sidewalk(cls) ? "right sidewalk" : "right lane";
    case LaneTag::Left: return uses_sidewalk(cls) ? "left sidewalk" : "left lane";
    case LaneTag::Host: return "host lane";
    case LaneTag::Oncoming: return "oncoming lane";
    case LaneTag::LeftLateral: return "left lateral lane";
    case LaneTag::RightLateral: return "right lateral lane";
    case LaneTag::HostLateral: return "host lateral lane";
  }
  return "host lane";
}

std::string first_sentence(const ConcatenatedTag& tag, bool host_stationary) {
  check_compatible(tag);
  const auto filler = motion_filler(tag.motion, host_stationary);
  const auto voice = voice_of(tag.object);
  const std::string lane = lane_phrase(tag.object, tag.lane);
  std::string head = cat({"A ", noun_of(tag.object), ", ", travel_verb(tag.object), " on the ", lane, ", "});
  if (filler.is_clause) return head + cat({"is reducing ", voice.possessive, " distance from host."});
  return head + cat({"is ", filler.continuous_form, "."});
}

std::string followup_sentence(const ConcatenatedTag& prev, const ConcatenatedTag& cur, bool host_stationary) {
  if (prev == cur) throw Error(Errc::NoChange, "consecutive tags are identical: " + to_string(cur));
  if (prev.object != cur.object) throw Error(Errc::IncompatibleTags, "object class changed within one sequence");
  check_compatible(prev);
  check_compatible(cur);

  const auto voice = voice_of(cur.object);
  const auto filler = motion_filler(cur.motion, host_stationary);
  const std::string lane = lane_phrase(cur.object, cur.lane);
  const bool motion_changed = prev.motion != cur.motion;
  const bool lane_changed = prev.lane != cur.lane;

  if (motion_changed && !lane_changed) {
    std::string head = cat({voice.subject, " ", voice.continues, " to be on the ", lane, " but "});
    if (filler.is_clause) return head + cat({voice.possessive, " distance from host is now reducing."});
    return head + cat({voice.be, " now ", filler.continuous_form, "."});
  }
  if (!motion_changed && lane_changed) {
    std::string verb = filler.is_clause ? cat({"reduce ", voice.possessive, " distance from host"})
                                        : std::string(filler.infinitive_form);
    return cat({voice.subject, " ", voice.continues, " to ", verb, ", but ", voice.be, " now on the ", lane, "."});
  }
  std::string head = cat({voice.subject, " ", voice.be, " now on the ", lane, " and "});
  if (filler.is_clause) return head + cat({voice.possessive, " distance from host is reducing."});
  return head + cat({voice.be, " ", filler.continuous_form, "."});
}

NeighborCaption neighbor_caption(const UnifiedTagSequence& seq, bool host_stationary) {
  if (seq.empty()) throw Error(Errc::EmptySeries, "empty unified tag sequence");
  NeighborCaption out;
  out.text = first_sentence(seq.front(), host_stationary);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    out.text += ' ';
    out.text += followup_sentence(seq[i - 1], seq[i], host_stationary);
  }
  out.length = seq.size();
  return out;
}

TemplatePool TemplatePool::enumerate(bool include_host_lateral) {
  std::vector<LaneTag> lanes{LaneTag::Right,    LaneTag::Left,        LaneTag::Host,
                             LaneTag::Oncoming, LaneTag::LeftLateral, LaneTag::RightLateral};
  if (include_host_lateral) lanes.push_back(LaneTag::HostLateral);
  const NeighborMotion motions[] = {NeighborMotion::Approach, NeighborMotion::Away, NeighborMotion::Constant,
                                    NeighborMotion::Stationary};
  const ObjectClass classes[] = {ObjectClass::Car, ObjectClass::Truck, ObjectClass::Bike, ObjectClass::Pedestrian};

  std::vector<ConcatenatedTag> tags;
  for (auto c : classes) {
    for (auto l : lanes) {
      for (auto m : motions) {
        if (l == LaneTag::Oncoming && m != NeighborMotion::Approach) continue;
        tags.push_back({c, l, m});
      }
    }
  }

  std::set<std::string> first, follow;
  for (bool host_stationary : {false, true}) {
    for (const auto& a : tags) {
      first.insert(first_sentence(a, host_stationary));
      for (const auto& b : tags) {
        if (a.object != b.object || a == b) continue;
        follow.insert(followup_sentence(a, b, host_stationary));
      }
    }
  }
  return {{first.begin(), first.end()}, {follow.begin(), follow.end()}};
}

std::vector<std::string> all_filler_phrases() {
  std::set<std::string> out;
  for (bool hs : {false, true}) {
    for (auto m : {NeighborMotion::Approach, NeighborMotion::Away, NeighborMotion::Constant,
                   NeighborMotion::Stationary}) {
      auto f = motion_filler(m, hs);
      if (f.is_clause) continue;
      out.emplace(f.continuous_form);
      if (m != NeighborMotion::Stationary) out.emplace(f.infinitive_form);
    }
  }
  for (std::string_view poss : {"its", "their"}) {
    out.insert(cat({"reducing ", poss, " distance from host"}));
    out.insert(cat({"reduce ", poss, " distance from host"}));
  }
  out.insert("distance from host is now reducing");
  out.insert("distance from host is reducing");
  return {out.begin(), out.end()};
}

std::vector<std::string> all_lane_phrases() {
  std::set<std::string> out;
  for (auto c : {ObjectClass::Car, ObjectClass::Bike}) {
    for (auto l : {LaneTag::Right, LaneTag::Left, LaneTag::Host, LaneTag::Oncoming, LaneTag::LeftLateral,
                   LaneTag::RightLateral, LaneTag::HostLateral}) {
      out.insert(lane_phrase(c, l));
    }
  }
  return {out.begin(), out.end()};
}

BigCount caption_space_size(std::size_t first_pool, std::size_t followup_pool, std::size_t n) {
  if (n == 0) throw Error(Errc::BadParams, "caption length must be at least 1");
  if (n - 1 > followup_pool)
    throw Error(Errc::LengthExceedsPool, "caption length " + std::to_string(n) + " needs " + std::to_string(n - 1) +
                                             " distinct follow-ups but the pool has " + std::to_string(followup_pool));
  BigCount count = first_pool;
  for (std::size_t k = 0; k + 1 < n; ++k) count *= BigCount(followup_pool - k);
  return count;
}

}  // namespace lidarcap
