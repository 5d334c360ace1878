#include <doctest.h>

#include <random>
#include <set>

#include "lidarcap/caption_templater.hpp"
#include "lidarcap/error.hpp"
#include "oracles.hpp"

using namespace lidarcap;

namespace {

ConcatenatedTag tag(ObjectClass c, LaneTag l, NeighborMotion m) { return {c, l, m}; }

Errc code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::Io;
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    cur += ch;
    if (ch == '.') {
      out.push_back(cur);
      cur.clear();
    } else if (ch == ' ' && cur == " ") {
      cur.clear();
    }
  }
  return out;
}

std::vector<ConcatenatedTag> all_tags(bool host_lateral = false) {
  std::vector<ConcatenatedTag> out;
  for (auto c : {ObjectClass::Car, ObjectClass::Truck, ObjectClass::Bike, ObjectClass::Pedestrian})
    for (auto l : {LaneTag::Right, LaneTag::Left, LaneTag::Host, LaneTag::Oncoming, LaneTag::LeftLateral,
                   LaneTag::RightLateral, LaneTag::HostLateral}) {
      if (l == LaneTag::HostLateral && !host_lateral) continue;
      for (auto m : {NeighborMotion::Approach, NeighborMotion::Away, NeighborMotion::Constant,
                     NeighborMotion::Stationary}) {
        if (l == LaneTag::Oncoming && m != NeighborMotion::Approach) continue;
        out.push_back({c, l, m});
      }
    }
  return out;
}

}  // namespace

TEST_CASE("worked example") {
  auto away = tag(ObjectClass::Car, LaneTag::Host, NeighborMotion::Away);
  auto right = tag(ObjectClass::Car, LaneTag::Right, NeighborMotion::Away);
  CHECK(first_sentence(away, false) == "A car, traveling on the host lane, is moving away from the host.");
  CHECK(followup_sentence(away, right, false) == "It continues to move away from the host, but is now on the right lane.");
  auto cap = neighbor_caption({away, right}, false);
  CHECK(cap.text ==
        "A car, traveling on the host lane, is moving away from the host. It continues to move away from the host, "
        "but is now on the right lane.");
  CHECK(cap.length == 2);
  CHECK(neighbor_caption({away}, false).text == first_sentence(away, false));
}

TEST_CASE("first sentences") {
  CHECK(first_sentence(tag(ObjectClass::Truck, LaneTag::Left, NeighborMotion::Constant), false) ==
        "A truck, traveling on the left lane, is maintaining a constant distance from host.");
  CHECK(first_sentence(tag(ObjectClass::Car, LaneTag::Host, NeighborMotion::Approach), true) ==
        "A car, traveling on the host lane, is approaching host.");
  CHECK(first_sentence(tag(ObjectClass::Car, LaneTag::Host, NeighborMotion::Approach), false) ==
        "A car, traveling on the host lane, is reducing its distance from host.");
  CHECK(first_sentence(tag(ObjectClass::Bike, LaneTag::Right, NeighborMotion::Stationary), false) ==
        "A bike, riding on the right sidewalk, is stationary.");
  CHECK(code_of([] { first_sentence(tag(ObjectClass::Car, LaneTag::Oncoming, NeighborMotion::Constant), false); }) ==
        Errc::IncompatibleTags);
}

TEST_CASE("follow-up sentences") {
  auto away = tag(ObjectClass::Car, LaneTag::Host, NeighborMotion::Away);
  auto closing = tag(ObjectClass::Car, LaneTag::Host, NeighborMotion::Approach);
  CHECK(followup_sentence(away, closing, false) ==
        "It continues to be on the host lane but its distance from host is now reducing.");
  CHECK(followup_sentence(away, closing, true) == "It continues to be on the host lane but is now approaching host.");
  CHECK(followup_sentence(tag(ObjectClass::Car, LaneTag::Left, NeighborMotion::Approach), closing, false) ==
        "It continues to reduce its distance from host, but is now on the host lane.");
  CHECK(followup_sentence(tag(ObjectClass::Car, LaneTag::Left, NeighborMotion::Constant), closing, false) ==
        "It is now on the host lane and its distance from host is reducing.");
  CHECK(followup_sentence(closing, tag(ObjectClass::Car, LaneTag::Right, NeighborMotion::Away), false) ==
        "It is now on the right lane and is moving away from the host.");
  CHECK(code_of([&] { followup_sentence(away, away, false); }) == Errc::NoChange);
  CHECK(code_of([&] { followup_sentence(away, tag(ObjectClass::Truck, LaneTag::Host, NeighborMotion::Away), false); }) ==
        Errc::IncompatibleTags);
}

TEST_CASE("three-sentence pedestrian caption") {
  UnifiedTagSequence seq{tag(ObjectClass::Pedestrian, LaneTag::RightLateral, NeighborMotion::Approach),
                         tag(ObjectClass::Pedestrian, LaneTag::RightLateral, NeighborMotion::Constant),
                         tag(ObjectClass::Pedestrian, LaneTag::Right, NeighborMotion::Constant)};
  auto cap = neighbor_caption(seq, false);
  CHECK(cap.length == 3);
  // first, motion-only, lane-only
  CHECK(cap.text ==
        "A pedestrian, walking on the right lateral lane, is reducing their distance from host. "
        "They continue to be on the right lateral lane but are now maintaining a constant distance from host. "
        "They continue to maintain a constant distance from host, but are now on the right sidewalk.");
}

TEST_CASE("caption space size") {
  CHECK(caption_space_size(63, 78, 1) == 63);
  CHECK(caption_space_size(63, 78, 2) == 4914);
  CHECK(caption_space_size(63, 78, 3) == 378378);
  CHECK(caption_space_size(63, 78, 3) == BigCount(63) * 78 * 77);
  CHECK(caption_space_size(5, 0, 1) == 5);
  CHECK(code_of([] { caption_space_size(5, 2, 4); }) == Errc::LengthExceedsPool);
  CHECK(code_of([] { caption_space_size(5, 2, 0); }) == Errc::BadParams);
  // 79 factors of up to 78: far beyond 64 bits, still exact
  BigCount big = caption_space_size(63, 78, 79);
  BigCount fact = 1;
  for (int i = 2; i <= 78; ++i) fact *= i;
  CHECK(big == 63 * fact);

  for (std::size_t A = 0; A <= 8; ++A)
    for (std::size_t B = 0; B <= 8; ++B)
      for (std::size_t n = 1; n <= 4; ++n) {
        if (n - 1 > B) continue;
        CHECK(caption_space_size(A, B, n) == oracle::count_caption_tuples(A, B, n));
      }
}

TEST_CASE("sentence count matches sequence length") {
  std::mt19937_64 rng(13);
  auto tags = all_tags();
  std::uniform_int_distribution<std::size_t> pick(0, tags.size() - 1), len(1, 8);
  for (int trial = 0; trial < 500; ++trial) {
    ObjectClass cls = tags[pick(rng)].object;
    UnifiedTagSequence seq;
    std::size_t n = len(rng);
    while (seq.size() < n) {
      auto t = tags[pick(rng)];
      if (t.object != cls || (!seq.empty() && seq.back() == t)) continue;
      seq.push_back(t);
    }
    bool hs = trial % 2;
    auto cap = neighbor_caption(seq, hs);
    CHECK(cap.length == seq.size());
    CHECK(split_sentences(cap.text).size() == seq.size());
    CHECK(neighbor_caption(seq, hs).text == cap.text);
  }
}

TEST_CASE("every sentence names one lane and one filler") {
  auto lanes = all_lane_phrases();
  auto fillers = all_filler_phrases();
  auto count_in = [](const std::string& s, const std::vector<std::string>& phrases) {
    std::size_t n = 0;
    for (const auto& p : phrases) n += occurrences(s, p);
    return n;
  };
  auto pool = TemplatePool::enumerate(true);
  for (const auto& s : pool.first_sentences) {
    CHECK_MESSAGE(count_in(s, lanes) == 1, s);
    CHECK_MESSAGE(count_in(s, fillers) == 1, s);
  }
  for (const auto& s : pool.followups) {
    CHECK_MESSAGE(count_in(s, lanes) == 1, s);
    CHECK_MESSAGE(count_in(s, fillers) == 1, s);
  }
}

TEST_CASE("template pools are the distinct renderings") {
  auto pool = TemplatePool::enumerate(false);
  std::set<std::string> first(pool.first_sentences.begin(), pool.first_sentences.end());
  std::set<std::string> follow(pool.followups.begin(), pool.followups.end());
  CHECK(first.size() == pool.first_size());
  CHECK(follow.size() == pool.followup_size());
  for (const auto& t : all_tags())
    for (bool hs : {false, true}) CHECK(first.count(first_sentence(t, hs)) == 1);

  // Hand count. Per class: 5 non-oncoming lanes x 4 motions + oncoming-approach = 21
  // tags, and approach renders two ways (host moving or not) on each of 6 lanes.
  const std::size_t renderings = 21 + 6;
  CHECK(pool.first_size() == 4 * renderings);
  // Follow-ups depend on voice, lane phrase and filler. Motion-only changes cannot end on
  // the oncoming lane (5 lanes x 5 renderings); lane-only and both-changed reach all 27.
  const std::size_t per_voice = 5 * 5 + renderings + renderings;
  // Car and truck render identically; bike shares "It" and every lane phrase except
  // the two sidewalks (3 templates x 2 lanes x 5 renderings); pedestrians use "They".
  CHECK(pool.followup_size() == per_voice + 3 * 2 * 5 + per_voice);

  auto wide = TemplatePool::enumerate(true);
  CHECK(wide.first_size() > pool.first_size());
  CHECK(wide.followup_size() > pool.followup_size());
}
