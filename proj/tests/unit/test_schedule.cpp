// Copyright 2026 The vlnaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "vlnaug/error.hpp"
#include "vlnaug/schedule.hpp"

namespace {

using namespace vlnaug;
using namespace vlnaug::schedule;

std::vector<TrainingItem> items(std::size_t n, Origin origin, const std::string& prefix) {
  std::vector<TrainingItem> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = prefix + std::to_string(i);
    out.push_back({id, origin, "obs:" + id, "instr:" + id});
  }
  return out;
}

CropMixConfig tagging_hook(int* calls = nullptr) {
  return {true, [calls](const TrainingItem& item, std::uint64_t seed) {
            if (calls) ++*calls;
            return "mix:" + item.pair_id + ":" + std::to_string(seed);
          }};
}

std::pair<long, long> count(const StageManifest& m, int epoch) {
  long o = 0, r = 0;
  for (const auto& e : m.entries) {
    if (e.epoch != epoch) continue;
    (e.item.origin == Origin::kOriginal ? o : r) += 1;
  }
  return {o, r};
}

TEST(Stage1, OneToThreeEpochComposition) {
  const auto m = build_stage1(items(100, Origin::kOriginal, "o"), items(300, Origin::kRewritten, "r"),
                              MixRatio{1, 3}, 7, tagging_hook());
  EXPECT_EQ(m.entries.size(), 400u);
  EXPECT_EQ(count(m, 0), (std::pair<long, long>{100, 300}));
  EXPECT_TRUE(m.cropmix);
  EXPECT_EQ(m.mix_ratio, (MixRatio{1, 3}));
  EXPECT_EQ(m.hints, TrainerHints{});
}

TEST(Stage1, RatioWithinOnePerEpoch) {
  const auto m = build_stage1(items(37, Origin::kOriginal, "o"), items(20, Origin::kRewritten, "r"),
                              MixRatio{2, 5}, 3, tagging_hook(), 4);
  for (int e = 0; e < 4; ++e) {
    const auto [o, r] = count(m, e);
    EXPECT_EQ(o, 37);
    EXPECT_LE(std::abs(r * 2.0 - o * 5.0), 2.0) << e;
  }
}

TEST(Stage1, RewrittenItemsAreCropMixedOnce) {
  int calls = 0;
  const auto m = build_stage1(items(10, Origin::kOriginal, "o"), items(5, Origin::kRewritten, "r"),
                              MixRatio{1, 3}, 9, tagging_hook(&calls), 2);
  EXPECT_EQ(calls, 5);
  for (const auto& e : m.entries) {
    if (e.item.origin == Origin::kRewritten) {
      EXPECT_EQ(e.item.observation_ref,
                "mix:" + e.item.pair_id + ":" + std::to_string(cropmix_seed(9, e.item.pair_id)));
    } else {
      EXPECT_EQ(e.item.observation_ref, "obs:" + e.item.pair_id);
    }
  }
}

TEST(Stage1, CropMixDisabledKeepsObservations) {
  const auto m = build_stage1(items(4, Origin::kOriginal, "o"), items(12, Origin::kRewritten, "r"),
                              MixRatio{1, 3}, 1, CropMixConfig{false, {}});
  EXPECT_FALSE(m.cropmix);
  for (const auto& e : m.entries) EXPECT_EQ(e.item.observation_ref, "obs:" + e.item.pair_id);
}

TEST(Stage1, ZeroRewrittenPartMatchesStage2Membership) {
  const auto originals = items(25, Origin::kOriginal, "o");
  const auto s1 = build_stage1(originals, items(10, Origin::kRewritten, "r"), MixRatio{1, 0}, 5,
                               tagging_hook());
  const auto s2 = build_stage2(originals, 5);
  std::multiset<std::string> a, b;
  for (const auto& e : s1.entries) a.insert(e.item.pair_id);
  for (const auto& e : s2.entries) b.insert(e.item.pair_id);
  EXPECT_EQ(a, b);
}

TEST(Stage1, SameSeedSameOrder) {
  const auto o = items(30, Origin::kOriginal, "o");
  const auto r = items(90, Origin::kRewritten, "r");
  const auto a = build_stage1(o, r, {1, 3}, 11, tagging_hook(), 3);
  const auto b = build_stage1(o, r, {1, 3}, 11, tagging_hook(), 3);
  EXPECT_EQ(a.entries, b.entries);
  const auto c = build_stage1(o, r, {1, 3}, 12, tagging_hook(), 3);
  EXPECT_NE(a.entries, c.entries);
}

TEST(Stage1, RejectsMislabelledItems) {
  EXPECT_THROW(build_stage1(items(2, Origin::kRewritten, "o"), {}, {1, 0}, 1, tagging_hook()), Error);
  EXPECT_THROW(build_stage1(items(2, Origin::kOriginal, "o"), {}, {1, 3}, 1, tagging_hook()), Error);
  EXPECT_THROW(build_stage1(items(2, Origin::kOriginal, "o"), items(2, Origin::kRewritten, "r"), {1, 3},
                            1, CropMixConfig{true, {}}),
               Error);
}

TEST(Stage2, RejectsRewrittenItems) {
  auto o = items(3, Origin::kOriginal, "o");
  o.push_back(items(1, Origin::kRewritten, "r")[0]);
  try {
    build_stage2(o, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPrecondition);
  }
}

TEST(Stage2, DefaultsAndMembership) {
  const auto o = items(12, Origin::kOriginal, "o");
  const auto m = build_stage2(o, 4);
  EXPECT_EQ(m.stage, Stage::kFocus);
  EXPECT_EQ(m.hints.max_iterations, 20000);
  EXPECT_EQ(m.hints.batch_size, 8);
  EXPECT_DOUBLE_EQ(m.hints.learning_rate, 1e-5);
  ASSERT_TRUE(m.resume.has_value());
  EXPECT_EQ(m.resume->stage1_best_checkpoint_ref, "stage1:best");
  std::set<std::string> ids;
  for (const auto& e : m.entries) {
    EXPECT_EQ(e.item.origin, Origin::kOriginal);
    ids.insert(e.item.pair_id);
  }
  EXPECT_EQ(ids.size(), 12u);
  EXPECT_EQ(m.entries.size(), 12u);
}

TEST(Validate, CatchesTamperedManifests) {
  auto m2 = build_stage2(items(3, Origin::kOriginal, "o"), 1);
  m2.entries[0].item.origin = Origin::kRewritten;
  EXPECT_THROW(validate(m2), Error);
  auto m1 = build_stage1(items(10, Origin::kOriginal, "o"), items(30, Origin::kRewritten, "r"), {1, 3}, 1,
                         tagging_hook());
  m1.entries.erase(std::remove_if(m1.entries.begin(), m1.entries.end(),
                                  [](const ManifestEntry& e) { return e.item.origin == Origin::kRewritten; }),
                   m1.entries.end());
  EXPECT_THROW(validate(m1), Error);
}

TEST(Serialization, JsonlRoundTrip) {
  testutil::TempDir dir;
  const auto m = build_stage1(items(5, Origin::kOriginal, "o"), items(5, Origin::kRewritten, "r"), {1, 3}, 2,
                              tagging_hook(), 2);
  write_stage_manifest(dir / "s1.jsonl", m);
  const auto back = read_stage_manifest(dir / "s1.jsonl");
  EXPECT_EQ(back.entries, m.entries);
  EXPECT_EQ(back.mix_ratio, m.mix_ratio);
  EXPECT_EQ(back.hints, m.hints);
  EXPECT_EQ(back.cropmix, m.cropmix);
  EXPECT_EQ(back.epochs, 2);
  EXPECT_EQ(to_jsonl(back), to_jsonl(m));
  const auto header = header_json(m);
  EXPECT_EQ(header["mix_ratio"], nlohmann::json::array({1, 3}));
}

TEST(Ratio, Parse) {
  EXPECT_EQ(parse_ratio("1:3"), (MixRatio{1, 3}));
  EXPECT_EQ(parse_ratio(" 2 : 0 "), (MixRatio{2, 0}));
  EXPECT_THROW(parse_ratio("0:3"), Error);
  EXPECT_THROW(parse_ratio("1-3"), Error);
  EXPECT_THROW(parse_ratio("a:b"), Error);
}

}  // namespace
