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
#include "grounding_cases.hpp"
#include "oracles.hpp"
#include "vlnaug/error.hpp"
#include "vlnaug/grounding.hpp"
#include "vlnaug/panogeom.hpp"
#include "vlnaug/providers/mock.hpp"

namespace {

using namespace vlnaug;
using namespace vlnaug::grounding;

TEST(Landmarks, MockExtractsNounsInOrder) {
  providers::MockChat chat;
  std::vector<CallRecord> calls;
  const auto lm = extract_landmarks("walk past the sofa to the kitchen", chat, {}, 2, &calls);
  EXPECT_EQ(lm.items, (std::vector<std::string>{"sofa", "kitchen"}));
  EXPECT_EQ(calls.size(), 1u);
}

TEST(Landmarks, SingleLandmark) {
  providers::MockChat chat;
  EXPECT_EQ(extract_landmarks("stop at the door", chat).items.size(), 1u);
}

TEST(Landmarks, EmptyInstructionIsPrecondition) {
  providers::MockChat chat;
  try {
    extract_landmarks("   ", chat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPrecondition);
  }
}

TEST(Landmarks, PromptCarriesDirectiveAndInstruction) {
  const auto req = build_landmark_prompt("go to\nthe door");
  EXPECT_EQ(req.user_text.find(kLandmarkDirective), 0u);
  EXPECT_NE(req.user_text.find("Instruction: go to the door"), std::string::npos);
}

TEST(Landmarks, RequeriesThenGivesUp) {
  providers::MockChat chat(providers::MockChatOptions{{"door"}});
  std::vector<CallRecord> calls;
  try {
    extract_landmarks("stop at the door", chat, {}, 2, &calls);
    FAIL();
  } catch (const rewrite::ParseError& e) {
    EXPECT_EQ(e.failure(), rewrite::ParseFailure::kMissingLabel);
  }
  EXPECT_EQ(calls.size(), 3u);
}

TEST(Landmarks, ParseResponse) {
  EXPECT_EQ(parse_landmark_response("Here:\nLandmarks: sofa , kitchen ").items,
            (std::vector<std::string>{"sofa", "kitchen"}));
  EXPECT_THROW(parse_landmark_response("Landmarks: "), rewrite::ParseError);
}

std::vector<Image> tiny_views(int n) {
  std::vector<Image> out;
  for (int i = 0; i < n; ++i) {
    Image img(2, 1);
    img.fill(static_cast<std::uint8_t>(i), 7, 9);
    out.push_back(img);
  }
  return out;
}

TEST(Ground, SingleLandmarkEverywhere) {
  providers::MockEmbedder emb(16);
  const auto views = tiny_views(4);
  const auto g = ground_landmarks(views, LandmarkList{{"sofa"}}, emb);
  EXPECT_EQ(g.landmarks, std::vector<std::string>(4, "sofa"));
  EXPECT_EQ(g.indices, std::vector<std::size_t>(4, 0));
}

TEST(Ground, OneHotTaggedViews) {
  providers::MockEmbedder emb(16);
  const std::vector<std::string> labels{"sofa", "kitchen", "door"};
  for (const auto& l : labels) emb.register_landmark(l);
  const auto views = tiny_views(3);
  const std::vector<std::size_t> tags{2, 0, 1};
  for (std::size_t t = 0; t < views.size(); ++t) emb.tag_image(views[t], labels[tags[t]]);
  std::vector<CallRecord> calls;
  const auto g = ground_landmarks(views, LandmarkList{labels}, emb, &calls);
  EXPECT_EQ(g.indices, tags);
  for (std::size_t t = 0; t < views.size(); ++t) {
    EXPECT_EQ(g.landmarks[t], labels[tags[t]]);
    EXPECT_DOUBLE_EQ(g.scores[t], 1.0);
  }
  EXPECT_EQ(calls.size(), labels.size() + views.size());
}

TEST(Ground, ExactTieGoesToSmallerIndex) {
  testutil::TableEmbedder emb;
  const std::vector<double> a{1, 0}, b{0, 1};
  const std::vector<double> diag{std::sqrt(0.5), std::sqrt(0.5)};
  emb.set_text("x", a);
  emb.set_text("y", b);
  const auto views = tiny_views(1);
  emb.set_image(views[0], diag);
  EXPECT_EQ(ground_landmarks(views, LandmarkList{{"x", "y"}}, emb).indices[0], 0u);
  EXPECT_EQ(ground_landmarks(views, LandmarkList{{"y", "x"}}, emb).indices[0], 0u);
  EXPECT_EQ(argmax_rows({{0.5, 0.5, 0.5}, {0.1, 0.9, 0.9}}), (std::vector<std::size_t>{0, 1}));
}

TEST(Ground, MatchesExhaustiveOracle) {
  int tie_rows = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    testutil::TableEmbedder emb;
    const auto c = testutil::make_grounding_case(seed, emb);
    const auto g = ground_landmarks(c.views, c.landmarks, emb);
    const auto want = oracle::argmax_grounding(c.image_vecs, c.text_vecs);
    ASSERT_EQ(g.indices, want) << "seed " << seed;
    for (std::size_t t = 0; t < want.size(); ++t) {
      EXPECT_EQ(g.landmarks[t], c.landmarks.items[want[t]]);
      for (std::size_t k = want[t] + 1; k < c.text_vecs.size(); ++k)
        tie_rows += c.text_vecs[k] == c.text_vecs[want[t]];
    }
  }
  EXPECT_GT(tie_rows, 10);
}

TEST(Ground, ArgmaxIsScaleInvariant) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<double>> sim(static_cast<std::size_t>(rng.between(1, 10)));
    for (auto& row : sim) {
      row.resize(static_cast<std::size_t>(rng.between(1, 10)));
      for (auto& x : row) x = rng.unit() * 2 - 1;
    }
    const double scale = 1e-3 + rng.unit() * 1e3;
    auto scaled = sim;
    for (auto& row : scaled)
      for (auto& x : row) x *= scale;
    EXPECT_EQ(argmax_rows(scaled), argmax_rows(sim));
  }
}

TEST(Ground, PreconditionsOnEmptyInputs) {
  providers::MockEmbedder emb;
  EXPECT_THROW(ground_landmarks({}, LandmarkList{{"a"}}, emb), Error);
  EXPECT_THROW(ground_landmarks(tiny_views(1), LandmarkList{}, emb), Error);
}

TEST(NewDescriptions, CaptionsIndexedViews) {
  providers::MockPanoramaGenerator gen;
  providers::PanoramaRequest req;
  req.width = 128;
  req.height = 64;
  req.prompt_text = "a kitchen with a sofa";
  req.seed = 1;
  const auto p1 = gen.generate_panorama(req).value;
  req.prompt_text = "a bedroom with a wardrobe";
  req.seed = 2;
  const auto p2 = gen.generate_panorama(req).value;
  const std::vector<panogeom::ViewSet> sets{panogeom::discretize_panorama(p1, 60, 16),
                                            panogeom::discretize_panorama(p2, 60, 16)};
  providers::MockCaptioner cap;
  const auto out = collect_new_descriptions(sets, {12, 12}, cap);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], cap.caption(sets[0].views[12].image).value);
  EXPECT_EQ(out[1], cap.caption(sets[1].views[12].image).value);
  EXPECT_NE(out[0], out[1]);
}

TEST(NewDescriptions, IndexOutOfRange) {
  providers::MockCaptioner cap;
  std::vector<panogeom::ViewSet> sets(1);
  try {
    collect_new_descriptions(sets, {36}, cap);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPrecondition);
  }
}

}  // namespace
