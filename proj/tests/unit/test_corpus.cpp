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

#include <cmath>

#include "fixtures.hpp"
#include "vlnaug/bundle.hpp"
#include "vlnaug/corpus.hpp"
#include "vlnaug/error.hpp"
#include "vlnaug/store.hpp"
#include "vlnaug/toy.hpp"

namespace {

using namespace vlnaug;
using namespace vlnaug::corpus;
using nlohmann::json;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIo;
}

std::string error_text(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

json pose_at(double x, double y, double z) {
  return json::array({1, 0, 0, x, 0, 1, 0, y, 0, 0, 1, z, 0, 0, 0, 1});
}

TEST(Connectivity, ParsesPosesAndEdges) {
  const json doc = json::array({
      {{"image_id", "a"}, {"pose", pose_at(0, 0, 1.5)}, {"included", true},
       {"unobstructed", {false, true, true}}},
      {{"image_id", "b"}, {"pose", pose_at(3, 4, 1.5)}, {"included", true},
       {"unobstructed", {true, false, false}}},
      {{"image_id", "c"}, {"pose", pose_at(9, 9, 1.5)}, {"included", false},
       {"unobstructed", {true, false, false}}},
  });
  const auto g = parse_connectivity("s", doc.dump());
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_FALSE(g.has_node("c"));
  ASSERT_TRUE(g.adjacent("a", "b"));
  EXPECT_TRUE(g.adjacent("b", "a"));
  EXPECT_NEAR(*g.edge_distance("a", "b"), 5.0, 1e-12);
  // z-up world height becomes the y axis.
  EXPECT_DOUBLE_EQ(g.position("b").y(), 1.5);
}

TEST(Connectivity, RejectsBadEdges) {
  ConnectivityGraph g("s");
  g.add_node("a", {0, 0, 0});
  g.add_node("b", {0, 0, 0});
  EXPECT_EQ(kind_of([&] { g.add_edge("a", "b"); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([&] { g.add_edge("a", "zz", 1.0); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([&] { g.add_edge("a", "a", 1.0); }), ErrorKind::kValidation);
}

TEST(Trajectories, EmptyArrayIsEmptyList) { EXPECT_TRUE(parse_trajectories("[]").empty()); }

TEST(Trajectories, MalformedJsonReportsLine) {
  const auto msg = error_text([] { parse_trajectories("[\n{\"path_id\": 1,\n oops}\n]"); });
  EXPECT_NE(msg.find(":3"), std::string::npos) << msg;
  EXPECT_EQ(kind_of([] { parse_trajectories("[\n{\n"); }), ErrorKind::kParse);
}

TEST(Trajectories, HeadingIsConvertedToDegrees) {
  const json doc = json::array({{{"path_id", 7},
                                 {"scan", "s"},
                                 {"path", {"a", "b"}},
                                 {"heading", std::numbers::pi / 2},
                                 {"instructions", {"go"}}}});
  const auto pairs = parse_trajectories(doc.dump());
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].path_id, "7");
  EXPECT_NEAR(pairs[0].initial_heading_deg, 90.0, 1e-9);
}

TEST(Trajectories, RejectsShortPathAndMissingInstructions) {
  json rec = {{"path_id", 1}, {"scan", "s"}, {"path", {"a"}}, {"heading", 0}, {"instructions", {"go"}}};
  EXPECT_EQ(kind_of([&] { parse_trajectories(json::array({rec}).dump()); }), ErrorKind::kValidation);
  rec["path"] = {"a", "b"};
  rec["instructions"] = json::array();
  EXPECT_EQ(kind_of([&] { parse_trajectories(json::array({rec}).dump()); }), ErrorKind::kValidation);
}

TEST(Dataset, LoadsToyCorpus) {
  testutil::TempDir dir;
  toy::write_toy_dataset(dir.path(), {});
  const auto ds = load_dataset(dir.path(), Split::kTrain);
  EXPECT_EQ(ds.pairs.size(), 5u);
  for (const auto& p : ds.pairs) {
    EXPECT_GE(p.steps(), 2u);
    EXPECT_FALSE(p.instructions.empty());
    const auto pano = ds.load_panorama(p.scan_id, p.viewpoints.front());
    EXPECT_EQ(pano.width(), 2 * pano.height());
  }
}

TEST(Dataset, UnknownViewpointNamesPathId) {
  testutil::TempDir dir;
  toy::write_toy_dataset(dir.path(), {});
  const auto file = trajectory_file(dir.path(), Split::kTrain);
  auto doc = json::parse(testutil::read_file(file));
  doc[2]["path"][1] = "nowhere";
  const auto path_id = doc[2]["path_id"].is_string() ? doc[2]["path_id"].get<std::string>()
                                                     : doc[2]["path_id"].dump();
  testutil::write_file(file, doc.dump());
  const auto msg = error_text([&] { load_dataset(dir.path(), Split::kTrain); });
  EXPECT_NE(msg.find(path_id), std::string::npos) << msg;
  EXPECT_EQ(kind_of([&] { load_dataset(dir.path(), Split::kTrain); }), ErrorKind::kValidation);
}

TEST(Panorama, AspectInvariant) {
  EXPECT_NO_THROW(make_panorama(Image(8, 4), PanoramaSource::kCaptured));
  EXPECT_EQ(kind_of([] { make_panorama(Image(8, 5), PanoramaSource::kCaptured); }),
            ErrorKind::kValidation);
}

TEST(Store, ContentAddressedAndIdempotent) {
  testutil::TempDir dir;
  ArtifactStore store(dir.path());
  const auto a = store.put_text("hello");
  const auto b = store.put_text("hello");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.sha256, sha256_hex(std::string_view("hello")));
  const auto bytes = store.get(a);
  EXPECT_EQ(std::string(bytes.begin(), bytes.end()), "hello");
}

TEST(Store, DetectsCorruptBlob) {
  testutil::TempDir dir;
  ArtifactStore store(dir.path());
  const auto ref = store.put_text("hello");
  testutil::write_file(dir.path() / ref.path, "tampered");
  EXPECT_EQ(kind_of([&] { store.get(ref); }), ErrorKind::kValidation);
}

TEST(Store, PngRoundTrip) {
  testutil::TempDir dir;
  ArtifactStore store(dir.path());
  const auto img = testutil::synthetic_pano(8, 1);
  const auto ref = store.put_png(img);
  EXPECT_EQ(store.get_png(ref.sha256).pixels, img.pixels);
}

TEST(Manifest, JsonlRoundTrip) {
  testutil::TempDir dir;
  const std::vector<corpus::ManifestEntry> entries{{"bundle", "ab", "objects/ab.json", {{"k", 1}}},
                                                   {"panorama", "cd", "objects/cd.png", {}}};
  write_manifest(dir / "m.jsonl", entries);
  EXPECT_EQ(read_manifest(dir / "m.jsonl"), entries);
}

RewriteBundle sample_bundle() {
  RewriteBundle b;
  b.pair_id = "p1#aug0";
  b.source_path_id = "p1";
  b.scan_id = "s";
  b.seed = 99;
  b.viewpoints = {"a", "b"};
  b.original_instruction = "walk past the sofa";
  b.gt_view_indices = {12, 13};
  b.scene_descriptions = {"a hallway", "a kitchen"};
  b.rewritten_descriptions = {"a hallway with a lamp", "a kitchen with a vase"};
  b.added_objects = {{"lamp"}, {"vase"}};
  b.panorama_refs = {"00", "11"};
  b.new_view_refs = {"22", "33"};
  b.landmarks = {"sofa"};
  b.grounded_landmarks = {"sofa", "sofa"};
  b.grounding_scores = {0.25, 1.0 / 3.0};
  b.new_descriptions = {"x", "y"};
  b.rewritten_instruction = "proceed past the lamp";
  CallRecord call;
  call.role = "chat";
  call.provider_id = "mock-chat/v1";
  call.params = {{"seed", 3}};
  b.provenance = {call};
  return b;
}

TEST(Bundle, StoreThenLoadIsEqual) {
  testutil::TempDir dir;
  ArtifactStore store(dir.path());
  const auto b = sample_bundle();
  const auto entry = store_bundle(b, store);
  EXPECT_EQ(load_bundle(store, entry), b);
}

TEST(Bundle, StoringTwiceGivesSameEntry) {
  testutil::TempDir dir;
  ArtifactStore store(dir.path());
  EXPECT_EQ(store_bundle(sample_bundle(), store), store_bundle(sample_bundle(), store));
}

TEST(Bundle, MismatchedListsRejectedBeforeWrite) {
  testutil::TempDir dir;
  ArtifactStore store(dir.path() / "store");
  auto b = sample_bundle();
  b.new_descriptions.pop_back();
  EXPECT_EQ(kind_of([&] { store_bundle(b, store); }), ErrorKind::kValidation);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir.path()))
    files += e.is_regular_file();
  EXPECT_EQ(files, 0u);
}

}  // namespace
