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

#include "vlnaug/hash.hpp"
#include "vlnaug/text.hpp"

namespace {

using namespace vlnaug;

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(std::string_view("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex(std::string_view("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Sha256, FieldsAreLengthPrefixed) {
  EXPECT_NE(Sha256().field("ab").field("c").hex(), Sha256().field("a").field("bc").hex());
}

TEST(Base64, Rfc4648Vectors) {
  const std::pair<const char*, const char*> cases[] = {
      {"", ""}, {"f", "Zg=="}, {"fo", "Zm8="}, {"foo", "Zm9v"}, {"foobar", "Zm9vYmFy"}};
  for (const auto& [plain, enc] : cases) {
    const std::string p(plain);
    const std::vector<std::uint8_t> bytes(p.begin(), p.end());
    EXPECT_EQ(base64_encode(bytes), enc);
    EXPECT_EQ(base64_decode(enc), bytes);
  }
}

TEST(Seeds, DeriveIsStableAndTagSensitive) {
  EXPECT_EQ(derive_seed(42, "pair:x"), derive_seed(42, "pair:x"));
  EXPECT_NE(derive_seed(42, "pair:x"), derive_seed(42, "pair:y"));
  EXPECT_NE(derive_seed(42, "pair:x"), derive_seed(43, "pair:x"));
}

TEST(Rng, BetweenStaysInRange) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const int v = rng.between(2, 4);
    EXPECT_GE(v, 2);
    EXPECT_LE(v, 4);
    const double u = rng.unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Text, TrimAndWords) {
  EXPECT_EQ(text::trim("  a b \n"), "a b");
  EXPECT_EQ(text::word_count("Walk past the sofa."), 4u);
  EXPECT_EQ(text::split_trimmed("armchair, coffee table ,", ','),
            (std::vector<std::string>{"armchair", "coffee table"}));
}

TEST(Text, ReplacePhraseMatchesWholeWordsAndKeepsCase) {
  EXPECT_EQ(text::replace_phrase("Walk past the sofa", "sofa", "piano"), "Walk past the piano");
  EXPECT_EQ(text::replace_phrase("sofas are soft", "sofa", "piano"), "sofas are soft");
  EXPECT_EQ(text::replace_phrase("Walk to the door", "walk", "head"), "Head to the door");
}

}  // namespace
