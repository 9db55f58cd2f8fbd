// Copyright 2026 The Duelbias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "duelbias/pipeline.h"

#include <sstream>

#include <gtest/gtest.h>

#include "duelbias/error.h"
#include "duelbias/report.h"
#include "test_util.h"

namespace duelbias {
namespace {

const std::vector<std::string> kDimensions = {"caloric", "healthy", "home", "tasty"};

AnalysisConfig SmallConfig() {
  AnalysisConfig config;
  config.bootstrap_replicates = 100;
  config.seed = 2024;
  return config;
}

std::vector<TagRecord> SomeTags(const ItemCatalog& catalog) {
  std::vector<TagRecord> tags;
  int i = 0;
  for (const ItemRecord& item : catalog.items()) {
    const bool b = item.group == Group::kB;
    tags.push_back({"d" + std::to_string(++i), item.item_id, "r1",
                    b ? "Looks fancy, fresh" : "plain, very bland"});
    tags.push_back({"d" + std::to_string(++i), item.item_id, "r2", "tasty"});
  }
  return tags;
}

std::string Render(const ReportBundle& bundle, const AnalysisConfig& config) {
  std::ostringstream out;
  WriteJson(out, BundleToJson(bundle, config, {{"items", "abc"}}));
  return out.str();
}

TEST(PipelineTest, TwoCategoryFixtureGivesEightTournaments) {
  const auto study = testing::MakeStudy({"cake", "soup"}, kDimensions, 12, 4, 0.5, 9);
  const AnalysisConfig config = SmallConfig();
  const ReportBundle bundle =
      RunPipeline(config, study.catalog, study.duels, SomeTags(study.catalog));
  EXPECT_EQ(bundle.tournaments.size(), 8u);
  for (const std::string category : {"cake", "soup"}) {
    for (const std::string& dimension : kDimensions) {
      const auto it = bundle.tournaments.find({category, dimension});
      ASSERT_NE(it, bundle.tournaments.end());
      EXPECT_EQ(it->second.scores.item_ids.size(), 24u);
      ASSERT_TRUE(it->second.bias.has_value());
    }
  }
  EXPECT_EQ(bundle.pooled.size(), 4u);
  ASSERT_TRUE(bundle.correlations.has_value());
  EXPECT_EQ(bundle.correlations->dimensions.size(), 4u);
  EXPECT_TRUE(bundle.frequency.has_value());
  EXPECT_EQ(bundle.tags.size(), 3u);
  const DistinctiveTags& overall = bundle.tags.at("overall");
  ASSERT_FALSE(overall.typical_b.empty());
  EXPECT_TRUE(overall.typical_b.front().tag == "fancy" ||
              overall.typical_b.front().tag == "fresh");
}

TEST(PipelineTest, RerunIsByteIdentical) {
  const auto study = testing::MakeStudy({"cake", "soup"}, kDimensions, 8, 3, 0.2, 4);
  const AnalysisConfig config = SmallConfig();
  const auto tags = SomeTags(study.catalog);
  const std::string first = Render(RunPipeline(config, study.catalog, study.duels, tags), config);
  const std::string second = Render(RunPipeline(config, study.catalog, study.duels, tags), config);
  EXPECT_EQ(first, second);
  AnalysisConfig other = config;
  other.seed = 2025;
  EXPECT_NE(first, Render(RunPipeline(other, study.catalog, study.duels, tags), other));
}

TEST(PipelineTest, FiltersAndFitOnlyMode) {
  const auto study = testing::MakeStudy({"cake", "soup"}, kDimensions, 6, 3, 0.0, 4);
  AnalysisConfig config;
  config.bootstrap_replicates = 0;
  config.categories = {"soup"};
  config.dimensions = {"tasty"};
  const ReportBundle bundle = RunPipeline(config, study.catalog, study.duels);
  ASSERT_EQ(bundle.tournaments.size(), 1u);
  EXPECT_FALSE(bundle.tournaments.begin()->second.bias.has_value());
  EXPECT_TRUE(bundle.pooled.empty());
  EXPECT_FALSE(bundle.correlations.has_value());
  EXPECT_FALSE(bundle.correlations_note.empty());
}

TEST(PipelineTest, ReferentialErrorBeforeFitting) {
  auto study = testing::MakeStudy({"cake"}, {"tasty"}, 4, 2, 0.0, 4);
  DuelRecord stray = study.duels.front();
  stray.category = "pie";
  study.duels.push_back(stray);
  EXPECT_THROW(RunPipeline(SmallConfig(), study.catalog, study.duels), ReferentialError);
}

TEST(PipelineTest, ErrorsCarryTournamentContext) {
  auto study = testing::MakeStudy({"cake"}, {"tasty"}, 4, 2, 0.0, 4);
  std::swap(study.duels[0].item_a, study.duels[0].item_b);
  try {
    RunPipeline(SmallConfig(), study.catalog, study.duels);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("cake/tasty: ", 0), 0u) << e.what();
  }
}

TEST(PipelineTest, SeedRequiredForBootstrap) {
  const auto study = testing::MakeStudy({"cake"}, {"tasty"}, 4, 2, 0.0, 4);
  AnalysisConfig config;
  EXPECT_THROW(RunPipeline(config, study.catalog, study.duels), ValidationError);
}

TEST(PipelineTest, TournamentSeedsDiffer) {
  EXPECT_NE(TournamentSeed(1, "cake", "tasty"), TournamentSeed(1, "cake", "home"));
  EXPECT_NE(TournamentSeed(1, "ab", "c"), TournamentSeed(1, "a", "bc"));
  EXPECT_EQ(TournamentSeed(7, "x", "y"), TournamentSeed(7, "x", "y"));
}

}  // namespace
}  // namespace duelbias
