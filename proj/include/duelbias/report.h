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


// JSON and CSV renderings of analysis results. JSON objects keep their keys
// sorted, so identical results serialize to identical bytes.

#ifndef DUELBIAS_REPORT_H_
#define DUELBIAS_REPORT_H_

#include <ostream>
#include <vector>

#include <nlohmann/json.hpp>

#include "duelbias/bias.h"
#include "duelbias/choice_model.h"
#include "duelbias/stats.h"
#include "duelbias/tags.h"
#include "duelbias/tournament.h"

namespace duelbias {

// {"value": p, "log10": log10(p)}; value is 0 when p underflows.
nlohmann::json ToJson(const PValue& p);
nlohmann::json ToJson(const Interval& interval);
nlohmann::json ToJson(const ScoreTable& table);
nlohmann::json ToJson(const WinFraction& win);
nlohmann::json ToJson(const RaterMacroAverage& raters);
nlohmann::json ToJson(const TriangleBound& bound);
nlohmann::json ToJson(const TournamentBias& bias);
nlohmann::json ToJson(const PooledBias& pooled);
nlohmann::json ToJson(const CorrelationMatrix& matrix);
nlohmann::json ToJson(const FrequencyComparison& freq);
nlohmann::json ToJson(const DistinctiveTags& tags);
nlohmann::json ToJson(const RecoveryCurve& curve);

// Pretty-printed JSON followed by a newline.
void WriteJson(std::ostream& out, const nlohmann::json& doc);

void WriteRecoveryCurveCsv(std::ostream& out, const RecoveryCurve& curve);
void WriteScheduleCsv(std::ostream& out, const std::string& category,
                      const SchedulePlan& plan, bool header = true);
// category,dimension,item_id,group,score,log_score,rank
void WriteScoresCsv(std::ostream& out, const std::string& category,
                    const std::string& dimension, const ScoreTable& table,
                    const ItemCatalog& catalog, bool header = true);
void WriteRankCurveCsv(std::ostream& out, const TournamentBias& bias,
                       bool header = true);
void WriteTagRankingsCsv(std::ostream& out, const std::string& scope,
                         const DistinctiveTags& tags, bool header = true);
void WriteFrequencyCsv(std::ostream& out, const FrequencyComparison& freq);
void WriteRaterHistogramCsv(std::ostream& out, const std::string& dimension,
                            const RaterMacroAverage& raters, bool header = true);

}  // namespace duelbias

#endif  // DUELBIAS_REPORT_H_
