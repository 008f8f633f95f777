#pragma once

#include <json.hpp>
#include <vector>

#include "gamehedge/error.hpp"
#include "gamehedge/hedge_sim.hpp"

namespace gamehedge {

/// One hedge run: echo of the scenario, ledger rows and final cost.
struct ReportDocument {
    HedgeScenario scenario;
    HedgeReport report;

    bool operator==(const ReportDocument& other) const;
};

struct StrikeComparison {
    double strike = 0.0;
    MethodComparison costs;
};

void to_json(nlohmann::json& j, const HedgeScenario& s);
void from_json(const nlohmann::json& j, HedgeScenario& s);
void to_json(nlohmann::json& j, const LedgerRow& row);
void from_json(const nlohmann::json& j, LedgerRow& row);
void to_json(nlohmann::json& j, const ReportDocument& doc);
void from_json(const nlohmann::json& j, ReportDocument& doc);

nlohmann::json comparison_json(const HedgeScenario& base, const std::vector<StrikeComparison>& rows);

/// CLI exit status: 2 for bad input, 3 for solver failures, 4 for a
/// worthless option.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace gamehedge
