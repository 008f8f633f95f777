#include "gamehedge/report.hpp"

namespace gamehedge {

using nlohmann::json;

bool ReportDocument::operator==(const ReportDocument& other) const {
    const auto& a = scenario;
    const auto& b = other.scenario;
    return a.prices == b.prices && a.strike == b.strike && a.sigma == b.sigma && a.rate == b.rate &&
           a.weeks == b.weeks && a.shares == b.shares && a.method == b.method && report == other.report;
}

void to_json(json& j, const HedgeScenario& s) {
    j = json{{"prices", s.prices},   {"strike", s.strike}, {"sigma", s.sigma},
             {"rate", s.rate},       {"weeks", s.weeks},   {"shares", s.shares},
             {"method", to_string(s.method)}};
}

void from_json(const json& j, HedgeScenario& s) {
    j.at("prices").get_to(s.prices);
    j.at("strike").get_to(s.strike);
    j.at("sigma").get_to(s.sigma);
    j.at("rate").get_to(s.rate);
    j.at("weeks").get_to(s.weeks);
    j.at("shares").get_to(s.shares);
    s.method = parse_method(j.at("method").get<std::string>());
}

void to_json(json& j, const LedgerRow& row) {
    j = json{{"week", row.week},
             {"price", row.price},
             {"option_value", row.option_value},
             {"delta_rounded", row.delta_rounded},
             {"shares_held", row.shares_held},
             {"shares_traded", row.shares_traded},
             {"trade_cost", row.trade_cost},
             {"cumulative_cost", row.cumulative_cost},
             {"interest_accrued", row.interest_accrued}};
}

void from_json(const json& j, LedgerRow& row) {
    j.at("week").get_to(row.week);
    j.at("price").get_to(row.price);
    j.at("option_value").get_to(row.option_value);
    j.at("delta_rounded").get_to(row.delta_rounded);
    j.at("shares_held").get_to(row.shares_held);
    j.at("shares_traded").get_to(row.shares_traded);
    j.at("trade_cost").get_to(row.trade_cost);
    j.at("cumulative_cost").get_to(row.cumulative_cost);
    j.at("interest_accrued").get_to(row.interest_accrued);
}

void to_json(json& j, const ReportDocument& doc) {
    j = json{{"inputs", doc.scenario},
             {"method", to_string(doc.report.method)},
             {"rows", doc.report.rows},
             {"final_cost", doc.report.final_cost}};
}

void from_json(const json& j, ReportDocument& doc) {
    j.at("inputs").get_to(doc.scenario);
    doc.report.method = parse_method(j.at("method").get<std::string>());
    j.at("rows").get_to(doc.report.rows);
    j.at("final_cost").get_to(doc.report.final_cost);
}

json comparison_json(const HedgeScenario& base, const std::vector<StrikeComparison>& rows) {
    json strikes = json::array();
    for (const auto& row : rows) {
        strikes.push_back({{"strike", row.strike},
                           {"game_cost", row.costs.game_cost},
                           {"bs_cost", row.costs.bs_cost},
                           {"relative_difference", row.costs.relative_difference}});
    }
    return json{{"inputs", base}, {"strikes", strikes}};
}

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::Parse:
        case ErrorCode::DegenerateMaturity:
            return 2;
        case ErrorCode::TrivialOption:
            return 4;
        default:
            return 3;
    }
}

}  // namespace gamehedge
