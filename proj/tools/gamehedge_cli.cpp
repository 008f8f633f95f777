#include <CLI11.hpp>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gamehedge/black_scholes.hpp"
#include "gamehedge/error.hpp"
#include "gamehedge/game_pricing.hpp"
#include "gamehedge/hedge_sim.hpp"
#include "gamehedge/price_path.hpp"
#include "gamehedge/report.hpp"

using namespace gamehedge;
using nlohmann::json;

namespace {

struct PointOptions {
    double stock = 0.0;
    double strike = 0.0;
    double sigma = 0.0;
    double rate = 0.0;
    int weeks = 0;
    std::string method = "game";
};

struct PathOptions {
    std::string fixture;
    std::string file;
    std::vector<double> strikes;
    std::optional<double> sigma;
    std::optional<double> rate;
    std::optional<std::int64_t> shares;
    std::string method;
    std::string export_path;
};

struct Globals {
    bool json = false;
    bool verbose = false;
};

MarketParams to_params(const PointOptions& opt) {
    MarketParams p{opt.stock, opt.strike, opt.sigma, opt.rate, opt.weeks / 52.0};
    p.validate();
    if (auto warning = conditioning_warning(p)) std::cerr << *warning << '\n';
    return p;
}

json inputs_json(const PointOptions& opt) {
    return {{"S", opt.stock}, {"K", opt.strike}, {"sigma", opt.sigma}, {"rate", opt.rate}, {"weeks", opt.weeks}};
}

void add_point_flags(CLI::App& cmd, PointOptions& opt) {
    cmd.add_option("-S,--stock", opt.stock, "Stock price")->required();
    cmd.add_option("-K,--strike", opt.strike, "Exercise price")->required();
    cmd.add_option("--sigma", opt.sigma, "Volatility per sqrt(year)")->required();
    cmd.add_option("-r,--rate", opt.rate, "Continuously compounded rate")->required();
    cmd.add_option("--weeks", opt.weeks, "Exercise period in weeks")->required()->check(CLI::PositiveNumber);
    cmd.add_option("--method", opt.method, "Pricing method")->check(CLI::IsMember({"game", "bs"}));
}

void add_path_flags(CLI::App& cmd, PathOptions& opt) {
    auto* fix = cmd.add_option("--fixture", opt.fixture, "Built-in path")->check(CLI::IsMember({"S1", "S2", "S3"}));
    auto* file = cmd.add_option("--file", opt.file, "Price path file (week,price)")->check(CLI::ExistingFile);
    fix->excludes(file);
    cmd.add_option("--sigma", opt.sigma, "Volatility override");
    cmd.add_option("-r,--rate", opt.rate, "Rate override");
    cmd.add_option("--shares", opt.shares, "Option-covered shares");
}

PricePathFile load_path(const PathOptions& opt) {
    if (!opt.fixture.empty()) return fixture(opt.fixture);
    if (!opt.file.empty()) return load_price_path(opt.file);
    throw Error(ErrorCode::InvalidArgument, "one of --fixture or --file is required");
}

int cmd_price(const PointOptions& opt, const Globals& g) {
    const MarketParams p = to_params(opt);
    json out{{"method", opt.method}, {"inputs", inputs_json(opt)}};
    if (opt.method == "game") {
        const GameSolution sol = solve_price(p);
        out.update({{"u", sol.u},
                    {"t_u", sol.t_u},
                    {"iterations", sol.iterations},
                    {"residual_f", sol.residual_f},
                    {"residual_g", sol.residual_g}});
    } else {
        out["u"] = bs_price(p).price_bar;
    }

    if (g.json) {
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << std::setprecision(6) << "method = " << opt.method << "\nu = " << out["u"].get<double>() << '\n';
    if (opt.method == "game") {
        std::cout << "t_u = " << out["t_u"].get<double>() << "\niterations = " << out["iterations"].get<int>()
                  << '\n';
    }
    return 0;
}

int cmd_greeks(const PointOptions& opt, const Globals& g) {
    const MarketParams p = to_params(opt);
    json out{{"method", opt.method}, {"inputs", inputs_json(opt)}};
    if (opt.method == "game") {
        const GameSolution sol = solve_price(p);
        const GameGreeks gr = game_greeks(p, sol);
        out.update({{"u", sol.u}, {"delta", gr.delta}, {"gamma", gr.gamma}});
        if (g.verbose) out.update({{"w", gr.w}, {"dtu_ds", gr.dtu_ds}, {"dw_ds", gr.dw_ds}, {"t_u", sol.t_u}});
    } else {
        const BsResult bs = bs_price(p);
        out.update({{"u", bs.price_bar}, {"delta", bs.delta_bar}, {"gamma", bs.gamma_bar}});
        if (g.verbose) out.update({{"d1", bs.d1}, {"d2", bs.d2}});
    }

    if (g.json) {
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << std::setprecision(6) << "method = " << opt.method << '\n';
    for (const char* key : {"u", "delta", "gamma", "t_u", "w", "dtu_ds", "dw_ds", "d1", "d2"}) {
        if (out.contains(key)) std::cout << key << " = " << out[key].get<double>() << '\n';
    }
    return 0;
}

void print_ledger(const ReportDocument& doc) {
    const auto& s = doc.scenario;
    std::cout << "method = " << to_string(s.method) << ", K = " << s.strike << ", sigma = " << s.sigma
              << ", r = " << s.rate << ", shares = " << s.shares << '\n';
    std::cout << std::setw(4) << "week" << std::setw(10) << "price" << std::setw(10) << "u" << std::setw(8)
              << "delta" << std::setw(12) << "shares" << std::setw(12) << "cost" << std::setw(12) << "cumulative"
              << std::setw(10) << "interest" << '\n';
    std::cout << std::fixed;
    for (const auto& row : doc.report.rows) {
        std::cout << std::setw(4) << row.week << std::setw(10) << std::setprecision(2) << row.price
                  << std::setw(10) << std::setprecision(3) << row.option_value << std::setw(8)
                  << row.delta_rounded << std::setw(12) << std::setprecision(0) << row.shares_traded
                  << std::setw(12) << std::setprecision(1) << row.trade_cost << std::setw(12)
                  << row.cumulative_cost << std::setw(10) << row.interest_accrued << '\n';
    }
    std::cout << "K = " << std::setprecision(2) << s.strike << ", cost of hedging = " << doc.report.final_cost
              << '\n';
}

int cmd_hedge(const PathOptions& opt, const Globals& g) {
    ScenarioOverrides ov{opt.strikes.empty() ? std::nullopt : std::optional<double>(opt.strikes.front()), opt.sigma,
                         opt.rate, opt.shares,
                         opt.method.empty() ? std::nullopt : std::optional<Method>(parse_method(opt.method))};
    const HedgeScenario scenario = to_scenario(load_path(opt), ov);

    if (!opt.export_path.empty()) {
        std::ofstream out(opt.export_path);
        if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + opt.export_path);
        write_price_path(out, scenario);
    }

    const ReportDocument doc{scenario, run_ledger(scenario)};
    if (g.json) {
        std::cout << json(doc).dump(2) << '\n';
    } else {
        print_ledger(doc);
    }
    return 0;
}

int cmd_compare(const PathOptions& opt, const Globals& g) {
    const PricePathFile path = load_path(opt);
    ScenarioOverrides ov{std::nullopt, opt.sigma, opt.rate, opt.shares, std::nullopt};
    const HedgeScenario base = to_scenario(path, ov);
    std::vector<double> strikes = opt.strikes;
    if (strikes.empty()) strikes.push_back(base.strike);

    std::vector<std::future<MethodComparison>> runs;
    for (double k : strikes) {
        HedgeScenario s = base;
        s.strike = k;
        runs.push_back(std::async(std::launch::async, [s] { return compare_methods(s); }));
    }
    std::vector<StrikeComparison> rows;
    for (std::size_t i = 0; i < strikes.size(); ++i) rows.push_back({strikes[i], runs[i].get()});

    if (g.json) {
        std::cout << comparison_json(base, rows).dump(2) << '\n';
        return 0;
    }
    std::cout << std::setw(8) << "strike" << std::setw(14) << "game" << std::setw(14) << "bs" << std::setw(12)
              << "diff %" << '\n'
              << std::fixed;
    for (const auto& row : rows) {
        std::cout << std::setw(8) << std::setprecision(2) << row.strike << std::setw(14) << row.costs.game_cost
                  << std::setw(14) << row.costs.bs_cost << std::setw(12) << std::setprecision(2)
                  << 100.0 * row.costs.relative_difference << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Game pricing of European calls and weekly delta-hedging cost simulation"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_flag("--verbose", g.verbose, "Show intermediate quantities");

    PointOptions point;
    auto* price = app.add_subcommand("price", "Price one option");
    auto* greeks = app.add_subcommand("greeks", "Delta and gamma for one option");
    for (auto* cmd : {price, greeks}) {
        add_point_flags(*cmd, point);
        cmd->add_flag("--json", g.json, "Machine-readable output");
        cmd->add_flag("--verbose", g.verbose, "Show intermediate quantities");
    }

    PathOptions hedge_opt;
    auto* hedge = app.add_subcommand("hedge", "Run the weekly hedging ledger on a price path");
    add_path_flags(*hedge, hedge_opt);
    hedge->add_option("-K,--strike", hedge_opt.strikes, "Strike override")->expected(1);
    hedge->add_option("--method", hedge_opt.method, "Pricing method")->check(CLI::IsMember({"game", "bs"}));
    hedge->add_option("--export", hedge_opt.export_path, "Write the scenario as a price path file");
    hedge->add_flag("--json", g.json, "Machine-readable output");

    PathOptions compare_opt;
    auto* compare = app.add_subcommand("compare", "Hedging cost of both methods per strike");
    add_path_flags(*compare, compare_opt);
    compare->add_option("-K,--strike,--strikes", compare_opt.strikes, "Strikes to compare")->delimiter(',');
    compare->add_flag("--json", g.json, "Machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*price) return cmd_price(point, g);
        if (*greeks) return cmd_greeks(point, g);
        if (*hedge) return cmd_hedge(hedge_opt, g);
        if (*compare) return cmd_compare(compare_opt, g);
    } catch (const Error& err) {
        std::cerr << "error (" << to_string(err.code()) << "): " << err.what() << '\n';
        return exit_code_for(err.code());
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 2;
}
