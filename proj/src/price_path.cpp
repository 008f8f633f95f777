#include "gamehedge/price_path.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gamehedge/error.hpp"

namespace gamehedge {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(std::size_t line, const std::string& msg) {
    std::ostringstream os;
    os << "line " << line << ": " << msg;
    throw Error(ErrorCode::Parse, os.str());
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view what) {
    text = trim(text);
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        parse_error(line, "invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

std::string shortest(double x) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

void parse_metadata(std::string_view body, std::size_t line, PricePathFile& out) {
    std::istringstream tokens{std::string(body)};
    std::string token;
    while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;  // free-form comment text
        const std::string_view key = std::string_view(token).substr(0, eq);
        const std::string_view value = std::string_view(token).substr(eq + 1);
        if (key == "strike") {
            out.strike = parse_number<double>(value, line, "strike");
        } else if (key == "sigma") {
            out.sigma = parse_number<double>(value, line, "sigma");
        } else if (key == "rate") {
            out.rate = parse_number<double>(value, line, "rate");
        } else if (key == "shares") {
            out.shares = parse_number<std::int64_t>(value, line, "shares");
        } else if (key == "method") {
            try {
                out.method = parse_method(value);
            } catch (const Error& err) {
                parse_error(line, err.what());
            }
        } else {
            parse_error(line, "unknown metadata key '" + std::string(key) + "'");
        }
    }
}

}  // namespace

PricePathFile parse_price_path(std::istream& in) {
    PricePathFile out;
    bool seen_header = false;
    std::string raw;
    std::size_t line = 0;

    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (text.empty()) continue;
        if (text.front() == '#') {
            parse_metadata(text.substr(1), line, out);
            continue;
        }
        if (!seen_header) {
            if (text != "week,price") parse_error(line, "expected header 'week,price'");
            seen_header = true;
            continue;
        }
        const auto comma = text.find(',');
        if (comma == std::string_view::npos) parse_error(line, "expected 'week,price'");
        const auto week = parse_number<long>(text.substr(0, comma), line, "week");
        const auto price = parse_number<double>(text.substr(comma + 1), line, "price");
        if (week != static_cast<long>(out.prices.size())) {
            std::ostringstream os;
            os << "weeks must be contiguous from 0; expected " << out.prices.size() << ", got " << week;
            parse_error(line, os.str());
        }
        if (!(price > 0.0)) parse_error(line, "price must be positive");
        out.prices.push_back(price);
    }
    if (!seen_header) parse_error(line + 1, "missing header 'week,price'");
    if (out.prices.empty()) parse_error(line + 1, "no price rows");
    return out;
}

PricePathFile load_price_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
    try {
        return parse_price_path(in);
    } catch (const Error& err) {
        throw Error(err.code(), path + ": " + err.what());
    }
}

void write_price_path(std::ostream& out, const HedgeScenario& scenario) {
    out << "# strike=" << shortest(scenario.strike) << " sigma=" << shortest(scenario.sigma)
        << " rate=" << shortest(scenario.rate) << " shares=" << scenario.shares
        << " method=" << to_string(scenario.method) << '\n';
    out << "week,price\n";
    for (std::size_t i = 0; i < scenario.prices.size(); ++i) {
        out << i << ',' << shortest(scenario.prices[i]) << '\n';
    }
}

HedgeScenario to_scenario(const PricePathFile& file, const ScenarioOverrides& overrides) {
    auto pick = [](const auto& flag, const auto& meta, const char* name) {
        if (flag) return *flag;
        if (meta) return *meta;
        throw Error(ErrorCode::InvalidArgument, std::string("missing ") + name + " (no flag and no metadata)");
    };
    HedgeScenario s;
    s.prices = file.prices;
    s.weeks = static_cast<int>(file.prices.size()) - 1;
    s.strike = pick(overrides.strike, file.strike, "strike");
    s.sigma = pick(overrides.sigma, file.sigma, "sigma");
    s.rate = pick(overrides.rate, file.rate, "rate");
    s.shares = overrides.shares.value_or(file.shares.value_or(100000));
    s.method = overrides.method.value_or(file.method.value_or(Method::GamePricing));
    s.validate();
    return s;
}

PricePathFile fixture(std::string_view name) {
    PricePathFile f;
    f.shares = 100000;
    if (name == "S1") {
        f.prices = {49.00, 48.12, 47.37, 50.25, 51.75, 53.12, 53.00, 51.87, 51.38, 53.00, 49.88,
                    48.50, 49.88, 50.37, 52.13, 51.88, 52.87, 54.87, 54.62, 55.87, 57.25};
        f.strike = 50.0;
        f.sigma = 0.2;
        f.rate = 0.05;
    } else if (name == "S2") {
        f.prices = {49.00, 49.75, 52.00, 50.00, 48.38, 48.25, 48.75, 49.63, 48.25, 48.25, 51.12,
                    51.50, 49.88, 49.88, 48.75, 47.50, 48.00, 46.25, 48.13, 46.63, 48.12};
        f.strike = 50.0;
        f.sigma = 0.2;
        f.rate = 0.05;
    } else if (name == "S3") {
        f.prices = {35.50, 34.63, 33.75, 34.75, 33.75, 33.00, 33.88, 34.50, 33.75, 34.75, 34.38,
                    35.13, 36.00, 37.00, 36.88, 38.75, 37.88, 38.00, 38.63, 38.50, 37.50};
        f.strike = 35.0;
        f.sigma = 0.18;
        f.rate = 0.1;
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown fixture '" + std::string(name) + "' (S1, S2, S3)");
    }
    return f;
}

std::vector<std::string> fixture_names() { return {"S1", "S2", "S3"}; }

}  // namespace gamehedge
