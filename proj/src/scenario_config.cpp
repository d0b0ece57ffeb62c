#include "pvabm/scenario_config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pvabm/adoption.hpp"
#include "pvabm/csv.hpp"

namespace pvabm::io {

namespace {

template <typename T>
T scalar_as(const YAML::Node& node, const std::string& key, const char* type_name,
            const std::string& source) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(source + ": key '" + key + "' expects " + type_name + ", got '" +
                          node.Scalar() + "'");
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& text,
                                     const std::filesystem::path& base_dir,
                                     const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(source + ": " + e.what());
    }
    if (!root.IsMap()) throw ConfigError(source + ": expected a mapping of key: value lines");

    ScenarioConfig cfg;
    ScenarioParams& p = cfg.params;
    std::optional<std::filesystem::path> prices, subsidies;

    using Setter = std::function<void(const YAML::Node&, const std::string&)>;
    auto real = [&](double& field) -> Setter {
        return [&](const YAML::Node& n, const std::string& k) {
            field = scalar_as<double>(n, k, "a number", source);
        };
    };
    auto path = [&](std::optional<std::filesystem::path>& field) -> Setter {
        return [&](const YAML::Node& n, const std::string& k) {
            const std::filesystem::path rel = scalar_as<std::string>(n, k, "a path", source);
            field = rel.is_absolute() ? rel : base_dir / rel;
        };
    };
    const std::map<std::string, Setter> setters = {
        {"pv_cost_min", real(p.pv_cost_min)},
        {"pv_cost_max", real(p.pv_cost_max)},
        {"maintenance_rate", real(p.maintenance_rate)},
        {"discount_rate", real(p.discount_rate)},
        {"annual_generation_kwh", real(p.annual_generation_kwh)},
        {"alpha", real(p.alpha)},
        {"beta", real(p.beta)},
        {"total_farmers",
         [&](const YAML::Node& n, const std::string& k) {
             p.total_farmers = scalar_as<std::int64_t>(n, k, "an integer", source);
         }},
        {"start_year",
         [&](const YAML::Node& n, const std::string& k) {
             p.start_year = scalar_as<int>(n, k, "an integer year", source);
         }},
        {"end_year",
         [&](const YAML::Node& n, const std::string& k) {
             p.end_year = scalar_as<int>(n, k, "an integer year", source);
         }},
        {"horizon_years",
         [&](const YAML::Node& n, const std::string& k) {
             p.horizon_years = scalar_as<int>(n, k, "an integer", source);
         }},
        {"seed",
         [&](const YAML::Node& n, const std::string& k) {
             p.seed = scalar_as<std::uint64_t>(n, k, "an unsigned 64-bit integer", source);
         }},
        {"adoption_semantics",
         [&](const YAML::Node& n, const std::string& k) {
             p.adoption_semantics = parse_semantics(scalar_as<std::string>(n, k, "text", source));
         }},
        {"mode",
         [&](const YAML::Node& n, const std::string& k) {
             p.mode = parse_mode(scalar_as<std::string>(n, k, "text", source));
         }},
        {"target_loss",
         [&](const YAML::Node& n, const std::string& k) {
             const auto v = scalar_as<std::string>(n, k, "text", source);
             if (v == "squared_error") {
                 cfg.target_loss = calibration::Loss::squared_error;
             } else if (v == "absolute_error") {
                 cfg.target_loss = calibration::Loss::absolute_error;
             } else {
                 throw ValidationError("target_loss",
                                       "expected 'squared_error' or 'absolute_error'");
             }
         }},
        {"price_series", path(prices)},
        {"subsidy_series", path(subsidies)},
        {"target_series", path(cfg.target_series)},
    };

    for (const auto& entry : root) {
        const std::string key = entry.first.as<std::string>();
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(source + ": unknown key '" + key + "'");
        if (!entry.second.IsScalar()) {
            throw ConfigError(source + ": key '" + key + "' must hold a single value");
        }
        it->second(entry.second, key);
    }
    if (!prices) throw ConfigError(source + ": missing required key 'price_series'");
    if (!subsidies) throw ConfigError(source + ": missing required key 'subsidy_series'");
    cfg.price_series = *prices;
    cfg.subsidy_series = *subsidies;

    try {
        p.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(e.field(), std::string(e.what()).substr(e.field().size() + 2) +
                                             " (in " + source + ")");
    }
    return cfg;
}

ScenarioBundle load_scenario(const std::filesystem::path& config_path) {
    const ScenarioConfig cfg = parse_scenario_config(
        read_file(config_path), config_path.parent_path(), config_path.string());

    ScenarioBundle bundle;
    bundle.params = cfg.params;
    bundle.target_loss = cfg.target_loss;
    bundle.prices = read_year_series(cfg.price_series, kPriceColumn);
    bundle.subsidies = read_year_series(cfg.subsidy_series, kSubsidyColumn);
    const ScenarioParams& p = bundle.params;
    if (auto missing = bundle.prices.missing_in(p.start_year, p.end_year); !missing.empty()) {
        throw SeriesGapError(cfg.price_series.string(), std::move(missing));
    }
    if (auto missing = bundle.subsidies.missing_in(p.start_year, p.end_year); !missing.empty()) {
        throw SeriesGapError(cfg.subsidy_series.string(), std::move(missing));
    }
    if (cfg.target_series) {
        calibration::CalibrationTarget target = read_target(*cfg.target_series);
        target.loss = cfg.target_loss;
        target.validate(p);
        bundle.target = std::move(target);
    }
    for (int y = p.start_year; y <= p.end_year; ++y) {
        const double s = bundle.subsidies.at(y).value();
        if (s < kStudySubsidyMin || s > kStudySubsidyMax) {
            bundle.warnings.push_back("subsidy " + format_sig6(s) + " EUR in " +
                                      std::to_string(y) + " is outside the study range " +
                                      "1000-3500 EUR");
        }
    }
    return bundle;
}

std::string render_scenario_config(const ScenarioConfig& config) {
    const ScenarioParams& p = config.params;
    std::ostringstream os;
    os << "pv_cost_min: " << format_exact(p.pv_cost_min) << '\n'
       << "pv_cost_max: " << format_exact(p.pv_cost_max) << '\n'
       << "maintenance_rate: " << format_exact(p.maintenance_rate) << '\n'
       << "discount_rate: " << format_exact(p.discount_rate) << '\n'
       << "total_farmers: " << p.total_farmers << '\n'
       << "start_year: " << p.start_year << '\n'
       << "end_year: " << p.end_year << '\n'
       << "horizon_years: " << p.horizon_years << '\n'
       << "annual_generation_kwh: " << format_exact(p.annual_generation_kwh) << '\n'
       << "alpha: " << format_exact(p.alpha) << '\n'
       << "beta: " << format_exact(p.beta) << '\n'
       << "adoption_semantics: " << to_string(p.adoption_semantics) << '\n'
       << "mode: " << to_string(p.mode) << '\n'
       << "seed: " << p.seed << '\n'
       << "price_series: " << config.price_series.generic_string() << '\n'
       << "subsidy_series: " << config.subsidy_series.generic_string() << '\n';
    if (config.target_series) {
        os << "target_series: " << config.target_series->generic_string() << '\n'
           << "target_loss: "
           << (config.target_loss == calibration::Loss::squared_error ? "squared_error"
                                                                      : "absolute_error")
           << '\n';
    }
    return os.str();
}

}  // namespace pvabm::io
