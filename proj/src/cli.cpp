#include "pvabm/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>
#include <string>

#include "pvabm/adoption.hpp"
#include "pvabm/calibration.hpp"
#include "pvabm/csv.hpp"
#include "pvabm/report.hpp"
#include "pvabm/scenario_config.hpp"

namespace pvabm::cli {

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string format = "csv";
    // run
    std::string mode;
    std::string semantics;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    double beta = 0.0;
    // calibrate
    std::string target;
    int budget = calibration::kDefaultBudget;
    // monte-carlo
    int replications = 0;
    unsigned threads = 0;
};

class Failure {
public:
    Failure(int code, std::string message) : code_(code), message_(std::move(message)) {}
    int code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }

private:
    int code_;
    std::string message_;
};

io::ScenarioBundle load(const Options& o, std::ostream& err) {
    try {
        io::ScenarioBundle bundle = io::load_scenario(o.config);
        for (const auto& w : bundle.warnings) err << "warning: " << w << '\n';
        return bundle;
    } catch (const Error& e) {
        throw Failure(kExitInvalid, e.what());
    }
}

void emit(const std::string& content, const Options& o, std::ostream& out) {
    if (o.out.empty()) {
        out << content;
    } else {
        io::write_file_atomic(o.out, content);
    }
}

void report_final(const SimulationResult& result, const ScenarioParams& p, std::ostream& err) {
    if (result.records.empty()) return;
    const YearRecord& last = result.records.back();
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d: cumulative adopters %.2f (rounded %.0f, %.2f%% of %lld farmers)\n",
                  last.year, last.cumulative_adopters, round_half_up(last.cumulative_adopters),
                  100.0 * last.cumulative_adopters / static_cast<double>(p.total_farmers),
                  static_cast<long long>(p.total_farmers));
    err << buf;
}

void do_run(const Options& o, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
    io::ScenarioBundle b = load(o, err);
    const io::Format format = io::parse_format(o.format);
    ScenarioParams& p = b.params;
    if (cmd.count("--mode")) p.mode = parse_mode(o.mode);
    if (cmd.count("--semantics")) p.adoption_semantics = parse_semantics(o.semantics);
    if (cmd.count("--seed")) p.seed = o.seed;
    if (cmd.count("--alpha")) p.alpha = o.alpha;
    if (cmd.count("--beta")) p.beta = o.beta;
    p.validate();

    const SimulationResult result = adoption::run_simulation(p, b.prices, b.subsidies);
    emit(io::render(result, format), o, out);
    report_final(result, p, err);
}

void do_calibrate(const Options& o, std::ostream& out, std::ostream& err) {
    io::ScenarioBundle b = load(o, err);
    const io::Format format = io::parse_format(o.format);
    calibration::CalibrationTarget target;
    try {
        target = io::read_target(o.target);
    } catch (const Error& e) {
        throw Failure(kExitInvalid, e.what());
    }
    target.loss = b.target_loss;

    const auto fit = calibration::calibrate(b.params, b.prices, b.subsidies, target, o.budget);
    emit(io::render(fit, format), o, out);

    char buf[160];
    std::snprintf(buf, sizeof buf, "fitted alpha=%.9g beta=%.9g loss=%.6g evaluations=%d%s\n",
                  fit.alpha, fit.beta, fit.achieved_loss, fit.evaluations,
                  fit.converged ? "" : " (budget exhausted before tolerance)");
    err << buf;
    ScenarioParams fitted = b.params;
    fitted.alpha = fit.alpha;
    fitted.beta = fit.beta;
    fitted.mode = Mode::deterministic;
    fitted.adoption_semantics = AdoptionSemantics::hazard;
    report_final(adoption::run_simulation(fitted, b.prices, b.subsidies), fitted, err);
}

void do_monte_carlo(const Options& o, std::ostream& out, std::ostream& err) {
    io::ScenarioBundle b = load(o, err);
    const io::Format format = io::parse_format(o.format);
    b.params.mode = Mode::stochastic;
    const auto summary = adoption::run_monte_carlo(b.params, b.prices, b.subsidies,
                                                   o.replications, o.seed, o.threads);
    emit(io::render(summary, format), o, out);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Agent-based simulation of PV adoption among dairy farmers", "pvabm"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", o.config, "Scenario file")->required();
        cmd->add_option("--out", o.out, "Output file (default: standard output)");
        cmd->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* run = app.add_subcommand("run", "Simulate adoption over the scenario years");
    add_common(run);
    run->add_option("--mode", o.mode, "deterministic or stochastic")
        ->check(CLI::IsMember({"deterministic", "stochastic"}));
    run->add_option("--seed", o.seed, "Seed for stochastic mode");
    run->add_option("--semantics", o.semantics, "hazard or literal")
        ->check(CLI::IsMember({"hazard", "literal"}));
    run->add_option("--alpha", o.alpha, "Override the logistic slope");
    run->add_option("--beta", o.beta, "Override the logistic ceiling");

    CLI::App* cal = app.add_subcommand("calibrate", "Fit alpha and beta to observed adopters");
    add_common(cal);
    cal->add_option("--target", o.target, "CSV with year,cumulative_adopters")->required();
    cal->add_option("--budget", o.budget, "Maximum loss evaluations");

    CLI::App* mc = app.add_subcommand("monte-carlo", "Replicate stochastic runs");
    add_common(mc);
    mc->add_option("--replications", o.replications, "Number of runs")->required();
    mc->add_option("--seed", o.seed, "Seed of the first replication")->required();
    mc->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitInvalid;
    }

    try {
        if (*run) do_run(o, *run, out, err);
        if (*cal) do_calibrate(o, out, err);
        if (*mc) do_monte_carlo(o, out, err);
        return kExitOk;
    } catch (const Failure& f) {
        err << "error: " << f.message() << '\n';
        return f.code();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}

}  // namespace pvabm::cli
