#include "strategizer/io/cli.hpp"

#include "strategizer/errors.hpp"
#include "strategizer/io/analysis.hpp"
#include "strategizer/io/api.hpp"
#include "strategizer/io/csv.hpp"
#include "strategizer/io/json_codec.hpp"
#include "strategizer/io/plan_spec.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace strategizer::io {

namespace {

struct Options {
    std::string data;
    std::string plans;
    std::string config;
    std::string out;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> draws;
    std::optional<double> increment;
    std::optional<double> wc;
    std::optional<std::string> plan;
    std::optional<std::string> plan_b;
    unsigned workers = 1;
    std::optional<double> stdev;
    std::optional<double> width;
    std::optional<double> confidence;
    std::optional<int> pilot_n;
    std::string bind = "127.0.0.1";
    int port = 8080;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Defaults, then the config file (--config, else STRATEGIZER_CONFIG).
AnalysisConfig base_config(const Options& o) {
    AnalysisConfig config;
    std::string path = o.config;
    if (path.empty())
        if (const char* env = std::getenv("STRATEGIZER_CONFIG"); env && *env)
            path = env;
    if (!path.empty()) {
        json doc;
        try {
            doc = json::parse(read_file(path));
        } catch (const json::parse_error& e) {
            throw SchemaError(path + ": invalid JSON: " + e.what());
        }
        apply_config_overrides(config, doc, "config");
    }
    return config;
}

void apply_flags(AnalysisConfig& config, const Options& o) {
    json flags = json::object();
    if (o.seed)
        flags["seed"] = *o.seed;
    if (o.increment)
        flags["sweep_increment"] = *o.increment;
    if (o.wc)
        flags["w_c"] = *o.wc;
    if (o.confidence)
        flags["confidence"] = *o.confidence;
    if (o.pilot_n)
        flags["pilot_n"] = *o.pilot_n;
    apply_config_overrides(config, flags, "flags");
}

void emit(const DecisionReport& report, const Options& o, std::ostream& out) {
    const std::string text = o.format == "text" ? report.human_log : to_json(report).dump(2) + "\n";
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file)
        throw ValidationError("cannot write '" + o.out + "'");
    file << text;
}

int run_analysis_command(ReportKind kind, const Options& o, std::ostream& out) {
    AnalysisRequest request;
    request.kind = kind;
    request.config = base_config(o);

    std::optional<Dataset> dataset;
    if (!o.data.empty())
        dataset = make_dataset(read_file(o.data));
    else if (kind != ReportKind::SampleSize)
        throw ValidationError("--data is required");
    request.dataset = dataset ? &*dataset : nullptr;

    if (!o.plans.empty()) {
        PlanFile file = load_plan_spec(o.plans, request.config);
        request.config = file.config;
        apply_flags(request.config, o);
        for (const auto& plan : file.plans)
            plan.validate(request.config);
        if (file.infra) {
            file.infra->low_option.validate(request.config.lower, request.config.upper);
            file.infra->high_option.validate(request.config.lower, request.config.upper);
        }
        request.plans = std::move(file.plans);
        request.infra = std::move(file.infra);
    } else if (kind != ReportKind::SampleSize) {
        throw ValidationError("--plans is required");
    } else {
        apply_flags(request.config, o);
    }

    request.plan_id = o.plan;
    request.plan_b_id = o.plan_b;
    request.draws = o.draws;
    request.workers = o.workers;
    request.stdev = o.stdev;
    request.width = o.width;
    emit(run_analysis(request), o, out);
    return 0;
}

int serve(const Options& o, std::ostream& out) {
    AnalysisConfig config = base_config(o);
    apply_flags(config, o);
    ApiServer server(config);
    out << "listening on " << o.bind << ":" << o.port << std::endl;
    if (!server.listen(o.bind, o.port))
        throw std::runtime_error("cannot listen on " + o.bind + ":" + std::to_string(o.port));
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Plan ranking, go/no-go and risk analysis from resident survey data", "strategizer"};
    app.require_subcommand(1);
    Options o;

    const auto common = [&o](CLI::App* cmd) {
        cmd->add_option("--data", o.data, "Survey responses CSV");
        cmd->add_option("--plans", o.plans, "Plan spec JSON");
        cmd->add_option("--config", o.config, "Config JSON (default: $STRATEGIZER_CONFIG)");
        cmd->add_option("--out", o.out, "Write the report here instead of standard output");
        cmd->add_option("--seed", o.seed, "Random seed");
        cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--wc", o.wc, "Cost scaling factor W_c");
        cmd->add_option("--increment", o.increment, "Sweep probability increment");
    };

    struct Command {
        const char* name;
        const char* help;
        std::optional<ReportKind> kind;
    };
    const Command commands[] = {
        {"rank", "Rank plans by expected utility", ReportKind::Rank},
        {"gonogo", "Compare a plan against its status quo", ReportKind::GoNoGo},
        {"sweep", "Sweep scenario probabilities and apply every decision criterion", ReportKind::Sweep},
        {"montecarlo", "Monte Carlo spread of the utility difference", ReportKind::MonteCarlo},
        {"infra", "Infrastructure risk-mitigation recommendation", ReportKind::Infra},
        {"samplesize", "Survey sample size planning", ReportKind::SampleSize},
        {"serve", "Serve the HTTP API", std::nullopt},
    };
    std::map<CLI::App*, std::optional<ReportKind>> kinds;
    for (const auto& c : commands) {
        CLI::App* cmd = app.add_subcommand(c.name, c.help);
        common(cmd);
        kinds[cmd] = c.kind;
        const std::string name = c.name;
        if (name == "gonogo" || name == "montecarlo")
            cmd->add_option("--plan", o.plan, "Plan to analyze (default: best-ranked non-status-quo plan)");
        if (name == "montecarlo") {
            cmd->add_option("--plan-b", o.plan_b, "Comparison plan (default: status quo)");
            cmd->add_flag("--gonogo", "Compare against the status quo (default)");
        }
        if (name == "montecarlo" || name == "infra") {
            cmd->add_option("--draws", o.draws, "Monte Carlo draws");
            cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1u, 64u));
        }
        if (name == "samplesize") {
            cmd->add_option("--stdev", o.stdev, "Pilot standard deviation");
            cmd->add_option("--width", o.width, "Confidence interval width");
            cmd->add_option("--confidence", o.confidence, "Confidence level");
            cmd->add_option("--pilot-n", o.pilot_n, "Pilot sample size");
        }
        if (name == "serve") {
            cmd->add_option("--bind", o.bind, "Bind address");
            cmd->add_option("--port", o.port, "Port");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << kErrorPrefix << " UsageError: " << e.what() << "\n";
        return 2;
    }

    try {
        for (const auto& [cmd, kind] : kinds) {
            if (!cmd->parsed())
                continue;
            if (cmd->get_subcommands().empty() && cmd->count("--help"))
                break;
            return kind ? run_analysis_command(*kind, o, out) : serve(o, out);
        }
        return 2;
    } catch (const Error& e) {
        err << kErrorPrefix << " " << e.kind() << ": " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << kErrorPrefix << " SchemaError: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << kErrorPrefix << " InternalError: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("strategizer");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace strategizer::io
