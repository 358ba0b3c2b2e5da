#include "strategizer/io/api.hpp"

#include "strategizer/errors.hpp"
#include "strategizer/io/json_codec.hpp"
#include "strategizer/io/plan_spec.hpp"

#include <httplib.h>

#include <algorithm>
#include <mutex>
#include <set>

namespace strategizer::io {

namespace {

constexpr std::string_view kAnalysesPrefix = "/api/analyses/";

ApiResponse error(int status, std::string kind, std::string message) {
    return {status, {{"error", {{"kind", std::move(kind)}, {"message", std::move(message)}}}}};
}

const json& optional_field(const json& body, const char* key) {
    static const json null;
    const auto it = body.find(key);
    return it == body.end() ? null : *it;
}

std::optional<std::string> optional_string(const json& body, const char* key) {
    const json& v = optional_field(body, key);
    if (v.is_null())
        return std::nullopt;
    if (!v.is_string())
        throw SchemaError(std::string(key) + ": expected a string");
    return v.get<std::string>();
}

std::optional<double> optional_number(const json& body, const char* key) {
    const json& v = optional_field(body, key);
    if (v.is_null())
        return std::nullopt;
    if (!v.is_number())
        throw SchemaError(std::string(key) + ": expected a number");
    return v.get<double>();
}

std::optional<std::uint64_t> optional_count(const json& body, const char* key) {
    const json& v = optional_field(body, key);
    if (v.is_null())
        return std::nullopt;
    if (!v.is_number_unsigned())
        throw SchemaError(std::string(key) + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
}

std::optional<ReportKind> route_kind(std::string_view name) {
    if (name == "rank") return ReportKind::Rank;
    if (name == "gonogo") return ReportKind::GoNoGo;
    if (name == "sweep") return ReportKind::Sweep;
    if (name == "montecarlo") return ReportKind::MonteCarlo;
    if (name == "infra") return ReportKind::Infra;
    if (name == "samplesize") return ReportKind::SampleSize;
    return std::nullopt;
}

} // namespace

ApiResponse error_response(const std::exception& e) {
    const auto* err = dynamic_cast<const Error*>(&e);
    if (!err)
        return error(500, "InternalError", e.what());
    ApiResponse r = error(400, err->kind(), err->what());
    if (const auto* a = dynamic_cast<const AttributeError*>(&e)) {
        r.status = 422;
        r.body["error"]["attribute"] = a->attribute();
    } else if (err->kind() == "ConvergenceFailure" || err->kind() == "SamplingExhausted") {
        r.status = 422;
    }
    if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
        r.body["error"]["row"] = p->row();
        r.body["error"]["column"] = p->column();
    }
    return r;
}

ApiService::ApiService(AnalysisConfig base) : base_(std::move(base)) {
    base_.validate();
}

ApiResponse ApiService::handle(std::string_view method, std::string_view path, std::string_view body) {
    try {
        if (path == "/api/defaults") {
            if (method != "GET")
                return error(405, "MethodNotAllowed", "use GET");
            return {200, config_to_json(base_)};
        }
        if (path == "/api/datasets") {
            if (method != "POST")
                return error(405, "MethodNotAllowed", "use POST");
            return post_dataset(body);
        }
        if (path.starts_with(kAnalysesPrefix)) {
            const std::string_view rest = path.substr(kAnalysesPrefix.size());
            if (const auto kind = route_kind(rest)) {
                if (method != "POST")
                    return error(405, "MethodNotAllowed", "use POST");
                return post_analysis(*kind, body);
            }
            if (method != "GET")
                return error(405, "MethodNotAllowed", "use GET");
            return get_analysis(std::string(rest));
        }
        return error(404, "NotFound", "no route for " + std::string(path));
    } catch (const std::exception& e) {
        return error_response(e);
    }
}

ApiResponse ApiService::post_dataset(std::string_view body) {
    auto dataset = std::make_shared<Dataset>(make_dataset(body));
    const ValidationReport v = validate_responses(dataset->records, base_);
    if (!v.ok()) {
        ApiResponse r = error(400, "ValidationError", v.issues.front().message);
        r.body["error"]["row"] = v.issues.front().row;
        r.body["error"]["validation"] = to_json(v);
        return r;
    }
    json summary = dataset_summary(*dataset, base_);
    {
        std::unique_lock lock(datasets_mutex_);
        datasets_.try_emplace(dataset->id, std::move(dataset));
    }
    return {200, summary};
}

ApiResponse ApiService::post_analysis(ReportKind kind, std::string_view body_text) {
    json body;
    try {
        body = body_text.empty() ? json::object() : json::parse(body_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("$: invalid JSON: ") + e.what());
    }
    if (!body.is_object())
        throw SchemaError("$: expected an object");
    static const std::set<std::string> allowed{"dataset_id", "plans",     "infra", "config", "seed", "plan_id",
                                               "plan_b_id",  "draws",     "workers", "stdev", "width"};
    for (const auto& [key, _] : body.items())
        if (!allowed.count(key))
            throw SchemaError(key + ": unknown field");

    AnalysisRequest request;
    request.kind = kind;
    request.config = base_;
    apply_config_overrides(request.config, optional_field(body, "config"), "config");
    if (const auto seed = optional_count(body, "seed"))
        request.config.seed = *seed;

    std::shared_ptr<const Dataset> dataset;
    if (const auto id = optional_string(body, "dataset_id")) {
        std::shared_lock lock(datasets_mutex_);
        const auto it = datasets_.find(*id);
        if (it == datasets_.end())
            return error(404, "NotFound", "unknown dataset '" + *id + "'");
        dataset = it->second;
    } else if (kind != ReportKind::SampleSize) {
        throw SchemaError("dataset_id: missing required field");
    }
    request.dataset = dataset.get();

    if (const json& plans = optional_field(body, "plans"); !plans.is_null())
        request.plans = parse_plans(plans, request.config, "plans");
    if (const json& infra = optional_field(body, "infra"); !infra.is_null())
        request.infra = parse_infra_plan(infra, request.config, "infra");
    request.plan_id = optional_string(body, "plan_id");
    request.plan_b_id = optional_string(body, "plan_b_id");
    if (const auto draws = optional_count(body, "draws"))
        request.draws = static_cast<std::size_t>(*draws);
    if (const auto workers = optional_count(body, "workers"))
        request.workers = static_cast<unsigned>(std::clamp<std::uint64_t>(*workers, 1, 64));
    request.stdev = optional_number(body, "stdev");
    request.width = optional_number(body, "width");

    DecisionReport report = run_analysis(request);
    json out = to_json(report);
    {
        std::unique_lock lock(analyses_mutex_);
        analyses_.try_emplace(report.digest, std::move(report));
    }
    return {200, out};
}

ApiResponse ApiService::get_analysis(const std::string& id) const {
    std::shared_lock lock(analyses_mutex_);
    const auto it = analyses_.find(id);
    if (it == analyses_.end())
        return error(404, "NotFound", "unknown analysis '" + id + "'");
    return {200, to_json(it->second)};
}

ApiServer::ApiServer(AnalysisConfig base) : service_(std::move(base)), server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

ApiServer::~ApiServer() {
    stop();
}

void ApiServer::install_routes() {
    const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
        const ApiResponse r = service_.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    server_->Get(R"(/api/.*)", dispatch);
    server_->Post(R"(/api/.*)", dispatch);
}

int ApiServer::start(const std::string& host, int port) {
    const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound < 0)
        throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return bound;
}

void ApiServer::stop() {
    if (server_)
        server_->stop();
    if (thread_.joinable())
        thread_.join();
}

bool ApiServer::listen(const std::string& host, int port) {
    return server_->listen(host, port);
}

} // namespace strategizer::io
