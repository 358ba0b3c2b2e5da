#pragma once

#include "strategizer/config.hpp"
#include "strategizer/io/analysis.hpp"
#include "strategizer/io/report.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <thread>

namespace httplib {
class Server;
}

namespace strategizer::io {

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

// Transport-independent request handling; safe to call from many threads.
class ApiService {
public:
    explicit ApiService(AnalysisConfig base);

    ApiResponse handle(std::string_view method, std::string_view path, std::string_view body);

    const AnalysisConfig& base_config() const noexcept { return base_; }

private:
    ApiResponse post_dataset(std::string_view body);
    ApiResponse post_analysis(ReportKind kind, std::string_view body);
    ApiResponse get_analysis(const std::string& id) const;

    AnalysisConfig base_;
    mutable std::shared_mutex datasets_mutex_;
    std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
    mutable std::shared_mutex analyses_mutex_;
    std::map<std::string, DecisionReport> analyses_;
};

// Structured error body for a library exception: {"error": {"kind", "message", ...}}.
ApiResponse error_response(const std::exception& e);

// HTTP front end over an ApiService.
class ApiServer {
public:
    explicit ApiServer(AnalysisConfig base);
    ~ApiServer();

    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    // Binds and serves on a background thread; port 0 picks a free port. Returns the bound port.
    int start(const std::string& host, int port);
    void stop();

    // Binds and serves on the calling thread until stop() is called elsewhere.
    bool listen(const std::string& host, int port);

private:
    void install_routes();

    ApiService service_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

} // namespace strategizer::io
