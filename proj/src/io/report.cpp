#include "strategizer/io/report.hpp"

#include "strategizer/errors.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

namespace strategizer::io {

namespace {

constexpr std::array<std::pair<ReportKind, std::string_view>, 6> kKindNames = {{
    {ReportKind::Rank, "Rank"},
    {ReportKind::GoNoGo, "GoNoGo"},
    {ReportKind::Sweep, "Sweep"},
    {ReportKind::MonteCarlo, "MonteCarlo"},
    {ReportKind::Infra, "Infra"},
    {ReportKind::SampleSize, "SampleSize"},
}};

} // namespace

std::string_view to_string(ReportKind kind) noexcept {
    for (const auto& [k, name] : kKindNames)
        if (k == kind)
            return name;
    return "Unknown";
}

std::optional<ReportKind> parse_report_kind(std::string_view text) noexcept {
    for (const auto& [k, name] : kKindNames)
        if (name == text)
            return k;
    return std::nullopt;
}

nlohmann::json to_json(const DecisionReport& r) {
    return {{"kind", std::string(to_string(r.kind))},
            {"digest", r.digest},
            {"inputs", r.inputs},
            {"payload", r.payload},
            {"human_log", r.human_log}};
}

DecisionReport report_from_json(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw SchemaError("report: expected an object");
    for (const char* key : {"kind", "digest", "inputs", "payload", "human_log"})
        if (!doc.contains(key))
            throw SchemaError(std::string("report.") + key + ": missing required field");
    if (!doc["kind"].is_string() || !doc["digest"].is_string() || !doc["human_log"].is_string())
        throw SchemaError("report: kind, digest and human_log must be strings");
    const auto kind = parse_report_kind(doc["kind"].get<std::string>());
    if (!kind)
        throw SchemaError("report.kind: unknown kind '" + doc["kind"].get<std::string>() + "'");
    DecisionReport r;
    r.kind = *kind;
    r.digest = doc["digest"].get<std::string>();
    r.inputs = doc["inputs"];
    r.payload = doc["payload"];
    r.human_log = doc["human_log"].get<std::string>();
    return r;
}

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

std::string inputs_digest(const nlohmann::json& inputs) {
    return sha256_hex(inputs.dump());
}

} // namespace strategizer::io
