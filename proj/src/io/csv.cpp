#include "strategizer/io/csv.hpp"

#include "strategizer/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace strategizer::io {

namespace {

constexpr std::array<const char*, 6> kColumns = {"respondent_id", "plan_id",     "attribute_id",
                                                 "max_cost",      "utilization", "lifespan"};

// Splits one logical CSV record; supports double-quoted fields with "" escapes.
std::vector<std::string> split_fields(std::string_view line, std::size_t row) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty() && !was_quoted) {
            quoted = was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else {
            field += c;
        }
    }
    if (quoted)
        throw ParseError(row, "", "unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

double parse_number(const std::string& text, std::size_t row, const char* column) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first < last && *first == ' ')
        ++first;
    while (last > first && last[-1] == ' ')
        --last;
    if (first < last && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (first == last || ec != std::errc() || ptr != last || !std::isfinite(value))
        throw ParseError(row, column, "'" + text + "' is not a number");
    return value;
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

} // namespace

std::vector<ResponseRecord> parse_survey_csv(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF"))
        text.remove_prefix(3);

    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        if (line.ends_with('\r'))
            line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos)
            break;
        text.remove_prefix(nl + 1);
    }
    while (!lines.empty() && lines.back().empty())
        lines.pop_back();
    if (lines.empty())
        throw ParseError(0, "", "missing header");

    bool with_lifespan = false;
    if (lines.front() == kSurveyHeaderWithLifespan)
        with_lifespan = true;
    else if (lines.front() != kSurveyHeader)
        throw ParseError(0, "", "header must be '" + std::string(kSurveyHeader) + "[,lifespan]'");
    const std::size_t columns = with_lifespan ? 6 : 5;

    std::vector<ResponseRecord> records;
    records.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t row = i;
        if (lines[i].empty())
            throw ParseError(row, "", "empty line");
        auto fields = split_fields(lines[i], row);
        if (fields.size() != columns)
            throw ParseError(row, "", "expected " + std::to_string(columns) + " fields, found " +
                                          std::to_string(fields.size()));
        for (std::size_t c = 0; c < 3; ++c)
            if (fields[c].empty())
                throw ParseError(row, kColumns[c], "identifier must not be empty");

        ResponseRecord r;
        r.row = row;
        r.respondent_id = std::move(fields[0]);
        r.plan_id = std::move(fields[1]);
        r.attribute_id = std::move(fields[2]);
        r.max_cost = parse_number(fields[3], row, kColumns[3]);
        r.utilization = parse_number(fields[4], row, kColumns[4]);
        if (with_lifespan && !fields[5].empty())
            r.lifespan = parse_number(fields[5], row, kColumns[5]);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<ResponseRecord> load_survey_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(0, "", "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_survey_csv(buffer.str());
}

std::string serialize_survey_csv(const std::vector<ResponseRecord>& records) {
    bool with_lifespan = false;
    for (const auto& r : records)
        with_lifespan = with_lifespan || r.lifespan.has_value();
    std::string out(with_lifespan ? kSurveyHeaderWithLifespan : kSurveyHeader);
    out += '\n';
    for (const auto& r : records) {
        out += quote_if_needed(r.respondent_id) + ',' + quote_if_needed(r.plan_id) + ',' +
               quote_if_needed(r.attribute_id) + ',' + format_number(r.max_cost) + ',' + format_number(r.utilization);
        if (with_lifespan) {
            out += ',';
            if (r.lifespan)
                out += format_number(*r.lifespan);
        }
        out += '\n';
    }
    return out;
}

} // namespace strategizer::io
