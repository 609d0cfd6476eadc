#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jetlie {

struct Report {
    std::string check;
    std::vector<std::pair<std::string, std::string>> params;
    bool pass = true;
    std::vector<int> indices;
    std::string residual = "0";

    Report& param(std::string key, std::string value) {
        params.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    Report& param(std::string key, long value) { return param(std::move(key), std::to_string(value)); }
    Report& fail(std::vector<int> where, std::string res) {
        pass = false;
        indices = std::move(where);
        residual = std::move(res);
        return *this;
    }

    friend bool operator==(const Report&, const Report&) = default;
};

enum class Format { Json, Text };

std::string emit_reports(const std::vector<Report>& records, Format format);
std::vector<Report> parse_reports_json(std::string_view text);
std::string report_line(const Report& r);
bool all_pass(const std::vector<Report>& records);

}  // namespace jetlie
