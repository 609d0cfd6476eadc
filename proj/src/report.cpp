#include "jetlie/report.hpp"

#include <json.hpp>

#include <algorithm>

namespace jetlie {

using ojson = nlohmann::ordered_json;

namespace {

ojson to_json(const Report& r) {
    ojson params = ojson::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    ojson j;
    j["check"] = r.check;
    j["params"] = std::move(params);
    j["status"] = r.pass ? "pass" : "fail";
    j["witness"] = {{"indices", r.indices}, {"residual", r.residual}};
    return j;
}

std::string join_indices(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

}  // namespace

std::string report_line(const Report& r) {
    std::string s = r.pass ? "PASS " : "FAIL ";
    s += r.check;
    for (const auto& [k, v] : r.params) s += " " + k + "=" + v;
    if (!r.pass) s += " at " + join_indices(r.indices) + ": " + r.residual;
    return s;
}

std::string emit_reports(const std::vector<Report>& records, Format format) {
    if (format == Format::Json) {
        ojson arr = ojson::array();
        for (const auto& r : records) arr.push_back(to_json(r));
        return arr.dump(2) + "\n";
    }
    std::string s;
    for (const auto& r : records) s += report_line(r) + "\n";
    return s;
}

std::vector<Report> parse_reports_json(std::string_view text) {
    ojson arr = ojson::parse(text);
    std::vector<Report> out;
    for (const auto& j : arr) {
        Report r;
        r.check = j.at("check").get<std::string>();
        for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, v.get<std::string>());
        r.pass = j.at("status").get<std::string>() == "pass";
        r.indices = j.at("witness").at("indices").get<std::vector<int>>();
        r.residual = j.at("witness").at("residual").get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

bool all_pass(const std::vector<Report>& records) {
    return std::all_of(records.begin(), records.end(), [](const Report& r) { return r.pass; });
}

}  // namespace jetlie
