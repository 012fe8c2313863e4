#include "fockint/run_record.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fockint {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

namespace {

std::string value_to_json(const RecordValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return "\"" + json_escape(*s) + "\"";
    if (const auto* d = std::get_if<double>(&v)) {
        const std::string text = format_double(*d);
        // JSON has no inf/nan literals; emit them as strings.
        if (text == "nan" || text == "inf" || text == "-inf") return "\"" + text + "\"";
        return text;
    }
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    return std::get<bool>(v) ? "true" : "false";
}

std::string value_to_text(const RecordValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    return std::get<bool>(v) ? "true" : "false";
}

void append_map(std::ostringstream& out, const std::map<std::string, RecordValue>& m) {
    out << '{';
    bool first = true;
    for (const auto& [k, v] : m) {
        if (!first) out << ',';
        first = false;
        out << '"' << json_escape(k) << "\":" << value_to_json(v);
    }
    out << '}';
}

}  // namespace

std::string RunRecord::to_json() const {
    std::ostringstream out;
    out << "{\"command\":\"" << json_escape(command) << "\",\"parameters\":";
    append_map(out, parameters);
    out << ",\"outputs\":{";
    if (!columns.empty()) {
        out << "\"type\":\"table\",\"columns\":[";
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out << ',';
            out << '"' << json_escape(columns[i]) << '"';
        }
        out << "],\"rows\":[";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r) out << ',';
            out << '[';
            for (std::size_t c = 0; c < rows[r].size(); ++c) {
                if (c) out << ',';
                out << value_to_json(rows[r][c]);
            }
            out << ']';
        }
        out << ']';
        if (!scalars.empty()) {
            out << ",\"scalars\":";
            append_map(out, scalars);
        }
    } else {
        out << "\"type\":\"scalar\",\"scalars\":";
        append_map(out, scalars);
    }
    out << "},\"version\":\"" << json_escape(version) << "\",\"timestamp\":\""
        << json_escape(timestamp) << "\"}";
    out << '\n';
    return out.str();
}

std::string RunRecord::to_csv() const {
    std::ostringstream out;
    if (!columns.empty()) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(columns[i]);
        }
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out << ',';
                out << csv_escape(value_to_text(row[c]));
            }
            out << '\n';
        }
    } else {
        out << "key,value\n";
        for (const auto& [k, v] : scalars)
            out << csv_escape(k) << ',' << csv_escape(value_to_text(v)) << '\n';
    }
    return out.str();
}

}  // namespace fockint
