#ifndef FOCKINT_RUN_RECORD_HPP
#define FOCKINT_RUN_RECORD_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fockint {

inline constexpr std::string_view kVersion = "0.1.0";

/// Scalar cell of a parameter map or table: stored typed so JSON output
/// keeps numbers as numbers.
using RecordValue = std::variant<std::string, double, std::int64_t, bool>;

/// Machine-readable result envelope for one command invocation. The JSON
/// form has a fixed key order and 17-significant-digit floats, so repeated
/// runs with identical inputs are byte identical and round-trip lossless.
struct RunRecord {
    std::string command;
    std::map<std::string, RecordValue> parameters;
    std::vector<std::string> columns;            // table outputs
    std::vector<std::vector<RecordValue>> rows;  // row-major, matches columns
    std::map<std::string, RecordValue> scalars;  // scalar outputs
    std::string version{kVersion};
    std::string timestamp{"1970-01-01T00:00:00Z"};  // fixed unless stamping is requested

    std::string to_json() const;
    std::string to_csv() const;  // header plus data rows, RFC 4180 quoting
};

/// Shortest text that parses back to exactly the same double (17
/// significant digits).
std::string format_double(double x);

/// RFC 4180 field quoting: wraps in quotes when the field contains a
/// comma, quote, or newline, doubling embedded quotes.
std::string csv_escape(const std::string& field);

/// JSON string escaping per RFC 8259.
std::string json_escape(const std::string& s);

}  // namespace fockint

#endif  // FOCKINT_RUN_RECORD_HPP
