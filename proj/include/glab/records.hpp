#pragma once

// Flat machine-readable records shared by the CLI and the test suites.
//
// JSON output is one object per line. CSV output flattens nested objects to
// "parameters.x" / "outputs.y" columns and writes a header line whenever the
// column set changes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "glab/bounds.hpp"
#include "glab/counting.hpp"
#include "glab/search.hpp"

namespace glab {

using Record = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Record to_record(const SearchOutcome& o);
Record to_record(const CountingEstimate& e);
Record to_record(const BoundReport& r);

struct RunRecord {
    std::string command;
    Record parameters = Record::object();
    std::uint64_t seed = 0;
    Record outputs = Record::object();
    double wall_time_ms = 0.0;
};

Record to_json(const RunRecord& r);

enum class Format { json, csv };
Format parse_format(const std::string& name);

// Flattens one level of nesting: {"a": {"b": 1}} -> {"a.b": 1}.
Record flatten(const Record& r);

// CSV cell for a scalar JSON value; null renders empty.
std::string csv_cell(const Record& value);

class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}

    void write(const RunRecord& r);
    void write(const Record& flat_or_nested);

private:
    std::ostream& out_;
    Format format_;
    std::vector<std::string> header_;
};

}  // namespace glab
