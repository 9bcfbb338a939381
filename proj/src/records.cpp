#include "glab/records.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace glab {

Record to_record(const SearchOutcome& o) {
    Record r;
    r["found_index"] = o.found_index ? Record(*o.found_index) : Record(nullptr);
    r["success"] = o.success;
    r["grover_iterations_used"] = o.grover_iterations_used;
    r["oracle_lookups_used"] = o.oracle_lookups_used;
    r["classical_probes_used"] = o.classical_probes_used;
    r["rounds"] = o.rounds;
    r["seed"] = o.seed;
    return r;
}

Record to_record(const CountingEstimate& e) {
    Record r;
    r["P"] = e.P;
    r["measured_frequency"] = e.measured_frequency;
    r["f_tilde"] = e.f_tilde;
    r["theta_tilde"] = e.theta_tilde;
    r["t_tilde"] = e.t_tilde;
    r["t_rounded"] = e.t_rounded;
    r["error_bound"] = e.error_bound;
    r["regime"] = std::string(to_string(e.regime));
    r["branch"] = std::string(to_string(e.branch));
    r["total_work"] = e.total_work;
    return r;
}

Record to_record(const BoundReport& b) {
    Record r;
    r["N"] = b.N;
    r["t"] = b.t;
    r["lower_bound_queries"] = b.lower_bound_queries;
    r["grover_queries_50pct"] = b.grover_queries_50pct;
    // JSON has no infinity; a degenerate bound reports ratio null.
    r["ratio"] = b.degenerate ? Record(nullptr) : Record(b.ratio);
    r["degenerate"] = b.degenerate;
    return r;
}

Record to_json(const RunRecord& run) {
    Record r;
    r["schema_version"] = kSchemaVersion;
    r["command"] = run.command;
    r["parameters"] = run.parameters;
    r["seed"] = run.seed;
    r["outputs"] = run.outputs;
    r["wall_time_ms"] = run.wall_time_ms;
    return r;
}

Format parse_format(const std::string& name) {
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    throw std::invalid_argument("unknown format '" + name + "' (expected json or csv)");
}

Record flatten(const Record& r) {
    Record flat = Record::object();
    for (const auto& [key, value] : r.items()) {
        if (value.is_object()) {
            for (const auto& [inner, v] : value.items()) flat[key + "." + inner] = v;
        } else {
            flat[key] = value;
        }
    }
    return flat;
}

std::string csv_cell(const Record& value) {
    if (value.is_null()) return "";
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

void RecordWriter::write(const RunRecord& r) { write(to_json(r)); }

void RecordWriter::write(const Record& record) {
    if (format_ == Format::json) {
        out_ << record.dump() << '\n';
        return;
    }
    const Record flat = flatten(record);
    std::vector<std::string> keys;
    for (const auto& item : flat.items()) keys.push_back(item.key());
    if (keys != header_) {
        if (!header_.empty()) out_ << '\n';
        for (std::size_t i = 0; i < keys.size(); ++i) out_ << (i ? "," : "") << keys[i];
        out_ << '\n';
        header_ = keys;
    }
    std::size_t i = 0;
    for (const auto& item : flat.items()) out_ << (i++ ? "," : "") << csv_cell(item.value());
    out_ << '\n';
}

}  // namespace glab
