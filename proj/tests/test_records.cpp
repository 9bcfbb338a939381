#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "glab/records.hpp"

using namespace glab;

TEST_CASE("field names") {
    SearchOutcome o;
    o.found_index = 5;
    o.success = true;
    const Record r = to_record(o);
    for (const char* k : {"found_index", "success", "grover_iterations_used", "oracle_lookups_used",
                          "classical_probes_used", "rounds", "seed"})
        CHECK(r.contains(k));
    CHECK(to_record(SearchOutcome{})["found_index"].is_null());

    const Record c = to_record(CountingEstimate{});
    for (const char* k : {"P", "measured_frequency", "f_tilde", "theta_tilde", "t_tilde", "t_rounded", "error_bound",
                          "regime", "branch"})
        CHECK(c.contains(k));
    CHECK(c["regime"] == "fixed");

    BoundReport b;
    b.degenerate = true;
    CHECK(to_record(b)["ratio"].is_null());

    RunRecord run{"search", {{"n", 4}}, 9, {{"x", 1.5}}, 0.0};
    const Record j = to_json(run);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j.dump() == R"({"schema_version":1,"command":"search","parameters":{"n":4},"seed":9,"outputs":{"x":1.5},"wall_time_ms":0.0})");
}

TEST_CASE("flatten and csv") {
    const Record r = {{"a", 1}, {"b", {{"c", "x"}, {"d", nullptr}}}};
    const Record f = flatten(r);
    CHECK(f.dump() == R"({"a":1,"b.c":"x","b.d":null})");
    CHECK(csv_cell(Record(nullptr)).empty());
    CHECK(csv_cell(Record(true)) == "true");
    CHECK(csv_cell(Record("s")) == "s");

    std::ostringstream out;
    RecordWriter w(out, Format::csv);
    w.write(Record{{"a", 1}, {"b", 2}});
    w.write(Record{{"a", 3}, {"b", 4}});
    w.write(Record{{"z", 5}});
    CHECK(out.str() == "a,b\n1,2\n3,4\n\nz\n5\n");

    std::ostringstream js;
    RecordWriter jw(js, Format::json);
    jw.write(Record{{"a", 1}});
    CHECK(js.str() == "{\"a\":1}\n");

    CHECK(parse_format("csv") == Format::csv);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}
