// glab: command-line front end for the amplitude-amplification toolkit.
//
//   glab analyze          closed-form amplitudes and iteration plans
//   glab search           seeded search trials (known / restart / unknown t)
//   glab count            solution counting by period estimation
//   glab bounds           query lower bounds vs. Grover's cost
//   glab reproduce-paper  full acceptance suite with a pass/fail table
//
// Exit status: 0 success, 2 usage error, 3 invariant failure during a run.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glab/acceptance.hpp"
#include "glab/analytics.hpp"
#include "glab/bounds.hpp"
#include "glab/counting.hpp"
#include "glab/records.hpp"
#include "glab/search.hpp"
#include "glab/simulator.hpp"
#include "glab/snapshot.hpp"
#include "glab/trials.hpp"

namespace {

using namespace glab;

constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
    bool timing = false;
};

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream* stream = &std::cout;
    std::unique_ptr<RecordWriter> writer;

    explicit Output(const Common& c) {
        if (!c.out.empty()) {
            file = std::make_unique<std::ofstream>(c.out);
            if (!*file) throw UsageError("cannot open output file " + c.out);
            stream = file.get();
        }
        writer = std::make_unique<RecordWriter>(*stream, parse_format(c.format));
    }
};

class Stopwatch {
public:
    explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
    // Zero unless --timing, so identical invocations stay byte-identical.
    double ms() const {
        if (!enabled_) return 0.0;
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--seed", c.seed, "Master RNG seed");
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", c.out, "Write records to this file instead of stdout");
    app->add_flag("--timing", c.timing, "Report wall_time_ms (otherwise 0)");
}

std::int64_t checked_size(std::int64_t n) {
    if (n < 1) throw UsageError("N must be >= 1");
    return n;
}

// "a:b" inclusive, or a single value.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const auto v = std::stoull(text);
            return {v, v};
        }
        return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw UsageError("bad range '" + text + "' (expected a or a:b)");
    }
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
    Common common;
    std::int64_t n = 0;
    std::int64_t t = -1;
    std::string j_range;
    std::string snapshot;
    std::int64_t snapshot_j = -1;
};

int run_analyze(const AnalyzeArgs& a) {
    if (a.t < 1) throw UsageError("t must be >= 1");
    ProblemShape shape;
    try {
        shape = make_shape(checked_size(a.n), a.t);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Output out(a.common);
    Stopwatch clock(a.common.timing);

    const std::uint64_t m = optimal_iterations(shape);
    auto [lo, hi] = a.j_range.empty() ? std::pair<std::uint64_t, std::uint64_t>{0, m} : parse_range(a.j_range);
    if (lo > hi) throw UsageError("empty j range");

    Record params;
    params["N"] = shape.table_size;
    params["t"] = shape.solution_count;

    for (std::uint64_t j = lo; j <= hi; ++j) {
        const AmplitudePair amp = amplitudes(shape, j);
        RunRecord r{"analyze", params, a.common.seed, Record::object(), 0.0};
        r.outputs["j"] = j;
        r.outputs["k"] = amp.k;
        r.outputs["l"] = amp.l;
        r.outputs["success_probability"] = success_probability(shape, j);
        out.writer->write(r);
    }

    RunRecord summary{"analyze", params, a.common.seed, Record::object(), 0.0};
    summary.outputs["theta"] = shape.theta;
    summary.outputs["optimal_iterations"] = m;
    summary.outputs["success_at_optimal"] = success_probability(shape, m);
    if (!shape.full()) {
        const StoppingPlan plan = optimal_stopping(shape);
        summary.outputs["stopping_j_star"] = plan.j_star;
        summary.outputs["stopping_success"] = plan.success_prob;
        summary.outputs["stopping_expected_iterations"] = plan.expected_iterations;
        summary.outputs["critical_scale_m0"] = critical_scale(shape);
    }

    if (!a.snapshot.empty()) {
        if (shape.table_size > (std::uint64_t{1} << 24)) throw UsageError("snapshot limited to N <= 2^24");
        const std::uint64_t j = a.snapshot_j < 0 ? m : static_cast<std::uint64_t>(a.snapshot_j);
        std::vector<std::uint64_t> marked(shape.solution_count);
        std::iota(marked.begin(), marked.end(), 0);
        OracleSpec oracle(shape.table_size, marked);
        const DiffusionOperator op = DiffusionOperator::natural(shape.table_size);
        StateVector state = StateVector::uniform(shape.table_size);
        for (std::uint64_t s = 0; s < j; ++s) grover_iterate(state, oracle, op);
        write_snapshot(a.snapshot, state);
        summary.outputs["snapshot_j"] = j;
        summary.outputs["snapshot_path"] = a.snapshot;
    }
    summary.wall_time_ms = clock.ms();
    out.writer->write(summary);
    return 0;
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
    Common common;
    std::int64_t n = 0;
    std::int64_t t = -1;
    std::string solutions;
    std::string predicate;
    std::string strategy = "unknown";
    std::string backend = "auto";
    std::uint64_t trials = 1;
    double lambda = 6.0 / 5.0;
    std::int64_t timeout = -1;
    std::int64_t presample = 10;
    std::uint64_t max_restarts = kDefaultMaxRestarts;
};

std::vector<std::uint64_t> resolve_solutions(const SearchArgs& a, std::uint64_t n, Rng& rng) {
    const int given = (a.t >= 0) + !a.solutions.empty() + !a.predicate.empty();
    if (given != 1) throw UsageError("give exactly one of --t, --solutions, --predicate");

    std::vector<std::uint64_t> marked;
    if (!a.solutions.empty()) {
        std::stringstream ss(a.solutions);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                marked.push_back(std::stoull(item));
            } catch (const std::exception&) {
                throw UsageError("bad solution index '" + item + "'");
            }
            if (marked.back() >= n) throw UsageError("solution index " + item + " outside [0, N)");
        }
        return marked;
    }
    if (!a.predicate.empty()) {
        // mod:K:R  -> i % K == R;  range:A:B -> A <= i < B;  none
        if (a.predicate == "none") return marked;
        std::stringstream ss(a.predicate);
        std::string kind, x, y;
        std::getline(ss, kind, ':');
        std::getline(ss, x, ':');
        std::getline(ss, y, ':');
        try {
            if (kind == "mod") {
                const auto k = std::stoull(x), r = std::stoull(y);
                if (k == 0) throw UsageError("mod predicate needs K >= 1");
                for (std::uint64_t i = r; i < n; i += k) marked.push_back(i);
                return marked;
            }
            if (kind == "range") {
                const std::uint64_t lo = std::stoull(x), hi = std::min<std::uint64_t>(std::stoull(y), n);
                for (std::uint64_t i = lo; i < hi; ++i) marked.push_back(i);
                return marked;
            }
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
        }
        throw UsageError("bad predicate '" + a.predicate + "' (mod:K:R, range:A:B or none)");
    }
    if (static_cast<std::uint64_t>(a.t) > n) throw UsageError("t must be <= N");
    // Random placement: partial Fisher-Yates driven by the master seed.
    std::vector<std::uint64_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(a.t); ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
    idx.resize(static_cast<std::size_t>(a.t));
    return idx;
}

int run_search(const SearchArgs& a) {
    const auto n = static_cast<std::uint64_t>(checked_size(a.n));
    if (n > (std::uint64_t{1} << 32)) throw UsageError("N must be <= 2^32");
    if (a.trials < 1) throw UsageError("trials must be >= 1");
    Rng placement = Rng::substream(a.common.seed, ~std::uint64_t{0});
    const std::vector<std::uint64_t> marked = resolve_solutions(a, n, placement);
    const OracleSpec proto(n, marked);
    const std::uint64_t t = proto.solution_count();

    Backend backend;
    if (a.backend == "statevector")
        backend = Backend::statevector;
    else if (a.backend == "subspace")
        backend = Backend::subspace;
    else
        backend = n <= (std::uint64_t{1} << 16) ? Backend::statevector : Backend::subspace;

    UnknownTConfig config = UnknownTConfig::defaults(n);
    config.lambda = a.lambda;
    config.backend = backend;
    if (a.timeout >= 0) config.timeout_total_iterations = static_cast<std::uint64_t>(a.timeout);
    if (a.presample < 0) throw UsageError("presample must be >= 0");
    config.classical_presample_count = static_cast<std::uint64_t>(a.presample);
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (a.strategy != "unknown" && t == 0) throw UsageError("strategy '" + a.strategy + "' needs t >= 1");

    Output out(a.common);
    Stopwatch clock(a.common.timing);

    Record params;
    params["N"] = n;
    params["t"] = t;
    params["strategy"] = a.strategy;
    params["backend"] = backend == Backend::statevector ? "statevector" : "subspace";
    params["trials"] = a.trials;

    const auto outcomes = run_trials(a.trials, a.common.seed, [&](std::uint64_t, Rng& rng) {
        OracleSpec oracle = proto;
        SearchOutcome o;
        if (a.strategy == "known")
            o = search_known_t(oracle, t, rng, {backend});
        else if (a.strategy == "restart")
            o = search_restart_optimal(oracle, t, rng, a.max_restarts, {backend});
        else
            o = search_unknown_t(oracle, config, rng);
        if (o.oracle_lookups_used != 2 * o.grover_iterations_used + o.classical_probes_used ||
            o.oracle_lookups_used != oracle.query_count())
            throw InvariantError("lookup accounting mismatch");
        if (o.success && !(o.found_index && proto.contains(*o.found_index)))
            throw InvariantError("reported a non-solution");
        return o;
    });

    double sum = 0.0, sum_sq = 0.0, lookups = 0.0;
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < outcomes.size(); ++i) {
        const SearchOutcome& o = outcomes[i];
        RunRecord r{"search", params, o.seed, to_record(o), 0.0};
        r.outputs["trial"] = i;
        out.writer->write(r);
        const double it = static_cast<double>(o.grover_iterations_used);
        sum += it;
        sum_sq += it * it;
        lookups += static_cast<double>(o.oracle_lookups_used);
        successes += o.success;
    }
    const double k = static_cast<double>(outcomes.size());
    const double mean = sum / k;
    RunRecord agg{"search", params, a.common.seed, Record::object(), clock.ms()};
    agg.outputs["aggregate"] = true;
    agg.outputs["mean_iterations"] = mean;
    agg.outputs["stddev_iterations"] = std::sqrt(std::max(0.0, sum_sq / k - mean * mean));
    agg.outputs["mean_lookups"] = lookups / k;
    agg.outputs["success_rate"] = static_cast<double>(successes) / k;
    if (t > 0 && t < n) {
        const double m0 = critical_scale(proto.shape());
        agg.outputs["m0"] = m0;
        agg.outputs["mean_iterations_over_m0"] = mean / m0;
    }
    out.writer->write(agg);
    return 0;
}

// ---------------------------------------------------------------------------
// count

struct CountArgs {
    Common common;
    std::int64_t n = 0;
    std::int64_t t = -1;
    std::string regime = "fixed";
    double c = 14.0;
    std::uint64_t p = 0;
    std::uint64_t trials = 1;
    std::string spectrum;
};

int run_count(const CountArgs& a) {
    if (a.t < 0) throw UsageError("--t is required");
    ProblemShape shape;
    Regime regime;
    try {
        shape = make_shape(checked_size(a.n), a.t);
        regime = parse_regime(a.regime);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!(a.c > 0.0)) throw UsageError("c must be positive");
    if (regime == Regime::exact && a.c < kExactRegimeMinC) throw UsageError("exact regime requires c >= 14");
    if (a.p != 0 && (a.p < 2 || (a.p & (a.p - 1)) != 0)) throw UsageError("P must be a power of two >= 2");
    if (a.trials < 1) throw UsageError("trials must be >= 1");

    Output out(a.common);
    Stopwatch clock(a.common.timing);

    Record params;
    params["N"] = shape.table_size;
    params["t"] = shape.solution_count;
    if (a.p != 0) {
        params["P"] = a.p;
    } else {
        params["regime"] = a.regime;
        params["c"] = a.c;
    }
    params["trials"] = a.trials;

    const auto estimates = run_trials(a.trials, a.common.seed, [&](std::uint64_t, Rng& rng) {
        return a.p != 0 ? estimate_t(shape, a.p, rng) : count_with_regime(shape, regime, a.c, rng);
    });

    const double t_true = static_cast<double>(shape.solution_count);
    std::uint64_t near = 0, near_in_bound = 0, exact_hits = 0, near_exact = 0;
    double sum = 0.0;
    for (std::uint64_t i = 0; i < estimates.size(); ++i) {
        const CountingEstimate& e = estimates[i];
        const bool within = std::abs(true_frequency(shape, e.P) - e.f_tilde) < 1.0;
        const bool in_bound = std::abs(t_true - e.t_tilde) < counting_error_bound(t_true, shape.table_size, e.P);
        const bool exact = e.t_rounded == static_cast<std::int64_t>(shape.solution_count);
        if (within && !in_bound) throw InvariantError("error bound violated within one bin of f");
        near += within;
        near_in_bound += within && in_bound;
        exact_hits += exact;
        near_exact += within && exact;
        sum += e.t_tilde;

        RunRecord r{"count", params, Rng::substream(a.common.seed, i).seed(), to_record(e), 0.0};
        r.outputs["trial"] = i;
        r.outputs["within_one_bin"] = within;
        out.writer->write(r);
    }
    const double k = static_cast<double>(estimates.size());
    RunRecord agg{"count", params, a.common.seed, Record::object(), clock.ms()};
    agg.outputs["aggregate"] = true;
    agg.outputs["mean_t_tilde"] = sum / k;
    agg.outputs["p_within_one_bin"] = static_cast<double>(near) / k;
    agg.outputs["bound_satisfied_within_one_bin"] = near == 0 ? 1.0 : static_cast<double>(near_in_bound) / static_cast<double>(near);
    agg.outputs["exact_recovery_rate"] = static_cast<double>(exact_hits) / k;
    agg.outputs["exact_recovery_within_one_bin"] = near == 0 ? Record(nullptr) : Record(static_cast<double>(near_exact) / static_cast<double>(near));
    out.writer->write(agg);

    if (!a.spectrum.empty()) {
        std::ofstream csv(a.spectrum);
        if (!csv) throw UsageError("cannot open " + a.spectrum);
        const std::uint64_t P = estimates.front().P;
        csv << "nu";
        std::vector<std::vector<double>> columns;
        for (Branch b : {Branch::solution, Branch::non_solution}) {
            if ((b == Branch::solution && shape.empty()) || (b == Branch::non_solution && shape.full())) continue;
            csv << ',' << to_string(b);
            columns.push_back(glab::spectrum(shape, P, b));
        }
        csv << '\n' << std::setprecision(17);
        for (std::uint64_t v = 0; v < P; ++v) {
            csv << v;
            for (const auto& col : columns) csv << ',' << col[v];
            csv << '\n';
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
    Common common;
    std::string n = "1048576";
    std::string sweep;
    std::int64_t t = 1;
};

int run_bounds(const BoundsArgs& a) {
    if (a.t < 1) throw UsageError("t must be >= 1");
    std::vector<std::uint64_t> sizes;
    if (!a.sweep.empty()) {
        const auto [lo, hi] = parse_range(a.sweep);
        if (lo > hi || hi > 62) throw UsageError("sweep exponents must satisfy lo <= hi <= 62");
        for (std::uint64_t e = lo; e <= hi; ++e) sizes.push_back(std::uint64_t{1} << e);
    } else {
        const auto [lo, hi] = parse_range(a.n);
        if (lo < 1 || lo > hi) throw UsageError("N must be >= 1");
        for (std::uint64_t n = lo; n <= hi; ++n) sizes.push_back(n);
    }
    Output out(a.common);
    for (std::uint64_t n : sizes) {
        if (static_cast<std::uint64_t>(a.t) > n) throw UsageError("t must be <= N");
        Record params;
        params["N"] = n;
        params["t"] = a.t;
        RunRecord r{"bounds", params, a.common.seed, to_record(compare_grover_to_bound(n, static_cast<std::uint64_t>(a.t))), 0.0};
        out.writer->write(r);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// reproduce-paper

struct ReproduceArgs {
    Common common;
    std::vector<int> only;
};

int run_reproduce(const ReproduceArgs& a) {
    AcceptanceOptions options;
    options.only = a.only;
    options.seed = a.common.seed;
    const auto results = run_acceptance(options, std::cout);
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass;
    std::cout << passed << "/" << results.size() << " criteria passed\n";
    if (!a.common.out.empty()) {
        Common c = a.common;
        Output out(c);
        for (const auto& r : results) {
            RunRecord rec{"reproduce-paper", Record::object(), options.seed, Record::object(), a.common.timing ? r.seconds * 1000.0 : 0.0};
            rec.parameters["criterion"] = r.id;
            rec.outputs["name"] = r.name;
            rec.outputs["pass"] = r.pass;
            rec.outputs["detail"] = r.detail;
            out.writer->write(rec);
        }
    }
    return passed == results.size() ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"glab: amplitude-amplification search, counting and bounds"};
    app.require_subcommand(1);

    AnalyzeArgs analyze;
    auto* c_analyze = app.add_subcommand("analyze", "Closed-form amplitudes and iteration plans");
    add_common(c_analyze, analyze.common);
    c_analyze->add_option("--n", analyze.n, "Table size N")->required();
    c_analyze->add_option("--t", analyze.t, "Number of solutions t")->required();
    c_analyze->add_option("--j", analyze.j_range, "Iteration range a:b (default 0:optimal)");
    c_analyze->add_option("--snapshot", analyze.snapshot, "Write a binary statevector snapshot");
    c_analyze->add_option("--snapshot-j", analyze.snapshot_j, "Iterations before the snapshot (default optimal)");

    SearchArgs search;
    auto* c_search = app.add_subcommand("search", "Run seeded search trials");
    add_common(c_search, search.common);
    c_search->add_option("--n", search.n, "Table size N")->required();
    c_search->add_option("--t", search.t, "Solution count, placed at random");
    c_search->add_option("--solutions", search.solutions, "Explicit comma-separated solution indices");
    c_search->add_option("--predicate", search.predicate, "mod:K:R, range:A:B or none");
    c_search->add_option("--strategy", search.strategy)->check(CLI::IsMember({"known", "restart", "unknown"}));
    c_search->add_option("--backend", search.backend)->check(CLI::IsMember({"auto", "statevector", "subspace"}));
    c_search->add_option("--trials", search.trials);
    c_search->add_option("--lambda", search.lambda, "Growth factor for the unknown-t strategy");
    c_search->add_option("--timeout", search.timeout, "Total Grover-iteration budget (default ceil(4.5 sqrt N))");
    c_search->add_option("--presample", search.presample, "Classical probes before the quantum loop");
    c_search->add_option("--max-restarts", search.max_restarts);

    CountArgs count;
    auto* c_count = app.add_subcommand("count", "Estimate the number of solutions");
    add_common(c_count, count.common);
    c_count->add_option("--n", count.n, "Table size N")->required();
    c_count->add_option("--t", count.t, "True number of solutions")->required();
    c_count->add_option("--regime", count.regime)->check(CLI::IsMember({"fixed", "relative", "absolute", "exact"}));
    c_count->add_option("--c", count.c, "Accuracy constant");
    c_count->add_option("--p", count.p, "Fixed window P (power of two); overrides --regime");
    c_count->add_option("--trials", count.trials);
    c_count->add_option("--spectrum", count.spectrum, "Write |b_v|^2 per v as CSV");

    BoundsArgs bounds;
    auto* c_bounds = app.add_subcommand("bounds", "Query lower bounds vs. Grover");
    add_common(c_bounds, bounds.common);
    c_bounds->add_option("--n", bounds.n, "N or inclusive range a:b");
    c_bounds->add_option("--sweep", bounds.sweep, "Exponent range a:b over N = 2^e");
    c_bounds->add_option("--t", bounds.t);

    ReproduceArgs reproduce;
    reproduce.common.seed = AcceptanceOptions{}.seed;
    auto* c_repro = app.add_subcommand("reproduce-paper", "Run the acceptance suite");
    add_common(c_repro, reproduce.common);
    c_repro->add_option("--only", reproduce.only, "Criterion ids to run")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_analyze->parsed()) return run_analyze(analyze);
        if (c_search->parsed()) return run_search(search);
        if (c_count->parsed()) return run_count(count);
        if (c_bounds->parsed()) return run_bounds(bounds);
        if (c_repro->parsed()) return run_reproduce(reproduce);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvariantError& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    }
    return kExitUsage;
}
