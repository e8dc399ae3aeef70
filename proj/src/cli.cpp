#include "partita/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "partita/cache_io.hpp"
#include "partita/core_pm.hpp"
#include "partita/list_ops.hpp"
#include "partita/oracle.hpp"
#include "partita/series_cache.hpp"

namespace partita::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Plain, Csv, Json };

// Raised for anything that should end the run with a diagnostic.
struct Failure {
    int code;
    std::string message;
};

[[noreturn]] void usage_error(const std::string& message) { throw Failure{kExitUsage, message}; }

struct Options {
    Format format = Format::Plain;
    std::string out_path;
    std::string algorithm = "auto";
    double crossover_constant = 2.7;
    bool explain = false;
    bool use_oracle = false;
    std::string p_recurrence = "ewell";
    std::string q_recurrence = "merca";
    std::string cache_file;
};

struct ScalarArgs {
    Index n = 0;
    std::optional<Index> m;
};

struct ListArgs {
    std::string kind;
    Index n = 0;
    std::optional<Index> m;
};

struct BenchArgs {
    Index n = 0;
    std::optional<Index> m_min;
    std::optional<Index> m_max;
    unsigned repetitions = 3;
    bool steps_only = false;
    bool fit_crossover = false;
};

struct CacheArgs {
    std::string action;
    std::string path;
    std::string kind = "p";
    Index n = 1000;
    std::string resave;
};

// State shared by every command in one invocation. The process owns its
// caches exclusively.
class Session {
public:
    Session(const Options& options, std::ostream& err)
        : options_(options),
          err_(err),
          pcache_(options.p_recurrence == "euler" ? PAlgorithm::Euler : PAlgorithm::Ewell),
          qcache_(options.q_recurrence == "ewell" ? QAlgorithm::Ewell : QAlgorithm::Merca)
    {
        dispatch_.crossover_constant = options.crossover_constant;
        if (!options.cache_file.empty() && std::filesystem::exists(options.cache_file)) {
            std::ifstream in(options.cache_file);
            pcache_ = PCache::from_values(load_or_fail(in, CacheKind::P), pcache_.algorithm());
        }
        loaded_size_ = pcache_.size();
    }

    // Writes the P cache back when --cache-file is set and it grew.
    void persist()
    {
        if (options_.cache_file.empty() || pcache_.size() == loaded_size_)
            return;
        std::ofstream out(options_.cache_file);
        if (!out)
            throw Failure{kExitData, "cannot write " + options_.cache_file};
        save_cache(out, CacheKind::P, pcache_.values());
    }

    static std::vector<Natural> load_or_fail(std::istream& in, CacheKind kind)
    {
        try {
            return load_cache(in, kind);
        } catch (const CacheFormatError& e) {
            throw Failure{kExitData, std::string("malformed cache: ") + e.what()};
        }
    }

    const Options& options() const { return options_; }
    const DispatchOptions& dispatch() const { return dispatch_; }
    PCache& pcache() { return pcache_; }
    QCache& qcache() { return qcache_; }
    std::ostream& err() { return err_; }

    void oracle_notice()
    {
        if (!noticed_)
            err_ << "note: --oracle counts by brute-force enumeration (slow, n <= "
                 << oracle::kCeiling << ")\n";
        noticed_ = true;
    }

    Natural oracle_count(Index n, std::optional<Index> m, bool distinct)
    {
        oracle_notice();
        try {
            return oracle::count_partitions(n, m, distinct);
        } catch (const std::out_of_range& e) {
            usage_error(e.what());
        }
    }

    const Natural& q_of(Index n) { return qcache_.at(n, pcache_); }

private:
    Options options_;
    std::ostream& err_;
    DispatchOptions dispatch_;
    PCache pcache_;
    QCache qcache_;
    Index loaded_size_ = 0;
    bool noticed_ = false;
};

std::string to_decimal(const Natural& v) { return v.get_str(); }

Json json_values(std::span<const Natural> values)
{
    Json arr = Json::array();
    for (const auto& v : values)
        arr.push_back(to_decimal(v));
    return arr;
}

std::optional<Algorithm> parse_algorithm(const std::string& name)
{
    if (name == "auto")
        return std::nullopt;
    if (name == "alg1")
        return Algorithm::Alg1;
    if (name == "alg2")
        return Algorithm::Alg2;
    if (name == "closed")
        return Algorithm::ClosedForm;
    usage_error("unknown algorithm '" + name + "'");
}

void check_ceiling(Index v, const char* what)
{
    if (v > kIndexCeiling)
        usage_error(std::string(what) + " exceeds the index ceiling 2^62");
}

// ---- p / q -----------------------------------------------------------------

void cmd_scalar(Session& s, const ScalarArgs& args, bool distinct, std::ostream& out)
{
    check_ceiling(args.n, "n");
    if (args.m)
        check_ceiling(*args.m, "m");
    const auto& opt = s.options();
    const auto forced = parse_algorithm(opt.algorithm);

    Natural value;
    std::optional<StepEstimate> steps;
    std::optional<Index> explained_n;

    if (opt.use_oracle) {
        value = s.oracle_count(args.n, args.m, distinct);
    } else if (!args.m) {
        value = distinct ? s.q_of(args.n) : s.pcache().at(args.n);
    } else {
        // Q(n, m) runs through P(n - m(m-1)/2, m).
        std::optional<PartitionQuery> target = PartitionQuery{args.n, *args.m};
        if (distinct) {
            const auto shift = static_cast<Wide>(target->m) * (target->m - 1) / 2;
            if (shift > target->n || target->n - shift < target->m)
                target.reset();
            else
                target->n -= static_cast<Index>(shift);
        }
        if (!target) {
            value = 0;
        } else {
            try {
                value = forced ? p_with(*forced, *target, s.pcache())
                               : p_exact(*target, s.pcache(), s.dispatch());
            } catch (const std::invalid_argument& e) {
                usage_error(e.what());
            }
            if (opt.explain) {
                steps = estimate_steps(*target, s.dispatch());
                if (forced && target->m >= 1 && target->n > target->m)
                    steps->chosen = *forced;
                explained_n = target->n;
            }
        }
    }

    const double threshold =
        explained_n ? practical_crossover(*explained_n, opt.crossover_constant) : 0.0;

    switch (opt.format) {
    case Format::Plain:
        out << to_decimal(value) << '\n';
        if (steps) {
            out << "algorithm: " << to_string(steps->chosen) << '\n'
                << "S1: " << to_decimal(steps->s1) << '\n'
                << "S2: " << to_decimal(steps->s2) << '\n'
                << "threshold: " << std::fixed << std::setprecision(2) << threshold << '\n';
        }
        break;
    case Format::Csv:
        out << "n,m,value" << (steps ? ",algorithm,S1,S2" : "") << '\n';
        out << args.n << ',' << (args.m ? std::to_string(*args.m) : "") << ','
            << to_decimal(value);
        if (steps)
            out << ',' << to_string(steps->chosen) << ',' << to_decimal(steps->s1) << ','
                << to_decimal(steps->s2);
        out << '\n';
        break;
    case Format::Json: {
        Json params = {{"n", args.n}};
        if (args.m)
            params["m"] = *args.m;
        Json doc = {{"kind", distinct ? "q" : "p"},
                    {"params", params},
                    {"values", Json::array({to_decimal(value)})}};
        if (steps) {
            std::ostringstream t;
            t << std::fixed << std::setprecision(2) << threshold;
            doc["explain"] = {{"algorithm", std::string(to_string(steps->chosen))},
                              {"S1", to_decimal(steps->s1)},
                              {"S2", to_decimal(steps->s2)},
                              {"threshold", t.str()}};
        }
        out << doc.dump() << '\n';
        break;
    }
    }
}

// ---- list ------------------------------------------------------------------

struct Sequence {
    Index first_index = 0;
    std::vector<Natural> values;
};

Sequence list_with_oracle(Session& s, const ListArgs& a)
{
    Sequence seq;
    auto count = [&](Index n, std::optional<Index> m, bool distinct) {
        return s.oracle_count(n, m, distinct);
    };
    if (a.kind == "p-series" || a.kind == "q-series") {
        for (Index i = 0; i <= a.n; ++i)
            seq.values.push_back(count(i, std::nullopt, a.kind == "q-series"));
    } else if (a.kind == "p-row") {
        seq.first_index = 1;
        for (Index m = 1; m <= a.n; ++m)
            seq.values.push_back(count(a.n, m, false));
    } else if (a.kind == "q-row") {
        seq.first_index = 1;
        for (Index m = 1; m <= q_row_length(a.n); ++m)
            seq.values.push_back(count(a.n, m, true));
    } else if (a.kind == "p-col") {
        seq.first_index = *a.m;
        for (Index i = *a.m; i <= a.n; ++i)
            seq.values.push_back(count(i, *a.m, false));
    } else {
        const Index m = *a.m;
        seq.first_index = m * (m + 1) / 2;
        for (Index i = seq.first_index; i <= a.n; ++i)
            seq.values.push_back(count(i, m, true));
    }
    return seq;
}

Sequence build_list(Session& s, const ListArgs& a)
{
    static const std::vector<std::string> kinds = {"p-row",    "p-col",   "q-row",
                                                   "q-col",    "p-series", "q-series"};
    if (std::find(kinds.begin(), kinds.end(), a.kind) == kinds.end())
        usage_error("unknown list kind '" + a.kind + "'");
    check_ceiling(a.n, "n");
    const bool needs_m = a.kind == "p-col" || a.kind == "q-col";
    if (needs_m && !a.m)
        usage_error(a.kind + " needs m");
    if (!needs_m && a.m)
        usage_error(a.kind + " takes no m");
    if ((a.kind == "p-row" || a.kind == "q-row") && a.n < 1)
        usage_error(a.kind + " needs n >= 1");
    if (a.kind == "p-col" && *a.m > a.n)
        usage_error("p-col needs m <= n");
    if (a.kind == "q-col" && *a.m > (Index{1} << 31))
        usage_error("q-col m too large");

    if (s.options().use_oracle)
        return list_with_oracle(s, a);

    Sequence seq;
    if (a.kind == "p-series") {
        s.pcache().ensure(a.n);
        const auto v = s.pcache().values();
        seq.values.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(a.n + 1));
    } else if (a.kind == "q-series") {
        s.q_of(a.n);
        const auto v = s.qcache().values();
        seq.values.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(a.n + 1));
    } else if (a.kind == "p-row") {
        seq.first_index = 1;
        seq.values = p_row(a.n, s.pcache()).counts;
    } else if (a.kind == "q-row") {
        seq.first_index = 1;
        seq.values = q_row(a.n);
    } else if (a.kind == "p-col") {
        seq.first_index = *a.m;
        seq.values = p_column(a.n, *a.m, s.pcache()).counts;
    } else {
        const Index m = *a.m;
        seq.first_index = m * (m + 1) / 2;
        seq.values = q_column(a.n, m, s.pcache());
    }
    return seq;
}

void cmd_list(Session& s, const ListArgs& a, std::ostream& out)
{
    const auto seq = build_list(s, a);
    switch (s.options().format) {
    case Format::Plain:
        for (const auto& v : seq.values)
            out << to_decimal(v) << '\n';
        break;
    case Format::Csv:
        out << "index,value\n";
        for (std::size_t j = 0; j < seq.values.size(); ++j)
            out << seq.first_index + j << ',' << to_decimal(seq.values[j]) << '\n';
        break;
    case Format::Json: {
        Json params = {{"n", a.n}};
        if (a.m)
            params["m"] = *a.m;
        Json doc = {{"kind", a.kind},
                    {"params", params},
                    {"first_index", seq.first_index},
                    {"values", json_values(seq.values)}};
        out << doc.dump() << '\n';
        break;
    }
    }
}

// ---- bench -----------------------------------------------------------------

std::int64_t median_ns(unsigned repetitions, const std::function<void()>& body)
{
    std::vector<std::int64_t> samples;
    samples.reserve(repetitions);
    for (unsigned r = 0; r < repetitions; ++r) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const auto stop = std::chrono::steady_clock::now();
        samples.push_back(
            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

std::string fixed2(double v)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << v;
    return s.str();
}

void cmd_bench(Session& s, const BenchArgs& a, std::ostream& out)
{
    check_ceiling(a.n, "n");
    if (a.n < 1)
        usage_error("bench needs n >= 1");
    if (a.repetitions < 1)
        usage_error("bench needs --reps >= 1");
    const Index lo = a.m_min.value_or(1);
    const Index hi = a.m_max.value_or(a.fit_crossover ? a.n / 2 : a.n);
    if (lo < 1 || lo > hi || hi > a.n)
        usage_error("bench needs 1 <= m-min <= m-max <= n");

    const double c = s.options().crossover_constant;
    const auto worst = m_worst(a.n);
    const double practical = practical_crossover(a.n, c);
    const bool timed = !a.steps_only || a.fit_crossover;
    if (timed)
        s.pcache().ensure(a.n); // list building is excluded from the timings

    struct Row {
        Index m;
        Natural s1, s2;
        std::int64_t t1 = 0, t2 = 0;
        Algorithm chosen;
    };
    std::vector<Row> rows;
    for (Index m = lo; m <= hi; ++m) {
        Row row{m, steps_s1(a.n, m), steps_s2(a.n, m), 0, 0,
                choose_algorithm({a.n, m}, s.dispatch())};
        if (timed) {
            row.t1 = median_ns(a.repetitions, [&] { (void)p_alg1({a.n, m}); });
            row.t2 = median_ns(a.repetitions, [&] { (void)p_alg2({a.n, m}, s.pcache()); });
        }
        rows.push_back(std::move(row));
    }

    if (a.fit_crossover) {
        // First m at which Algorithm 2 beats Algorithm 1 on the median time.
        std::optional<Index> empirical;
        for (const auto& r : rows)
            if (r.t2 < r.t1) {
                empirical = r.m;
                break;
            }
        const double root_n = std::sqrt(static_cast<double>(a.n));
        std::vector<std::pair<std::string, std::string>> kv = {
            {"n", std::to_string(a.n)},
            {"empirical_crossover", empirical ? std::to_string(*empirical) : "none"},
            {"empirical_constant", empirical ? fixed2(static_cast<double>(*empirical) / root_n)
                                             : "none"},
            {"analytic_m_worst", fixed2(worst.approx())},
            {"practical_crossover", fixed2(practical)},
            {"crossover_constant", fixed2(c)}};
        if (s.options().format == Format::Json) {
            Json values = Json::object();
            for (const auto& [k, v] : kv)
                values[k] = v;
            Json doc = {{"kind", "bench-fit"}, {"params", {{"n", a.n}}}, {"values", values}};
            out << doc.dump() << '\n';
        } else if (s.options().format == Format::Csv) {
            out << "key,value\n";
            for (const auto& [k, v] : kv)
                out << k << ',' << v << '\n';
        } else {
            for (const auto& [k, v] : kv)
                out << k << ": " << v << '\n';
        }
        return;
    }

    if (s.options().format == Format::Json) {
        Json values = Json::array();
        for (const auto& r : rows) {
            Json row = {{"m", r.m}, {"S1", to_decimal(r.s1)}, {"S2", to_decimal(r.s2)}};
            if (timed) {
                row["time_alg1_ns"] = r.t1;
                row["time_alg2_ns"] = r.t2;
            }
            row["chosen"] = std::string(to_string(r.chosen));
            values.push_back(row);
        }
        Json doc = {{"kind", "bench"},
                    {"params", {{"n", a.n}, {"m_min", lo}, {"m_max", hi}}},
                    {"analytic_m_worst", fixed2(worst.approx())},
                    {"practical_crossover", fixed2(practical)},
                    {"values", values}};
        out << doc.dump() << '\n';
        return;
    }

    out << "# n=" << a.n << " analytic_m_worst=" << fixed2(worst.approx())
        << " practical_crossover=" << fixed2(practical) << '\n';
    out << "m,S1,S2" << (timed ? ",time_alg1_ns,time_alg2_ns" : "") << ",chosen\n";
    for (const auto& r : rows) {
        out << r.m << ',' << to_decimal(r.s1) << ',' << to_decimal(r.s2);
        if (timed)
            out << ',' << r.t1 << ',' << r.t2;
        out << ',' << to_string(r.chosen) << '\n';
    }
}

// ---- cache -----------------------------------------------------------------

void describe(std::ostream& out, CacheKind kind, std::span<const Natural> values)
{
    out << "kind: " << (kind == CacheKind::P ? "p" : "q") << '\n'
        << "length: " << values.size() << '\n'
        << "checksum: " << std::hex << std::setw(16) << std::setfill('0')
        << cache_checksum(values) << std::dec << std::setfill(' ') << '\n';
}

void write_cache_file(const std::string& path, CacheKind kind, std::span<const Natural> values)
{
    std::ofstream file(path);
    if (!file)
        throw Failure{kExitData, "cannot write " + path};
    save_cache(file, kind, values);
}

void cmd_cache(Session& s, const CacheArgs& a, std::ostream& out)
{
    if (a.kind != "p" && a.kind != "q")
        usage_error("--kind must be p or q");
    const CacheKind kind = a.kind == "p" ? CacheKind::P : CacheKind::Q;

    if (a.action == "save") {
        if (a.path.empty())
            usage_error("cache save needs a path");
        check_ceiling(a.n, "--n");
        if (kind == CacheKind::P) {
            s.pcache().ensure(a.n);
            write_cache_file(a.path, kind, s.pcache().values().first(a.n + 1));
        } else {
            s.q_of(a.n);
            write_cache_file(a.path, kind, s.qcache().values().first(a.n + 1));
        }
        out << "saved " << a.n + 1 << " values to " << a.path << '\n';
        return;
    }

    if (a.action == "load" || a.action == "info") {
        if (a.path.empty()) {
            if (a.action == "load")
                usage_error("cache load needs a path");
            // Nothing persisted in this process yet.
            describe(out, kind, {});
            return;
        }
        std::ifstream in(a.path);
        if (!in)
            throw Failure{kExitData, "cannot read " + a.path};
        CacheKind found;
        try {
            found = detect_cache_kind(in);
        } catch (const CacheFormatError& e) {
            throw Failure{kExitData, std::string("malformed cache: ") + e.what()};
        }
        const auto values = Session::load_or_fail(in, found);
        if (a.action == "load") {
            // Round-trips through the in-memory cache types.
            if (found == CacheKind::P && !values.empty())
                s.pcache() = PCache::from_values(values, s.pcache().algorithm());
            else if (found == CacheKind::Q && !values.empty())
                s.qcache() = QCache::from_values(values, s.qcache().algorithm());
            if (!a.resave.empty()) {
                const auto held = values.empty()
                                      ? std::span<const Natural>{}
                                      : (found == CacheKind::P ? s.pcache().values()
                                                               : s.qcache().values());
                write_cache_file(a.resave, found, held);
            }
        }
        describe(out, found, values);
        return;
    }
    usage_error("unknown cache action '" + a.action + "'");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Partition counts P(n), P(n,m), Q(n), Q(n,m) in exact arithmetic", "partita"};
    app.fallthrough();
    app.require_subcommand(1);

    Options opt;
    std::string format = "plain";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"plain", "csv", "json"}));
    app.add_option("--out", opt.out_path, "Write output to PATH instead of stdout");
    app.add_option("--algorithm", opt.algorithm, "Force an algorithm for P(n,m)")
        ->check(CLI::IsMember({"auto", "alg1", "alg2", "closed"}));
    app.add_option("--crossover-constant", opt.crossover_constant,
                   "Algorithm 1 runs while m <= c*sqrt(n)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--explain", opt.explain, "Print step estimates and the chosen algorithm");
    app.add_flag("--oracle", opt.use_oracle,
                 "Count by brute-force enumeration instead (slow, small n only)");
    app.add_option("--p-recurrence", opt.p_recurrence, "P list recurrence")
        ->check(CLI::IsMember({"euler", "ewell"}));
    app.add_option("--q-recurrence", opt.q_recurrence, "Q list recurrence")
        ->check(CLI::IsMember({"ewell", "merca"}));
    app.add_option("--cache-file", opt.cache_file,
                   "Load the P cache from PATH and write it back if it grows");

    ScalarArgs p_args, q_args;
    auto* p_cmd = app.add_subcommand("p", "P(n), or P(n,m) when m is given");
    p_cmd->add_option("n", p_args.n)->required();
    p_cmd->add_option("m", p_args.m);
    auto* q_cmd = app.add_subcommand("q", "Q(n), or Q(n,m) when m is given");
    q_cmd->add_option("n", q_args.n)->required();
    q_cmd->add_option("m", q_args.m);

    ListArgs l_args;
    auto* l_cmd = app.add_subcommand("list", "p-row|p-col|q-row|q-col|p-series|q-series");
    l_cmd->add_option("kind", l_args.kind)->required();
    l_cmd->add_option("n", l_args.n)->required();
    l_cmd->add_option("m", l_args.m);

    BenchArgs b_args;
    auto* b_cmd = app.add_subcommand("bench", "Step models and timings for Algorithms 1 and 2");
    b_cmd->add_option("n", b_args.n)->required();
    b_cmd->add_option("--m-min", b_args.m_min);
    b_cmd->add_option("--m-max", b_args.m_max);
    b_cmd->add_option("--reps", b_args.repetitions, "Timing repetitions (median is reported)");
    b_cmd->add_flag("--steps-only", b_args.steps_only, "Skip timings");
    b_cmd->add_flag("--fit-crossover", b_args.fit_crossover,
                    "Report the measured crossover against the analytic one");

    CacheArgs c_args;
    auto* c_cmd = app.add_subcommand("cache", "save|load|info for cache files");
    c_cmd->add_option("action", c_args.action)->required();
    c_cmd->add_option("path", c_args.path);
    c_cmd->add_option("--kind", c_args.kind, "p or q");
    c_cmd->add_option("--n", c_args.n, "Highest index to save");
    c_cmd->add_option("--resave", c_args.resave, "After load, write the cache to PATH");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "partita: " << e.what() << '\n';
        return kExitUsage;
    }
    opt.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Plain;

    try {
        Session session(opt, err);

        std::ofstream file;
        if (!opt.out_path.empty()) {
            file.open(opt.out_path);
            if (!file)
                usage_error("cannot open " + opt.out_path + " for writing");
        }
        std::ostream& dest = opt.out_path.empty() ? out : file;

        if (*p_cmd)
            cmd_scalar(session, p_args, false, dest);
        else if (*q_cmd)
            cmd_scalar(session, q_args, true, dest);
        else if (*l_cmd)
            cmd_list(session, l_args, dest);
        else if (*b_cmd)
            cmd_bench(session, b_args, dest);
        else if (*c_cmd)
            cmd_cache(session, c_args, dest);
        session.persist();
    } catch (const Failure& f) {
        err << "partita: " << f.message << '\n';
        return f.code;
    } catch (const std::bad_alloc&) {
        err << "partita: out of memory\n";
        return kExitData;
    }
    return kExitOk;
}

} // namespace partita::cli
