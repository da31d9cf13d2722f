// borderline: command-line front end for the streaming change detector.
//
// Subcommands:
//   synth       generate a workload stream (and its true-change CSV)
//   detect      stream bits from a file or stdin through the detector
//   experiment  run seeded detector experiments over a parameter grid
//   bench       measure push throughput and per-query cost
//
// Exit codes: 0 success, 1 usage error, 2 input error.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "borderline/blockseq.hpp"
#include "borderline/detector.hpp"
#include "borderline/evalharness.hpp"
#include "borderline/solver.hpp"
#include "borderline/synthgen.hpp"

namespace {

using namespace borderline;

/// Problems with input data (unreadable files, malformed lines): exit 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Grid syntax: comma-separated atoms, each a value or a range a..b[:step].

std::vector<std::string> split_atoms(const std::string& text) {
    std::vector<std::string> atoms;
    std::string atom;
    std::istringstream in(text);
    while (std::getline(in, atom, ',')) {
        if (!atom.empty()) atoms.push_back(atom);
    }
    return atoms;
}

std::uint64_t parse_u64(const std::string& text) {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    if (used != text.size()) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    return value;
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != text.size()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return value;
}

std::vector<std::uint64_t> parse_u64_grid(const std::string& text,
                                          std::uint64_t default_step) {
    std::vector<std::uint64_t> values;
    for (const std::string& atom : split_atoms(text)) {
        const std::size_t dots = atom.find("..");
        if (dots == std::string::npos) {
            values.push_back(parse_u64(atom));
            continue;
        }
        const std::size_t colon = atom.find(':', dots + 2);
        const std::uint64_t from = parse_u64(atom.substr(0, dots));
        const std::uint64_t to =
            parse_u64(atom.substr(dots + 2, colon == std::string::npos
                                                ? std::string::npos
                                                : colon - dots - 2));
        const std::uint64_t step = colon == std::string::npos
                                       ? default_step
                                       : parse_u64(atom.substr(colon + 1));
        if (step == 0) throw std::invalid_argument("range step must be >= 1");
        if (to < from) throw std::invalid_argument("descending range: '" + atom + "'");
        for (std::uint64_t v = from; v <= to; v += step) {
            values.push_back(v);
            if (v > to - step) break;  // guard wrap-around
        }
    }
    return values;
}

std::vector<double> parse_double_grid(const std::string& text) {
    std::vector<double> values;
    for (const std::string& atom : split_atoms(text)) {
        const std::size_t dots = atom.find("..");
        if (dots == std::string::npos) {
            values.push_back(parse_double(atom));
            continue;
        }
        const std::size_t colon = atom.find(':', dots + 2);
        const double from = parse_double(atom.substr(0, dots));
        const double to =
            parse_double(atom.substr(dots + 2, colon == std::string::npos
                                                   ? std::string::npos
                                                   : colon - dots - 2));
        const double step =
            colon == std::string::npos ? 1.0 : parse_double(atom.substr(colon + 1));
        if (!(step > 0.0)) throw std::invalid_argument("range step must be > 0");
        if (to < from) throw std::invalid_argument("descending range: '" + atom + "'");
        for (double v = from; v <= to + step * 1e-9; v += step) {
            values.push_back(std::min(v, to));
        }
    }
    return values;
}

// ---------------------------------------------------------------------------
// Stream plumbing: '-' is stdin / stdout.

class Input {
public:
    explicit Input(const std::string& path) : path_(path) {
        if (path == "-") {
            stream_ = &std::cin;
            return;
        }
        file_.open(path);
        if (!file_) throw InputError("cannot open input file: " + path);
        stream_ = &file_;
    }
    std::istream& stream() { return *stream_; }
    const std::string& name() const { return path_ == "-" ? kStdinName : path_; }

private:
    inline static const std::string kStdinName = "<stdin>";
    std::string path_;
    std::ifstream file_;
    std::istream* stream_ = nullptr;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (path == "-") {
            stream_ = &std::cout;
            return;
        }
        file_.open(path);
        if (!file_) throw InputError("cannot open output file: " + path);
        stream_ = &file_;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

WorkloadKind parse_kind_checked(const std::string& text) {
    WorkloadKind kind{};
    if (!parse_workload_kind(text, kind)) {
        throw std::invalid_argument("unknown workload kind: '" + text + "'");
    }
    return kind;
}

void check_config(const DetectorConfig& config) {
    if (!(config.tau >= 0.0)) throw std::invalid_argument("--tau must be >= 0");
    if (!(config.eps >= 0.0 && config.eps < 1.0)) {
        throw std::invalid_argument("--eps must lie in [0, 1)");
    }
    if (config.query_period == 0) {
        throw std::invalid_argument("--query-period must be >= 1");
    }
}

std::string format_double(double value) {
    std::ostringstream os;
    os << std::setprecision(12) << value;
    return os.str();
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    std::string kind;
    std::uint64_t length = 200'000;
    std::uint64_t seed = 0;
    std::uint64_t segment = 10'000;
    std::string output = "-";
    std::string truth;  // empty: derive from output, or skip for stdout
};

void run_synth(const SynthArgs& args) {
    WorkloadSpec spec;
    spec.kind = parse_kind_checked(args.kind);
    spec.length = args.length;
    spec.seed = args.seed;
    spec.segment = args.segment;
    const Workload workload = generate(spec);

    {
        Output out(args.output);
        std::ostream& os = out.stream();
        for (const std::uint8_t bit : workload.bits) {
            os << (bit ? '1' : '0') << '\n';
        }
        if (!os) throw InputError("failed writing stream to " + args.output);
    }

    std::string truth_path = args.truth;
    if (truth_path.empty()) {
        if (args.output == "-") return;  // no default truth sink for stdout
        truth_path = args.output + ".truth.csv";
    }
    Output truth(truth_path);
    truth.stream() << "position\n";
    for (const std::uint64_t pos : workload.true_changes) {
        truth.stream() << pos << '\n';
    }
}

// ---------------------------------------------------------------------------
// detect

struct DetectArgs {
    std::string input = "-";
    std::string output = "-";
    double tau = 6.0;
    double eps = 0.0;
    std::uint64_t query_period = 1;
};

void run_detect(const DetectArgs& args) {
    DetectorConfig config{args.tau, args.eps, args.query_period};
    check_config(config);

    Input in(args.input);
    Output out(args.output);
    std::ostream& os = out.stream();
    os << "detected_at,split_at,score,direction,window_len\n";
    os.flush();

    Detector detector(config);
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in.stream(), line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line != "0" && line != "1") {
            throw InputError(in.name() + ":" + std::to_string(lineno) +
                             ": expected '0' or '1', got '" + line + "'");
        }
        const auto event = detector.observe(line[0] == '1');
        if (!event) continue;
        os << event->detected_at << ',' << event->split_at << ','
           << format_double(event->score) << ',' << to_string(event->direction)
           << ',' << event->window_len << '\n';
        os.flush();  // rows must be visible while the stream keeps running
    }
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentArgs {
    std::string workload = "step";
    std::string seeds = "0";
    std::string taus = "6";
    std::string epses = "0";
    std::string lengths;  // overrides --length when set
    std::uint64_t length = 200'000;
    std::uint64_t segment = 10'000;
    std::uint64_t query_period = 1;
    bool no_ratios = false;
    std::string output = "-";
};

void run_experiment_cmd(const ExperimentArgs& args) {
    const WorkloadKind kind = parse_kind_checked(args.workload);
    const std::vector<std::uint64_t> seeds = parse_u64_grid(args.seeds, 1);
    const std::vector<double> taus = parse_double_grid(args.taus);
    const std::vector<double> epses = parse_double_grid(args.epses);
    const std::vector<std::uint64_t> lengths =
        args.lengths.empty() ? std::vector<std::uint64_t>{args.length}
                             : parse_u64_grid(args.lengths, 100'000);

    Output out(args.output);
    std::ostream& os = out.stream();
    os << "workload,length,segment,seed,tau,eps,query_period,queries,detected,"
          "true_changes,matched,missed,false_positives,mean_delay,min_ratio,"
          "avg_ratio,cand_frac_n,cand_frac_k,wall_time_s\n";

    HarnessOptions options;
    options.ratios = !args.no_ratios;

    for (const std::uint64_t length : lengths) {
        for (const std::uint64_t seed : seeds) {
            for (const double tau : taus) {
                for (const double eps : epses) {
                    DetectorConfig config{tau, eps, args.query_period};
                    check_config(config);
                    WorkloadSpec spec{kind, length, seed, args.segment};
                    const RunMetrics metrics = run_experiment(spec, config, options);
                    const double nan = std::numeric_limits<double>::quiet_NaN();
                    os << to_string(kind) << ',' << length << ',' << args.segment
                       << ',' << seed << ',' << format_double(tau) << ','
                       << format_double(eps) << ',' << args.query_period << ','
                       << metrics.queries << ',' << metrics.events.size() << ','
                       << metrics.true_changes << ',' << metrics.matched << ','
                       << metrics.true_changes - metrics.matched << ','
                       << metrics.false_positives << ','
                       << format_double(metrics.mean_delay()) << ','
                       << format_double(options.ratios ? metrics.min_ratio : nan)
                       << ','
                       << format_double(options.ratios ? metrics.avg_ratio : nan)
                       << ',' << format_double(metrics.cand_frac_n) << ','
                       << format_double(metrics.cand_frac_k) << ','
                       << format_double(metrics.wall_time) << '\n';
                    os.flush();
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
    std::string kind = "hill";
    std::uint64_t pushes = 1'000'000;
    std::uint64_t seed = 0;
    std::uint64_t segment = 10'000;
    std::string epses = "0.1";
    std::uint64_t queries = 0;
    std::string lengths;  // query checkpoints; defaults to --pushes
    bool csv = false;
    std::string output = "-";
};

void run_bench(const BenchArgs& args) {
    const WorkloadKind kind = parse_kind_checked(args.kind);
    Output out(args.output);
    std::ostream& os = out.stream();

    if (args.csv) os << "metric,kind,n,eps,queries,value\n";

    if (args.pushes == 0) {
        if (!args.csv) os << "nothing to do: zero pushes requested\n";
        return;
    }

    const WorkloadSpec push_spec{kind, args.pushes, args.seed, args.segment};
    const Workload workload = generate(push_spec);

    BlockSequence seq;
    const auto start = std::chrono::steady_clock::now();
    for (const std::uint8_t bit : workload.bits) seq.push(bit != 0);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    const double per_push = elapsed / static_cast<double>(args.pushes);
    const double merges_per_push = static_cast<double>(seq.merge_count()) /
                                   static_cast<double>(seq.push_count());
    if (args.csv) {
        os << "push_wall_s," << to_string(kind) << ',' << args.pushes << ",,,"
           << format_double(elapsed) << '\n';
        os << "push_ns," << to_string(kind) << ',' << args.pushes << ",,,"
           << format_double(per_push * 1e9) << '\n';
        os << "merges_per_push," << to_string(kind) << ',' << args.pushes
           << ",,," << format_double(merges_per_push) << '\n';
        os << "blocks," << to_string(kind) << ',' << args.pushes << ",,,"
           << seq.size() << '\n';
    } else {
        os << "pushes: " << args.pushes << " (" << to_string(kind) << ", seed "
           << args.seed << ")\n";
        os << "elapsed: " << format_double(elapsed) << " s ("
           << format_double(per_push * 1e9) << " ns/push)\n";
        os << "merges/push: " << format_double(merges_per_push)
           << ", final blocks: " << seq.size() << '\n';
    }

    if (args.queries == 0) return;

    const std::vector<std::uint64_t> lengths =
        args.lengths.empty() ? std::vector<std::uint64_t>{args.pushes}
                             : parse_u64_grid(args.lengths, 100'000);
    const std::vector<double> epses = parse_double_grid(args.epses);

    if (!args.csv) os << "query cost (mean over " << args.queries << " runs):\n";
    for (const std::uint64_t length : lengths) {
        const WorkloadSpec spec{kind, length, args.seed, args.segment};
        const Workload w = generate(spec);
        BlockSequence window;
        for (const std::uint8_t bit : w.bits) window.push(bit != 0);
        for (const double eps : epses) {
            if (!(eps >= 0.0 && eps < 1.0)) {
                throw std::invalid_argument("--eps values must lie in [0, 1)");
            }
            const QueryCost cost = measure_query_cost(window, eps, args.queries);
            if (args.csv) {
                os << "query_wall_s," << to_string(kind) << ',' << length << ','
                   << format_double(eps) << ',' << args.queries << ','
                   << format_double(cost.seconds) << '\n';
                os << "query_tested," << to_string(kind) << ',' << length << ','
                   << format_double(eps) << ',' << args.queries << ','
                   << format_double(cost.tested) << '\n';
            } else {
                os << "  n=" << length << " eps=" << format_double(eps) << ": "
                   << format_double(cost.seconds * 1e3) << " ms/query, "
                   << format_double(cost.tested) << " splits tested, k="
                   << cost.blocks << '\n';
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming change detection over binary sequences"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "generate a workload stream");
    synth->add_option("--kind", synth_args.kind, "ind, step, slope, or hill")
        ->required();
    synth->add_option("--length", synth_args.length, "entries to generate");
    synth->add_option("--seed", synth_args.seed, "generator seed");
    synth->add_option("--segment", synth_args.segment,
                      "segment length for step and slope");
    synth->add_option("--output,-o", synth_args.output,
                      "stream file, '-' for stdout");
    synth->add_option("--truth", synth_args.truth,
                      "true-change CSV (default: <output>.truth.csv)");
    synth->callback([&] { run_synth(synth_args); });

    DetectArgs detect_args;
    CLI::App* detect =
        app.add_subcommand("detect", "stream bits through the detector");
    detect->add_option("--input,-i", detect_args.input,
                       "one '0' or '1' per line, '-' for stdin");
    detect->add_option("--output,-o", detect_args.output,
                       "event CSV, '-' for stdout");
    detect->add_option("--tau", detect_args.tau, "threshold slack");
    detect->add_option("--eps", detect_args.eps, "approximation budget");
    detect->add_option("--query-period", detect_args.query_period,
                       "pushes between queries");
    detect->callback([&] { run_detect(detect_args); });

    ExperimentArgs exp_args;
    CLI::App* experiment =
        app.add_subcommand("experiment", "seeded detector runs over a grid");
    experiment->add_option("--workload", exp_args.workload,
                           "ind, step, slope, or hill");
    experiment->add_option("--seeds", exp_args.seeds, "seed grid, e.g. 1..5");
    experiment->add_option("--tau", exp_args.taus, "tau grid, e.g. 1..10 or 2,6");
    experiment->add_option("--eps", exp_args.epses, "eps grid, e.g. 0,0.5,0.9");
    experiment->add_option("--length", exp_args.length, "stream length");
    experiment->add_option("--lengths", exp_args.lengths,
                           "length grid (overrides --length), default step 100000");
    experiment->add_option("--segment", exp_args.segment, "segment length");
    experiment->add_option("--query-period", exp_args.query_period,
                           "pushes between queries");
    experiment->add_flag("--no-ratios", exp_args.no_ratios,
                         "skip per-query ratio measurement");
    experiment->add_option("--output,-o", exp_args.output, "CSV, '-' for stdout");
    experiment->callback([&] { run_experiment_cmd(exp_args); });

    BenchArgs bench_args;
    CLI::App* bench =
        app.add_subcommand("bench", "push throughput and query cost");
    bench->add_option("--kind", bench_args.kind, "workload kind");
    bench->add_option("--pushes", bench_args.pushes, "entries to push");
    bench->add_option("--seed", bench_args.seed, "generator seed");
    bench->add_option("--segment", bench_args.segment, "segment length");
    bench->add_option("--eps", bench_args.epses, "eps grid for query timing");
    bench->add_option("--queries", bench_args.queries,
                      "repetitions per query measurement (0: skip)");
    bench->add_option("--lengths", bench_args.lengths,
                      "window sizes for query timing (default: --pushes)");
    bench->add_flag("--csv", bench_args.csv, "machine-readable output");
    bench->add_option("--output,-o", bench_args.output, "report, '-' for stdout");
    bench->callback([&] { run_bench(bench_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
