#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <system_error>

#include "refnet/bench.hpp"

using namespace refnet;
using nlohmann::json;

namespace {

constexpr int exit_parse = 2;
constexpr int exit_io = 3;

struct InputOptions {
    std::string file;
    std::string format;
    bool no_scaling = false;
    bool fixpoint = false;

    void add_to(CLI::App& cmd) {
        cmd.add_option("file", file, "Matrix file (MPS or coordinate format)")->required();
        cmd.add_option("--format", format, "Input format; guessed from the extension when omitted")
            ->check(CLI::IsMember({"mps", "coord"}));
        cmd.add_flag("--no-scaling", no_scaling, "Skip the scaling step");
        cmd.add_flag("--scale-fixpoint", fixpoint, "Repeat extended scaling until nothing changes");
    }

    PrepareOptions prepare() const {
        PrepareOptions p;
        p.scaling = !no_scaling;
        p.scale.fixpoint = fixpoint;
        return p;
    }

    PreparedInstance load() const {
        std::optional<MatrixFormat> f;
        if (format == "mps") f = MatrixFormat::mps;
        if (format == "coord") f = MatrixFormat::coord;
        return prepare_instance(file, f, prepare());
    }
};

std::vector<std::string> row_labels(const PreparedInstance& inst, std::span<const Vertex> vertices) {
    std::vector<std::string> out;
    for (Vertex v : vertices) out.push_back(inst.matrix.row_label(inst.graph.origin(v)));
    return out;
}

std::string joined(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ' ';
        out += s;
    }
    return out;
}

struct ExtractArgs {
    InputOptions in;
    std::string forest = "dfs";
    std::size_t repeats = 1;
    std::uint64_t seed = 1;
    bool vc = false;
    std::string out = "table";
};

int run_extract(const ExtractArgs& a) {
    const auto inst = a.in.load();
    const ForestStrategy strategy = *parse_strategy(a.forest);

    std::optional<HeuristicResult> r;
    if (a.vc) {
        r = sga_vc_repeat(inst.graph, a.repeats, strategy, a.seed);
        if (!r) {
            std::cerr << "error: vertex cover budget exhausted\n";
            return 1;
        }
    } else {
        r = sga_repeat(inst.graph, a.repeats, strategy, a.seed);
    }

    std::vector<std::size_t> rows;
    for (Vertex v : r->retained) rows.push_back(inst.graph.origin(v));
    const auto network = extract_network(inst.matrix, rows);
    const bool is_network = is_network_matrix(network.network);

    const auto retained = row_labels(inst, r->retained);
    const auto reflection = row_labels(inst, r->reflection);
    std::string method = a.vc ? "SGA+VC" : "SGA";
    if (a.repeats > 1) method += std::to_string(a.repeats);
    method += "(" + std::string(to_string(strategy)) + ")";

    if (a.out == "json") {
        json j{{"instance", inst.name},       {"method", method},         {"n", r->n},
               {"k", r->k},                   {"retained_count", retained.size()},
               {"retained", retained},        {"reflection", reflection}, {"seed", a.seed},
               {"network_verified", is_network}};
        std::cout << j.dump(2) << '\n';
    } else if (a.out == "csv") {
        std::cout << "instance,method,n,k,retained,seed\n";
        std::cout << inst.name << ',' << method << ',' << r->n << ',' << r->k << ',' << retained.size() << ','
                  << a.seed << '\n';
    } else {
        std::cout << "instance   " << inst.name << '\n'
                  << "method     " << method << '\n'
                  << "n          " << r->n << '\n'
                  << "k          " << r->k << '\n'
                  << "|I|        " << retained.size() << '\n'
                  << "retained   " << joined(retained) << '\n'
                  << "reflected  " << joined(reflection) << '\n'
                  << "network    " << (is_network ? "yes" : "no") << '\n';
    }
    return 0;
}

struct ExactArgs {
    InputOptions in;
    double timeout = 3600;
    std::optional<std::size_t> max_k;
    std::string out = "table";
};

int run_exact(const ExactArgs& a) {
    const auto inst = a.in.load();
    const auto r = mbd_exact_timed(inst.graph, a.max_k.value_or(inst.graph.n()), a.timeout);
    const auto deleted = row_labels(inst, r.deletion);
    const bool solved = r.status == ExactStatus::optimal;

    if (a.out == "json") {
        json j{{"instance", inst.name},
               {"n", inst.graph.n()},
               {"status", to_string(r.status)},
               {"k", solved ? json(r.k) : json(nullptr)},
               {"deletion", deleted},
               {"elapsed", r.elapsed.count()},
               {"nodes_explored", r.nodes_explored}};
        std::cout << j.dump(2) << '\n';
    } else {
        char elapsed[32];
        std::snprintf(elapsed, sizeof elapsed, "%.3f", r.elapsed.count());
        std::cout << "instance   " << inst.name << '\n'
                  << "n          " << inst.graph.n() << '\n'
                  << "status     " << to_string(r.status) << '\n'
                  << "k          ";
        if (solved) {
            std::cout << r.k;
        } else if (r.status == ExactStatus::timeout) {
            std::cout << "---";
        } else {
            std::cout << "> " << r.k - 1;
        }
        std::cout << '\n'
                  << "deleted    " << joined(deleted) << '\n'
                  << "elapsed    " << elapsed << " s\n"
                  << "nodes      " << r.nodes_explored << '\n';
    }
    return 0;
}

struct BenchArgs {
    std::string dir;
    double timeout = 3600;
    std::uint64_t seed = 1;
    std::string out;
    std::string json_out;
    bool no_timing = false;
    bool no_scaling = false;
    bool fixpoint = false;
};

void open_output(std::ofstream& f, const std::string& path) {
    f.open(path);
    if (!f) throw std::system_error(errno, std::generic_category(), "cannot write " + path);
}

int run_bench_cmd(const BenchArgs& a) {
    if (!std::filesystem::is_directory(a.dir)) {
        throw std::system_error(std::make_error_code(std::errc::not_a_directory), a.dir);
    }
    BenchOptions opts;
    opts.timeout_seconds = a.timeout;
    opts.seed = a.seed;
    opts.prepare.scaling = !a.no_scaling;
    opts.prepare.scale.fixpoint = a.fixpoint;
    const auto records = run_bench(a.dir, opts);

    if (a.out.empty()) {
        write_bench_csv(std::cout, records, !a.no_timing);
    } else {
        std::ofstream f;
        open_output(f, a.out);
        write_bench_csv(f, records, !a.no_timing);
    }
    if (!a.json_out.empty()) {
        json j = json::array();
        for (const auto& r : records) j.push_back(to_json(r));
        std::ofstream f;
        open_output(f, a.json_out);
        f << j.dump(2) << '\n';
    }
    for (const auto& r : records) {
        if (!r.error.empty()) std::cerr << r.instance << ": " << r.error << '\n';
    }
    return 0;
}

struct ScaleArgs {
    std::string file;
    std::string format;
    std::string out;
    bool fixpoint = false;
};

int run_scale(const ScaleArgs& a) {
    std::optional<MatrixFormat> f;
    if (a.format == "mps") f = MatrixFormat::mps;
    if (a.format == "coord") f = MatrixFormat::coord;
    const SparseMatrix raw = read_matrix(a.file, f);
    const SparseMatrix scaled = scale_matrix(raw, ScalingOptions{a.fixpoint});
    if (a.out.empty()) {
        write_coord(std::cout, scaled);
    } else {
        std::ofstream o;
        open_output(o, a.out);
        write_coord(o, scaled);
    }
    std::cerr << "unit rows: " << classify_rows(raw).unit_count() << " -> " << classify_rows(scaled).unit_count()
              << " of " << raw.n_rows() << '\n';
    return 0;
}

int run_graph(const InputOptions& in) {
    const auto inst = in.load();
    write_signed_graph(std::cout, inst.graph);
    return 0;
}

template <class Fn>
int guarded(Fn fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const std::system_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Embedded reflected network detection in sparse matrices"};
    app.require_subcommand(1);

    ExtractArgs ex;
    auto* extract = app.add_subcommand("extract", "Find a large reflected network with the spanning-forest heuristic");
    ex.in.add_to(*extract);
    extract->add_option("--forest", ex.forest, "Spanning forest strategy")
        ->check(CLI::IsMember({"rs", "bfs", "dfs"}, CLI::ignore_case));
    extract->add_option("--repeats", ex.repeats, "Randomized repetitions")->check(CLI::PositiveNumber);
    extract->add_option("--seed", ex.seed, "Random seed");
    extract->add_flag("--vc", ex.vc, "Use a minimum vertex cover instead of the greedy step");
    extract->add_option("--out", ex.out, "Output style")->check(CLI::IsMember({"table", "json", "csv"}));

    ExactArgs exa;
    auto* exact = app.add_subcommand("exact", "Minimum balanced deletion by the fixed-parameter solver");
    exa.in.add_to(*exact);
    exact->add_option("--timeout", exa.timeout, "Seconds before giving up")->check(CLI::PositiveNumber);
    exact->add_option("--max-k", exa.max_k, "Largest deletion size to search");
    exact->add_option("--out", exa.out, "Output style")->check(CLI::IsMember({"table", "json"}));

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Run every heuristic configuration and the exact solver on a directory");
    bench->add_option("dir", ba.dir, "Directory of .mps / .coord files")->required();
    bench->add_option("--timeout", ba.timeout, "Exact solver limit per instance, seconds")->check(CLI::PositiveNumber);
    bench->add_option("--seed", ba.seed, "Random seed");
    bench->add_option("--out", ba.out, "CSV report path (stdout when omitted)");
    bench->add_option("--json", ba.json_out, "Also write the records as JSON");
    bench->add_flag("--no-timing", ba.no_timing, "Leave timing cells empty");
    bench->add_flag("--no-scaling", ba.no_scaling, "Skip the scaling step");
    bench->add_flag("--scale-fixpoint", ba.fixpoint, "Repeat extended scaling until nothing changes");

    ScaleArgs sa;
    auto* scale = app.add_subcommand("scale", "Scale a matrix and write it in coordinate format");
    scale->add_option("file", sa.file, "Matrix file")->required();
    scale->add_option("--format", sa.format, "Input format")->check(CLI::IsMember({"mps", "coord"}));
    scale->add_option("--out", sa.out, "Output path (stdout when omitted)");
    scale->add_flag("--scale-fixpoint", sa.fixpoint, "Repeat extended scaling until nothing changes");

    InputOptions ga;
    auto* graph = app.add_subcommand("graph", "Print the signed graph of the (0,±1)-rows");
    ga.add_to(*graph);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*extract) return guarded([&] { return run_extract(ex); });
    if (*exact) return guarded([&] { return run_exact(exa); });
    if (*bench) return guarded([&] { return run_bench_cmd(ba); });
    if (*scale) return guarded([&] { return run_scale(sa); });
    if (*graph) return guarded([&] { return run_graph(ga); });
    return 1;
}
