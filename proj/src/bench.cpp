#include "refnet/bench.hpp"

#include <algorithm>
#include <cctype>
#include <condition_variable>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <stop_token>
#include <thread>

namespace refnet {

PreparedInstance prepare_matrix(std::string name, const SparseMatrix& a, const PrepareOptions& options) {
    SparseMatrix m = options.scaling ? scale_matrix(a, options.scale) : a;
    SignedGraph g = build_signed_graph(m);
    return PreparedInstance{std::move(name), std::move(m), std::move(g)};
}

PreparedInstance prepare_instance(const std::filesystem::path& path, std::optional<MatrixFormat> format,
                                  const PrepareOptions& options) {
    return prepare_matrix(path.stem().string(), read_matrix(path, format), options);
}

ExactResult mbd_exact_timed(const SignedGraph& g, std::size_t k_max, double timeout_seconds) {
    if (timeout_seconds <= 0) return mbd_exact(g, k_max);
    std::stop_source cancel;
    std::jthread watchdog([&cancel, timeout_seconds](std::stop_token done) {
        std::mutex m;
        std::condition_variable_any cv;
        std::unique_lock lock(m);
        const bool finished = cv.wait_for(lock, done, std::chrono::duration<double>(timeout_seconds), [] { return false; });
        if (!finished && !done.stop_requested()) cancel.request_stop();
    });
    ExactResult r = mbd_exact(g, k_max, cancel.get_token());
    watchdog.request_stop();
    return r;
}

std::string HeuristicConfig::column() const {
    std::string out = "SGA";
    if (repeats > 1) out += std::to_string(repeats);
    out += '_';
    out += to_string(strategy);
    return out;
}

const std::array<HeuristicConfig, 9>& bench_configs() {
    static const std::array<HeuristicConfig, 9> configs = [] {
        std::array<HeuristicConfig, 9> c{};
        std::size_t i = 0;
        for (std::size_t r : {1, 3, 80}) {
            for (ForestStrategy s : all_strategies) c[i++] = {r, s};
        }
        return c;
    }();
    return configs;
}

BenchRecord bench_instance(const PreparedInstance& inst, const BenchOptions& options) {
    BenchRecord rec;
    rec.instance = inst.name;
    rec.n = inst.graph.n();
    rec.seed = options.seed;

    double single_total = 0;
    const auto& configs = bench_configs();
    for (std::size_t c = 0; c < configs.size(); ++c) {
        const auto r = sga_repeat(inst.graph, configs[c].repeats, configs[c].strategy, options.seed);
        rec.k[c] = r.k;
        if (configs[c].repeats == 1) single_total += r.elapsed.count();
    }
    rec.t1 = single_total / 3;

    const ExactResult ex = mbd_exact_timed(inst.graph, inst.graph.n(), options.timeout_seconds);
    rec.status = to_string(ex.status);
    if (ex.status == ExactStatus::optimal) {
        rec.k_exact = ex.k;
        rec.t_exact = ex.elapsed.count();
    }
    return rec;
}

std::vector<std::filesystem::path> instance_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext == ".mps" || ext == ".coord") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
        return std::pair(a.stem().string(), a.filename().string()) < std::pair(b.stem().string(), b.filename().string());
    });
    return files;
}

std::vector<BenchRecord> run_bench(const std::filesystem::path& dir, const BenchOptions& options) {
    std::vector<BenchRecord> records;
    for (const auto& path : instance_files(dir)) {
        try {
            records.push_back(bench_instance(prepare_instance(path, std::nullopt, options.prepare), options));
        } catch (const std::exception& e) {
            BenchRecord rec;
            rec.instance = path.stem().string();
            rec.status = "error";
            rec.seed = options.seed;
            rec.error = e.what();
            records.push_back(std::move(rec));
        }
    }
    return records;
}

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << csv_cell(cells[i]);
    }
    out << '\n';
}

} // namespace

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records, bool timing) {
    const auto& configs = bench_configs();
    std::vector<std::string> header{"instance", "k"};
    for (const auto& c : configs) header.push_back(c.column());
    for (const char* h : {"t", "t1", "n", "status", "seed"}) header.emplace_back(h);
    write_row(out, header);

    for (const auto& r : records) {
        std::vector<std::string> row{r.instance};
        const bool ok = r.error.empty();
        if (r.k_exact) {
            row.push_back(std::to_string(*r.k_exact));
        } else {
            row.emplace_back(r.status == "timeout" ? "---" : "");
        }
        for (std::size_t c = 0; c < configs.size(); ++c) row.push_back(ok ? std::to_string(r.k[c]) : "");
        if (!timing) {
            row.emplace_back("");
        } else if (r.t_exact) {
            row.push_back(fixed(*r.t_exact, 2));
        } else {
            row.emplace_back(r.status == "timeout" ? "---" : "");
        }
        row.push_back(timing && ok ? fixed(r.t1, 3) : "");
        row.push_back(ok ? std::to_string(r.n) : "");
        row.push_back(r.status);
        row.push_back(std::to_string(r.seed));
        write_row(out, row);
    }
    if (records.empty()) return;

    std::vector<const BenchRecord*> ok, known;
    for (const auto& r : records) {
        if (!r.error.empty()) continue;
        ok.push_back(&r);
        if (r.k_exact) known.push_back(&r);
    }
    const std::size_t tail = 5;

    std::vector<std::string> avg{"Average", ""};
    for (std::size_t c = 0; c < configs.size(); ++c) {
        double sum = 0;
        for (const auto* r : ok) sum += static_cast<double>(r->k[c]);
        avg.push_back(ok.empty() ? "" : fixed(sum / static_cast<double>(ok.size()), 2));
    }
    double t_sum = 0, t1_sum = 0;
    std::size_t t_count = 0;
    for (const auto* r : ok) {
        t1_sum += r->t1;
        if (r->t_exact) {
            t_sum += *r->t_exact;
            ++t_count;
        }
    }
    avg.push_back(timing && t_count ? fixed(t_sum / static_cast<double>(t_count), 2) : "");
    avg.push_back(timing && !ok.empty() ? fixed(t1_sum / static_cast<double>(ok.size()), 3) : "");
    avg.resize(avg.size() + tail - 2);
    write_row(out, avg);

    std::vector<std::string> diff{"Avg. diff.", known.empty() ? "" : fixed(0, 2)};
    std::vector<std::string> hits{"# exact sol.", std::to_string(known.size())};
    for (std::size_t c = 0; c < configs.size(); ++c) {
        double sum = 0;
        std::size_t equal = 0;
        for (const auto* r : known) {
            sum += static_cast<double>(r->k[c]) - static_cast<double>(*r->k_exact);
            if (r->k[c] == *r->k_exact) ++equal;
        }
        diff.push_back(known.empty() ? "" : fixed(sum / static_cast<double>(known.size()), 2));
        hits.push_back(std::to_string(equal));
    }
    diff.resize(diff.size() + tail);
    hits.resize(hits.size() + tail);
    write_row(out, diff);
    write_row(out, hits);
}

nlohmann::json to_json(const BenchRecord& r) {
    nlohmann::json j;
    j["instance"] = r.instance;
    j["n"] = r.n;
    j["k_exact"] = r.k_exact ? nlohmann::json(*r.k_exact) : nlohmann::json(nullptr);
    j["status"] = r.status;
    j["t_exact"] = r.t_exact ? nlohmann::json(*r.t_exact) : nlohmann::json(nullptr);
    nlohmann::json k = nlohmann::json::object();
    const auto& configs = bench_configs();
    for (std::size_t c = 0; c < configs.size(); ++c) k[configs[c].column()] = r.k[c];
    j["k"] = r.error.empty() ? std::move(k) : nlohmann::json(nullptr);
    j["t1"] = r.t1;
    j["seed"] = r.seed;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

} // namespace refnet
