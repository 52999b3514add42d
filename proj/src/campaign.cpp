#include "emopt/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "emopt/benchmarks.hpp"

namespace emopt::campaign {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kAlgorithms{"emo", "obemo"};

std::string lambda_scope_name(LambdaScope s) {
    return s == LambdaScope::per_particle ? "per-particle" : "per-coordinate";
}

LambdaScope parse_lambda_scope(const std::string& s) {
    if (s == "per-coordinate") return LambdaScope::per_coordinate;
    if (s == "per-particle") return LambdaScope::per_particle;
    throw ConfigError("lambda_scope must be per-coordinate or per-particle, got " + s);
}

Termination parse_termination(const std::string& s) {
    if (s == "max_iterations") return Termination::max_iterations;
    if (s == "stagnation") return Termination::stagnation;
    if (s == "target_reached") return Termination::target_reached;
    throw ConfigError("unknown termination reason in records: " + s);
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known,
                    std::string_view where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (auto it = obj.find(key); it != obj.end() && !it->is_null()) out = it->get<T>();
}

json emo_to_json(const CampaignConfig& c) {
    json e;
    e["population_size"] = c.emo.population_size;
    e["local_search_iters"] = c.emo.local_search_iters;
    e["local_search_delta"] = c.emo.local_search_delta;
    e["max_iterations"] = c.max_iterations ? json(*c.max_iterations) : json(nullptr);
    e["stagnation_tolerance"] = c.emo.stagnation_tolerance;
    e["stagnation_window"] = c.emo.stagnation_window;
    e["target_value"] = c.emo.target_value ? json(*c.emo.target_value) : json(nullptr);
    e["lambda_scope"] = lambda_scope_name(c.emo.lambda_scope);
    return e;
}

json config_json(const CampaignConfig& c) {
    json j;
    j["functions"] = c.functions;
    j["algorithms"] = c.algorithms;
    j["runs"] = c.runs;
    j["base_seed"] = c.base_seed;
    j["output_dir"] = c.output_dir.string();
    std::vector<std::string> formats;
    if (c.write_csv) formats.emplace_back("csv");
    if (c.write_json) formats.emplace_back("json");
    j["formats"] = formats;
    j["threads"] = c.threads;
    j["emo"] = emo_to_json(c);
    j["opposition"] = {{"use_opposed_init", c.opposition.use_opposed_init},
                       {"use_generation_jump", c.opposition.use_generation_jump},
                       {"jump_probability", c.opposition.jump_probability}};
    return j;
}

CampaignConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j,
                   {"functions", "algorithms", "runs", "base_seed", "output_dir", "formats",
                    "threads", "emo", "opposition"},
                   "config");
    CampaignConfig c;
    read(j, "functions", c.functions);
    read(j, "algorithms", c.algorithms);
    read(j, "runs", c.runs);
    read(j, "base_seed", c.base_seed);
    read(j, "threads", c.threads);
    if (auto it = j.find("output_dir"); it != j.end()) c.output_dir = it->get<std::string>();
    if (auto it = j.find("formats"); it != j.end()) {
        c.write_csv = c.write_json = false;
        for (const auto& f : *it) {
            const auto s = f.get<std::string>();
            if (s == "csv")
                c.write_csv = true;
            else if (s == "json")
                c.write_json = true;
            else
                throw ConfigError("unknown output format: " + s);
        }
    }
    if (auto it = j.find("emo"); it != j.end()) {
        const json& e = *it;
        reject_unknown(e,
                       {"population_size", "local_search_iters", "local_search_delta",
                        "max_iterations", "stagnation_tolerance", "stagnation_window",
                        "target_value", "lambda_scope"},
                       "emo");
        read(e, "population_size", c.emo.population_size);
        read(e, "local_search_iters", c.emo.local_search_iters);
        read(e, "local_search_delta", c.emo.local_search_delta);
        read(e, "stagnation_tolerance", c.emo.stagnation_tolerance);
        read(e, "stagnation_window", c.emo.stagnation_window);
        if (auto m = e.find("max_iterations"); m != e.end() && !m->is_null())
            c.max_iterations = m->get<std::size_t>();
        if (auto t = e.find("target_value"); t != e.end() && !t->is_null())
            c.emo.target_value = t->get<double>();
        if (auto s = e.find("lambda_scope"); s != e.end())
            c.emo.lambda_scope = parse_lambda_scope(s->get<std::string>());
    }
    if (auto it = j.find("opposition"); it != j.end()) {
        const json& o = *it;
        reject_unknown(o, {"use_opposed_init", "use_generation_jump", "jump_probability"},
                       "opposition");
        read(o, "use_opposed_init", c.opposition.use_opposed_init);
        read(o, "use_generation_jump", c.opposition.use_generation_jump);
        read(o, "jump_probability", c.opposition.jump_probability);
    }
    return c;
}

std::ofstream open_for_write(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string());
}

void write_file(const fs::path& path, const std::string& content) {
    auto out = open_for_write(path);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

json run_to_json(const StoredRun& r) {
    json j;
    j["run"] = r.run;
    j["seed"] = r.seed;
    j["best"] = r.record.best.fitness;
    j["best_position"] = r.record.best.position;
    j["initial_best"] = r.record.initial_best;
    j["iterations"] = r.record.iterations;
    j["evaluations"] = r.record.evaluations;
    j["termination"] = to_string(r.record.termination);
    j["trace"] = r.record.best_trace;
    return j;
}

StoredRun run_from_json(const json& j) {
    StoredRun r;
    r.run = j.at("run").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.record.best.fitness = j.at("best").get<double>();
    r.record.best.position = j.at("best_position").get<Vector>();
    r.record.initial_best = j.at("initial_best").get<double>();
    r.record.iterations = j.at("iterations").get<std::size_t>();
    r.record.evaluations = j.at("evaluations").get<std::uint64_t>();
    r.record.termination = parse_termination(j.at("termination").get<std::string>());
    r.record.best_trace = j.at("trace").get<Vector>();
    return r;
}

}  // namespace

void CampaignConfig::validate() {
    if (functions.empty()) throw ConfigError("no functions selected");
    if (algorithms.empty()) throw ConfigError("no algorithms selected");
    for (auto& f : functions) {
        const auto* entry = bench::find(f);
        if (!entry) throw ConfigError("unknown function id: " + f);
        f = entry->id;
    }
    for (auto& a : algorithms) {
        std::string lower = a;
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        if (std::find(kAlgorithms.begin(), kAlgorithms.end(), lower) == kAlgorithms.end())
            throw ConfigError("unknown algorithm id: " + a);
        a = lower;
    }
    auto unique = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!unique(functions)) throw ConfigError("duplicate function id");
    if (!unique(algorithms)) throw ConfigError("duplicate algorithm id");
    if (runs < 1) throw ConfigError("runs must be >= 1");
    if (!write_csv && !write_json) throw ConfigError("at least one output format is required");
    if (!(opposition.jump_probability >= 0.0 && opposition.jump_probability <= 1.0))
        throw ConfigError("jump_probability must lie in [0, 1]");
    try {
        EmoParams probe = emo;
        probe.max_iterations = max_iterations.value_or(1);
        probe.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

CampaignConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config value: ") + e.what());
    }
}

CampaignConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string config_to_json(const CampaignConfig& config) { return config_json(config).dump(2); }

std::uint64_t cell_seed(std::uint64_t base_seed, std::string_view function_id,
                        std::string_view algorithm_id, std::size_t run) {
    const std::string key = std::to_string(base_seed) + "/" + std::string(function_id) + "/" +
                            std::string(algorithm_id) + "/" + std::to_string(run);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : key) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    h += 0x9e3779b97f4a7c15ULL;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

std::size_t default_max_iterations(std::string_view function_id) {
    return bench::get(function_id).dims() > 6 ? 1000 : 2000;
}

RunRecord run_single(const CampaignConfig& config, std::string_view function_id,
                     std::string_view algorithm_id, std::uint64_t seed) {
    const auto& entry = bench::get(function_id);
    EmoParams params = config.emo;
    params.max_iterations = config.max_iterations.value_or(default_max_iterations(entry.id));
    Objective objective = entry.objective();
    RngStream rng(seed);
    if (algorithm_id == "emo") return run_emo(objective, params, rng);
    if (algorithm_id == "obemo") return run_obemo(objective, params, config.opposition, rng);
    throw ConfigError("unknown algorithm id: " + std::string(algorithm_id));
}

bool CampaignReport::complete() const {
    if (cells.size() != config.functions.size() * config.algorithms.size()) return false;
    return std::all_of(cells.begin(), cells.end(),
                       [&](const Cell& c) { return c.runs.size() == config.runs; });
}

std::size_t resolve_threads(const CampaignConfig& config) {
    if (config.threads > 0) return config.threads;
    if (const char* env = std::getenv("EMOPT_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void summarize(CampaignReport& report) {
    report.comparisons.clear();
    for (auto& cell : report.cells) {
        if (cell.runs.empty()) continue;
        std::vector<RunRecord> records;
        records.reserve(cell.runs.size());
        for (const auto& r : cell.runs) records.push_back(r.record);
        cell.aggregate = stats::aggregate(records, cell.function_id, cell.algorithm_id);
    }

    const auto& algs = report.config.algorithms;
    const bool have_pair = std::find(algs.begin(), algs.end(), "emo") != algs.end() &&
                           std::find(algs.begin(), algs.end(), "obemo") != algs.end();
    if (!have_pair) return;
    if (report.config.runs < 5) {
        report.warnings.push_back("runs=" + std::to_string(report.config.runs) +
                                  " is below the minimum Wilcoxon sample size of 5; "
                                  "significance tests skipped");
        return;
    }
    for (const auto& f : report.config.functions) {
        const Cell* ob = nullptr;
        const Cell* em = nullptr;
        for (const auto& c : report.cells) {
            if (c.function_id != f) continue;
            if (c.algorithm_id == "obemo") ob = &c;
            if (c.algorithm_id == "emo") em = &c;
        }
        if (!ob || !em || ob->runs.size() != em->runs.size() || ob->runs.empty()) continue;
        const auto [best, iters] = stats::compare_algorithms(ob->aggregate, em->aggregate);
        report.comparisons.push_back({f, "obemo_vs_emo", best, iters});
    }
}

CampaignReport run_campaign(const CampaignConfig& input) {
    CampaignReport report;
    report.config = input;
    report.config.validate();
    const CampaignConfig& config = report.config;

    for (const auto& f : config.functions) {
        for (const auto& a : config.algorithms) {
            Cell cell;
            cell.function_id = f;
            cell.algorithm_id = a;
            cell.runs.resize(config.runs);
            report.cells.push_back(std::move(cell));
        }
    }

    const std::size_t total = report.cells.size() * config.runs;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t task = next++; task < total; task = next++) {
            Cell& cell = report.cells[task / config.runs];
            StoredRun& slot = cell.runs[task % config.runs];
            slot.run = task % config.runs;
            slot.seed = cell_seed(config.base_seed, cell.function_id, cell.algorithm_id, slot.run);
            slot.record = run_single(config, cell.function_id, cell.algorithm_id, slot.seed);
        }
    };
    const std::size_t threads = std::min(resolve_threads(config), std::max<std::size_t>(total, 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    summarize(report);
    return report;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_tables(const CampaignReport& report, const fs::path& dir) {
    if (!report.complete())
        throw PartialCampaignError("campaign is incomplete; refusing to emit tables");
    ensure_directory(dir);

    if (report.config.write_csv) {
        std::string comparison =
            "function,algorithm,averaged_best,averaged_iterations,averaged_evaluations\n";
        for (const auto& c : report.cells) {
            comparison += csv_escape(c.function_id) + "," + csv_escape(c.algorithm_id) + "," +
                          format_number(c.aggregate.averaged_best) + "," +
                          format_number(c.aggregate.averaged_iterations) + "," +
                          format_number(c.aggregate.averaged_evaluations) + "\n";
        }
        write_file(dir / "comparison.csv", comparison);

        std::string wilcoxon = "function,pair,metric,statistic,p_value,significant\n";
        for (const auto& p : report.comparisons) {
            for (const auto& [metric, res] :
                 {std::pair{"best", p.best}, std::pair{"iterations", p.iterations}}) {
                wilcoxon += csv_escape(p.function_id) + "," + csv_escape(p.pair) + "," + metric +
                            "," + format_number(res.statistic) + "," +
                            format_number(res.p_value) + "," +
                            (res.significant_at_5pct ? "true" : "false") + "\n";
            }
        }
        write_file(dir / "wilcoxon.csv", wilcoxon);

        for (const auto& c : report.cells) {
            std::string trace = "iteration,best_so_far\n";
            const auto& t = c.aggregate.best_trace;
            for (std::size_t i = 0; i < t.size(); ++i)
                trace += std::to_string(i + 1) + "," + format_number(t[i]) + "\n";
            write_file(dir / ("trace_" + c.function_id + "_" + c.algorithm_id + ".csv"), trace);
        }
    }

    if (report.config.write_json) {
        json j;
        j["schema_version"] = 1;
        j["config"] = config_json(report.config);
        j["cells"] = json::array();
        for (const auto& c : report.cells) {
            const auto& a = c.aggregate;
            j["cells"].push_back({{"function", c.function_id},
                                  {"algorithm", c.algorithm_id},
                                  {"runs", a.runs},
                                  {"averaged_best", a.averaged_best},
                                  {"averaged_iterations", a.averaged_iterations},
                                  {"averaged_evaluations", a.averaged_evaluations},
                                  {"best_values", a.best_values},
                                  {"iteration_counts", a.iteration_counts},
                                  {"best_trace", a.best_trace}});
        }
        j["comparisons"] = json::array();
        for (const auto& p : report.comparisons) {
            for (const auto& [metric, res] :
                 {std::pair{"best", p.best}, std::pair{"iterations", p.iterations}}) {
                j["comparisons"].push_back({{"function", p.function_id},
                                            {"pair", p.pair},
                                            {"metric", metric},
                                            {"statistic", res.statistic},
                                            {"p_value", res.p_value},
                                            {"significant", res.significant_at_5pct}});
            }
        }
        j["warnings"] = report.warnings;
        write_file(dir / "report.json", j.dump(2) + "\n");
    }
}

void save_records(const CampaignReport& report, const fs::path& dir) {
    ensure_directory(dir);
    json j;
    j["config"] = config_json(report.config);
    j["cells"] = json::array();
    for (const auto& c : report.cells) {
        json cell{{"function", c.function_id}, {"algorithm", c.algorithm_id}};
        cell["runs"] = json::array();
        for (const auto& r : c.runs) cell["runs"].push_back(run_to_json(r));
        j["cells"].push_back(std::move(cell));
    }
    write_file(dir / "records.json", j.dump() + "\n");

    if (report.config.write_csv) {
        std::string runs = "function,algorithm,run,seed,best,iterations,evaluations,termination\n";
        for (const auto& c : report.cells) {
            for (const auto& r : c.runs) {
                runs += csv_escape(c.function_id) + "," + csv_escape(c.algorithm_id) + "," +
                        std::to_string(r.run) + "," + std::to_string(r.seed) + "," +
                        format_number(r.record.best.fitness) + "," +
                        std::to_string(r.record.iterations) + "," +
                        std::to_string(r.record.evaluations) + "," +
                        to_string(r.record.termination) + "\n";
            }
        }
        write_file(dir / "runs.csv", runs);
    }
}

CampaignReport load_records(const fs::path& dir) {
    const fs::path path = dir / "records.json";
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path.string());
    CampaignReport report;
    try {
        const json j = json::parse(in);
        report.config = config_from_json(j.at("config"));
        report.config.validate();
        for (const auto& cj : j.at("cells")) {
            Cell cell;
            cell.function_id = cj.at("function").get<std::string>();
            cell.algorithm_id = cj.at("algorithm").get<std::string>();
            for (const auto& rj : cj.at("runs")) cell.runs.push_back(run_from_json(rj));
            report.cells.push_back(std::move(cell));
        }
    } catch (const json::exception& e) {
        throw ConfigError("malformed records file " + path.string() + ": " + e.what());
    }
    summarize(report);
    return report;
}

}  // namespace emopt::campaign
