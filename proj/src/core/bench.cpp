#include "sipdec/bench.hpp"

#include "sipdec/graph_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace sipdec {

ManifestError::ManifestError(std::size_t line, const std::string & what) :
    std::runtime_error("manifest line " + std::to_string(line) + ": " + what),
    line_(line)
{
}

namespace {

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    auto out = std::string(s.substr(b, e - b + 1));
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"')
        out = out.substr(1, out.size() - 2);
    return out;
}

double to_double(const std::string & value, std::size_t line, const std::string & key)
{
    try {
        std::size_t used = 0;
        double d = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return d;
    }
    catch (const std::exception &) {
        throw ManifestError(line, "'" + key + "' expects a number, got '" + value + "'");
    }
}

std::uint64_t to_unsigned(const std::string & value, std::size_t line, const std::string & key)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ManifestError(line, "'" + key + "' expects a non-negative integer, got '" + value + "'");
    return v;
}

PatternMode to_mode(const std::string & value, std::size_t line)
{
    if (value == "embedded")
        return PatternMode::embedded;
    if (value == "independent")
        return PatternMode::independent;
    throw ManifestError(line, "mode must be embedded or independent, got '" + value + "'");
}

void apply(ClassSpec & spec, const std::string & key, const std::string & value, std::size_t line)
{
    if (key == "generator") {
        if (value == "random")
            spec.generator = ClassSpec::Generator::random;
        else if (value == "mesh")
            spec.generator = ClassSpec::Generator::mesh;
        else
            throw ManifestError(line, "generator must be random or mesh, got '" + value + "'");
    }
    else if (key == "n")
        spec.random.n = to_unsigned(value, line, key);
    else if (key == "eta")
        spec.random.eta = to_double(value, line, key);
    else if (key == "side")
        spec.mesh.side = to_unsigned(value, line, key);
    else if (key == "dims")
        spec.mesh.dims = to_unsigned(value, line, key);
    else if (key == "rho")
        spec.mesh.rho = to_double(value, line, key);
    else if (key == "alpha")
        spec.random.alpha = spec.mesh.alpha = to_double(value, line, key);
    else if (key == "mode")
        spec.random.mode = spec.mesh.mode = to_mode(value, line);
    else if (key == "instances")
        spec.instances = to_unsigned(value, line, key);
    else if (key == "seed")
        spec.seed = to_unsigned(value, line, key);
    else if (key == "time_limit")
        spec.time_limit_s = to_double(value, line, key);
    else if (key == "node_limit")
        spec.node_limit = to_unsigned(value, line, key);
    else if (key == "switch_fraction")
        spec.switch_fraction = to_double(value, line, key);
    else if (key == "search_mode") {
        if (value == "first")
            spec.search_mode = SearchMode::first;
        else if (value == "count")
            spec.search_mode = SearchMode::count_all;
        else if (value == "enum")
            spec.search_mode = SearchMode::enumerate_all;
        else
            throw ManifestError(line, "search_mode must be first, count or enum");
    }
    else if (key == "models") {
        spec.models.clear();
        std::stringstream items(value);
        std::string item;
        while (std::getline(items, item, ',')) {
            auto name = trim(item);
            auto model = parse_model(name);
            if (!model)
                throw ManifestError(line, "unknown model '" + name + "'");
            spec.models.push_back(*model);
        }
        if (spec.models.empty())
            throw ManifestError(line, "models list is empty");
    }
    else
        throw ManifestError(line, "unknown key '" + key + "'");
}

std::string format_number(double v)
{
    if (std::isnan(v))
        return {};
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
}

} // namespace

Manifest parse_manifest(std::istream & in)
{
    Manifest manifest;
    ClassSpec defaults;
    ClassSpec * current = &defaults;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto text = trim(raw);
        if (text.empty() || text.front() == '#')
            continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw ManifestError(line, "unterminated section header");
            auto label = trim(std::string_view(text).substr(1, text.size() - 2));
            if (label == "class")
                label.clear();
            else if (label.starts_with("class "))
                label = trim(std::string_view(label).substr(6));
            if (label.empty())
                throw ManifestError(line, "empty class label");
            manifest.classes.push_back(defaults);
            manifest.classes.back().label = label;
            current = &manifest.classes.back();
            continue;
        }
        auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ManifestError(line, "expected 'key = value'");
        apply(*current, trim(std::string_view(text).substr(0, eq)), trim(std::string_view(text).substr(eq + 1)), line);
    }
    if (manifest.classes.empty())
        throw ManifestError(line, "no [class ...] sections");
    return manifest;
}

Manifest read_manifest(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open manifest '" + path.string() + "'");
    return parse_manifest(in);
}

GeneratedInstance generate_instance(const ClassSpec & spec, std::size_t index)
{
    auto seed = derive_seed(spec.seed, index);
    if (spec.generator == ClassSpec::Generator::random) {
        auto p = spec.random;
        p.seed = seed;
        return gen_random(p);
    }
    auto p = spec.mesh;
    p.seed = seed;
    return gen_mesh(p);
}

std::string to_json_line(const InstanceRecord & r)
{
    nlohmann::json j{
        {"class", r.class_label},
        {"model", r.model},
        {"instance", r.instance},
        {"seed", r.seed},
        {"status", r.solved ? "solved" : "timeout"},
        {"solutions", r.solutions.str()},
        {"elapsed_s", r.elapsed_s},
        {"nodes", r.search_nodes},
        {"dec_events", r.decomposition_events},
        {"used_dec", r.used_decomposition},
        {"S", r.heuristic_fraction},
    };
    return j.dump();
}

InstanceRecord parse_json_line(std::string_view line)
{
    auto j = nlohmann::json::parse(line);
    InstanceRecord r;
    r.class_label = j.at("class").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.instance = j.at("instance").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.solved = j.at("status").get<std::string>() == "solved";
    r.solutions = BigCount(j.at("solutions").get<std::string>());
    r.elapsed_s = j.at("elapsed_s").get<double>();
    r.search_nodes = j.at("nodes").get<std::uint64_t>();
    r.decomposition_events = j.at("dec_events").get<std::uint64_t>();
    r.used_decomposition = j.at("used_dec").get<bool>();
    r.heuristic_fraction = j.at("S").get<double>();
    return r;
}

std::vector<InstanceRecord> read_log(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open log '" + path.string() + "'");
    std::vector<InstanceRecord> records;
    std::string line;
    while (std::getline(in, line))
        if (!trim(line).empty())
            records.push_back(parse_json_line(line));
    return records;
}

std::vector<BenchRecord> aggregate(std::span<const InstanceRecord> records)
{
    struct Acc {
        std::size_t run = 0, solved = 0, used = 0;
        double time_sum = 0, time_sq = 0, events = 0, s_sum = 0;
        BigCount solutions = 0;
    };
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, Acc> accs;
    for (const auto & r : records) {
        auto key = std::make_pair(r.class_label, r.model);
        if (!accs.contains(key))
            order.push_back(key);
        auto & a = accs[key];
        ++a.run;
        a.s_sum += r.heuristic_fraction;
        if (r.solved) {
            ++a.solved;
            a.time_sum += r.elapsed_s;
            a.time_sq += r.elapsed_s * r.elapsed_s;
            a.solutions += r.solutions;
            a.events += static_cast<double>(r.decomposition_events);
            if (r.used_decomposition)
                ++a.used;
        }
    }

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<BenchRecord> rows;
    for (const auto & key : order) {
        const auto & a = accs[key];
        BenchRecord row;
        row.class_label = key.first;
        row.model = key.second;
        row.instances_run = a.run;
        row.solved_percent = 100.0 * static_cast<double>(a.solved) / static_cast<double>(a.run);
        row.instances_using_decomposition = a.used;
        row.mean_heuristic_fraction = a.s_sum / static_cast<double>(a.run);
        if (a.solved == 0) {
            row.mean_time_s = row.stddev_time_s = row.mean_solutions = row.mean_decomposition_events = nan;
        }
        else {
            const double k = static_cast<double>(a.solved);
            row.mean_time_s = a.time_sum / k;
            row.stddev_time_s = std::sqrt(std::max(0.0, a.time_sq / k - row.mean_time_s * row.mean_time_s));
            row.mean_solutions = a.solutions.convert_to<double>() / k;
            row.mean_decomposition_events = a.events / k;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_csv(std::span<const BenchRecord> rows, std::ostream & out)
{
    out << csv_header << '\n';
    for (const auto & r : rows)
        out << r.class_label << ',' << r.model << ',' << r.instances_run << ',' << format_number(r.solved_percent) << ','
            << format_number(r.mean_time_s) << ',' << format_number(r.stddev_time_s) << ','
            << format_number(r.mean_solutions) << ',' << r.instances_using_decomposition << ','
            << format_number(r.mean_decomposition_events) << ',' << format_number(r.mean_heuristic_fraction) << '\n';
}

std::vector<BenchRecord> run_bench(const Manifest & manifest, const std::filesystem::path & log_path,
    const ProgressCallback & progress)
{
    {
        std::ofstream log(log_path, std::ios::trunc);
        if (!log)
            throw IoError("cannot open log '" + log_path.string() + "' for writing");
        for (const auto & spec : manifest.classes)
            for (std::size_t i = 0; i < spec.instances; ++i) {
                auto generated = generate_instance(spec, i);
                for (auto model : spec.models) {
                    ModelConfig config;
                    config.model = model;
                    config.search_mode = spec.search_mode;
                    config.time_limit_s = spec.time_limit_s;
                    config.switch_fraction = spec.switch_fraction;
                    config.rng_seed = derive_seed(spec.seed, i);
                    if (spec.node_limit > 0)
                        config.node_limit = spec.node_limit;
                    auto result = solve(generated.instance, config);

                    InstanceRecord r;
                    r.class_label = spec.label;
                    r.model = std::string(model_name(model));
                    r.instance = i;
                    r.seed = config.rng_seed;
                    r.solved = result.status == SolveStatus::solved;
                    r.solutions = result.solution_count;
                    r.elapsed_s = result.elapsed_s;
                    r.search_nodes = result.search_nodes;
                    r.decomposition_events = result.decomposition_events;
                    r.used_decomposition = result.used_decomposition;
                    r.heuristic_fraction = result.heuristic_fraction;
                    log << to_json_line(r) << '\n' << std::flush;
                    if (progress)
                        progress(r);
                }
            }
    }
    auto records = read_log(log_path);
    return aggregate(records);
}

} // namespace sipdec
