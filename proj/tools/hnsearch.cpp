// hnsearch: command-line front end over the C API.
//
// Exit status: 0 ok, 1 usage or validation error, 2 no first peak,
// 3 i/o or parse error, 4 internal error.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hanoi/hanoi.h"

namespace fs = std::filesystem;

namespace {

enum exit_code { exit_ok = 0, exit_usage = 1, exit_no_peak = 2, exit_io = 3, exit_internal = 4 };

const std::array<std::string, 4> commands{"topology", "run", "sweep", "fit"};

struct Failure {
    int code;
    std::string message;
};

int exit_for(hn_status s)
{
    switch (s) {
        case HN_OK: return exit_ok;
        case HN_ERR_NO_PEAK: return exit_no_peak;
        case HN_ERR_PARSE:
        case HN_ERR_IO: return exit_io;
        case HN_ERR_INTERNAL: return exit_internal;
        default: return exit_usage;
    }
}

void check(hn_status s)
{
    if (s != HN_OK) throw Failure{exit_for(s), std::string(hn_status_name(s)) + ": " + hn_last_error()};
}

std::string number(double v)
{
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::string trim(std::string s)
{
    const auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
    return s;
}

// Flat `key = value` file; `#` starts a comment. A `command` key names the
// subcommand, every other key becomes `--key value`.
std::pair<std::string, std::vector<std::string>> read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Failure{exit_io, "cannot open config '" + path + "'"};
    std::string command;
    std::vector<std::string> tokens;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Failure{exit_io, path + ": line " + std::to_string(lineno) + ": expected key = value"};
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw Failure{exit_io, path + ": line " + std::to_string(lineno) + ": empty key"};
        std::replace(key.begin(), key.end(), '_', '-');
        if (key == "config") throw Failure{exit_io, path + ": line " + std::to_string(lineno) + ": nested config"};
        if (key == "command") {
            command = value;
            continue;
        }
        tokens.push_back("--" + key);
        tokens.push_back(value);
    }
    return {command, tokens};
}

bool is_command(const std::string& s)
{
    return std::find(commands.begin(), commands.end(), s) != commands.end();
}

// Splices config-file tokens in right after the subcommand so later
// command-line occurrences win.
std::vector<std::string> expand_config(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            config = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (config.empty()) return args;

    auto [command, tokens] = read_config(config);
    auto sub = std::find_if(args.begin(), args.end(), is_command);
    if (sub == args.end()) {
        if (command.empty()) throw Failure{exit_usage, "no subcommand on the command line or in " + config};
        sub = args.insert(args.end(), command);
    } else if (!command.empty() && *sub != command) {
        throw Failure{exit_usage, "config names command '" + command + "' but '" + *sub + "' was given"};
    }
    args.insert(sub + 1, tokens.begin(), tokens.end());
    return args;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what)
{
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        T value{};
        auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
            throw Failure{exit_usage, std::string("bad ") + what + " entry '" + item + "'"};
        }
        out.push_back(value);
    }
    if (out.empty()) throw Failure{exit_usage, std::string(what) + " list is empty"};
    return out;
}

// Shared state of one invocation, filled by CLI11.
struct Options {
    std::string mode = "paired";
    unsigned jobs = 0;
    std::string out_dir = ".";
    std::string dump_state;

    std::string method = "modified";
    int n = 10;
    unsigned k0 = 3;
    double epsilon = 1.0;
    double cos_delta = std::nan("");
    double c = 1.0;
    std::string cos_rule = "inv_log";
    std::string tulsi_axis = "grover";
    long long tmax = 0;
    int smooth_window = 0;
    double height_fraction = 0.7;
    int refine_radius = -1;
    unsigned long long budget = 0;

    std::string variable = "size";
    std::string n_values = "5,6,7,8,9,10,11,12";
    std::string epsilons = "0.25,0.5,0.75,1,1.25,1.5,1.75,2";
    std::string c_values = "0.5,0.75,1,1.25,1.5,2,2.5";

    std::string in;
    std::string x = "N";
    std::string y = "cost_total";
    int min_n = 5;

    std::string out;
    std::string report;
};

struct Manifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> outputs;

    void add(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
};

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf.data();
}

void append_manifest(const Options& opt, const Manifest& m, double seconds, int status)
{
    const fs::path path = fs::path(opt.out_dir) / "manifest.csv";
    const bool fresh = !fs::exists(path);
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw Failure{exit_io, "cannot append to " + path.string()};
    if (fresh) out << "timestamp,command,version,parameters,outputs,wall_seconds,exit_status\n";
    std::string params = m.command;
    for (const auto& [k, v] : m.params) params += " --" + k + " " + v;
    std::string outputs;
    for (const auto& o : m.outputs) outputs += (outputs.empty() ? "" : ";") + o;
    out << utc_timestamp() << ',' << m.command << ',' << hn_version() << ',' << csv_quote(params) << ','
        << csv_quote(outputs) << ',' << number(seconds) << ',' << status << '\n';
}

std::string output_path(const Options& opt, const std::string& given, const std::string& fallback)
{
    if (given == "-") return given;
    if (!given.empty()) return given;
    return (fs::path(opt.out_dir) / fallback).string();
}

int method_of(const std::string& s)
{
    if (s == "abstract") return HN_METHOD_ABSTRACT;
    if (s == "tulsi") return HN_METHOD_TULSI;
    return HN_METHOD_MODIFIED;
}

int mode_of(const std::string& s)
{
    return s == "chain" ? HN_MODE_CHAIN : HN_MODE_PAIRED;
}

hn_search_config search_config(const Options& opt, Manifest& m)
{
    hn_search_config cfg;
    hn_search_config_init(&cfg);
    cfg.method = method_of(opt.method);
    cfg.n = opt.n;
    cfg.k0 = opt.k0;
    cfg.epsilon = opt.epsilon;
    cfg.edge_mode = mode_of(opt.mode);
    cfg.t_max = opt.tmax;
    cfg.smooth_window = opt.smooth_window;
    cfg.height_fraction = opt.height_fraction;
    cfg.refine_radius = opt.refine_radius;
    if (opt.budget) cfg.budget = opt.budget;
    cfg.reflection_axis = opt.tulsi_axis == "coin" ? HN_AXIS_COIN : HN_AXIS_GROVER;
    cfg.c = opt.c;
    if (!std::isnan(opt.cos_delta)) {
        if (!(opt.cos_delta >= -1.0 && opt.cos_delta <= 1.0)) {
            throw Failure{exit_usage, "--cos-delta " + number(opt.cos_delta) + " outside [-1, 1]"};
        }
        cfg.cos_delta_rule = HN_COS_DELTA_EXPLICIT;
        cfg.delta = std::acos(opt.cos_delta);
    } else {
        cfg.cos_delta_rule = opt.cos_rule == "inv_sqrt_log" ? HN_COS_DELTA_INV_SQRT_LOG : HN_COS_DELTA_INV_LOG;
    }

    m.add("method", opt.method);
    m.add("mode", opt.mode);
    m.add("k0", std::to_string(opt.k0));
    m.add("epsilon", number(opt.epsilon));
    if (cfg.method == HN_METHOD_TULSI) {
        if (cfg.cos_delta_rule == HN_COS_DELTA_EXPLICIT) {
            m.add("cos-delta", number(opt.cos_delta));
        } else {
            m.add("cos-delta-rule", opt.cos_rule);
            m.add("c", number(opt.c));
        }
        m.add("tulsi-axis", opt.tulsi_axis);
    }
    if (opt.tmax) m.add("tmax", std::to_string(opt.tmax));
    if (opt.smooth_window) m.add("smooth-window", std::to_string(opt.smooth_window));
    m.add("height-fraction", number(opt.height_fraction));
    if (opt.refine_radius >= 0) m.add("refine-radius", std::to_string(opt.refine_radius));
    if (opt.budget) m.add("budget", std::to_string(opt.budget));
    return cfg;
}

void ensure_out_dir(const Options& opt)
{
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) throw Failure{exit_io, "cannot create " + opt.out_dir + ": " + ec.message()};
}

int cmd_topology(const Options& opt, Manifest& m)
{
    m.add("n", std::to_string(opt.n));
    m.add("mode", opt.mode);
    hn_topology* topo = nullptr;
    check(hn_topology_create(opt.n, mode_of(opt.mode), &topo));
    const std::string path = output_path(opt, opt.out, "edges.csv");
    m.outputs.push_back(path);
    const hn_status s = hn_topology_write_edges_csv(topo, path.c_str());
    hn_topology_destroy(topo);
    check(s);
    return exit_ok;
}

int cmd_run(const Options& opt, Manifest& m)
{
    m.add("n", std::to_string(opt.n));
    hn_search_config cfg = search_config(opt, m);
    check(hn_search_config_validate(&cfg));

    hn_run* run = nullptr;
    check(hn_run_create(&cfg, &run));
    std::unique_ptr<hn_run, void (*)(hn_run*)> guard(run, hn_run_destroy);

    const std::string series_path = output_path(opt, opt.out, "series.csv");
    m.outputs.push_back(series_path);
    check(hn_run_write_series_csv(run, series_path.c_str()));
    if (!opt.dump_state.empty()) {
        m.outputs.push_back(opt.dump_state);
        check(hn_run_write_state_csv(run, opt.dump_state.c_str()));
    }

    hn_peak_report report;
    const hn_status peak = hn_run_peak(run, &report);
    if (peak == HN_ERR_NO_PEAK) {
        std::cerr << "hnsearch: no first peak: " << hn_last_error() << " (series written to " << series_path
                  << ")\n";
        return exit_no_peak;
    }
    check(peak);
    const std::string report_path = output_path(opt, opt.report, "report.csv");
    m.outputs.push_back(report_path);
    check(hn_run_write_report_csv(run, report_path.c_str()));
    std::cout << "t_f=" << report.t_f << " p_f=" << number(report.p_f) << " cost_single="
              << number(report.cost_single) << " cost_total=" << number(report.cost_total)
              << " repetitions=" << report.repetitions << '\n';
    return exit_ok;
}

int cmd_sweep(const Options& opt, Manifest& m)
{
    hn_search_config cfg = search_config(opt, m);
    int variable = HN_SWEEP_SIZE;
    if (opt.variable == "epsilon") variable = HN_SWEEP_EPSILON;
    if (opt.variable == "delta") variable = HN_SWEEP_DELTA;
    m.add("variable", opt.variable);
    if (variable != HN_SWEEP_SIZE) m.add("n", std::to_string(opt.n));
    cfg.n = opt.n;

    hn_sweep_spec* spec = nullptr;
    check(hn_sweep_spec_create(&cfg, variable, &spec));
    std::unique_ptr<hn_sweep_spec, void (*)(hn_sweep_spec*)> spec_guard(spec, hn_sweep_spec_destroy);
    if (variable == HN_SWEEP_SIZE) {
        const auto sizes = parse_list<int>(opt.n_values, "n-values");
        check(hn_sweep_spec_set_sizes(spec, sizes.data(), sizes.size()));
        m.add("n-values", opt.n_values);
    } else if (variable == HN_SWEEP_EPSILON) {
        const auto eps = parse_list<double>(opt.epsilons, "epsilons");
        check(hn_sweep_spec_set_epsilons(spec, eps.data(), eps.size()));
        m.add("epsilons", opt.epsilons);
    } else {
        const auto cs = parse_list<double>(opt.c_values, "c-values");
        check(hn_sweep_spec_set_c_values(spec, cs.data(), cs.size()));
        m.add("c-values", opt.c_values);
    }
    check(hn_sweep_spec_set_jobs(spec, opt.jobs));

    hn_sweep_result* result = nullptr;
    check(hn_sweep_run(spec, &result));
    std::unique_ptr<hn_sweep_result, void (*)(hn_sweep_result*)> result_guard(result, hn_sweep_result_destroy);

    const std::string path = output_path(opt, opt.out, "sweep.csv");
    m.outputs.push_back(path);
    check(hn_sweep_result_write_csv(result, path.c_str()));

    std::size_t rows = 0, missing = 0;
    check(hn_sweep_result_rows(result, &rows));
    for (std::size_t i = 0; i < rows; ++i) {
        int ok = 0;
        check(hn_sweep_result_row(result, i, nullptr, nullptr, &ok));
        if (!ok) ++missing;
    }
    std::cout << rows << " rows, " << missing << " without a first peak -> " << path << '\n';
    return missing ? exit_no_peak : exit_ok;
}

int cmd_fit(const Options& opt, Manifest& m)
{
    m.add("in", opt.in);
    m.add("x", opt.x);
    m.add("y", opt.y);
    m.add("min-n", std::to_string(opt.min_n));
    hn_scaling_fit fit;
    check(hn_fit_table_csv(opt.in.c_str(), opt.x.c_str(), opt.y.c_str(), opt.min_n, &fit));
    const std::string path = output_path(opt, opt.out, "fit.csv");
    m.outputs.push_back(path);
    check(hn_fit_write_csv(&fit, path.c_str()));
    if (path != "-") {
        std::cout << opt.y << " = " << number(fit.prefactor) << " * " << opt.x << "^" << number(fit.exponent)
                  << "  r^2=" << number(fit.r_squared) << "  points=" << fit.points_used << '\n';
    }
    return exit_ok;
}

void add_search_options(CLI::App* cmd, Options& opt)
{
    cmd->add_option("--method", opt.method, "abstract|tulsi|modified")
        ->check(CLI::IsMember({"abstract", "tulsi", "modified"}));
    cmd->add_option("--k0", opt.k0, "marked vertex");
    cmd->add_option("--epsilon", opt.epsilon, "coin parameter in (0, 2]");
    cmd->add_option("--cos-delta", opt.cos_delta, "explicit cos(delta) for tulsi");
    cmd->add_option("--c", opt.c, "scale of the cos(delta) rule");
    cmd->add_option("--cos-delta-rule", opt.cos_rule, "inv_log|inv_sqrt_log")
        ->check(CLI::IsMember({"inv_log", "inv_sqrt_log"}));
    cmd->add_option("--tulsi-axis", opt.tulsi_axis, "grover|coin")->check(CLI::IsMember({"grover", "coin"}));
    cmd->add_option("--tmax", opt.tmax, "step horizon, 0 for ceil(6 N^0.75)");
    cmd->add_option("--smooth-window", opt.smooth_window, "odd moving-average width, 0 for automatic");
    cmd->add_option("--height-fraction", opt.height_fraction, "peak gate relative to the smoothed maximum");
    cmd->add_option("--refine-radius", opt.refine_radius, "raw argmax radius around the smoothed peak");
    cmd->add_option("--budget", opt.budget, "cap on amplitude updates per run");
}

}  // namespace

int main(int argc, char** argv)
{
    Options opt;
    CLI::App app{"Quantum spatial search on degree-4 Hanoi networks", "hnsearch"};
    app.set_version_flag("--version", std::string(hn_version()));
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    app.add_option("--mode", opt.mode, "edge mode: paired|chain")->check(CLI::IsMember({"paired", "chain"}));
    app.add_option("--jobs", opt.jobs, "worker threads, 0 for all cores");
    app.add_option("--out-dir", opt.out_dir, "directory for outputs and manifest.csv");
    app.add_option("--dump-state", opt.dump_state, "write the final state vector (run only)");
    std::string config_placeholder;
    app.add_option("--config", config_placeholder, "flat key = value file; flags override it");

    auto* topology = app.add_subcommand("topology", "write the edge list");
    topology->add_option("--n", opt.n, "levels, N = 2^n")->required();
    topology->add_option("--out", opt.out, "output CSV, - for stdout");

    auto* run = app.add_subcommand("run", "one search run: series and first-peak report");
    run->add_option("--n", opt.n, "levels, N = 2^n");
    add_search_options(run, opt);
    run->add_option("--out", opt.out, "series CSV");
    run->add_option("--report", opt.report, "report CSV");

    auto* sweep = app.add_subcommand("sweep", "sweep size, epsilon or the cos(delta) scale");
    sweep->add_option("--variable", opt.variable, "size|epsilon|delta")
        ->check(CLI::IsMember({"size", "epsilon", "delta"}));
    sweep->add_option("--n", opt.n, "levels for epsilon and delta sweeps");
    sweep->add_option("--n-values", opt.n_values, "comma list of n");
    sweep->add_option("--epsilons", opt.epsilons, "comma list of epsilon");
    sweep->add_option("--c-values", opt.c_values, "comma list of c");
    add_search_options(sweep, opt);
    sweep->add_option("--out", opt.out, "sweep CSV");

    auto* fit = app.add_subcommand("fit", "power-law fit of one column against another");
    fit->add_option("--in", opt.in, "input CSV, e.g. a sweep table")->required();
    fit->add_option("--x", opt.x, "x column");
    fit->add_option("--y", opt.y, "y column");
    fit->add_option("--min-n", opt.min_n, "skip rows with n below this");
    fit->add_option("--out", opt.out, "fit CSV, - for stdout");

    for (auto* sub : {topology, run, sweep, fit}) {
        sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        for (auto* o : sub->get_options()) o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }

    std::vector<std::string> args;
    try {
        args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    } catch (const Failure& f) {
        std::cerr << "hnsearch: " << f.message << '\n';
        return f.code;
    }

    Manifest manifest;
    const auto start = std::chrono::steady_clock::now();
    int status = exit_ok;
    try {
        if (!opt.dump_state.empty() && !run->parsed()) {
            throw Failure{exit_usage, "--dump-state applies to run only"};
        }
        ensure_out_dir(opt);
        if (topology->parsed()) {
            manifest.command = "topology";
            status = cmd_topology(opt, manifest);
        } else if (run->parsed()) {
            manifest.command = "run";
            status = cmd_run(opt, manifest);
        } else if (sweep->parsed()) {
            manifest.command = "sweep";
            status = cmd_sweep(opt, manifest);
        } else {
            manifest.command = "fit";
            status = cmd_fit(opt, manifest);
        }
    } catch (const Failure& f) {
        std::cerr << "hnsearch: " << f.message << '\n';
        if (f.code == exit_usage && topology->parsed()) std::cerr << topology->help();
        status = f.code;
    }

    if (!manifest.command.empty() && !manifest.outputs.empty()) {
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        try {
            append_manifest(opt, manifest, seconds, status);
        } catch (const Failure& f) {
            std::cerr << "hnsearch: " << f.message << '\n';
            if (status == exit_ok) status = f.code;
        }
    }
    return status;
}
