#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "splinequant/reporting.hpp"

namespace {

namespace sq = splinequant;
namespace rep = splinequant::reporting;

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// key=value lines; blank lines and # comments are skipped.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw sq::config_error(path + ":" + std::to_string(lineno) +
                                   ": expected key=value");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw sq::config_error("config value for '" + key + "' is not an integer: " + value);
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw sq::config_error("config value for '" + key + "' is not a number: " + value);
    }
}

std::vector<std::string> split_csv_list(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : value) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

// Settings shared by every subcommand, resolved with precedence
// flag > config file > default.
struct CommandIO {
    std::string out;
    std::string config_path;
    std::map<std::string, std::string> file_values;

    void load() {
        if (!config_path.empty()) file_values = load_config_file(config_path);
    }

    const std::string* file_value(const std::string& key) const {
        const auto it = file_values.find(key);
        return it == file_values.end() ? nullptr : &it->second;
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path);
    out << content;
    if (!out) throw io_error("failed writing output file: " + path);
}

// Emits the payload to --out (plus a run manifest) or to stdout.
void deliver(const std::string& command, const rep::ordered_json& config_doc,
             const CommandIO& io, const std::string& payload,
             std::vector<std::string> extra_outputs = {}) {
    if (io.out.empty()) {
        std::cout << payload;
        return;
    }
    write_file(io.out, payload);
    std::vector<std::string> outputs = {io.out};
    outputs.insert(outputs.end(), extra_outputs.begin(), extra_outputs.end());
    write_file(io.out + ".manifest.json",
               rep::manifest(command, config_doc, outputs).dump(2) + "\n");
}

struct DesignArgs {
    sq::DesignConfig config;
    std::string model_name = "quadratic";
    std::string format = "json";
    std::string dump_model;
    std::string dump_codebook;
    CommandIO io;
};

struct McArgs {
    sq::DesignConfig config;
    std::string model_name = "quadratic";
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 12345;
    int shards = 1;
    CommandIO io;
};

struct WhichArgs {
    int which = 1;
    int samples = 256;
    CommandIO io;
};

struct SweepArgs {
    std::vector<int> levels = {16, 32, 64, 128};
    std::vector<std::string> model_names = {"linear", "quadratic", "optimal"};
    double sigma = 1.0;
    CommandIO io;
};

void add_io_options(CLI::App* sub, CommandIO& io) {
    sub->add_option("--out", io.out, "write the result to this file (stdout otherwise)");
    sub->add_option("--config", io.config_path, "key=value file supplying defaults");
}

int run_design(CLI::App* sub, DesignArgs& a) {
    a.io.load();
    if (const auto* v = a.io.file_value("levels"); v && sub->count("--levels") == 0)
        a.config.levels = static_cast<int>(parse_int("levels", *v));
    if (const auto* v = a.io.file_value("model"); v && sub->count("--model") == 0)
        a.model_name = *v;
    if (const auto* v = a.io.file_value("sigma"); v && sub->count("--sigma") == 0)
        a.config.sigma = parse_double("sigma", *v);
    if (const auto* v = a.io.file_value("format"); v && sub->count("--format") == 0)
        a.format = *v;
    if (const auto* v = a.io.file_value("out"); v && sub->count("--out") == 0) a.io.out = *v;
    a.config.model = sq::model_kind_from_name(a.model_name);
    if (a.format != "json" && a.format != "csv")
        throw sq::config_error("format must be json or csv");
    a.config.validate();

    const auto model = sq::make_compressor(a.config);
    const sq::Codebook codebook = sq::build_codebook(a.config, *model);
    const sq::DistortionReport report = sq::evaluate_design(a.config, *model, codebook);

    const std::string payload =
        a.format == "json"
            ? rep::design_document(a.config, *model, codebook, report).dump(2) + "\n"
            : rep::to_csv(rep::design_table(a.config, report));

    std::vector<std::string> extras;
    if (!a.dump_model.empty()) {
        write_file(a.dump_model, rep::model_json(*model).dump(2) + "\n");
        extras.push_back(a.dump_model);
    }
    if (!a.dump_codebook.empty()) {
        write_file(a.dump_codebook, rep::codebook_json(codebook).dump(2) + "\n");
        extras.push_back(a.dump_codebook);
    }
    deliver("design", rep::config_json(a.config), a.io, payload, extras);
    return 0;
}

int run_tables(CLI::App* sub, WhichArgs& a) {
    a.io.load();
    if (const auto* v = a.io.file_value("which"); v && sub->count("--which") == 0)
        a.which = static_cast<int>(parse_int("which", *v));
    if (const auto* v = a.io.file_value("out"); v && sub->count("--out") == 0) a.io.out = *v;
    rep::Table table;
    switch (a.which) {
        case 1: table = rep::table1(); break;
        case 2: table = rep::table2(); break;
        case 3: table = rep::table3(); break;
        default: throw sq::config_error("tables --which must be 1, 2, or 3");
    }
    deliver("tables", {{"which", a.which}}, a.io, rep::to_csv(table));
    return 0;
}

int run_figure(CLI::App* sub, WhichArgs& a) {
    a.io.load();
    if (const auto* v = a.io.file_value("which"); v && sub->count("--which") == 0)
        a.which = static_cast<int>(parse_int("which", *v));
    if (const auto* v = a.io.file_value("samples"); v && sub->count("--samples") == 0)
        a.samples = static_cast<int>(parse_int("samples", *v));
    if (const auto* v = a.io.file_value("out"); v && sub->count("--out") == 0) a.io.out = *v;
    rep::Table table;
    switch (a.which) {
        case 1:
            if (a.samples < 2) throw sq::config_error("figure 1 needs --samples >= 2");
            table = rep::figure1(a.samples);
            break;
        case 2: table = rep::figure2(); break;
        default: throw sq::config_error("figure --which must be 1 or 2");
    }
    deliver("figure", {{"which", a.which}, {"samples", a.samples}}, a.io, rep::to_csv(table));
    return 0;
}

int run_montecarlo(CLI::App* sub, McArgs& a) {
    a.io.load();
    if (const auto* v = a.io.file_value("levels"); v && sub->count("--levels") == 0)
        a.config.levels = static_cast<int>(parse_int("levels", *v));
    if (const auto* v = a.io.file_value("model"); v && sub->count("--model") == 0)
        a.model_name = *v;
    if (const auto* v = a.io.file_value("sigma"); v && sub->count("--sigma") == 0)
        a.config.sigma = parse_double("sigma", *v);
    if (const auto* v = a.io.file_value("samples"); v && sub->count("--samples") == 0)
        a.samples = static_cast<std::uint64_t>(parse_int("samples", *v));
    if (const auto* v = a.io.file_value("seed"); v && sub->count("--seed") == 0)
        a.seed = static_cast<std::uint64_t>(parse_int("seed", *v));
    if (const auto* v = a.io.file_value("shards"); v && sub->count("--shards") == 0)
        a.shards = static_cast<int>(parse_int("shards", *v));
    if (const auto* v = a.io.file_value("out"); v && sub->count("--out") == 0) a.io.out = *v;
    a.config.model = sq::model_kind_from_name(a.model_name);
    a.config.validate();
    if (a.samples == 0) throw sq::config_error("--samples must be positive");
    if (a.shards < 1) throw sq::config_error("--shards must be positive");

    const sq::DistortionReport analytic = sq::evaluate_design(a.config);
    const sq::MonteCarloReport mc =
        sq::monte_carlo_sqnr(a.config, a.samples, a.seed, a.shards);

    rep::ordered_json doc{{"config", rep::config_json(a.config)},
                          {"analytic", rep::report_json(analytic)},
                          {"monte_carlo", rep::mc_json(mc)}};
    deliver("montecarlo", rep::config_json(a.config), a.io, doc.dump(2) + "\n");
    return 0;
}

int run_sweep(CLI::App* sub, SweepArgs& a) {
    a.io.load();
    if (const auto* v = a.io.file_value("levels"); v && sub->count("--levels") == 0) {
        a.levels.clear();
        for (const auto& item : split_csv_list(*v))
            a.levels.push_back(static_cast<int>(parse_int("levels", item)));
    }
    if (const auto* v = a.io.file_value("models"); v && sub->count("--models") == 0)
        a.model_names = split_csv_list(*v);
    if (const auto* v = a.io.file_value("sigma"); v && sub->count("--sigma") == 0)
        a.sigma = parse_double("sigma", *v);
    if (const auto* v = a.io.file_value("out"); v && sub->count("--out") == 0) a.io.out = *v;

    std::set<int> seen_levels;
    for (const int n : a.levels) {
        if (!seen_levels.insert(n).second)
            std::cerr << "warning: duplicate level count " << n << " ignored\n";
    }
    std::vector<sq::ModelKind> kinds;
    std::set<sq::ModelKind> seen_kinds;
    for (const auto& name : a.model_names) {
        const sq::ModelKind kind = sq::model_kind_from_name(name);
        if (!seen_kinds.insert(kind).second)
            std::cerr << "warning: duplicate model " << sq::model_kind_name(kind)
                      << " ignored\n";
        else
            kinds.push_back(kind);
    }

    const rep::SweepOutcome outcome = rep::sweep(a.levels, kinds, a.sigma);
    rep::ordered_json config_doc{{"levels", std::vector<int>(seen_levels.begin(),
                                                             seen_levels.end())},
                                 {"models", [&] {
                                      std::vector<std::string> names;
                                      for (const auto k : kinds)
                                          names.push_back(sq::model_kind_name(k));
                                      return names;
                                  }()},
                                 {"sigma", a.sigma}};
    deliver("sweep", config_doc, a.io, rep::to_csv(outcome.table));
    if (outcome.failed_cells > 0) {
        std::cerr << "warning: " << outcome.failed_cells << " sweep cell(s) failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Companding quantizer designer: spline and smooth compressor models,\n"
                 "distortion reports, reference tables, and Monte Carlo validation"};
    app.set_version_flag("--version", rep::tool_version());
    app.require_subcommand(1);

    DesignArgs design;
    auto* design_cmd = app.add_subcommand("design", "build one quantizer and report it");
    design_cmd->add_option("--levels,-n", design.config.levels, "total reproduction levels");
    design_cmd->add_option("--model", design.model_name, "compressor model")
        ->check(CLI::IsMember({"linear", "quadratic", "optimal"}));
    design_cmd->add_option("--sigma", design.config.sigma, "source standard deviation");
    design_cmd->add_option("--format", design.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    design_cmd->add_option("--dump-model", design.dump_model, "also write the model JSON here");
    design_cmd->add_option("--dump-codebook", design.dump_codebook,
                           "also write the codebook JSON here");
    add_io_options(design_cmd, design.io);

    WhichArgs tables;
    auto* tables_cmd = app.add_subcommand("tables", "emit a reference table as CSV");
    tables_cmd->add_option("--which", tables.which, "table number (1, 2, or 3)");
    add_io_options(tables_cmd, tables.io);

    WhichArgs figure;
    auto* figure_cmd = app.add_subcommand("figure", "emit figure data as CSV");
    figure_cmd->add_option("--which", figure.which, "figure number (1 or 2)");
    figure_cmd->add_option("--samples", figure.samples,
                           "grid points for figure 1 (ignored by figure 2)");
    add_io_options(figure_cmd, figure.io);

    McArgs mc;
    auto* mc_cmd = app.add_subcommand("montecarlo", "empirical SQNR for one design");
    mc_cmd->add_option("--levels,-n", mc.config.levels, "total reproduction levels");
    mc_cmd->add_option("--model", mc.model_name, "compressor model")
        ->check(CLI::IsMember({"linear", "quadratic", "optimal"}));
    mc_cmd->add_option("--sigma", mc.config.sigma, "source standard deviation");
    mc_cmd->add_option("--samples", mc.samples, "number of Gaussian draws");
    mc_cmd->add_option("--seed", mc.seed, "generator seed");
    mc_cmd->add_option("--shards", mc.shards, "parallel shards (fixed partition)");
    add_io_options(mc_cmd, mc.io);

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "distortion table over (N, model) cells");
    sweep_cmd->add_option("--levels", sweep.levels, "level counts")->delimiter(',');
    sweep_cmd->add_option("--models", sweep.model_names, "model list")->delimiter(',');
    sweep_cmd->add_option("--sigma", sweep.sigma, "source standard deviation");
    add_io_options(sweep_cmd, sweep.io);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (design_cmd->parsed()) return run_design(design_cmd, design);
        if (tables_cmd->parsed()) return run_tables(tables_cmd, tables);
        if (figure_cmd->parsed()) return run_figure(figure_cmd, figure);
        if (mc_cmd->parsed()) return run_montecarlo(mc_cmd, mc);
        if (sweep_cmd->parsed()) return run_sweep(sweep_cmd, sweep);
    } catch (const sq::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sq::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const sq::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
