// Command-line front end. Everything numerical happens behind the C API;
// this file only routes arguments, reads sample tables and writes artifacts.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ssvp.h>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
    std::string command;
    std::string fixture;
    std::string input;     // CSV of (x, g) samples for transform
    std::string kind = "abel-invert";
    std::string quantity = "distribution";
    double R = 0.0;        // 0 = take the fixture's cutoff
    double b = 0.0;        // 0 = fixture default
    double c = 0.0;        // 0 = fixture default
    int n_max = 128;
    std::size_t grid = 256;
    std::size_t samples = 64;
    std::string out_dir;
    std::string format = "csv";  // csv | json
    double quad_tol = 1e-12;     // recorded for provenance
    double newton_tol = 1e-9;
    double bisect_tol = 1e-12;
    long seed = 0;
};

[[noreturn]] void usage_fail(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(kExitUsage);
}

[[noreturn]] void numerical_fail(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(kExitNumerical);
}

/// Exit path for C-API failures: usage errors exit 2, domain and
/// numerical failures exit 3.
[[noreturn]] void api_fail(ssvp_status status) {
    const std::string message = ssvp_last_error();
    if (status == SSVP_ERR_INVALID_ARGUMENT) usage_fail(message);
    numerical_fail(message);
}

void check(ssvp_status status) {
    if (status != SSVP_OK) api_fail(status);
}

/// key=value overrides; the file wins over command-line flags.
void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) usage_fail("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            usage_fail("config line " + std::to_string(lineno) +
                       ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
        };
        trim(key);
        trim(val);
        auto as_double = [&](double& slot) { slot = std::stod(val); };
        try {
            if (key == "fixture") cfg.fixture = val;
            else if (key == "input") cfg.input = val;
            else if (key == "kind") cfg.kind = val;
            else if (key == "quantity") cfg.quantity = val;
            else if (key == "R") as_double(cfg.R);
            else if (key == "b") as_double(cfg.b);
            else if (key == "c") as_double(cfg.c);
            else if (key == "n") cfg.n_max = std::stoi(val);
            else if (key == "grid") cfg.grid = std::stoul(val);
            else if (key == "samples") cfg.samples = std::stoul(val);
            else if (key == "out") cfg.out_dir = val;
            else if (key == "format") cfg.format = val;
            else if (key == "quad-tol") as_double(cfg.quad_tol);
            else if (key == "newton-tol") as_double(cfg.newton_tol);
            else if (key == "bisect-tol") as_double(cfg.bisect_tol);
            else if (key == "seed") cfg.seed = std::stol(val);
            else usage_fail("config line " + std::to_string(lineno) +
                            ": unknown key '" + key + "'");
        } catch (const std::exception&) {
            usage_fail("config line " + std::to_string(lineno) +
                       ": cannot parse value '" + val + "'");
        }
    }
}

void validate_common(const RunConfig& cfg) {
    if (!(cfg.quad_tol > 0.0) || !(cfg.newton_tol > 0.0) ||
        !(cfg.bisect_tol > 0.0))
        usage_fail("tolerances must be positive");
    if (cfg.format != "csv" && cfg.format != "json")
        usage_fail("format must be csv or json");
    if (cfg.seed < 0) usage_fail("seed must be non-negative");
}

std::filesystem::path resolve_out_dir(const RunConfig& cfg) {
    std::string dir = cfg.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("SSVP_OUT_DIR");
        dir = env && *env ? env : ".";
    }
    std::filesystem::path p(dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) usage_fail("cannot create output directory '" + dir + "'");
    return p;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) numerical_fail("cannot write '" + path.string() + "'");
    out << body;
    if (!out) numerical_fail("short write on '" + path.string() + "'");
    std::cout << "wrote " << path.string() << "\n";
}

/// Open the fixture with whichever of R/b/c were set. Fixtures that do not
/// take an R parameter (the q-only one) get a retry without it, so --R can
/// still set the solve domain.
ssvp_model* open_fixture(const RunConfig& cfg) {
    if (cfg.fixture.empty()) usage_fail("missing --fixture");
    nlohmann::json options = nlohmann::json::object();
    if (cfg.R > 0.0) options["R"] = cfg.R;
    if (cfg.b > 0.0) options["b"] = cfg.b;
    if (cfg.c > 0.0) options["c"] = cfg.c;
    ssvp_model* m = nullptr;
    ssvp_status st =
        ssvp_model_open(cfg.fixture.c_str(), options.dump().c_str(), &m);
    if (st == SSVP_ERR_INVALID_ARGUMENT && options.contains("R")) {
        options.erase("R");
        st = ssvp_model_open(cfg.fixture.c_str(), options.dump().c_str(), &m);
    }
    if (st != SSVP_OK) api_fail(st);
    return m;
}

std::string file_stem(const RunConfig& cfg) {
    return cfg.fixture.empty()
               ? std::filesystem::path(cfg.input).stem().string()
               : cfg.fixture;
}

int cmd_models_list(const RunConfig& cfg) {
    char* json_text = nullptr;
    check(ssvp_models_list_json(&json_text));
    std::string text = json_text;
    ssvp_free(json_text);
    if (cfg.format == "json") {
        std::cout << text;
        return 0;
    }
    const auto doc = nlohmann::json::parse(text);
    std::cout << std::left << std::setw(20) << "name" << std::setw(18)
              << "tag" << std::setw(9) << "density" << std::setw(6) << "map"
              << "parameters\n";
    for (const auto& fx : doc.at("fixtures")) {
        std::ostringstream params;
        bool first = true;
        for (const auto& [key, val] : fx.at("parameters").items()) {
            if (!first) params << " ";
            first = false;
            params << key << "=" << val.get<double>();
        }
        std::cout << std::left << std::setw(20)
                  << fx.at("name").get<std::string>() << std::setw(18)
                  << fx.at("tag").get<std::string>() << std::setw(9)
                  << (fx.at("has_density").get<bool>() ? "yes" : "no")
                  << std::setw(6)
                  << (fx.at("has_map").get<bool>() ? "yes" : "no")
                  << params.str() << "\n";
    }
    return 0;
}

int cmd_inverse(const RunConfig& cfg) {
    ssvp_model* m = open_fixture(cfg);
    ssvp_report* rep = nullptr;
    check(ssvp_inverse_run(m, cfg.grid, &rep));
    const char* verdict = nullptr;
    check(ssvp_report_verdict(rep, &verdict));
    const char* evidence = nullptr;
    check(ssvp_report_evidence(rep, &evidence));

    const auto dir = resolve_out_dir(cfg);
    const std::string stem = file_stem(cfg);
    char* text = nullptr;
    check(ssvp_report_json(rep, &text));
    write_file(dir / (stem + "-verdict.json"), text);
    ssvp_free(text);
    if (cfg.format == "csv") {
        check(ssvp_report_csv(rep, "wronskian", &text));
        write_file(dir / (stem + "-wronskian.csv"), text);
        ssvp_free(text);
        check(ssvp_report_csv(rep, "distribution", &text));
        write_file(dir / (stem + "-distribution.csv"), text);
        ssvp_free(text);
    }
    std::cout << "verdict " << verdict << " (evidence: " << evidence
              << ")\n";
    ssvp_report_close(rep);
    ssvp_model_close(m);
    return 0;
}

int cmd_direct(const RunConfig& cfg) {
    if (cfg.n_max < 1 || (cfg.n_max & (cfg.n_max - 1)) != 0)
        usage_fail("n must be a power of two");
    ssvp_model* m = open_fixture(cfg);
    double R = cfg.R;
    if (!(R > 0.0)) {
        if (ssvp_model_cutoff(m, &R) != SSVP_OK)
            usage_fail("fixture has no cutoff radius; pass --R");
    }
    ssvp_ladder* ladder = nullptr;
    check(ssvp_direct_run(m, R, cfg.n_max, &ladder));

    std::size_t levels = 0;
    check(ssvp_ladder_levels(ladder, &levels));
    int last_n = 0, last_converged = 0;
    double last_energy = 0.0;
    check(ssvp_ladder_level_info(ladder, levels - 1, &last_n,
                                 &last_converged, &last_energy, nullptr));

    const auto dir = resolve_out_dir(cfg);
    const std::string stem = file_stem(cfg);
    char* text = nullptr;
    if (cfg.format == "json") {
        check(ssvp_ladder_json(ladder, &text));
        write_file(dir / (stem + "-ladder.json"), text);
        ssvp_free(text);
    } else {
        check(ssvp_ladder_csv(ladder, &text));
        write_file(dir / (stem + "-ladder.csv"), text);
        ssvp_free(text);
    }

    if (!last_converged) {
        // Dump the failed level before reporting the numerical failure.
        check(ssvp_ladder_json(ladder, &text));
        std::cerr << text;
        ssvp_free(text);
        ssvp_ladder_close(ladder);
        ssvp_model_close(m);
        numerical_fail("ladder stopped at n=" + std::to_string(last_n) +
                       " without convergence");
    }
    std::cout << "ladder finished at n=" << last_n
              << ", cutoff energy " << std::setprecision(10) << last_energy
              << "\n";
    ssvp_ladder_close(ladder);
    ssvp_model_close(m);
    return 0;
}

struct SampleTable {
    std::vector<double> x;
    std::vector<double> g;
};

double interpolate_table(double x, void* ctx) {
    const auto* table = static_cast<const SampleTable*>(ctx);
    const auto& xs = table->x;
    const auto& gs = table->g;
    if (xs.empty()) return 0.0;
    if (x <= xs.front()) {
        // Anchor at the origin: profiles in this problem class vanish there.
        return xs.front() > 0.0 ? gs.front() * (x / xs.front()) : gs.front();
    }
    if (x >= xs.back()) return gs.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return gs[lo] + t * (gs[hi] - gs[lo]);
}

SampleTable read_sample_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) usage_fail("cannot open input '" + path + "'");
    SampleTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x = 0.0, g = 0.0;
        if (!(row >> x >> g)) {
            if (lineno == 1) continue;  // header row
            usage_fail("input line " + std::to_string(lineno) +
                       ": expected two numeric columns");
        }
        table.x.push_back(x);
        table.g.push_back(g);
    }
    if (table.x.empty()) usage_fail("input has no sample rows");
    if (!std::is_sorted(table.x.begin(), table.x.end()))
        usage_fail("input abscissae must be increasing");
    return table;
}

int cmd_transform(const RunConfig& cfg) {
    if (cfg.samples == 0) usage_fail("need at least one sample");
    std::vector<double> xs(cfg.samples), fs(cfg.samples);

    ssvp_status st = SSVP_OK;
    std::string stem;
    if (!cfg.input.empty()) {
        SampleTable table = read_sample_csv(cfg.input);
        const double upper = cfg.R > 0.0 ? cfg.R : table.x.back();
        st = ssvp_transform(cfg.kind.c_str(), interpolate_table, &table,
                            upper, cfg.samples, xs.data(), fs.data());
        stem = std::filesystem::path(cfg.input).stem().string();
    } else if (!cfg.fixture.empty()) {
        ssvp_model* m = open_fixture(cfg);
        struct EvalCtx {
            ssvp_model* m;
            std::string quantity;
        } ctx{m, cfg.quantity};
        auto eval = [](double x, void* raw) -> double {
            auto* c = static_cast<EvalCtx*>(raw);
            double v = 0.0;
            if (ssvp_model_eval(c->m, c->quantity.c_str(), x, &v) != SSVP_OK)
                return std::numeric_limits<double>::quiet_NaN();
            return v;
        };
        double upper = cfg.R;
        if (!(upper > 0.0) && ssvp_model_cutoff(m, &upper) != SSVP_OK)
            usage_fail("fixture has no cutoff radius; pass --R");
        st = ssvp_transform(cfg.kind.c_str(), eval, &ctx, upper,
                            cfg.samples, xs.data(), fs.data());
        stem = cfg.fixture;
        ssvp_model_close(m);
    } else {
        usage_fail("transform needs --input or --fixture");
    }
    if (st != SSVP_OK) api_fail(st);

    const auto dir = resolve_out_dir(cfg);
    std::string body;
    std::string filename;
    if (cfg.format == "json") {
        nlohmann::json doc{{"kind", cfg.kind}, {"x", xs}, {"f", fs}};
        body = doc.dump(2) + "\n";
        filename = stem + "-" + cfg.kind + ".json";
    } else {
        std::ostringstream csv;
        csv << "x,f\n";
        char buf[40];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.6g,%.6g\n", xs[i], fs[i]);
            csv << buf;
        }
        body = csv.str();
        filename = stem + "-" + cfg.kind + ".csv";
    }
    write_file(dir / filename, body);
    std::cout << cfg.kind << " sampled at " << cfg.samples << " points\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path;

    CLI::App app{"Spherical-profile extendability and collocation toolkit"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path,
                        "key=value file; entries override flags");
        sub->add_option("--out", cfg.out_dir,
                        "output directory (default $SSVP_OUT_DIR or .)");
        sub->add_option("--format", cfg.format, "csv | json");
        sub->add_option("--quad-tol", cfg.quad_tol,
                        "provenance record of the quadrature tolerance");
        sub->add_option("--newton-tol", cfg.newton_tol,
                        "provenance record of the Newton tolerance");
        sub->add_option("--bisect-tol", cfg.bisect_tol,
                        "provenance record of the bisection tolerance");
        sub->add_option("--seed", cfg.seed, "property-sampling seed record");
    };
    auto add_fixture = [&](CLI::App* sub) {
        sub->add_option("--fixture", cfg.fixture, "built-in profile name");
        sub->add_option("--R", cfg.R, "cutoff radius override");
        sub->add_option("--b", cfg.b, "power-law exponent override");
        sub->add_option("--c", cfg.c, "distribution scale override");
    };

    CLI::App* models = app.add_subcommand("models", "fixture catalogue");
    CLI::App* list = models->add_subcommand("list", "list built-in fixtures");
    add_common(list);

    CLI::App* inverse =
        app.add_subcommand("inverse", "extendability verdict for a profile");
    add_fixture(inverse);
    add_common(inverse);
    inverse->add_option("--grid", cfg.grid, "distribution sample count");

    CLI::App* direct = app.add_subcommand(
        "direct", "collocation ladder for a profile's energy map");
    add_fixture(direct);
    add_common(direct);
    direct->add_option("--n", cfg.n_max, "finest level (power of two)");

    CLI::App* transform =
        app.add_subcommand("transform", "half-kernel integral transforms");
    add_fixture(transform);
    add_common(transform);
    transform->add_option("--input", cfg.input, "CSV of x,g samples");
    transform->add_option("--kind", cfg.kind,
                          "abel-forward | abel-invert | eddington-forward | "
                          "eddington-invert");
    transform->add_option("--quantity", cfg.quantity,
                          "fixture quantity to transform");
    transform->add_option("--samples", cfg.samples, "output sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    if (!config_path.empty()) apply_config_file(config_path, cfg);
    validate_common(cfg);

    if (list->parsed()) return cmd_models_list(cfg);
    if (inverse->parsed()) return cmd_inverse(cfg);
    if (direct->parsed()) return cmd_direct(cfg);
    if (transform->parsed()) return cmd_transform(cfg);
    usage_fail("no command");
}
