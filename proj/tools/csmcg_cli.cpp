// csmcg command-line front end; talks to the library only through csmcg.h
#include "csmcg/csmcg.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kTolerance = 1, kSchema = 2, kResource = 3, kDomain = 4, kIo = 5 };

struct CliError {
    int code;
    std::string msg;
};

int exit_for(csmcg_status s) {
    switch (s) {
        case CSMCG_OK: return kOk;
        case CSMCG_INVALID_ARGUMENT: return kSchema;
        case CSMCG_RESOURCE: return kResource;
        case CSMCG_IO: return kIo;
        default: return kDomain;
    }
}

void check(csmcg_status s) {
    if (s != CSMCG_OK) throw CliError{exit_for(s), std::string(csmcg_status_name(s)) + ": " + csmcg_last_error()};
}

// owns a char* handed out by the library
struct CStr {
    char* p = nullptr;
    ~CStr() { csmcg_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

struct RootHandle {
    csmcg_root_system* h = nullptr;
    ~RootHandle() { csmcg_root_system_destroy(h); }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{kIo, "cannot read " + path};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{kIo, "cannot write " + path};
    out << text;
    if (!out) throw CliError{kIo, "write failed for " + path};
}

std::complex<double> parse_complex(const std::string& s) {
    // a, bi, a+bi, a-bi, i, -i
    static const std::regex re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$)");
    static const std::regex pure(R"(^\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij]\s*$)");
    std::smatch m;
    if (std::regex_match(s, m, pure)) {
        double im = m[2].matched ? std::stod(m[2]) : 1.0;
        return {0.0, m[1] == "-" ? -im : im};
    }
    if (std::regex_match(s, m, re) && (m[1].matched || m[2].matched)) {
        double re_part = m[1].matched ? std::stod(m[1]) : 0.0;
        double im = 0;
        if (m[2].matched) im = (m[3].matched ? std::stod(m[3]) : 1.0) * (m[2] == "-" ? -1 : 1);
        return {re_part, im};
    }
    throw CliError{kSchema, "cannot parse complex number '" + s + "'"};
}

csmcg_convention convention_from(const std::string& det, const std::string& t, const std::string& s) {
    csmcg_convention c = csmcg_default_convention();
    c.det = det == "theorem" ? CSMCG_DET_THEOREM : CSMCG_DET_LEMMA;
    c.t_phase = t == "minus" ? CSMCG_T_MINUS : CSMCG_T_PLUS;
    c.s_exponent = s == "direct" ? CSMCG_S_DIRECT : CSMCG_S_INVERSE;
    return c;
}

// expands --config into explicit --key=value tokens placed after the user's own, which win
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::optional<std::string> path;
    std::vector<std::string> rest;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw CliError{kSchema, "--config needs a file"};
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (!path) return rest;
    json cfg;
    try {
        cfg = json::parse(read_file(*path));
    } catch (const json::exception& e) {
        throw CliError{kSchema, std::string("config: ") + e.what()};
    }
    if (cfg.contains("config")) cfg = cfg.at("config");
    if (!cfg.is_object()) throw CliError{kSchema, "config must be a JSON object"};
    auto given = [&](const std::string& key) {
        for (const auto& a : rest)
            if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
        return false;
    };
    for (const auto& [key, val] : cfg.items()) {
        if (given(key)) continue;
        std::string v;
        if (val.is_string()) v = val.get<std::string>();
        else if (val.is_number() || val.is_boolean()) v = val.dump();
        else throw CliError{kSchema, "config value for '" + key + "' must be a scalar"};
        rest.push_back("--" + key + "=" + v);
    }
    return rest;
}

json config_of(const CLI::App* sub) {
    json c = json::object();
    for (const CLI::Option* o : sub->get_options()) {
        std::string name = o->get_single_name();
        if (name.empty() || name == "help") continue;
        if (o->count() > 0) {
            auto r = o->reduced_results();
            c[name] = r.empty() ? std::string("true") : r.front();
        } else if (!o->get_default_str().empty()) {
            c[name] = o->get_default_str();
        }
    }
    return c;
}

struct Common {
    std::string type = "A";
    int rank = 1;
    std::int64_t level = 1;
    std::string out;
    double tol_rep = 1e-10, tol_wgz = 1e-6, tol_cmp = 1e-10;
};

void add_group(CLI::App* app, Common& c) {
    app->add_option("--type", c.type, "Lie family A-G")->check(CLI::IsMember({"A", "B", "C", "D", "E", "F", "G"}));
    app->add_option("--rank", c.rank, "rank")->check(CLI::PositiveNumber);
}

void add_level(CLI::App* app, Common& c) { app->add_option("--level,--k", c.level, "level k")->check(CLI::PositiveNumber); }

void add_convention(CLI::App* app, std::string& det, std::string& t, std::string& s) {
    app->add_option("--convention", det, "det(w) placement")->check(CLI::IsMember({"lemma", "theorem"}));
    app->add_option("--t-phase", t, "sign of the T phase")->check(CLI::IsMember({"plus", "minus"}));
    app->add_option("--s-exponent", s, "F_Z inverse or direct in S")->check(CLI::IsMember({"inverse", "direct"}));
}

RootHandle make_root(const Common& c) {
    RootHandle r;
    check(csmcg_root_system_create(c.type[0], c.rank, &r.h));
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = expand_config(args);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.msg << "\n";
        return e.code;
    }

    CLI::App app{"finite and heat-kernel modular representations of tori", "csmcg"};
    app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeFirst);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(csmcg_version()));
    app.add_option("--config", "JSON file of flag values; explicit flags take precedence");

    Common c;
    std::string det = "lemma", tph = "plus", sexp = "inverse", input, csv_prefix, sigma_str, format = "json",
                method = "mehler", generator = "S", lstr = "0",
                sigma_verify = "i";
    int sector = 0, resolution = 256, samples = 20, L = 16, core = 0, branch = 1, n = 1;
    std::uint64_t seed = 1;
    double box_wgz = 6.0, box_herm = 8.0, box_verify = 8.0, s = 0, step_herm = 0.05, step_verify = 0.02,
           tol_conj = 1e-5, tol_rel = 1e-4;
    bool no_ops = false, normalized = false;

    auto* roots = app.add_subcommand("roots", "root system data")->require_subcommand(1);
    auto* roots_info = roots->add_subcommand("info", "summary of a root system");
    add_group(roots_info, c);
    roots_info->add_option("--out", c.out, "output file");

    auto* lattice = app.add_subcommand("lattice", "lattices and quotient groups")->require_subcommand(1);
    auto* lat_enum = lattice->add_subcommand("enumerate", "quotient group and alcove points");
    add_group(lat_enum, c);
    add_level(lat_enum, c);
    lat_enum->add_option("--out", c.out, "output file");

    auto* rep = app.add_subcommand("rep", "finite sector representations")->require_subcommand(1);
    auto* rep_build = rep->add_subcommand("build", "build S and T for one sector");
    add_group(rep_build, c);
    add_level(rep_build, c);
    rep_build->add_option("--sector", sector, "0 (symmetric) or 1 (antisymmetric)")->check(CLI::IsMember({0, 1}));
    add_convention(rep_build, det, tph, sexp);
    rep_build->add_option("--tol", c.tol_rep, "relation tolerance");
    rep_build->add_option("--out", c.out, "output file");
    rep_build->add_option("--csv", csv_prefix, "also write PREFIX_S.csv and PREFIX_T.csv");
    auto* rep_verify = rep->add_subcommand("verify", "re-check the relations of a stored rep");
    rep_verify->add_option("--input", input, "rep JSON")->required();
    rep_verify->add_option("--tol", c.tol_rep, "relation tolerance");
    rep_verify->add_option("--out", c.out, "output file");

    auto* wgz = app.add_subcommand("wgz", "Weil-Gel'fand-Zak transform")->require_subcommand(1);
    auto* wgz_rt = wgz->add_subcommand("roundtrip", "round trip, Parseval and operator checks");
    add_group(wgz_rt, c);
    add_level(wgz_rt, c);
    wgz_rt->add_option("--resolution", resolution, "points per unit cell axis")->check(CLI::Range(1, 512));
    wgz_rt->add_option("--box", box_wgz, "box radius")->check(CLI::PositiveNumber);
    wgz_rt->add_option("--samples", samples, "random inputs")->check(CLI::PositiveNumber);
    wgz_rt->add_option("--seed", seed, "RNG seed");
    wgz_rt->add_option("--tol", c.tol_wgz, "tolerance");
    wgz_rt->add_flag("--no-operator-checks", no_ops, "skip the S and T consistency checks");
    wgz_rt->add_option("--out", c.out, "output file");

    auto* kernel = app.add_subcommand("kernel", "heat kernel and eta")->require_subcommand(1);
    auto* k_params = kernel->add_subcommand("params", "solve for b and r");
    add_level(k_params, c);
    k_params->add_option("--s", s, "real part of the coupling");
    k_params->add_option("--branch", branch, "+1 or -1")->check(CLI::IsMember({1, -1}));
    k_params->add_option("--out", c.out, "output file");

    auto* k_herm = kernel->add_subcommand("hermite", "sample v_l on an orthonormal grid");
    k_herm->add_option("--n", n, "rank")->check(CLI::Range(1, 2));
    k_herm->add_option("--l", lstr, "multi-index, comma separated");
    k_herm->add_option("--sigma", sigma_str, "complex structure, e.g. 0.3+1.1i")->required();
    k_herm->add_option("--step", step_herm, "grid step")->check(CLI::PositiveNumber);
    k_herm->add_option("--box", box_herm, "box radius")->check(CLI::PositiveNumber);
    k_herm->add_flag("--normalized", normalized, "unit L2 norm");
    k_herm->add_option("--out", c.out, "output file");

    auto* k_heat = kernel->add_subcommand("heat", "apply e^{-r Laplacian}");
    add_level(k_heat, c);
    k_heat->add_option("--s", s, "real part of the coupling");
    k_heat->add_option("--branch", branch, "+1 or -1")->check(CLI::IsMember({1, -1}));
    k_heat->add_option("--sigma", sigma_str, "complex structure, default i b");
    k_heat->add_option("--method", method, "mehler or hermite")->check(CLI::IsMember({"mehler", "hermite"}));
    k_heat->add_option("--L", L, "Hermite truncation")->check(CLI::NonNegativeNumber);
    k_heat->add_option("--input", input, "grid JSON")->required();
    k_heat->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    k_heat->add_option("--out", c.out, "output file");

    auto* k_eta = kernel->add_subcommand("eta", "closed-form eta kernels at sigma = i b");
    add_group(k_eta, c);
    add_level(k_eta, c);
    k_eta->add_option("--s", s, "real part of the coupling");
    k_eta->add_option("--branch", branch, "+1 or -1")->check(CLI::IsMember({1, -1}));
    k_eta->add_option("--sector", sector, "0 or 1")->check(CLI::IsMember({0, 1}));
    k_eta->add_option("--generator", generator, "S or T")->check(CLI::IsMember({"S", "T"}));
    k_eta->add_option("--input", input, "grid JSON on the chamber")->required();
    k_eta->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    k_eta->add_option("--out", c.out, "output file");

    auto* k_verify = kernel->add_subcommand("verify", "two constructions of eta in the Hermite basis (A1)");
    add_level(k_verify, c);
    k_verify->add_option("--s", s, "real part of the coupling");
    k_verify->add_option("--sigma", sigma_verify, "complex structure");
    k_verify->add_option("--L", L, "truncation")->check(CLI::NonNegativeNumber);
    k_verify->add_option("--core", core, "relations gated on indices <= core")->check(CLI::NonNegativeNumber);
    k_verify->add_option("--box", box_verify, "quadrature box radius");
    k_verify->add_option("--step", step_verify, "quadrature step");
    k_verify->add_option("--tol-conjugation", tol_conj, "route agreement tolerance");
    k_verify->add_option("--tol-relations", tol_rel, "relation tolerance");
    k_verify->add_option("--out", c.out, "output file");

    auto* cmp = app.add_subcommand("compare", "comparisons with independent oracles")->require_subcommand(1);
    auto* cmp_compact = cmp->add_subcommand("compact", "sector 1 at level k + h vs compact modular data");
    add_group(cmp_compact, c);
    add_level(cmp_compact, c);
    add_convention(cmp_compact, det, tph, sexp);
    cmp_compact->add_option("--tol", c.tol_cmp, "tolerance");
    cmp_compact->add_option("--out", c.out, "output file");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kSchema;
    }

    // innermost chosen subcommand
    CLI::App* leaf = &app;
    std::string command;
    while (!leaf->get_subcommands().empty()) {
        leaf = leaf->get_subcommands().front();
        command += (command.empty() ? "" : " ") + leaf->get_name();
    }

    try {
        bool passed = true;
        std::string payload;
        auto wrap = [&](const std::string& result, bool has_verdict) {
            json a = {{"command", command}, {"version", csmcg_version()}, {"config", config_of(leaf)}, {"result", json::parse(result)}};
            if (has_verdict) a["passed"] = passed;
            return a.dump(2) + "\n";
        };
        auto grid_artifact = [&](const std::string& grid) {
            if (format == "csv") {
                CStr csv;
                check(csmcg_grid_to_csv(grid.c_str(), &csv.p));
                return csv.str();
            }
            json g = json::parse(grid);
            g["command"] = command;
            g["version"] = csmcg_version();
            g["config"] = config_of(leaf);
            return g.dump() + "\n";
        };

        if (leaf == roots_info) {
            RootHandle rs = make_root(c);
            CStr j;
            check(csmcg_root_system_info(rs.h, &j.p));
            payload = wrap(j.str(), false);
        } else if (leaf == lat_enum) {
            RootHandle rs = make_root(c);
            CStr j;
            check(csmcg_lattice_enumerate(rs.h, c.level, &j.p));
            payload = wrap(j.str(), false);
        } else if (leaf == rep_build) {
            RootHandle rs = make_root(c);
            csmcg_sector_rep* r = nullptr;
            check(csmcg_sector_rep_build(rs.h, c.level, sector, convention_from(det, tph, sexp), &r));
            struct Guard {
                csmcg_sector_rep* r;
                ~Guard() { csmcg_sector_rep_destroy(r); }
            } guard{r};
            CStr j;
            int ok = 0;
            check(csmcg_sector_rep_json(r, c.tol_rep, &j.p, &ok));
            passed = ok != 0;
            if (!csv_prefix.empty()) {
                for (char g : {'S', 'T'}) {
                    CStr csv;
                    check(csmcg_sector_rep_csv(r, g, &csv.p));
                    write_file(csv_prefix + "_" + g + ".csv", csv.str());
                }
            }
            payload = wrap(j.str(), true);
        } else if (leaf == rep_verify) {
            std::string text = read_file(input);
            CStr j;
            int ok = 0;
            check(csmcg_rep_verify_json(text.c_str(), c.tol_rep, &j.p, &ok));
            passed = ok != 0;
            payload = wrap(j.str(), true);
        } else if (leaf == wgz_rt) {
            RootHandle rs = make_root(c);
            CStr j;
            int ok = 0;
            check(csmcg_wgz_roundtrip(rs.h, c.level, resolution, box_wgz, samples, seed, c.tol_wgz, no_ops ? 0 : 1, &j.p, &ok));
            passed = ok != 0;
            payload = wrap(j.str(), true);
        } else if (leaf == k_params) {
            CStr j;
            check(csmcg_kernel_params(c.level, s, branch, &j.p));
            payload = wrap(j.str(), false);
        } else if (leaf == k_herm) {
            std::vector<std::int64_t> l;
            std::stringstream ss(lstr);
            for (std::string part; std::getline(ss, part, ',');) {
                try {
                    l.push_back(std::stoll(part));
                } catch (const std::exception&) {
                    throw CliError{kSchema, "bad multi-index entry '" + part + "'"};
                }
            }
            if (static_cast<int>(l.size()) != n) throw CliError{kSchema, "multi-index needs exactly --n entries"};
            auto sig = parse_complex(sigma_str);
            CStr j;
            check(csmcg_kernel_hermite(n, l.data(), sig.real(), sig.imag(), step_herm, box_herm, normalized ? 1 : 0, &j.p));
            payload = grid_artifact(j.str());
        } else if (leaf == k_heat) {
            std::string text = read_file(input);
            std::complex<double> sig;
            bool has_sigma = !sigma_str.empty();
            if (has_sigma) sig = parse_complex(sigma_str);
            CStr j;
            check(csmcg_kernel_heat(c.level, s, branch, has_sigma ? 1 : 0, sig.real(), sig.imag(), method == "hermite" ? 1 : 0,
                                    L, text.c_str(), &j.p));
            payload = grid_artifact(j.str());
        } else if (leaf == k_eta) {
            RootHandle rs = make_root(c);
            std::string text = read_file(input);
            CStr j;
            check(csmcg_kernel_eta(rs.h, c.level, s, branch, sector, generator[0], text.c_str(), &j.p));
            payload = grid_artifact(j.str());
        } else if (leaf == k_verify) {
            auto sig = parse_complex(sigma_verify);
            CStr j;
            int ok = 0;
            check(csmcg_kernel_verify(c.level, s, sig.real(), sig.imag(), L, core, box_verify, step_verify, tol_conj, tol_rel, &j.p, &ok));
            passed = ok != 0;
            payload = wrap(j.str(), true);
        } else if (leaf == cmp_compact) {
            RootHandle rs = make_root(c);
            CStr j;
            int ok = 0;
            check(csmcg_compare_compact(rs.h, c.level, convention_from(det, tph, sexp), c.tol_cmp, &j.p, &ok));
            passed = ok != 0;
            payload = wrap(j.str(), true);
        }

        if (c.out.empty()) std::cout << payload;
        else write_file(c.out, payload);
        if (!passed) {
            std::cerr << "verification failed: residuals above tolerance\n";
            return kTolerance;
        }
        return kOk;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.msg << "\n";
        return e.code;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    }
}
