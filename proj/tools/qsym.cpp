// qsym: exact analysis of braided vector spaces over Q(q).
//
// Subcommands: check, hecke, dims, kernel, quadratic, koszul, family,
// tableaux, det.  Braidings come from a built-in family (--family NAME
// --param k=v ...) or a spec file (--input FILE).  Exit codes: 0 success,
// 1 a requested mathematical assertion failed, 2 input or parse error.

#include <qsym/families.hpp>
#include <qsym/nichols.hpp>
#include <qsym/report.hpp>
#include <qsym/specfile.hpp>
#include <qsym/tableaux.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace qsym;

class CliError : public std::runtime_error {
public:
    explicit CliError(const std::string& what) : std::runtime_error(what) {}
};

struct CommonOptions {
    std::string family;
    std::vector<std::string> params;
    std::string input;
    int max_degree = -1;
    std::string mode = "exact";
    unsigned long seed = 0;
    std::string output;
    std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOptions& o, bool needs_braiding = true) {
    if (needs_braiding) {
        cmd->add_option("--family", o.family, "built-in family name");
        cmd->add_option("--param", o.params, "family parameter key=value (repeatable)");
        cmd->add_option("--input", o.input, "braiding spec file (JSON)");
    } else {
        cmd->add_option("--param", o.params, "parameter key=value (repeatable)");
    }
    cmd->add_option("--max-degree", o.max_degree, "maximum degree to analyze");
    cmd->add_option("--mode", o.mode, "exact | specialized")
        ->check(CLI::IsMember({"exact", "specialized"}));
    cmd->add_option("--seed", o.seed, "seed for specialization point selection");
    cmd->add_option("--output", o.output, "write the report to a file instead of stdout");
    cmd->add_option("--format", o.format, "json | text")->check(CLI::IsMember({"json", "text"}));
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& params) {
    std::map<std::string, std::string> out;
    for (const std::string& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw CliError("parameter '" + p + "' is not of the form key=value");
        out[p.substr(0, eq)] = p.substr(eq + 1);
    }
    return out;
}

int int_param(const std::map<std::string, std::string>& params, const std::string& key,
              std::optional<int> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it == params.end()) {
        if (fallback) return *fallback;
        throw CliError("missing required parameter " + key + "=<integer>");
    }
    try {
        std::size_t pos = 0;
        int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (...) {
        throw CliError("parameter " + key + " must be an integer, got '" + it->second + "'");
    }
}

struct ResolvedInput {
    Braiding braiding;
    std::string kind;
    std::string name;
};

Braiding make_family(const std::string& name, const std::map<std::string, std::string>& params,
                     unsigned long seed) {
    auto dim_of = [&](int fallback = -1) {
        if (params.count("d")) return int_param(params, "d");
        if (params.count("n")) return int_param(params, "n");
        if (fallback > 0) return fallback;
        throw CliError("family '" + name + "' needs a dimension parameter n=<k> or d=<k>");
    };
    try {
        if (name == "flip") return flip(dim_of());
        if (name == "antiflip") return antiflip(dim_of());
        if (name == "diagonal") return diagonal_random(dim_of(), seed);
        if (name == "frt") {
            FrtConvention conv = FrtConvention::R;
            auto it = params.find("convention");
            if (it != params.end()) {
                if (it->second == "R")
                    conv = FrtConvention::R;
                else if (it->second == "R-bar" || it->second == "Rbar")
                    conv = FrtConvention::RBar;
                else
                    throw CliError("unknown frt convention '" + it->second + "' (use R or R-bar)");
            }
            QRational sc(1);
            if (params.count("scale")) sc = qf_parse(params.at("scale"));
            return frt_braiding(dim_of(), conv, sc);
        }
        if (name == "cpn") {
            if (params.count("normalization"))
                return cpn_cotangent_braiding(dim_of(), qf_parse(params.at("normalization")));
            return cpn_cotangent_braiding(dim_of());
        }
        if (name == "bundle") return bundle_braiding(dim_of());
        if (name == "cpn-yd") return cpn_yd_braiding(dim_of());
        if (name == "cpn-yd-scaled") return cpn_yd_scaled_variant(dim_of());
        if (name == "yd-sign") return yd_group_braiding(yd_sign_line());
        if (name == "yd-trivial") return yd_group_braiding(yd_trivial_module(dim_of(2)));
        if (name == "yd-s3rack") return yd_group_braiding(yd_s3_transposition_rack());
    } catch (const ParseError& e) {
        throw CliError(std::string("family parameter: ") + e.what());
    }
    throw CliError("unknown family '" + name +
                   "' (known: flip antiflip diagonal frt cpn bundle cpn-yd cpn-yd-scaled "
                   "yd-sign yd-trivial yd-s3rack)");
}

ResolvedInput resolve_input(const CommonOptions& o) {
    if (o.family.empty() == o.input.empty())
        throw CliError("exactly one of --family or --input is required");
    if (!o.family.empty()) {
        auto params = parse_params(o.params);
        std::string label = o.family;
        for (const auto& [k, v] : params) label += " " + k + "=" + v;
        return {make_family(o.family, params, o.seed), "family", label};
    }
    try {
        return {BraidingSpecFile::load(o.input).to_braiding(), "file", o.input};
    } catch (const ParseError& e) {
        throw CliError(std::string("spec file coefficient: ") + e.what());
    }
}

// deterministic specialization points from the seed; a braiding entry with a
// pole at a candidate moves on to the next one, up to five attempts
Rat pick_point(const Braiding& b, unsigned long seed, BackendInfo& backend) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(2, 19), den(2, 19);
    std::string last_error;
    for (int attempt = 0; attempt < 5; ++attempt) {
        Rat x(num(rng), den(rng));
        x.canonicalize();
        if (x == 0 || x == 1 || x == -1) continue;
        try {
            (void)specialize(b.matrix, x);
            backend.points.push_back(x);
            return x;
        } catch (const PoleError& e) {
            last_error = e.what();
        }
    }
    throw CliError("no pole-free specialization point found after 5 seeds: " + last_error);
}

// the working braiding for rank computations plus backend metadata
Braiding backend_braiding(const Braiding& b, const CommonOptions& o, BackendInfo& backend) {
    backend.mode = o.mode;
    backend.seed = o.seed;
    if (o.mode == "exact") return b;
    backend.screening = true;
    Rat x = pick_point(b, o.seed, backend);
    return Braiding(b.dim, specialize(b.matrix, x));
}

int emit(const AnalysisReport& report, const CommonOptions& o) {
    std::string text = o.format == "json" ? report.to_json().dump(2) + "\n" : report.to_text();
    if (o.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.output, std::ios::binary);
        if (!out) throw CliError("cannot write output file " + o.output);
        out << text;
    }
    return 0;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AnalysisReport base_report(const std::string& command, const ResolvedInput& in) {
    AnalysisReport r;
    r.command = command;
    r.input_kind = in.kind;
    r.input_name = in.name;
    r.input_hash = braiding_hash(in.braiding);
    r.dim = in.braiding.dim;
    return r;
}

int run_check(const CommonOptions& o) {
    auto t0 = std::chrono::steady_clock::now();
    ResolvedInput in = resolve_input(o);
    AnalysisReport r = base_report("check", in);
    r.braid = check_braid_equation(in.braiding);
    r.matrix_rank = rank(in.braiding.matrix);
    r.timings["check"] = seconds_since(t0);
    emit(r, o);
    bool invertible = *r.matrix_rank == static_cast<long>(in.braiding.dim) * in.braiding.dim;
    return (r.braid->holds && invertible) ? 0 : 1;
}

int run_hecke(const CommonOptions& o) {
    auto t0 = std::chrono::steady_clock::now();
    ResolvedInput in = resolve_input(o);
    AnalysisReport r = base_report("hecke", in);
    r.hecke = hecke_check(in.braiding);
    r.diagonal = is_diagonal(in.braiding);
    r.timings["hecke"] = seconds_since(t0);
    return emit(r, o);
}

std::string backend_label(const BackendInfo& b) {
    if (b.mode == "exact") return "exact";
    std::string s = "specialized seed=" + std::to_string(b.seed);
    for (const auto& p : b.points) s += " q=" + render(p);
    return s;
}

int run_dims(const CommonOptions& o) {
    auto t0 = std::chrono::steady_clock::now();
    ResolvedInput in = resolve_input(o);
    AnalysisReport r = base_report("dims", in);
    int max_degree = o.max_degree >= 0 ? o.max_degree : in.braiding.dim + 2;
    Braiding work = backend_braiding(in.braiding, o, r.backend);
    r.attach(make_graded_dims_report(in.braiding, work, max_degree, r.input_name,
                                     backend_label(r.backend)));
    r.timings["dims"] = seconds_since(t0);
    return emit(r, o);
}

int run_kernel(const CommonOptions& o) {
    auto t0 = std::chrono::steady_clock::now();
    ResolvedInput in = resolve_input(o);
    AnalysisReport r = base_report("kernel", in);
    r.kernel = kernel_A2(in.braiding);
    r.timings["kernel"] = seconds_since(t0);
    return emit(r, o);
}

int run_quadratic(const CommonOptions& o) {
    auto t0 = std::chrono::steady_clock::now();
    ResolvedInput in = resolve_input(o);
    AnalysisReport r = base_report("quadratic", in);
    int max_degree = o.max_degree >= 0 ? o.max_degree : in.braiding.dim + 2;
    Braiding work = backend_braiding(in.braiding, o, r.backend);
    GradedDimsOptions opt;
    opt.nichols = false;
    opt.quadratic = true;
    opt.dual = true;
    r.attach(make_graded_dims_report(in.braiding, work, max_degree, r.input_name,
                                     backend_label(r.backend), opt));
    r.timings["quadratic"] = seconds_since(t0);
    return emit(r, o);
}

int run_koszul(const CommonOptions& o) {
    auto t0 = std::chrono::steady_clock::now();
    ResolvedInput in = resolve_input(o);
    AnalysisReport r = base_report("koszul", in);
    int max_degree = o.max_degree >= 0 ? o.max_degree : in.braiding.dim + 2;
    Braiding work = backend_braiding(in.braiding, o, r.backend);
    GradedDimsOptions opt;
    opt.nichols = false;
    opt.koszul = true;
    r.attach(make_graded_dims_report(in.braiding, work, max_degree, r.input_name,
                                     backend_label(r.backend), opt));
    r.timings["koszul"] = seconds_since(t0);
    emit(r, o);
    for (bool v : *r.koszul_ok)
        if (!v) return 1;
    return 0;
}

int run_family(const CommonOptions& o, const std::string& emit_path) {
    ResolvedInput in = resolve_input(o);
    BraidingSpecFile f = BraidingSpecFile::from_braiding(in.braiding, in.name);
    std::string text = f.dump();
    if (emit_path.empty() || emit_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(emit_path, std::ios::binary);
        if (!out) throw CliError("cannot write spec file " + emit_path);
        out << text;
    }
    return 0;
}

int run_tableaux(const CommonOptions& o, bool list) {
    auto params = parse_params(o.params);
    auto it = params.find("shape");
    if (it == params.end()) throw CliError("missing parameter shape=<comma-separated parts>");
    std::vector<int> parts;
    std::string s = it->second;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string piece = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            if (!piece.empty()) parts.push_back(std::stoi(piece));
        } catch (...) {
            throw CliError("bad shape component '" + piece + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    int n = int_param(params, "n");
    DominantWeight shape;
    try {
        shape = DominantWeight(parts);
    } catch (const std::invalid_argument& e) {
        throw CliError(e.what());
    }
    auto ts = enumerate_sstab(shape, n);

    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["command"] = "tableaux";
    j["shape"] = parts;
    j["labels"] = n;
    j["count"] = ts.size();
    std::string text = "semistandard tableaux of shape (";
    for (std::size_t k = 0; k < parts.size(); ++k)
        text += (k ? "," : "") + std::to_string(parts[k]);
    text += ") with labels <= " + std::to_string(n) + ": " + std::to_string(ts.size()) + "\n";
    if (list) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Tableau& t : ts) {
            arr.push_back(t.entries);
            for (const auto& row : t.entries) {
                std::string line = " ";
                for (int v : row) line += " " + std::to_string(v);
                text += line + "\n";
            }
            text += "\n";
        }
        j["tableaux"] = arr;
    }
    std::string out_text = o.format == "json" ? j.dump(2) + "\n" : text;
    if (o.output.empty()) {
        std::cout << out_text;
    } else {
        std::ofstream out(o.output, std::ios::binary);
        if (!out) throw CliError("cannot write output file " + o.output);
        out << out_text;
    }
    return 0;
}

int run_det(const CommonOptions& o) {
    auto params = parse_params(o.params);
    int N = params.count("N") ? int_param(params, "N") : int_param(params, "n");
    auto terms = quantum_determinant_terms(N);
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["command"] = "det";
    j["N"] = N;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::string text = "quantum determinant of order " + std::to_string(N) + ": " +
                       std::to_string(terms.size()) + " terms\n";
    for (const auto& [pi, coeff] : terms) {
        nlohmann::ordered_json t;
        t["permutation"] = pi.one_line();
        t["coeff"] = render(coeff);
        arr.push_back(t);
        std::string line = "  (";
        for (int k = 1; k <= pi.size(); ++k) line += (k > 1 ? " " : "") + std::to_string(pi(k));
        line += ") * " + render(coeff);
        text += line + "\n";
    }
    j["terms"] = arr;
    std::string out_text = o.format == "json" ? j.dump(2) + "\n" : text;
    if (o.output.empty()) {
        std::cout << out_text;
    } else {
        std::ofstream out(o.output, std::ios::binary);
        if (!out) throw CliError("cannot write output file " + o.output);
        out << out_text;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact analysis of braided vector spaces over Q(q)"};
    app.require_subcommand(1);

    CommonOptions check_o, hecke_o, dims_o, kernel_o, quad_o, koszul_o, family_o, tab_o, det_o;
    std::string emit_path;
    bool tab_list = false;

    add_common(app.add_subcommand("check", "verify the braid equation"), check_o);
    add_common(app.add_subcommand("hecke", "Hecke structure of the braiding"), hecke_o);
    add_common(app.add_subcommand("dims", "graded dimensions of the Nichols algebra"), dims_o);
    add_common(app.add_subcommand("kernel", "basis of ker(A_2)"), kernel_o);
    add_common(app.add_subcommand("quadratic", "quadratic cover and dual dimensions"), quad_o);
    add_common(app.add_subcommand("koszul", "alternating Hilbert-series identity"), koszul_o);
    CLI::App* family_cmd = app.add_subcommand("family", "emit a built-in family as a spec file");
    add_common(family_cmd, family_o);
    family_cmd->add_option("--emit", emit_path, "spec file path ('-' for stdout)");
    CLI::App* tab_cmd = app.add_subcommand("tableaux", "semistandard tableau counts");
    add_common(tab_cmd, tab_o, false);
    tab_cmd->add_flag("--list", tab_list, "list the tableaux");
    add_common(app.add_subcommand("det", "quantum determinant expansion"), det_o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("check")) return run_check(check_o);
        if (app.got_subcommand("hecke")) return run_hecke(hecke_o);
        if (app.got_subcommand("dims")) return run_dims(dims_o);
        if (app.got_subcommand("kernel")) return run_kernel(kernel_o);
        if (app.got_subcommand("quadratic")) return run_quadratic(quad_o);
        if (app.got_subcommand("koszul")) return run_koszul(koszul_o);
        if (app.got_subcommand("family")) return run_family(family_o, emit_path);
        if (app.got_subcommand("tableaux")) return run_tableaux(tab_o, tab_list);
        if (app.got_subcommand("det")) return run_det(det_o);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SpecFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
