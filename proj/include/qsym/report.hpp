#pragma once

// Machine-readable analysis reports.  The JSON layout is stable: identical
// inputs and mode produce byte-identical documents except for the "timings"
// object, which callers can drop for comparisons.

#include <qsym/nichols.hpp>
#include <qsym/specfile.hpp>

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsym {

inline const char* kVersion = "0.1.0";

struct BackendInfo {
    std::string mode = "exact"; // "exact" | "specialized"
    unsigned long seed = 0;
    std::vector<Rat> points;    // specialization points actually used
    bool screening = false;     // specialized results are screening results
    std::optional<bool> exact_confirmed;
};

struct AnalysisReport {
    std::string command;
    std::string input_kind; // "family" | "file"
    std::string input_name;
    std::string input_hash;
    int dim = 0;

    std::optional<BraidVerdict> braid;
    std::optional<long> matrix_rank; // rank of the braiding matrix, for `check`
    std::optional<HeckeFinding> hecke;
    std::optional<DiagonalFinding> diagonal;

    std::optional<int> max_degree;
    std::optional<std::vector<long>> nichols_dims;
    std::optional<std::vector<long>> quadratic_dims;
    std::optional<std::vector<long>> dual_dims;
    std::optional<std::vector<bool>> koszul_ok;
    std::optional<int> finite_dimensional_at;
    std::optional<long> total_dimension;
    std::optional<SubspaceBasis> kernel;

    BackendInfo backend;
    std::map<std::string, double> timings;

    void attach(const GradedDimsReport& g) {
        max_degree = g.max_degree;
        if (!g.nichols_dims.empty()) nichols_dims = g.nichols_dims;
        if (!g.quadratic_dims.empty()) quadratic_dims = g.quadratic_dims;
        if (!g.dual_dims.empty()) dual_dims = g.dual_dims;
        if (!g.koszul_ok.empty()) koszul_ok = g.koszul_ok;
        hecke = g.hecke;
        diagonal = g.diagonal;
        finite_dimensional_at = g.finite_dimensional_at;
        total_dimension = g.total_dimension;
        timings["analysis"] = g.seconds;
    }

    nlohmann::ordered_json to_json(bool include_timings = true) const {
        using J = nlohmann::ordered_json;
        J j;
        j["version"] = kVersion;
        j["command"] = command;
        j["input"] = {{"kind", input_kind}, {"name", input_name}, {"hash", input_hash}};
        J a = J::object();
        a["dim"] = dim;
        if (braid) {
            a["braid_equation"] = J::object();
            a["braid_equation"]["holds"] = braid->holds;
            if (!braid->holds)
                a["braid_equation"]["first_violation"] = {braid->row + 1, braid->col + 1};
        }
        if (matrix_rank) a["matrix_rank"] = *matrix_rank;
        if (hecke) {
            J h = J::object();
            h["lambda"] = hecke->lambda ? J(render(*hecke->lambda)) : J(nullptr);
            h["lambda_is_root_of_unity"] = hecke->lambda_root_of_unity;
            J scales = J::array();
            for (const auto& s : hecke->scale_to_hecke) scales.push_back(render(s));
            h["scale_to_hecke"] = scales;
            J mp = J::array();
            for (const auto& c : hecke->min_poly) mp.push_back(render(c));
            h["minimal_polynomial"] = mp;
            a["hecke"] = h;
        }
        if (diagonal) {
            J d = J::object();
            d["is_diagonal"] = diagonal->diagonal;
            if (diagonal->diagonal) {
                J table = J::array();
                for (const auto& row : diagonal->lambda) {
                    J r = J::array();
                    for (const auto& v : row) r.push_back(render(v));
                    table.push_back(r);
                }
                d["lambda_table"] = table;
            }
            a["diagonality"] = d;
        }
        if (max_degree) a["max_degree"] = *max_degree;
        if (nichols_dims) a["nichols_dims"] = *nichols_dims;
        if (quadratic_dims) a["quadratic_dims"] = *quadratic_dims;
        if (dual_dims) a["quadratic_dual_dims"] = *dual_dims;
        if (koszul_ok) {
            J k = J::array();
            for (bool b : *koszul_ok) k.push_back(b);
            a["koszul_by_degree"] = k;
        }
        if (finite_dimensional_at) a["finite_dimensional_at"] = *finite_dimensional_at;
        if (total_dimension) a["total_dimension"] = *total_dimension;
        if (kernel) {
            J k = J::object();
            k["dimension"] = kernel->dimension();
            J vecs = J::array();
            for (const auto& v : kernel->vectors) {
                J vec = J::array();
                for (int c = 0; c < kernel->ambient; ++c) {
                    const QRational& x = v[static_cast<std::size_t>(c)];
                    if (x.is_zero()) continue;
                    vec.push_back({{"index", {c / dim + 1, c % dim + 1}}, {"coeff", render(x)}});
                }
                vecs.push_back(vec);
            }
            k["basis"] = vecs;
            a["kernel_A2"] = k;
        }
        j["analysis"] = a;
        J b = J::object();
        b["mode"] = backend.mode;
        if (backend.mode == "specialized") {
            b["seed"] = backend.seed;
            J pts = J::array();
            for (const auto& p : backend.points) pts.push_back(render(p));
            b["points"] = pts;
            b["screening"] = backend.screening;
            if (backend.exact_confirmed) b["exact_confirmed"] = *backend.exact_confirmed;
        }
        j["backend"] = b;
        if (include_timings) {
            J t = J::object();
            for (const auto& [k, v] : timings) t[k] = v;
            j["timings"] = t;
        }
        return j;
    }

    std::string to_text() const {
        std::string out;
        auto line = [&out](const std::string& s) {
            out += s;
            out += '\n';
        };
        line("qsym " + std::string(kVersion) + " | " + command);
        line("input: " + input_kind + " " + input_name + " (" + input_hash + ")");
        line("dim: " + std::to_string(dim));
        if (braid) {
            if (braid->holds)
                line("braid equation: holds");
            else
                line("braid equation: FAILS at entry (" + std::to_string(braid->row + 1) + "," +
                     std::to_string(braid->col + 1) + ")");
        }
        if (matrix_rank) line("matrix rank: " + std::to_string(*matrix_rank));
        if (hecke) {
            line("hecke lambda: " + (hecke->lambda ? render(*hecke->lambda) : std::string("none")));
            line(std::string("lambda is a root of unity: ") + (hecke->lambda_root_of_unity ? "yes" : "no"));
            if (!hecke->scale_to_hecke.empty()) {
                std::string s = "hecke after scaling by:";
                for (const auto& c : hecke->scale_to_hecke) s += " " + render(c);
                line(s);
            }
            std::string mp = "minimal polynomial coefficients (low to high):";
            for (const auto& c : hecke->min_poly) mp += " [" + render(c) + "]";
            line(mp);
        }
        if (diagonal) {
            line(std::string("diagonal in this basis: ") + (diagonal->diagonal ? "yes" : "no"));
            if (diagonal->diagonal)
                for (std::size_t i = 0; i < diagonal->lambda.size(); ++i) {
                    std::string s = "  lambda[" + std::to_string(i + 1) + "][*]:";
                    for (const auto& v : diagonal->lambda[i]) s += " " + render(v);
                    line(s);
                }
        }
        auto dims_line = [&line](const char* label, const std::vector<long>& d) {
            std::string s = label;
            for (long x : d) s += " " + std::to_string(x);
            line(s);
        };
        if (nichols_dims) dims_line("nichols dims:", *nichols_dims);
        if (quadratic_dims) dims_line("quadratic dims:", *quadratic_dims);
        if (dual_dims) dims_line("quadratic dual dims:", *dual_dims);
        if (koszul_ok) {
            std::string s = "koszul identity by degree:";
            for (std::size_t n = 0; n < koszul_ok->size(); ++n)
                s += " " + std::to_string(n + 1) + ":" + ((*koszul_ok)[n] ? "ok" : "FAIL");
            line(s);
        }
        if (finite_dimensional_at)
            line("finite dimensional: top degree " + std::to_string(*finite_dimensional_at) +
                 ", total dimension " + std::to_string(total_dimension.value_or(-1)));
        if (kernel) {
            line("ker(A_2) dimension: " + std::to_string(kernel->dimension()));
            for (const auto& v : kernel->vectors) {
                std::string s = "  ";
                bool first = true;
                for (int c = 0; c < kernel->ambient; ++c) {
                    const QRational& x = v[static_cast<std::size_t>(c)];
                    if (x.is_zero()) continue;
                    if (!first) s += " + ";
                    first = false;
                    s += "(" + render(x) + ")*e" + std::to_string(c / dim + 1) + "e" +
                         std::to_string(c % dim + 1);
                }
                line(s);
            }
        }
        std::string bk = "backend: " + backend.mode;
        if (backend.mode == "specialized") {
            bk += " seed=" + std::to_string(backend.seed) + " points=";
            for (const auto& p : backend.points) bk += render(p) + " ";
            bk += backend.screening ? "(screening)" : "";
        }
        line(bk);
        for (const auto& [k, v] : timings) line("timing " + k + ": " + std::to_string(v) + "s");
        return out;
    }
};

} // namespace qsym
