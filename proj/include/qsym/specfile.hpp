#pragma once

// Braiding spec files: a sparse entry list in JSON.
//
//   {
//     "dim": 2,
//     "name": "flip2",                      // optional
//     "description": "the flip on dim 2",   // optional
//     "entries": [
//       {"out": [2, 1], "in": [1, 2], "coeff": "1"},
//       ...
//     ]
//   }
//
// An entry gives the coefficient of e_k (x) e_l (out) in the image of
// e_i (x) e_j (in); indices are 1-based.  Duplicate (out, in) addresses are
// an error.  Coefficients use the qfield grammar.

#include <qsym/braidcore.hpp>

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace qsym {

class SpecFileError : public std::runtime_error {
public:
    explicit SpecFileError(const std::string& what) : std::runtime_error(what) {}
};

struct BraidingSpecFile {
    int dim = 0;
    std::string name;
    std::string description;
    struct Entry {
        int out_k, out_l, in_i, in_j; // 1-based
        std::string coeff;
    };
    std::vector<Entry> entries;

    static BraidingSpecFile from_braiding(const Braiding& b, std::string name_ = "",
                                          std::string description_ = "") {
        BraidingSpecFile f;
        f.dim = b.dim;
        f.name = std::move(name_);
        f.description = std::move(description_);
        FieldMatrix cols = b.matrix.transpose();
        for (int in = 0; in < b.dim * b.dim; ++in)
            for (const auto& [out, v] : cols.row(in))
                f.entries.push_back({out / b.dim + 1, out % b.dim + 1, in / b.dim + 1,
                                     in % b.dim + 1, render(v)});
        return f;
    }

    Braiding to_braiding() const {
        FieldMatrix m(dim * dim, dim * dim);
        for (const Entry& e : entries)
            m.set((e.out_k - 1) * dim + (e.out_l - 1), (e.in_i - 1) * dim + (e.in_j - 1),
                  qf_parse(e.coeff));
        return Braiding(dim, std::move(m));
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["dim"] = dim;
        if (!name.empty()) j["name"] = name;
        if (!description.empty()) j["description"] = description;
        j["entries"] = nlohmann::ordered_json::array();
        for (const Entry& e : entries)
            j["entries"].push_back({{"out", {e.out_k, e.out_l}}, {"in", {e.in_i, e.in_j}}, {"coeff", e.coeff}});
        return j;
    }

    std::string dump() const { return to_json().dump(2) + "\n"; }

    static BraidingSpecFile parse(const std::string& text) {
        nlohmann::ordered_json j;
        try {
            j = nlohmann::ordered_json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw SpecFileError(std::string("malformed spec file: ") + e.what());
        }
        BraidingSpecFile f;
        if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
            throw SpecFileError("malformed spec file: missing integer field 'dim'");
        f.dim = j["dim"].get<int>();
        if (f.dim < 1) throw SpecFileError("malformed spec file: dim must be >= 1");
        if (j.contains("name")) f.name = j["name"].get<std::string>();
        if (j.contains("description")) f.description = j["description"].get<std::string>();
        if (!j.contains("entries") || !j["entries"].is_array())
            throw SpecFileError("malformed spec file: missing array field 'entries'");
        std::set<std::pair<int, int>> seen; // (out flat, in flat)
        int index = 0;
        for (const auto& je : j["entries"]) {
            ++index;
            auto fail = [&](const std::string& msg) {
                throw SpecFileError("entry " + std::to_string(index) + ": " + msg);
            };
            if (!je.is_object() || !je.contains("out") || !je.contains("in") || !je.contains("coeff"))
                fail("needs fields 'out', 'in', 'coeff'");
            auto pair_of = [&](const nlohmann::ordered_json& p, const char* which) {
                if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
                    fail(std::string("field '") + which + "' must be a pair of integers");
                int a = p[0].get<int>(), b = p[1].get<int>();
                if (a < 1 || a > f.dim || b < 1 || b > f.dim)
                    fail(std::string("field '") + which + "' index outside 1.." + std::to_string(f.dim));
                return std::make_pair(a, b);
            };
            auto [k, l] = pair_of(je["out"], "out");
            auto [i, jj] = pair_of(je["in"], "in");
            if (!je["coeff"].is_string()) fail("field 'coeff' must be a string");
            std::string coeff = je["coeff"].get<std::string>();
            try {
                (void)qf_parse(coeff);
            } catch (const ParseError& e) {
                fail(std::string("coefficient: ") + e.what());
            }
            if (!seen.insert({(k - 1) * f.dim + (l - 1), (i - 1) * f.dim + (jj - 1)}).second)
                fail("duplicate (out, in) address");
            f.entries.push_back({k, l, i, jj, coeff});
        }
        return f;
    }

    static BraidingSpecFile load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw SpecFileError("cannot open spec file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }
};

inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char b : data) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

// stable identity of a braiding: hash of its canonical spec serialization
inline std::string braiding_hash(const Braiding& b) {
    return "fnv1a:" + fnv1a_hex(BraidingSpecFile::from_braiding(b).dump());
}

} // namespace qsym
