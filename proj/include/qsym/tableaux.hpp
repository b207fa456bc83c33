#pragma once

// Dominant weights, semistandard Young tableaux, and the dimension counts
// they carry.  Pure combinatorics; enumeration order is the lexicographic
// order of row-major reading words, so output is deterministic.

#include <stdexcept>
#include <vector>

namespace qsym {

// weakly decreasing sequence of nonnegative integers; trailing zeros stripped
struct DominantWeight {
    std::vector<int> parts;

    DominantWeight() = default;
    explicit DominantWeight(std::vector<int> p) : parts(std::move(p)) {
        for (std::size_t k = 0; k < parts.size(); ++k) {
            if (parts[k] < 0) throw std::invalid_argument("dominant weight has a negative part");
            if (k > 0 && parts[k] > parts[k - 1])
                throw std::invalid_argument("dominant weight is not weakly decreasing");
        }
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
    }

    int rows() const { return static_cast<int>(parts.size()); }
    int boxes() const {
        int n = 0;
        for (int p : parts) n += p;
        return n;
    }
    int row_length(int r) const {
        return r < rows() ? parts[static_cast<std::size_t>(r)] : 0;
    }
    int column_length(int s) const {
        int n = 0;
        for (int p : parts)
            if (p > s) ++n;
        return n;
    }
};

// filling of the Young diagram of `shape` with labels in 1..n, weakly
// increasing along rows and strictly increasing down columns
struct Tableau {
    DominantWeight shape;
    std::vector<std::vector<int>> entries; // entries[r][s]

    bool is_semistandard(int label_bound) const {
        if (static_cast<int>(entries.size()) != shape.rows()) return false;
        for (int r = 0; r < shape.rows(); ++r) {
            const auto& row = entries[static_cast<std::size_t>(r)];
            if (static_cast<int>(row.size()) != shape.row_length(r)) return false;
            for (int s = 0; s < static_cast<int>(row.size()); ++s) {
                int v = row[static_cast<std::size_t>(s)];
                if (v < 1 || v > label_bound) return false;
                if (s > 0 && row[static_cast<std::size_t>(s - 1)] > v) return false;
                if (r > 0 && entries[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(s)] >= v)
                    return false;
            }
        }
        return true;
    }
};

inline std::vector<Tableau> enumerate_sstab(const DominantWeight& shape, int label_bound) {
    std::vector<Tableau> out;
    if (shape.rows() > label_bound) return out; // first column cannot be filled
    Tableau t;
    t.shape = shape;
    t.entries.resize(static_cast<std::size_t>(shape.rows()));
    for (int r = 0; r < shape.rows(); ++r)
        t.entries[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(shape.row_length(r)), 0);

    // fill boxes in reading order, ascending labels: output is lexicographic
    // in the row-major reading word
    std::vector<std::pair<int, int>> boxes;
    for (int r = 0; r < shape.rows(); ++r)
        for (int s = 0; s < shape.row_length(r); ++s) boxes.emplace_back(r, s);

    auto fill = [&](auto&& self, std::size_t at) -> void {
        if (at == boxes.size()) {
            out.push_back(t);
            return;
        }
        auto [r, s] = boxes[at];
        int lo = 1;
        if (s > 0) lo = std::max(lo, t.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(s - 1)]);
        if (r > 0) lo = std::max(lo, t.entries[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(s)] + 1);
        for (int v = lo; v <= label_bound; ++v) {
            t.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = v;
            self(self, at + 1);
        }
        t.entries[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = 0;
    };
    fill(fill, 0);
    return out;
}

inline long comodule_dim(const DominantWeight& shape, int label_bound) {
    return static_cast<long>(enumerate_sstab(shape, label_bound).size());
}

// content vector: count of each label 1..n
inline std::vector<int> tableau_weight(const Tableau& t, int label_bound) {
    std::vector<int> w(static_cast<std::size_t>(label_bound), 0);
    for (const auto& row : t.entries)
        for (int v : row) {
            if (v < 1 || v > label_bound) throw std::invalid_argument("label outside 1..n");
            ++w[static_cast<std::size_t>(v - 1)];
        }
    return w;
}

} // namespace qsym
