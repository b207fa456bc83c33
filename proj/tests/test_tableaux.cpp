#include <catch2/catch_amalgamated.hpp>

#include <qsym/tableaux.hpp>

#include <gmpxx.h>

using namespace qsym;

namespace {

// independent oracle: hook content formula
// dim = prod over boxes (n + col - row) / hook(row, col)
mpq_class hook_content_dim(const DominantWeight& shape, int n) {
    mpq_class dim(1);
    for (int r = 0; r < shape.rows(); ++r)
        for (int s = 0; s < shape.row_length(r); ++s) {
            int arm = shape.row_length(r) - s - 1;
            int leg = shape.column_length(s) - r - 1;
            int hook = arm + leg + 1;
            dim *= mpq_class(n + s - r, hook);
        }
    dim.canonicalize();
    return dim;
}

std::vector<DominantWeight> weights_up_to(int max_boxes, int max_rows) {
    std::vector<DominantWeight> out;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        out.push_back(DominantWeight(parts));
        if (remaining == 0 || static_cast<int>(parts.size()) == max_rows) return;
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            parts.push_back(p);
            self(self, remaining - p, p);
            parts.pop_back();
        }
    };
    rec(rec, max_boxes, max_boxes);
    // dedupe (the empty prefix recurs); cheap quadratic pass
    std::vector<DominantWeight> uniq;
    for (const auto& w : out) {
        bool seen = false;
        for (const auto& u : uniq)
            if (u.parts == w.parts) seen = true;
        if (!seen) uniq.push_back(w);
    }
    return uniq;
}

long binom(long a, long b) {
    if (b < 0 || b > a) return 0;
    long r = 1;
    for (long k = 0; k < b; ++k) r = r * (a - k) / (k + 1);
    return r;
}

} // namespace

TEST_CASE("dominant weight validation") {
    CHECK_NOTHROW(DominantWeight({3, 1, 1}));
    CHECK_THROWS_AS(DominantWeight({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(DominantWeight({2, -1}), std::invalid_argument);
    CHECK(DominantWeight({2, 1, 0, 0}).rows() == 2);
    CHECK(DominantWeight(std::vector<int>{}).boxes() == 0);
}

TEST_CASE("enumerate_sstab counts") {
    CHECK(enumerate_sstab(DominantWeight({1}), 4).size() == 4);
    CHECK(enumerate_sstab(DominantWeight({1, 1, 1}), 3).size() == 1);
    CHECK(enumerate_sstab(DominantWeight({2}), 3).size() == 6); // binom(4, 2)
    CHECK(enumerate_sstab(DominantWeight({1, 1, 1}), 2).empty());
    CHECK(enumerate_sstab(DominantWeight(std::vector<int>{}), 5).size() == 1);
}

TEST_CASE("every enumerated tableau satisfies both order conditions") {
    for (const auto& shape : weights_up_to(4, 4))
        for (int n = 1; n <= 4; ++n)
            for (const Tableau& t : enumerate_sstab(shape, n)) CHECK(t.is_semistandard(n));
}

TEST_CASE("enumeration is in lexicographic reading order") {
    auto ts = enumerate_sstab(DominantWeight({2, 1}), 3);
    auto word = [](const Tableau& t) {
        std::vector<int> w;
        for (const auto& row : t.entries) w.insert(w.end(), row.begin(), row.end());
        return w;
    };
    for (std::size_t k = 1; k < ts.size(); ++k) CHECK(word(ts[k - 1]) < word(ts[k]));
}

TEST_CASE("comodule_dim matches the hook content formula, |shape| <= 4, n <= 5") {
    for (const auto& shape : weights_up_to(4, 4))
        for (int n = 1; n <= 5; ++n) {
            mpq_class oracle = hook_content_dim(shape, n);
            if (shape.rows() > n) oracle = 0;
            CHECK(mpq_class(comodule_dim(shape, n)) == oracle);
        }
}

TEST_CASE("symmetric square and exterior square dimensions") {
    for (int n = 1; n <= 6; ++n) {
        long sym = comodule_dim(DominantWeight({2}), n);
        long ext = comodule_dim(DominantWeight({1, 1}), n);
        CHECK(sym == n + binom(n, 2));
        CHECK(ext == binom(n, 2));
        CHECK(sym + ext == static_cast<long>(n) * n);
    }
    CHECK(comodule_dim(DominantWeight(std::vector<int>{}), 3) == 1);
}

TEST_CASE("tableau_weight content vectors") {
    Tableau single;
    single.shape = DominantWeight({1});
    single.entries = {{2}};
    CHECK(tableau_weight(single, 3) == std::vector<int>{0, 1, 0});

    Tableau extreme;
    extreme.shape = DominantWeight({2});
    extreme.entries = {{3, 3}};
    CHECK(tableau_weight(extreme, 3) == std::vector<int>{0, 0, 2});
    // and it is the extreme content among shape (2), n = 3, comparing from
    // the highest label downward
    auto all = enumerate_sstab(DominantWeight({2}), 3);
    std::vector<int> best(3, 0);
    for (const auto& t : all) {
        auto w = tableau_weight(t, 3);
        std::vector<int> rev(w.rbegin(), w.rend());
        std::vector<int> brev(best.rbegin(), best.rend());
        if (rev > brev) best = w;
    }
    CHECK(best == tableau_weight(extreme, 3));

    Tableau column;
    column.shape = DominantWeight({1, 1});
    column.entries = {{1}, {2}};
    CHECK(tableau_weight(column, 2) == std::vector<int>{1, 1});
}
