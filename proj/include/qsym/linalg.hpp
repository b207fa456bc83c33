#pragma once

// Exact sparse linear algebra over Q(q): rank, kernel bases, minimal
// polynomials, matrix inverse, and specialization at a rational point.
//
// Elimination is fraction-free: rows are cleared to Z[q], combined by the
// cross-multiplication rule new = pivot*row - entry*pivot_row, and stripped
// of their full polynomial gcd after every update (this subsumes the Bareiss
// divisor, so entries stay minor-sized or smaller).  Pivoting is on the
// sparsest remaining column; ties break to the lowest (row, col).  The
// procedure is deterministic, so kernel bases are reproducible across runs.

#include <qsym/qfield.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsym {

class FieldMatrix {
public:
    using Entry = std::pair<int, QRational>; // (col, value), rows sorted by col

    FieldMatrix() : rows_(0), cols_(0) {}
    FieldMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_(static_cast<std::size_t>(rows)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
    }

    static FieldMatrix identity(int n) {
        FieldMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.row_[static_cast<std::size_t>(i)].emplace_back(i, QRational(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const std::vector<Entry>& row(int r) const { return row_[static_cast<std::size_t>(r)]; }

    void set(int r, int c, QRational v) {
        check_index(r, c);
        auto& rw = row_[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(rw.begin(), rw.end(), c,
                                   [](const Entry& e, int col) { return e.first < col; });
        if (it != rw.end() && it->first == c) {
            if (v.is_zero())
                rw.erase(it);
            else
                it->second = std::move(v);
        } else if (!v.is_zero()) {
            rw.insert(it, Entry(c, std::move(v)));
        }
    }

    void add_to(int r, int c, const QRational& v) {
        if (v.is_zero()) return;
        check_index(r, c);
        auto& rw = row_[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(rw.begin(), rw.end(), c,
                                   [](const Entry& e, int col) { return e.first < col; });
        if (it != rw.end() && it->first == c) {
            it->second += v;
            if (it->second.is_zero()) rw.erase(it);
        } else {
            rw.insert(it, Entry(c, v));
        }
    }

    QRational at(int r, int c) const {
        check_index(r, c);
        const auto& rw = row_[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(rw.begin(), rw.end(), c,
                                   [](const Entry& e, int col) { return e.first < col; });
        if (it != rw.end() && it->first == c) return it->second;
        return QRational();
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& rw : row_) n += rw.size();
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    friend FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
        a.check_same_shape(b);
        FieldMatrix r = a;
        for (int i = 0; i < b.rows_; ++i)
            for (const auto& [c, v] : b.row(i)) r.add_to(i, c, v);
        return r;
    }

    friend FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
        a.check_same_shape(b);
        FieldMatrix r = a;
        for (int i = 0; i < b.rows_; ++i)
            for (const auto& [c, v] : b.row(i)) r.add_to(i, c, -v);
        return r;
    }

    friend FieldMatrix operator*(const QRational& s, const FieldMatrix& a) {
        FieldMatrix r(a.rows_, a.cols_);
        if (s.is_zero()) return r;
        for (int i = 0; i < a.rows_; ++i)
            for (const auto& [c, v] : a.row(i)) r.row_[static_cast<std::size_t>(i)].emplace_back(c, s * v);
        return r;
    }

    friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        FieldMatrix r(a.rows_, b.cols_);
        std::vector<QRational> scratch(static_cast<std::size_t>(b.cols_));
        std::vector<char> seen(static_cast<std::size_t>(b.cols_), 0);
        std::vector<int> touched;
        for (int i = 0; i < a.rows_; ++i) {
            touched.clear();
            for (const auto& [k, av] : a.row(i)) {
                for (const auto& [j, bv] : b.row(k)) {
                    if (!seen[static_cast<std::size_t>(j)]) {
                        seen[static_cast<std::size_t>(j)] = 1;
                        touched.push_back(j);
                    }
                    scratch[static_cast<std::size_t>(j)] += av * bv;
                }
            }
            std::sort(touched.begin(), touched.end());
            auto& out = r.row_[static_cast<std::size_t>(i)];
            for (int j : touched) {
                auto& v = scratch[static_cast<std::size_t>(j)];
                if (!v.is_zero()) out.emplace_back(j, v);
                v = QRational();
                seen[static_cast<std::size_t>(j)] = 0;
            }
        }
        return r;
    }

    // Kronecker product; tensor indexing is row-major with the left factor
    // most significant, matching the basis convention used library-wide.
    friend FieldMatrix tensor(const FieldMatrix& a, const FieldMatrix& b) {
        FieldMatrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (int ia = 0; ia < a.rows_; ++ia)
            for (int ib = 0; ib < b.rows_; ++ib) {
                auto& out = r.row_[static_cast<std::size_t>(ia * b.rows_ + ib)];
                for (const auto& [ja, va] : a.row(ia))
                    for (const auto& [jb, vb] : b.row(ib))
                        out.emplace_back(ja * b.cols_ + jb, va * vb);
                std::sort(out.begin(), out.end(),
                          [](const Entry& x, const Entry& y) { return x.first < y.first; });
            }
        return r;
    }

    FieldMatrix transpose() const {
        FieldMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (const auto& [c, v] : row(i)) r.row_[static_cast<std::size_t>(c)].emplace_back(i, v);
        return r;
    }

    std::vector<QRational> mul_vec(const std::vector<QRational>& x) const {
        if (static_cast<int>(x.size()) != cols_)
            throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<QRational> y(static_cast<std::size_t>(rows_));
        for (int i = 0; i < rows_; ++i)
            for (const auto& [c, v] : row(i)) y[static_cast<std::size_t>(i)] += v * x[static_cast<std::size_t>(c)];
        return y;
    }

    bool operator==(const FieldMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && row_ == o.row_;
    }
    bool operator!=(const FieldMatrix& o) const { return !(*this == o); }

    // entrywise map q -> expr(q); used for convention cross-checks
    FieldMatrix substitute_q(const QRational& image) const {
        FieldMatrix r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (const auto& [c, v] : row(i)) {
                QRational n, d;
                for (int k = 0; k <= v.num().degree(); ++k)
                    n += QRational(Int(v.num().coeff(k))) * image.pow(k);
                for (int k = 0; k <= v.den().degree(); ++k)
                    d += QRational(Int(v.den().coeff(k))) * image.pow(k);
                r.set(i, c, n / d);
            }
        return r;
    }

private:
    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("matrix index (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") outside " + std::to_string(rows_) +
                                    "x" + std::to_string(cols_));
    }
    void check_same_shape(const FieldMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_, cols_;
    std::vector<std::vector<Entry>> row_;
};

struct SubspaceBasis {
    int ambient = 0;
    std::vector<std::vector<QRational>> vectors;

    SubspaceBasis() = default;
    SubspaceBasis(int ambient_dim, std::vector<std::vector<QRational>> vs);

    int dimension() const { return static_cast<int>(vectors.size()); }
};

namespace detail {

using ZRow = std::vector<std::pair<int, IntPoly>>; // sorted by col

// clear denominators and strip the full gcd; row order is preserved
inline ZRow clear_row(const std::vector<FieldMatrix::Entry>& in) {
    ZRow out;
    if (in.empty()) return out;
    IntPoly den_lcm(1);
    for (const auto& [c, v] : in) {
        IntPoly g = IntPoly::gcd(den_lcm, v.den());
        den_lcm = den_lcm * v.den().div_exact(g);
    }
    IntPoly row_gcd;
    out.reserve(in.size());
    for (const auto& [c, v] : in) {
        IntPoly e = v.num() * den_lcm.div_exact(v.den());
        row_gcd = IntPoly::gcd(row_gcd, e);
        out.emplace_back(c, std::move(e));
    }
    if (!(row_gcd == IntPoly(1)))
        for (auto& [c, e] : out) e = e.div_exact(row_gcd);
    return out;
}

inline void strip_gcd(ZRow& row) {
    if (row.empty()) return;
    IntPoly g;
    for (const auto& [c, e] : row) {
        g = IntPoly::gcd(g, e);
        if (g == IntPoly(1)) return;
    }
    for (auto& [c, e] : row) e = e.div_exact(g);
}

// new_row = pivot_val * row - row_val * pivot_row, gcd-stripped
inline ZRow combine(const ZRow& row, const IntPoly& pivot_val, const ZRow& pivot_row,
                    const IntPoly& row_val) {
    ZRow out;
    out.reserve(row.size() + pivot_row.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot_row.size()) {
        int ci = i < row.size() ? row[i].first : std::numeric_limits<int>::max();
        int cj = j < pivot_row.size() ? pivot_row[j].first : std::numeric_limits<int>::max();
        if (ci < cj) {
            out.emplace_back(ci, row[i].second * pivot_val);
            ++i;
        } else if (cj < ci) {
            out.emplace_back(cj, -(pivot_row[j].second * row_val));
            ++j;
        } else {
            IntPoly v = row[i].second * pivot_val - pivot_row[j].second * row_val;
            if (!v.is_zero()) out.emplace_back(ci, std::move(v));
            ++i;
            ++j;
        }
    }
    strip_gcd(out);
    return out;
}

inline const IntPoly* find_col(const ZRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != row.end() && it->first == col) return &it->second;
    return nullptr;
}

struct Echelon {
    std::vector<std::pair<int, int>> pivots; // (row, col) in elimination order
    std::vector<ZRow> rows;                  // final state of every row
};

inline Echelon echelonize(const FieldMatrix& m) {
    Echelon ech;
    ech.rows.resize(static_cast<std::size_t>(m.rows()));
    std::vector<bool> active(static_cast<std::size_t>(m.rows()), false);
    std::vector<int> col_count(static_cast<std::size_t>(m.cols()), 0);
    for (int r = 0; r < m.rows(); ++r) {
        ech.rows[static_cast<std::size_t>(r)] = clear_row(m.row(r));
        if (!ech.rows[static_cast<std::size_t>(r)].empty()) active[static_cast<std::size_t>(r)] = true;
        for (const auto& [c, v] : ech.rows[static_cast<std::size_t>(r)]) ++col_count[static_cast<std::size_t>(c)];
    }

    auto drop_counts = [&](const ZRow& row) {
        for (const auto& [c, v] : row) --col_count[static_cast<std::size_t>(c)];
    };
    auto add_counts = [&](const ZRow& row) {
        for (const auto& [c, v] : row) ++col_count[static_cast<std::size_t>(c)];
    };

    for (;;) {
        // sparsest column still present in an active row; ties to lowest col
        int best_col = -1, best = std::numeric_limits<int>::max();
        for (int c = 0; c < m.cols(); ++c)
            if (col_count[static_cast<std::size_t>(c)] > 0 && col_count[static_cast<std::size_t>(c)] < best) {
                best = col_count[static_cast<std::size_t>(c)];
                best_col = c;
            }
        if (best_col < 0) break;

        int pivot_row = -1;
        for (int r = 0; r < m.rows(); ++r)
            if (active[static_cast<std::size_t>(r)] && find_col(ech.rows[static_cast<std::size_t>(r)], best_col)) {
                pivot_row = r;
                break;
            }

        const ZRow& prow = ech.rows[static_cast<std::size_t>(pivot_row)];
        const IntPoly pval = *find_col(prow, best_col);
        for (int r = 0; r < m.rows(); ++r) {
            if (!active[static_cast<std::size_t>(r)] || r == pivot_row) continue;
            const IntPoly* rv = find_col(ech.rows[static_cast<std::size_t>(r)], best_col);
            if (!rv) continue;
            drop_counts(ech.rows[static_cast<std::size_t>(r)]);
            ech.rows[static_cast<std::size_t>(r)] = combine(ech.rows[static_cast<std::size_t>(r)], pval, prow, *rv);
            add_counts(ech.rows[static_cast<std::size_t>(r)]);
            if (ech.rows[static_cast<std::size_t>(r)].empty()) active[static_cast<std::size_t>(r)] = false;
        }
        active[static_cast<std::size_t>(pivot_row)] = false;
        drop_counts(prow);
        ech.pivots.emplace_back(pivot_row, best_col);
    }
    return ech;
}

// deterministic normalization: clear denominators, strip gcd, make the first
// nonzero coordinate have a positive leading coefficient
inline void normalize_vector(std::vector<QRational>& v) {
    IntPoly den_lcm(1), num_gcd;
    for (const auto& x : v) {
        if (x.is_zero()) continue;
        IntPoly g = IntPoly::gcd(den_lcm, x.den());
        den_lcm = den_lcm * x.den().div_exact(g);
    }
    std::vector<IntPoly> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        ints[i] = v[i].num() * den_lcm.div_exact(v[i].den());
        num_gcd = IntPoly::gcd(num_gcd, ints[i]);
    }
    if (num_gcd.is_zero()) return;
    bool flip = false;
    for (const auto& p : ints)
        if (!p.is_zero()) {
            flip = p.leading() < 0;
            break;
        }
    for (std::size_t i = 0; i < v.size(); ++i) {
        IntPoly p = ints[i].div_exact(num_gcd);
        v[i] = QRational(flip ? -p : p, IntPoly(1));
    }
}

} // namespace detail

inline long rank(const FieldMatrix& m) {
    return static_cast<long>(detail::echelonize(m).pivots.size());
}

inline SubspaceBasis kernel_basis(const FieldMatrix& m) {
    detail::Echelon ech = detail::echelonize(m);
    std::vector<bool> is_pivot_col(static_cast<std::size_t>(m.cols()), false);
    for (const auto& [r, c] : ech.pivots) is_pivot_col[static_cast<std::size_t>(c)] = true;

    std::vector<std::vector<QRational>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot_col[static_cast<std::size_t>(f)]) continue;
        std::vector<QRational> v(static_cast<std::size_t>(m.cols()));
        v[static_cast<std::size_t>(f)] = QRational(1);
        // pivot row k has zeros at all earlier pivot columns, so walking the
        // pivots backwards is a triangular solve
        for (std::size_t k = ech.pivots.size(); k-- > 0;) {
            auto [pr, pc] = ech.pivots[k];
            const detail::ZRow& row = ech.rows[static_cast<std::size_t>(pr)];
            QRational acc;
            const IntPoly* pivot_val = nullptr;
            for (const auto& [c, e] : row) {
                if (c == pc) {
                    pivot_val = &e;
                    continue;
                }
                if (!v[static_cast<std::size_t>(c)].is_zero())
                    acc += QRational(e, IntPoly(1)) * v[static_cast<std::size_t>(c)];
            }
            v[static_cast<std::size_t>(pc)] = -(acc / QRational(*pivot_val, IntPoly(1)));
        }
        detail::normalize_vector(v);
        basis.push_back(std::move(v));
    }
    return SubspaceBasis(m.cols(), std::move(basis));
}

inline SubspaceBasis::SubspaceBasis(int ambient_dim, std::vector<std::vector<QRational>> vs)
    : ambient(ambient_dim), vectors(std::move(vs)) {
    FieldMatrix m(static_cast<int>(vectors.size()), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (static_cast<int>(vectors[i].size()) != ambient)
            throw std::invalid_argument("basis vector has wrong ambient dimension");
        for (int c = 0; c < ambient; ++c) m.set(static_cast<int>(i), c, vectors[i][static_cast<std::size_t>(c)]);
    }
    if (rank(m) != static_cast<long>(vectors.size()))
        throw std::invalid_argument("basis vectors are linearly dependent");
}

// monic minimal polynomial as coefficient list, index = power of x.
// Krylov search: the first k where vec(M^k) depends on lower powers.
inline std::vector<QRational> minimal_polynomial(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("minimal polynomial of non-square matrix");
    const int n = m.rows();
    if (n == 0) return {QRational(1)}; // empty matrix: p(x) = 1
    std::vector<FieldMatrix> powers{FieldMatrix::identity(n)};
    for (int k = 1; k <= n * n + 1; ++k) {
        powers.push_back(powers.back() * m);
        FieldMatrix stack(n * n, k + 1);
        for (int j = 0; j <= k; ++j)
            for (int r = 0; r < n; ++r)
                for (const auto& [c, v] : powers[static_cast<std::size_t>(j)].row(r))
                    stack.set(r * n + c, j, v);
        SubspaceBasis ker = kernel_basis(stack);
        if (ker.dimension() == 0) continue;
        if (ker.dimension() != 1)
            throw std::logic_error("Krylov dependence appeared late"); // unreachable
        std::vector<QRational> p = ker.vectors.front();
        QRational lead = p.back();
        for (auto& c : p) c = c / lead;
        return p;
    }
    throw std::logic_error("minimal polynomial search exceeded Cayley-Hamilton bound");
}

inline FieldMatrix evaluate_polynomial(const std::vector<QRational>& p, const FieldMatrix& m) {
    FieldMatrix acc(m.rows(), m.cols());
    FieldMatrix pw = FieldMatrix::identity(m.rows());
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k > 0) pw = pw * m;
        acc = acc + p[k] * pw;
    }
    return acc;
}

// entrywise evaluation at q = x; the result is a constant matrix carried by
// the same FieldMatrix type, so every downstream routine works unchanged
inline FieldMatrix specialize(const FieldMatrix& m, const Rat& x) {
    FieldMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (const auto& [c, v] : m.row(i)) {
            try {
                r.set(i, c, QRational(v.eval(x)));
            } catch (const PoleError& e) {
                throw PoleError("entry (" + std::to_string(i + 1) + "," + std::to_string(c + 1) +
                                "): " + e.what());
            }
        }
    return r;
}

inline FieldMatrix inverse(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const int n = m.rows();
    // Gauss-Jordan on [M | I] over the field
    std::vector<std::vector<QRational>> a(static_cast<std::size_t>(n),
                                          std::vector<QRational>(static_cast<std::size_t>(2 * n)));
    for (int i = 0; i < n; ++i) {
        for (const auto& [c, v] : m.row(i)) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = v;
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = QRational(1);
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::invalid_argument("matrix is singular");
        std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(c)]);
        QRational inv_p = a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)].inverse();
        for (auto& x : a[static_cast<std::size_t>(c)]) x *= inv_p;
        for (int r = 0; r < n; ++r) {
            if (r == c || a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) continue;
            QRational f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            for (int j = 0; j < 2 * n; ++j)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
                    f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
        }
    }
    FieldMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.set(i, j, a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)]);
    return r;
}

} // namespace qsym
