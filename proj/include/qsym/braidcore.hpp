#pragma once

// Braided vector spaces and their braid-group representations on tensor
// powers.  A Braiding is a dim d together with an invertible d^2 x d^2 matrix
// acting on V (x) V in the basis e_i (x) e_j |-> i*d + j (row-major, left
// factor most significant; indices 0-based in code, 1-based in reports).
//
// Permutations compose as functions, (a*b)(x) = a(b(x)), and a word
// [i_1, ..., i_k] stands for the product t_{i_1} t_{i_2} ... t_{i_k} in that
// order.  The Matsumoto section lifts a permutation through any reduced word;
// the lift is word-independent, which the test suite checks by comparing two
// word strategies.

#include <qsym/linalg.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qsym {

class Permutation {
public:
    explicit Permutation(std::vector<int> one_line) : img_(std::move(one_line)) {
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            if (v < 1 || v > static_cast<int>(img_.size()) || seen[static_cast<std::size_t>(v - 1)])
                throw std::invalid_argument("not a permutation");
            seen[static_cast<std::size_t>(v - 1)] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v));
    }

    static Permutation transposition(int n, int i) {
        if (i < 1 || i > n - 1) throw std::out_of_range("transposition index outside 1..n-1");
        Permutation p = identity(n);
        std::swap(p.img_[static_cast<std::size_t>(i - 1)], p.img_[static_cast<std::size_t>(i)]);
        return p;
    }

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int x) const { return img_[static_cast<std::size_t>(x - 1)]; }
    const std::vector<int>& one_line() const { return img_; }

    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
        std::vector<int> v(a.img_.size());
        for (int x = 1; x <= a.size(); ++x) v[static_cast<std::size_t>(x - 1)] = a(b(x));
        return Permutation(std::move(v));
    }

    Permutation inverse() const {
        std::vector<int> v(img_.size());
        for (int x = 1; x <= size(); ++x) v[static_cast<std::size_t>(img_[static_cast<std::size_t>(x - 1)] - 1)] = x;
        return Permutation(std::move(v));
    }

    long inversions() const {
        long inv = 0;
        for (std::size_t i = 0; i < img_.size(); ++i)
            for (std::size_t j = i + 1; j < img_.size(); ++j)
                if (img_[i] > img_[j]) ++inv;
        return inv;
    }

    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator!=(const Permutation& o) const { return img_ != o.img_; }

private:
    std::vector<int> img_;
};

// all of S_n in lexicographic one-line order
inline std::vector<Permutation> symmetric_group(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

// positive generator letters t_i, 1 <= i <= n-1
using BraidWord = std::vector<int>;

struct Braiding {
    int dim = 0;
    FieldMatrix matrix; // (dim*dim) x (dim*dim)

    Braiding() = default;
    Braiding(int d, FieldMatrix m) : dim(d), matrix(std::move(m)) {
        if (dim < 1) throw std::invalid_argument("braiding dimension must be >= 1");
        if (matrix.rows() != dim * dim || matrix.cols() != dim * dim)
            throw std::invalid_argument("braiding matrix must be dim^2 x dim^2");
    }
};

struct BraidVerdict {
    bool holds = false;
    // first violating entry of the two d^3 x d^3 products, if any (0-based)
    int row = -1, col = -1;
};

inline FieldMatrix lift(const Braiding& sigma, int strands, int position) {
    if (position < 1 || position > strands - 1)
        throw std::out_of_range("lift position " + std::to_string(position) + " outside 1.." +
                                std::to_string(strands - 1));
    const int d = sigma.dim;
    long total = 1;
    for (int k = 0; k < strands; ++k) total *= d;
    long right = 1; // d^(strands - position - 1)
    for (int k = 0; k < strands - position - 1; ++k) right *= d;

    FieldMatrix out(static_cast<int>(total), static_cast<int>(total));
    for (long r = 0; r < total; ++r) {
        int pair = static_cast<int>((r / right) % static_cast<long>(d * d));
        long base = r - static_cast<long>(pair) * right;
        for (const auto& [c, v] : sigma.matrix.row(pair))
            out.set(static_cast<int>(r), static_cast<int>(base + static_cast<long>(c) * right), v);
    }
    return out;
}

inline BraidVerdict check_braid_equation(const Braiding& sigma) {
    FieldMatrix l1 = lift(sigma, 3, 1);
    FieldMatrix l2 = lift(sigma, 3, 2);
    FieldMatrix lhs = l1 * l2 * l1;
    FieldMatrix rhs = l2 * l1 * l2;
    if (lhs == rhs) return {true, -1, -1};
    FieldMatrix diff = lhs - rhs;
    for (int r = 0; r < diff.rows(); ++r)
        if (!diff.row(r).empty()) return {false, r, diff.row(r).front().first};
    return {false, -1, -1}; // unreachable
}

namespace detail {

// sorting word: applying t_{w_1}, t_{w_2}, ... to the one-line array (right
// multiplication) sorts it, so reverse(w) is a reduced word for pi
template <typename PickSwaps>
BraidWord sorting_word(const Permutation& pi, PickSwaps&& pick) {
    std::vector<int> p = pi.one_line();
    BraidWord w;
    pick(p, w);
    std::reverse(w.begin(), w.end());
    return w;
}

} // namespace detail

// canonical reduced word, assembled from the inversion table (Lehmer code):
// each value v walks right past exactly the smaller values that follow it
inline BraidWord reduced_word(const Permutation& pi) {
    return detail::sorting_word(pi, [](std::vector<int>& p, BraidWord& w) {
        const int n = static_cast<int>(p.size());
        for (int v = n; v >= 2; --v) {
            int i = static_cast<int>(std::find(p.begin(), p.end(), v) - p.begin()) + 1;
            for (int j = i; j <= v - 1; ++j) {
                std::swap(p[static_cast<std::size_t>(j - 1)], p[static_cast<std::size_t>(j)]);
                w.push_back(j);
            }
        }
    });
}

// alternative strategy used by the Matsumoto-independence tests
inline BraidWord reduced_word_bubble(const Permutation& pi) {
    return detail::sorting_word(pi, [](std::vector<int>& p, BraidWord& w) {
        const int n = static_cast<int>(p.size());
        for (bool moved = true; moved;) {
            moved = false;
            for (int j = 1; j <= n - 1; ++j)
                if (p[static_cast<std::size_t>(j - 1)] > p[static_cast<std::size_t>(j)]) {
                    std::swap(p[static_cast<std::size_t>(j - 1)], p[static_cast<std::size_t>(j)]);
                    w.push_back(j);
                    moved = true;
                }
        }
    });
}

inline Permutation permutation_of_word(int n, const BraidWord& w) {
    Permutation p = Permutation::identity(n);
    for (int letter : w) p = p * Permutation::transposition(n, letter);
    return p;
}

inline FieldMatrix matsumoto_matrix_for_word(const Braiding& sigma, int strands, const BraidWord& w) {
    long total = 1;
    for (int k = 0; k < strands; ++k) total *= sigma.dim;
    FieldMatrix m = FieldMatrix::identity(static_cast<int>(total));
    for (int letter : w) m = m * lift(sigma, strands, letter);
    return m;
}

inline FieldMatrix matsumoto_matrix(const Braiding& sigma, int strands, const Permutation& pi) {
    if (pi.size() != strands) throw std::invalid_argument("permutation size != strand count");
    return matsumoto_matrix_for_word(sigma, strands, reduced_word(pi));
}

// A_n as the full |S_n|-term sum; reference path and oracle for the
// factorized assembly below
inline FieldMatrix quantum_symmetrizer_direct(const Braiding& sigma, int degree) {
    if (degree < 0) throw std::invalid_argument("negative symmetrizer degree");
    if (degree == 0) return FieldMatrix::identity(1);
    long total = 1;
    for (int k = 0; k < degree; ++k) total *= sigma.dim;
    FieldMatrix acc(static_cast<int>(total), static_cast<int>(total));
    for (const Permutation& pi : symmetric_group(degree))
        acc = acc + matsumoto_matrix(sigma, degree, pi);
    return acc;
}

// A_n = (A_{n-1} (x) I) * (I + s_{n-1} + s_{n-1}s_{n-2} + ... + s_{n-1}...s_1),
// the staircase coset decomposition of S_n over S_{n-1}
inline FieldMatrix quantum_symmetrizer(const Braiding& sigma, int degree) {
    if (degree < 0) throw std::invalid_argument("negative symmetrizer degree");
    if (degree == 0) return FieldMatrix::identity(1);
    FieldMatrix acc = FieldMatrix::identity(sigma.dim);
    for (int n = 2; n <= degree; ++n) {
        long total = 1;
        for (int k = 0; k < n; ++k) total *= sigma.dim;
        FieldMatrix stair = FieldMatrix::identity(static_cast<int>(total));
        FieldMatrix partial = FieldMatrix::identity(static_cast<int>(total));
        for (int k = n - 1; k >= 1; --k) {
            partial = partial * lift(sigma, n, k);
            stair = stair + partial;
        }
        acc = tensor(acc, FieldMatrix::identity(sigma.dim)) * stair;
    }
    return acc;
}

struct HeckeFinding {
    // lambda with (sigma - lambda)(sigma + 1) = 0, if the minimal polynomial
    // supports one; sigma = -id reports lambda = 1
    std::optional<QRational> lambda;
    bool lambda_root_of_unity = false;
    // scalars c for which scale(sigma, c) is Hecke, when sigma itself is not
    // but its minimal polynomial splits as (x - a)(x - b)
    std::vector<QRational> scale_to_hecke;
    std::vector<QRational> min_poly;
};

namespace detail {

// the only constant rational functions of root-of-unity value are +-1
inline bool is_root_of_unity_constant(const QRational& v) {
    return v.is_constant() && (v == QRational(1) || v == QRational(-1));
}

inline QRational eval_poly_at(const std::vector<QRational>& p, const QRational& x) {
    QRational acc;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

} // namespace detail

inline HeckeFinding hecke_check(const Braiding& sigma) {
    HeckeFinding out;
    out.min_poly = minimal_polynomial(sigma.matrix);
    const auto& p = out.min_poly;
    if (p.size() == 2) {
        // sigma = a*id; any lambda works for a = -1, and the value 1 keeps the
        // answer consistent with anti-flips of higher dimension
        QRational a = -p[0];
        out.lambda = (a == QRational(-1)) ? QRational(1) : a;
    } else if (p.size() == 3) {
        if (detail::eval_poly_at(p, QRational(-1)).is_zero()) {
            QRational lam = -p[0]; // product of roots is -lambda * ... = p[0]
            if (lam != QRational(-1)) out.lambda = lam;
        } else {
            // (x - a)(x - b) with neither root -1: Hecke after scaling by -1/root
            QRational b = p[1], c = p[0];
            auto disc = (b * b - QRational(4) * c).sqrt();
            if (disc) {
                QRational half(IntPoly(1), IntPoly(2));
                QRational r1 = (-b + *disc) * half;
                QRational r2 = (-b - *disc) * half;
                out.scale_to_hecke.push_back(-r1.inverse());
                out.scale_to_hecke.push_back(-r2.inverse());
                std::sort(out.scale_to_hecke.begin(), out.scale_to_hecke.end(),
                          [](const QRational& x, const QRational& y) { return render(x) < render(y); });
            }
        }
    }
    if (out.lambda) out.lambda_root_of_unity = detail::is_root_of_unity_constant(*out.lambda);
    return out;
}

struct DiagonalFinding {
    bool diagonal = false;
    // lambda[i][j] with sigma(e_i (x) e_j) = lambda[i][j] e_j (x) e_i (0-based)
    std::vector<std::vector<QRational>> lambda;
};

inline DiagonalFinding is_diagonal(const Braiding& sigma) {
    const int d = sigma.dim;
    DiagonalFinding out;
    out.lambda.assign(static_cast<std::size_t>(d), std::vector<QRational>(static_cast<std::size_t>(d)));
    FieldMatrix cols = sigma.matrix.transpose(); // rows of this are columns of sigma
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const auto& col = cols.row(i * d + j);
            if (col.size() != 1 || col.front().first != j * d + i) return out;
            out.lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.front().second;
        }
    out.diagonal = true;
    return out;
}

inline Braiding scale(const Braiding& sigma, const QRational& c) {
    if (c.is_zero()) throw std::invalid_argument("cannot scale a braiding by zero");
    return Braiding(sigma.dim, c * sigma.matrix);
}

} // namespace qsym
