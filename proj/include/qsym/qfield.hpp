#pragma once

// Exact arithmetic in Q(q), the field of rational functions in one formal
// variable q with integer coefficients.  IntPoly is a dense polynomial in q
// over arbitrary-precision integers; QRational is a fully reduced fraction of
// two IntPolys and is the coefficient field for every matrix in this library.
//
// The module also owns the coefficient expression grammar used by spec files
// and reports:
//
//   expr   := term  (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-'? base ('^' '-'? integer)?
//   base   := integer | 'q' | '(' expr ')'
//
// Whitespace is insignificant.  Only 'q' and parenthesized subexpressions
// may be raised to a power; exponents are (possibly negative) integers.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsym {

using Int = mpz_class;
using Rat = mpq_class;

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& what)
        : std::runtime_error("parse error at position " + std::to_string(position + 1) + ": " + what),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Polynomial in q with Int coefficients, indexed by exponent.  Canonical:
// no trailing zero coefficient; the zero polynomial is the empty sequence.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(long v) { // NOLINT: implicit by design, constants appear everywhere
        if (v != 0) coeff_.emplace_back(v);
    }
    explicit IntPoly(Int v) {
        if (v != 0) coeff_.push_back(std::move(v));
    }
    explicit IntPoly(std::vector<Int> coeffs) : coeff_(std::move(coeffs)) { trim(); }

    static IntPoly variable() { return monomial(1, 1); }

    static IntPoly monomial(Int c, int exponent) {
        IntPoly p;
        if (c == 0) return p;
        p.coeff_.assign(static_cast<std::size_t>(exponent) + 1, Int(0));
        p.coeff_.back() = std::move(c);
        return p;
    }

    bool is_zero() const { return coeff_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coeff_.size()) - 1; }

    const Int& coeff(int k) const {
        static const Int kZero(0);
        if (k < 0 || k >= static_cast<int>(coeff_.size())) return kZero;
        return coeff_[static_cast<std::size_t>(k)];
    }

    const Int& leading() const {
        if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
        return coeff_.back();
    }

    // lowest exponent with nonzero coefficient; 0 for the zero polynomial
    int valuation() const {
        for (std::size_t k = 0; k < coeff_.size(); ++k)
            if (coeff_[k] != 0) return static_cast<int>(k);
        return 0;
    }

    bool is_monomial() const {
        if (is_zero()) return false;
        for (std::size_t k = 0; k + 1 < coeff_.size(); ++k)
            if (coeff_[k] != 0) return false;
        return true;
    }

    bool is_constant() const { return coeff_.size() <= 1; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        IntPoly r;
        r.coeff_.resize(std::max(a.coeff_.size(), b.coeff_.size()), Int(0));
        for (std::size_t k = 0; k < r.coeff_.size(); ++k) {
            if (k < a.coeff_.size()) r.coeff_[k] += a.coeff_[k];
            if (k < b.coeff_.size()) r.coeff_[k] += b.coeff_[k];
        }
        r.trim();
        return r;
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        IntPoly r;
        r.coeff_.resize(std::max(a.coeff_.size(), b.coeff_.size()), Int(0));
        for (std::size_t k = 0; k < r.coeff_.size(); ++k) {
            if (k < a.coeff_.size()) r.coeff_[k] += a.coeff_[k];
            if (k < b.coeff_.size()) r.coeff_[k] -= b.coeff_[k];
        }
        r.trim();
        return r;
    }

    friend IntPoly operator-(const IntPoly& a) {
        IntPoly r = a;
        for (auto& c : r.coeff_) c = -c;
        return r;
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        IntPoly r;
        r.coeff_.assign(a.coeff_.size() + b.coeff_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.coeff_.size(); ++i) {
            if (a.coeff_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeff_.size(); ++j) {
                if (b.coeff_[j] == 0) continue;
                r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
            }
        }
        r.trim();
        return r;
    }

    friend IntPoly operator*(const IntPoly& a, const Int& s) {
        if (s == 0) return {};
        IntPoly r = a;
        for (auto& c : r.coeff_) c *= s;
        return r;
    }

    bool operator==(const IntPoly& o) const { return coeff_ == o.coeff_; }
    bool operator!=(const IntPoly& o) const { return coeff_ != o.coeff_; }

    // gcd of the absolute values of the coefficients (0 for the zero polynomial)
    Int content() const {
        Int g(0);
        for (const auto& c : coeff_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    // exact division by a nonzero polynomial; throws if the division is not exact
    IntPoly div_exact(const IntPoly& d) const {
        if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
        if (is_zero()) return {};
        if (d.is_monomial()) {
            int v = d.degree();
            if (valuation() < v) throw std::logic_error("inexact polynomial division");
            const Int& dc = d.leading();
            IntPoly r;
            r.coeff_.resize(coeff_.size() - static_cast<std::size_t>(v));
            for (std::size_t k = 0; k < r.coeff_.size(); ++k) {
                Int quo, rem;
                mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(),
                            coeff_[k + static_cast<std::size_t>(v)].get_mpz_t(), dc.get_mpz_t());
                if (rem != 0) throw std::logic_error("inexact polynomial division");
                r.coeff_[k] = std::move(quo);
            }
            for (int k = 0; k < v; ++k)
                if (coeff(k) != 0) throw std::logic_error("inexact polynomial division");
            r.trim();
            return r;
        }
        IntPoly rem = *this;
        IntPoly quo;
        quo.coeff_.assign(coeff_.size(), Int(0));
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            int shift = rem.degree() - d.degree();
            Int qc, rc;
            mpz_tdiv_qr(qc.get_mpz_t(), rc.get_mpz_t(), rem.leading().get_mpz_t(),
                        d.leading().get_mpz_t());
            if (rc != 0) throw std::logic_error("inexact polynomial division");
            quo.coeff_[static_cast<std::size_t>(shift)] = qc;
            rem = rem - d * monomial(qc, shift);
        }
        if (!rem.is_zero()) throw std::logic_error("inexact polynomial division");
        quo.trim();
        return quo;
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (std::size_t k = coeff_.size(); k-- > 0;) {
            acc *= x;
            acc += Rat(coeff_[k]);
        }
        acc.canonicalize();
        return acc;
    }

    IntPoly pow(unsigned e) const {
        IntPoly r(1), base = *this;
        while (e) {
            if (e & 1u) r = r * base;
            base = base * base;
            e >>= 1u;
        }
        return r;
    }

    // gcd, primitive with positive leading coefficient; gcd(0, p) = |p| normalized
    static IntPoly gcd(const IntPoly& a, const IntPoly& b);

    // square root if *this is a perfect square, otherwise nullopt;
    // result has positive leading coefficient
    std::optional<IntPoly> sqrt() const;

private:
    void trim() {
        while (!coeff_.empty() && coeff_.back() == 0) coeff_.pop_back();
    }

    std::vector<Int> coeff_;
};

namespace detail {

// degree of gcd over F_p, p = 2^61 - 1; an upper bound for the degree of the
// rational gcd whenever p does not divide both leading coefficients, which
// makes "the polynomial parts are coprime" checkable without a full
// pseudo-remainder sequence
inline int gcd_degree_mod_p(const IntPoly& a, const IntPoly& b) {
    constexpr std::uint64_t P = 2305843009213693951ull;
    auto reduce = [](const IntPoly& p) {
        std::vector<std::uint64_t> c(static_cast<std::size_t>(p.degree()) + 1);
        for (int k = 0; k <= p.degree(); ++k) {
            std::uint64_t r = mpz_fdiv_ui(p.coeff(k).get_mpz_t(), P);
            c[static_cast<std::size_t>(k)] = r;
        }
        while (!c.empty() && c.back() == 0) c.pop_back();
        return c;
    };
    auto mulmod = [](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % P);
    };
    auto powmod = [&](std::uint64_t x, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1u) r = mulmod(r, x);
            x = mulmod(x, x);
            e >>= 1u;
        }
        return r;
    };
    std::vector<std::uint64_t> u = reduce(a), v = reduce(b);
    if (u.empty() || v.empty()) return -1; // leading coefficients vanished; no bound
    if (u.size() != static_cast<std::size_t>(a.degree()) + 1 &&
        v.size() != static_cast<std::size_t>(b.degree()) + 1)
        return -1;
    if (u.size() < v.size()) std::swap(u, v);
    while (!v.empty()) {
        // u mod v over F_p
        std::uint64_t inv = powmod(v.back(), P - 2);
        while (u.size() >= v.size()) {
            std::uint64_t f = mulmod(u.back(), inv);
            std::size_t shift = u.size() - v.size();
            for (std::size_t k = 0; k < v.size(); ++k) {
                std::uint64_t t = mulmod(f, v[k]);
                std::uint64_t& x = u[k + shift];
                x = x >= t ? x - t : x + P - t;
            }
            while (!u.empty() && u.back() == 0) u.pop_back();
            if (u.empty()) break;
        }
        std::swap(u, v);
    }
    return static_cast<int>(u.size()) - 1;
}

} // namespace detail

inline IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    auto positive_primitive = [](IntPoly p) {
        Int c = p.content();
        p = p.div_exact(IntPoly(c));
        if (p.leading() < 0) p = -p;
        return p;
    };
    if (a.is_zero()) return positive_primitive(b) * IntPoly(b.content());
    if (b.is_zero()) return positive_primitive(a) * IntPoly(a.content());

    Int gc;
    {
        Int ca = a.content(), cb = b.content();
        mpz_gcd(gc.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
    // monomial fast path: gcd with q^k only involves valuations
    if (a.is_monomial() || b.is_monomial()) {
        int v = std::min(a.valuation(), b.valuation());
        return IntPoly::monomial(gc, v);
    }
    // coprime screen: a degree-0 gcd mod p proves the polynomial parts share
    // no factor, leaving just the integer content
    if (detail::gcd_degree_mod_p(a, b) == 0) return IntPoly(gc);

    IntPoly u = positive_primitive(a), v = positive_primitive(b);
    if (u.degree() < v.degree()) std::swap(u, v);
    // primitive pseudo-remainder sequence
    while (!v.is_zero()) {
        IntPoly r = u;
        while (!r.is_zero() && r.degree() >= v.degree()) {
            int shift = r.degree() - v.degree();
            Int lr = r.leading(), lv = v.leading();
            r = r * lv - v * IntPoly::monomial(lr, shift);
        }
        u = v;
        if (r.is_zero()) {
            v = IntPoly();
        } else {
            v = positive_primitive(r);
        }
    }
    return u * IntPoly(gc);
}

inline std::optional<IntPoly> IntPoly::sqrt() const {
    if (is_zero()) return IntPoly();
    if (degree() % 2 != 0 || leading() < 0) return std::nullopt;
    Int lead_root;
    mpz_sqrt(lead_root.get_mpz_t(), leading().get_mpz_t());
    if (lead_root * lead_root != leading()) return std::nullopt;

    int half = degree() / 2;
    IntPoly s = IntPoly::monomial(lead_root, half);
    // solve coefficients from the top down: coefficient of q^(half+k) in s^2
    // must match; s_k enters that coefficient linearly with factor 2*lead_root
    for (int k = half - 1; k >= 0; --k) {
        IntPoly diff = *this - s * s;
        const Int& want = diff.coeff(half + k);
        Int den = 2 * lead_root;
        Int quo, rem;
        mpz_tdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), want.get_mpz_t(), den.get_mpz_t());
        if (rem != 0) return std::nullopt;
        if (quo != 0) s = s + IntPoly::monomial(quo, k);
    }
    if (s * s != *this) return std::nullopt;
    return s;
}

// Reduced fraction num/den of IntPolys.  Invariants: den != 0; gcd(num, den)
// (coefficient contents included) is 1; den has positive leading coefficient;
// zero is 0/1.  Equality of values is equality of components.
class QRational {
public:
    QRational() : num_(), den_(1) {}
    QRational(long v) : num_(v), den_(1) {} // NOLINT: implicit by design
    explicit QRational(Int v) : num_(std::move(v)), den_(1) {}
    explicit QRational(const Rat& v)
        : num_(Int(v.get_num())), den_(Int(v.get_den())) {
        normalize();
    }
    QRational(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("zero denominator");
        normalize();
    }

    static QRational q() { return QRational(IntPoly::variable(), IntPoly(1)); }
    static QRational q_power(int k) {
        if (k >= 0) return QRational(IntPoly::monomial(1, k), IntPoly(1));
        return QRational(IntPoly(1), IntPoly::monomial(1, -k));
    }

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == IntPoly(1) && den_ == IntPoly(1); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    friend QRational operator+(const QRational& a, const QRational& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return QRational(a.num_ + b.num_, a.den_);
        IntPoly g = IntPoly::gcd(a.den_, b.den_);
        IntPoly da = a.den_.div_exact(g), db = b.den_.div_exact(g);
        return QRational(a.num_ * db + b.num_ * da, da * b.den_);
    }

    friend QRational operator-(const QRational& a, const QRational& b) { return a + (-b); }

    friend QRational operator-(const QRational& a) {
        QRational r = a;
        r.num_ = -r.num_;
        return r;
    }

    friend QRational operator*(const QRational& a, const QRational& b) {
        if (a.is_zero() || b.is_zero()) return QRational();
        // cross-cancel before multiplying to keep intermediates small
        IntPoly g1 = IntPoly::gcd(a.num_, b.den_);
        IntPoly g2 = IntPoly::gcd(b.num_, a.den_);
        QRational r;
        r.num_ = a.num_.div_exact(g1) * b.num_.div_exact(g2);
        r.den_ = a.den_.div_exact(g2) * b.den_.div_exact(g1);
        r.normalize();
        return r;
    }

    friend QRational operator/(const QRational& a, const QRational& b) { return a * b.inverse(); }

    QRational& operator+=(const QRational& o) { return *this = *this + o; }
    QRational& operator-=(const QRational& o) { return *this = *this - o; }
    QRational& operator*=(const QRational& o) { return *this = *this * o; }
    QRational& operator/=(const QRational& o) { return *this = *this / o; }

    QRational inverse() const {
        if (is_zero()) throw std::domain_error("inversion of zero");
        return QRational(den_, num_);
    }

    QRational pow(int e) const {
        if (e == 0) return QRational(1);
        QRational base = e < 0 ? inverse() : *this;
        unsigned n = e < 0 ? static_cast<unsigned>(-static_cast<long>(e)) : static_cast<unsigned>(e);
        QRational r(1);
        while (n) {
            if (n & 1u) r *= base;
            base = base * base;
            n >>= 1u;
        }
        return r;
    }

    // value at q = x; throws PoleError if the denominator vanishes there
    Rat eval(const Rat& x) const;

    std::optional<QRational> sqrt() const {
        if (is_zero()) return QRational();
        // num/den = (num*den)/den^2, so a square root exists iff num*den is a
        // perfect square in Z[q]
        auto s = (num_ * den_).sqrt();
        if (!s) return std::nullopt;
        return QRational(*s, den_);
    }

    bool operator==(const QRational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QRational& o) const { return !(*this == o); }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = IntPoly(1);
            return;
        }
        IntPoly g = IntPoly::gcd(num_, den_);
        num_ = num_.div_exact(g);
        den_ = den_.div_exact(g);
        if (den_.leading() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    IntPoly num_, den_;
};

namespace detail {

inline void append_poly(std::string& out, const IntPoly& p) {
    if (p.is_zero()) {
        out += '0';
        return;
    }
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const Int& c = p.coeff(k);
        if (c == 0) continue;
        Int a = c > 0 ? c : Int(-c);
        if (first) {
            if (c < 0) out += '-';
            first = false;
        } else {
            out += c < 0 ? '-' : '+';
        }
        if (k == 0) {
            out += a.get_str();
        } else {
            if (a != 1) {
                out += a.get_str();
                out += '*';
            }
            out += 'q';
            if (k != 1) {
                out += '^';
                out += std::to_string(k);
            }
        }
    }
}

inline int term_count(const IntPoly& p) {
    int n = 0;
    for (int k = 0; k <= p.degree(); ++k)
        if (p.coeff(k) != 0) ++n;
    return n;
}

} // namespace detail

// Deterministic printer; its output re-parses to the same canonical value.
inline std::string render(const QRational& a) {
    std::string out;
    if (a.den() == IntPoly(1)) {
        if (detail::term_count(a.num()) > 1) {
            // no parens needed at top level
            detail::append_poly(out, a.num());
        } else {
            detail::append_poly(out, a.num());
        }
        return out;
    }
    bool wrap_num = detail::term_count(a.num()) > 1;
    // the denominator must bind as a whole: only a bare power of q or a bare
    // positive integer can appear unparenthesized after '/'
    bool den_bare = a.den().is_monomial() &&
                    (a.den().leading() == 1 || a.den().is_constant());
    if (wrap_num) out += '(';
    detail::append_poly(out, a.num());
    if (wrap_num) out += ')';
    out += '/';
    if (!den_bare) out += '(';
    detail::append_poly(out, a.den());
    if (!den_bare) out += ')';
    return out;
}

inline std::string render(const Rat& x) {
    return x.get_str();
}

inline Rat QRational::eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) {
        std::string msg = "pole at q = " + x.get_str() + ": denominator ";
        QRational den_as_value(den_, IntPoly(1));
        msg += render(den_as_value);
        msg += " vanishes";
        throw PoleError(msg);
    }
    Rat r = num_.eval(x) / d;
    r.canonicalize();
    return r;
}

namespace detail {

class CoeffParser {
public:
    explicit CoeffParser(std::string_view text) : text_(text) {}

    QRational parse() {
        QRational v = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    QRational expr() {
        QRational v = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                v += term();
            } else if (peek() == '-') {
                ++pos_;
                v -= term();
            } else {
                return v;
            }
        }
    }

    QRational term() {
        QRational v = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                v *= factor();
            } else if (peek() == '/') {
                std::size_t at = pos_;
                ++pos_;
                QRational d = factor();
                if (d.is_zero()) {
                    throw ParseError(at, "division by the zero expression");
                }
                v /= d;
            } else {
                return v;
            }
        }
    }

    QRational factor() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        skip_ws();
        std::size_t at = pos_;
        QRational v;
        bool may_raise = false;
        char c = peek();
        if (c == 'q') {
            ++pos_;
            v = QRational::q();
            may_raise = true;
        } else if (c == '(') {
            ++pos_;
            v = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            may_raise = true;
        } else if (c >= '0' && c <= '9') {
            v = QRational(integer());
        } else {
            fail("expected integer, 'q', or '('");
        }
        skip_ws();
        if (peek() == '^') {
            if (!may_raise) fail("only q or a parenthesized expression can be raised to a power");
            ++pos_;
            skip_ws();
            bool eneg = false;
            if (peek() == '-') {
                eneg = true;
                ++pos_;
            }
            skip_ws();
            if (!(peek() >= '0' && peek() <= '9')) fail("expected integer exponent");
            Int e = integer();
            if (!e.fits_sint_p()) fail("exponent out of range");
            int ei = static_cast<int>(e.get_si());
            if (eneg && v.is_zero()) throw ParseError(at, "division by the zero expression");
            v = v.pow(eneg ? -ei : ei);
        }
        return neg ? -v : v;
    }

    Int integer() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        if (start == pos_) fail("expected integer");
        return Int(std::string(text_.substr(start, pos_ - start)), 10);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r'))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline QRational qf_parse(std::string_view text) {
    return detail::CoeffParser(text).parse();
}

inline QRational qf_add(const QRational& a, const QRational& b) { return a + b; }
inline QRational qf_mul(const QRational& a, const QRational& b) { return a * b; }
inline QRational qf_neg(const QRational& a) { return -a; }
inline QRational qf_inv(const QRational& a) { return a.inverse(); }
inline Rat qf_eval(const QRational& a, const Rat& x) { return a.eval(x); }

} // namespace qsym
