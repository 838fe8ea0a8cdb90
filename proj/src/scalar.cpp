#include "hgx/scalar.hpp"

#include "hgx/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <sstream>

namespace hgx {

namespace {

using Poly = std::vector<mpq_class>; // ascending degree

std::vector<unsigned> divisors_ascending(unsigned n) {
    std::vector<unsigned> ds;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) ds.push_back(d);
    return ds;
}

// Integer polynomial long division, exact by construction here: every
// divisor is a monic cyclotomic polynomial.
std::vector<mpz_class> exact_div(std::vector<mpz_class> num,
                                 const std::vector<mpz_class>& den) {
    const size_t dd = den.size() - 1;
    if (num.size() - 1 < dd) throw InternalError("cyclotomic division underflow");
    std::vector<mpz_class> quot(num.size() - dd, 0);
    for (size_t i = num.size(); i-- > dd;) {
        mpz_class c = num[i]; // den is monic
        if (c == 0) continue;
        quot[i - dd] = c;
        for (size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (const auto& r : num)
        if (r != 0) throw InternalError("cyclotomic division not exact");
    return quot;
}

std::vector<mpz_class> cyclotomic_poly(unsigned n,
                                       std::map<unsigned, std::vector<mpz_class>>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    // x^n - 1 over the product of all lower cyclotomics dividing n
    std::vector<mpz_class> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (unsigned d : divisors_ascending(n))
        if (d < n) p = exact_div(std::move(p), cyclotomic_poly(d, memo));
    memo.emplace(n, p);
    return p;
}

struct CycloContext {
    unsigned n = 1;
    unsigned deg = 1;  // phi(n)
    Poly min_poly;     // monic, length deg+1
};

class CycloRegistry {
public:
    const CycloContext& get(unsigned n) {
        {
            std::shared_lock lk(mu_);
            auto it = map_.find(n);
            if (it != map_.end()) return *it->second;
        }
        auto ctx = std::make_unique<CycloContext>();
        ctx->n = n;
        std::map<unsigned, std::vector<mpz_class>> memo;
        auto zp = cyclotomic_poly(n, memo);
        ctx->deg = static_cast<unsigned>(zp.size() - 1);
        ctx->min_poly.reserve(zp.size());
        for (auto& c : zp) ctx->min_poly.emplace_back(c);
        std::unique_lock lk(mu_);
        auto [it, inserted] = map_.emplace(n, std::move(ctx));
        (void)inserted;
        return *it->second;
    }

private:
    std::shared_mutex mu_;
    std::map<unsigned, std::unique_ptr<const CycloContext>> map_;
};

const CycloContext& cyclo(unsigned n) {
    static CycloRegistry reg;
    return reg.get(n);
}

// In-place reduction modulo the minimal polynomial; leaves exactly
// ctx.deg coefficients.
void reduce_mod(Poly& a, const CycloContext& ctx) {
    const unsigned deg = ctx.deg;
    if (a.size() < deg) {
        a.resize(deg, mpq_class(0));
        return;
    }
    for (size_t i = a.size(); i-- > deg;) {
        if (a[i] == 0) continue;
        mpq_class c = a[i];
        a[i] = 0;
        for (unsigned j = 0; j < deg; ++j) a[i - deg + j] -= c * ctx.min_poly[j];
    }
    a.resize(deg);
}

size_t poly_degree(const Poly& p) {
    size_t d = p.size();
    while (d > 1 && p[d - 1] == 0) --d;
    return d - 1;
}

// Gaussian elimination over Q for the small embedding systems used by
// conductor canonicalization. Returns a solution of a*x = rhs or
// nullopt when inconsistent.
std::optional<Poly> solve_small(std::vector<Poly> a, Poly rhs) {
    const size_t rows = a.size();
    const size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(rhs[p], rhs[r]);
        mpq_class inv = 1 / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        rhs[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;
    Poly x(cols, mpq_class(0));
    for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
    return x;
}

std::string rational_to_string(const mpq_class& q) {
    return q.get_str();
}

} // namespace

unsigned cyclotomic_degree(unsigned n) {
    if (n == 0) throw Error("conductor must be positive");
    unsigned result = n, m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        result = result / p * (p - 1);
        while (m % p == 0) m /= p;
    }
    if (m > 1) result = result / m * (m - 1);
    return result;
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw Error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::zeta(unsigned n, long k) {
    if (n == 0) throw Error("conductor must be positive");
    long e = k % static_cast<long>(n);
    if (e < 0) e += n;
    if (n == 1) return Scalar(1);
    Poly raw(static_cast<size_t>(e) + 1, mpq_class(0));
    raw[static_cast<size_t>(e)] = 1;
    Scalar s(n, std::move(raw));
    s.canonicalize();
    return s;
}

bool Scalar::is_zero() const {
    return cond_ == 1 && c_[0] == 0;
}

bool Scalar::is_one() const {
    return cond_ == 1 && c_[0] == 1;
}

const mpq_class& Scalar::rational_value() const {
    if (cond_ != 1) throw Error("scalar is not rational");
    return c_[0];
}

std::vector<mpq_class> Scalar::embedded_coeffs(unsigned m) const {
    if (m == cond_) return c_;
    if (m % cond_ != 0) throw InternalError("embedding requires divisible conductors");
    const unsigned step = m / cond_;
    Poly raw((c_.size() - 1) * step + 1, mpq_class(0));
    for (size_t j = 0; j < c_.size(); ++j)
        if (c_[j] != 0) raw[j * step] = c_[j];
    reduce_mod(raw, cyclo(m));
    return raw;
}

void Scalar::canonicalize() {
    if (cond_ == 1) return;
    const auto& ctx = cyclo(cond_);
    reduce_mod(c_, ctx);
    bool constant = true;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) { constant = false; break; }
    if (constant) {
        c_.resize(1);
        cond_ = 1;
        return;
    }
    // Lower to the smallest divisor conductor whose field contains the
    // value; the set of such divisors is gcd-closed, so the first hit
    // in ascending order is the minimum.
    for (unsigned m : divisors_ascending(cond_)) {
        if (m == 1 || m == cond_) continue;
        const unsigned dm = cyclotomic_degree(m);
        const unsigned step = cond_ / m;
        std::vector<Poly> embed(ctx.deg, Poly(dm, mpq_class(0)));
        for (unsigned j = 0; j < dm; ++j) {
            Poly col(static_cast<size_t>(j) * step + 1, mpq_class(0));
            col[static_cast<size_t>(j) * step] = 1;
            reduce_mod(col, ctx);
            for (unsigned i = 0; i < ctx.deg; ++i) embed[i][j] = col[i];
        }
        if (auto x = solve_small(std::move(embed), c_)) {
            cond_ = m;
            c_ = std::move(*x);
            return;
        }
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (cond_ == 1 && o.cond_ == 1) return Scalar(mpq_class(c_[0] + o.c_[0]));
    const unsigned n = std::lcm(cond_, o.cond_);
    Poly a = embedded_coeffs(n);
    Poly b = o.embedded_coeffs(n);
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    Scalar r(n, std::move(a));
    r.canonicalize();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    if (cond_ == 1 && o.cond_ == 1) return Scalar(mpq_class(c_[0] - o.c_[0]));
    const unsigned n = std::lcm(cond_, o.cond_);
    Poly a = embedded_coeffs(n);
    Poly b = o.embedded_coeffs(n);
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    Scalar r(n, std::move(a));
    r.canonicalize();
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (cond_ == 1 && o.cond_ == 1) return Scalar(mpq_class(c_[0] * o.c_[0]));
    if (is_zero() || o.is_zero()) return Scalar(0);
    const unsigned n = std::lcm(cond_, o.cond_);
    Poly a = embedded_coeffs(n);
    Poly b = o.embedded_coeffs(n);
    Poly prod(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) prod[i + j] += a[i] * b[j];
    }
    reduce_mod(prod, cyclo(n));
    Scalar r(n, std::move(prod));
    r.canonicalize();
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("division by zero");
    if (cond_ == 1) return Scalar(mpq_class(1 / c_[0]));
    // Extended Euclid in Q[x] against the minimal polynomial: since it
    // is irreducible, gcd is a nonzero constant and s/const inverts.
    const auto& ctx = cyclo(cond_);
    Poly r_prev = ctx.min_poly, r_cur = c_;
    Poly s_prev(1, mpq_class(0)), s_cur(1, mpq_class(1));
    while (true) {
        size_t dc = poly_degree(r_cur);
        if (dc == 0) break; // constant remainder
        // divide r_prev by r_cur
        Poly rem = r_prev;
        size_t dp = poly_degree(rem);
        Poly q(dp >= dc ? dp - dc + 1 : 1, mpq_class(0));
        while (true) {
            size_t dr = poly_degree(rem);
            if (dr < dc || (dr == 0 && rem[0] == 0)) break;
            mpq_class f = rem[dr] / r_cur[dc];
            q[dr - dc] += f;
            for (size_t j = 0; j <= dc; ++j) rem[dr - dc + j] -= f * r_cur[j];
            rem[dr] = 0; // exact cancellation
        }
        // s_next = s_prev - q*s_cur
        Poly s_next(std::max(s_prev.size(), q.size() + s_cur.size() - 1), mpq_class(0));
        for (size_t i = 0; i < s_prev.size(); ++i) s_next[i] = s_prev[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s_cur.size(); ++j) s_next[i + j] -= q[i] * s_cur[j];
        }
        r_prev = std::move(r_cur);
        r_cur = std::move(rem);
        r_cur.resize(std::max<size_t>(poly_degree(r_cur) + 1, 1));
        s_prev = std::move(s_cur);
        s_cur = std::move(s_next);
    }
    if (r_cur[0] == 0) throw InternalError("cyclotomic inverse: zero gcd");
    mpq_class scale = 1 / r_cur[0];
    for (auto& c : s_cur) c *= scale;
    reduce_mod(s_cur, ctx);
    Scalar r(cond_, std::move(s_cur));
    r.canonicalize();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
    return *this * o.inverse();
}

Scalar Scalar::conjugate() const {
    if (cond_ == 1) return *this;
    const unsigned n = cond_;
    Poly raw(n, mpq_class(0));
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        size_t e = (j * (n - 1)) % n;
        raw[e] += c_[j];
    }
    reduce_mod(raw, cyclo(n));
    Scalar r(n, std::move(raw));
    r.canonicalize();
    return r;
}

std::string Scalar::to_string(unsigned file_conductor) const {
    if (cond_ == 1) return rational_to_string(c_[0]);
    if (file_conductor % cond_ != 0)
        throw Error("scalar conductor does not divide the file conductor");
    Poly e = embedded_coeffs(file_conductor);
    std::ostringstream out;
    bool first = true;
    for (size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        mpq_class a = e[k];
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
            first = false;
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (k == 0) {
            out << rational_to_string(a);
        } else {
            if (a != 1) out << rational_to_string(a) << "*";
            out << (k == 1 ? std::string("z") : "z^" + std::to_string(k));
        }
    }
    if (first) return "0";
    return out.str();
}

namespace {

struct ScalarParser {
    const std::string& s;
    unsigned conductor;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw MalformedInputError("scalar \"" + s + "\": " + msg +
                                  " at position " + std::to_string(pos));
    }

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }

    bool eat(char c) {
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    mpz_class parse_uint() {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return mpz_class(s.substr(start, pos - start));
    }

    mpq_class parse_rational(bool negative) {
        mpz_class num = parse_uint();
        mpz_class den = 1;
        if (eat('/')) {
            den = parse_uint();
            if (den == 0) fail("zero denominator");
        }
        mpq_class q(negative ? -num : num, den);
        q.canonicalize();
        return q;
    }

    // returns exponent of z, already reduced modulo the conductor
    unsigned long parse_zpow() {
        if (!eat('z')) fail("expected 'z'");
        if (conductor == 1) fail("cyclotomic term under conductor 1");
        if (!eat('^')) return 1;
        mpz_class e = parse_uint();
        return mpz_class(e % conductor).get_ui();
    }

    Poly run_raw() {
        skip_ws();
        if (pos == s.size()) fail("empty scalar");
        Poly raw(std::max<unsigned>(conductor, 1), mpq_class(0));
        bool first = true;
        while (true) {
            bool negative = false;
            if (!first) {
                if (eat('+')) negative = false;
                else if (eat('-')) negative = true;
                else fail("expected '+' or '-'");
                skip_ws();
            } else {
                if (eat('-')) negative = true;
                else eat('+');
                skip_ws();
            }
            if (pos == s.size()) fail("dangling sign");
            mpq_class coeff;
            unsigned long k = 0;
            if (s[pos] == 'z') {
                coeff = negative ? -1 : 1;
                k = parse_zpow();
            } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                coeff = parse_rational(negative);
                skip_ws();
                if (eat('*')) {
                    skip_ws();
                    k = parse_zpow();
                }
            } else {
                fail("unexpected character");
            }
            raw[k] += coeff;
            first = false;
            skip_ws();
            if (pos == s.size()) break;
            if (s[pos] != '+' && s[pos] != '-') fail("unexpected character");
        }
        return raw;
    }

    ScalarParser(const std::string& text, unsigned n) : s(text), conductor(n) {}
};

} // namespace

Scalar Scalar::parse(const std::string& text, unsigned file_conductor) {
    if (file_conductor == 0)
        throw MalformedInputError("conductor must be positive");
    ScalarParser p(text, file_conductor);
    Poly raw = p.run_raw();
    if (file_conductor == 1) return Scalar(raw[0]);
    Scalar r(file_conductor, std::move(raw));
    r.canonicalize();
    return r;
}

} // namespace hgx
