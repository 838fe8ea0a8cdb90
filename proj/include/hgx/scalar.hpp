#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace hgx {

/// Exact element of a cyclotomic-rational field Q(zeta_n).
///
/// Represented by a conductor n and a rational coefficient vector of
/// length phi(n), the residue of a polynomial in z = zeta_n modulo the
/// n-th cyclotomic polynomial. The representation is canonical: after
/// every operation the value is reduced and the conductor is lowered to
/// the smallest divisor of n whose field contains the value, so two
/// equal scalars always carry the same conductor and coefficient list.
/// Conductor 1 is plain Q and takes a fast path through all arithmetic.
///
/// Mixed-conductor arithmetic coerces both operands into Q(zeta_lcm)
/// first. Everything is exact; there is no rounding anywhere.
class Scalar {
public:
    Scalar() : cond_(1), c_{mpq_class(0)} {}
    Scalar(long v) : cond_(1), c_{mpq_class(v)} {}
    Scalar(int v) : cond_(1), c_{mpq_class(v)} {}
    explicit Scalar(const mpq_class& v) : cond_(1), c_{v} {
        c_[0].canonicalize();
    }

    static Scalar rational(long num, long den);

    /// zeta_n^k, canonicalized (e.g. zeta(2,1) == -1, conductor 1).
    static Scalar zeta(unsigned n, long k = 1);

    unsigned conductor() const { return cond_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const { return cond_ == 1; }
    /// Requires is_rational().
    const mpq_class& rational_value() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    /// Exact field division; throws on division by zero.
    Scalar operator/(const Scalar& o) const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    /// Complex conjugation, i.e. the Galois map zeta_n -> zeta_n^(n-1).
    Scalar conjugate() const;

    bool operator==(const Scalar& o) const {
        return cond_ == o.cond_ && c_ == o.c_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Serialized form: "p/q" when rational, otherwise a sum of terms
    /// "p/q*z^k" (k = 1 printed as plain "z") under the given file
    /// conductor, which this scalar's conductor must divide.
    std::string to_string(unsigned file_conductor) const;
    std::string to_string() const { return to_string(cond_); }

    /// Parses the grammar emitted by to_string. "z" means zeta of the
    /// file conductor. Throws MalformedInputError with a character
    /// position on bad input (including "1/0" and z-terms under
    /// conductor 1).
    static Scalar parse(const std::string& text, unsigned file_conductor);

private:
    Scalar(unsigned cond, std::vector<mpq_class> c)
        : cond_(cond), c_(std::move(c)) {}

    /// Embeds into Q(zeta_m); m must be a multiple of cond_.
    std::vector<mpq_class> embedded_coeffs(unsigned m) const;
    /// Restores the canonical form (reduce + minimal conductor).
    void canonicalize();

    unsigned cond_;
    std::vector<mpq_class> c_;
};

/// Euler phi, the coefficient-vector length for conductor n.
unsigned cyclotomic_degree(unsigned n);

} // namespace hgx
