#pragma once

// Exact rational numbers.
//
// Values whose numerator and denominator fit in 64 bits are kept inline and
// all arithmetic is done in 128-bit intermediates; anything that overflows is
// promoted to a GMP rational and demoted again once it becomes small.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace itembound {

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const mpq_class& value);

    Rational(const Rational& other);
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& other);
    Rational& operator=(Rational&&) noexcept = default;
    ~Rational() = default;

    /// Parses "p/q", an integer, or a finite decimal ("0.25", "-1.5e-3") exactly.
    static Rational parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    int sign() const;
    bool is_small() const { return !big_; }

    mpq_class to_mpq() const;
    double to_double() const;
    std::string str() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// this -= factor * other, the inner update of every pivot.
    void sub_mul(const Rational& factor, const Rational& other);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    void set_big(mpq_class value);
    void normalize_big();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

}  // namespace itembound
