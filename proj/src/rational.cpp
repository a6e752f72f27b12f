#include "itembound/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace itembound {

namespace {

using i128 = __int128;
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

mpz_class mpz_from(std::int64_t v) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}

mpz_class parse_integer(std::string_view digits) {
    mpz_class z;
    if (digits.empty() || z.set_str(std::string(digits), 10) != 0) {
        throw std::invalid_argument("malformed number: '" + std::string(digits) + "'");
    }
    return z;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (num == std::numeric_limits<std::int64_t>::min() ||
        den == std::numeric_limits<std::int64_t>::min()) {
        set_big(mpq_class(mpz_from(num), mpz_from(den)));
        return;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = gcd64(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational::Rational(const mpq_class& value) { set_big(value); }

Rational::Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
    if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
}

Rational& Rational::operator=(const Rational& other) {
    if (this == &other) return *this;
    num_ = other.num_;
    den_ = other.den_;
    if (other.big_) {
        if (big_) *big_ = *other.big_;
        else big_ = std::make_unique<mpq_class>(*other.big_);
    } else {
        big_.reset();
    }
    return *this;
}

void Rational::set_big(mpq_class value) {
    value.canonicalize();
    big_ = std::make_unique<mpq_class>(std::move(value));
    normalize_big();
}

void Rational::normalize_big() {
    const mpz_srcptr n = big_->get_num_mpz_t();
    const mpz_srcptr d = big_->get_den_mpz_t();
    if (mpz_fits_slong_p(n) && mpz_fits_slong_p(d)) {
        const long nv = mpz_get_si(n);
        const long dv = mpz_get_si(d);
        if (nv != std::numeric_limits<long>::min()) {
            num_ = nv;
            den_ = dv;
            big_.reset();
        }
    }
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty number");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view n = text.substr(0, slash);
        std::string_view d = text.substr(slash + 1);
        if (!n.empty() && n.front() == '+') n.remove_prefix(1);
        const mpz_class den = parse_integer(d);
        if (den == 0) throw std::domain_error("rational with zero denominator");
        return Rational(mpq_class(parse_integer(n), den));
    }

    bool negative = false;
    std::string_view rest = text;
    if (rest.front() == '+' || rest.front() == '-') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    long exponent = 0;
    if (const auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = rest.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        const mpz_class ev = parse_integer(exp_text);
        if (!ev.fits_slong_p() || std::abs(ev.get_si()) > 4096) {
            throw std::invalid_argument("exponent out of range: '" + std::string(text) + "'");
        }
        exponent = exp_negative ? -ev.get_si() : ev.get_si();
        rest = rest.substr(0, e);
    }
    std::string digits;
    bool seen_point = false;
    for (const char c : rest) {
        if (c == '.') {
            if (seen_point) throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) --exponent;
        } else {
            throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
        }
    }
    mpz_class num = parse_integer(digits);
    if (negative) num = -num;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exponent)));
    if (exponent >= 0) return Rational(mpq_class(num * scale));
    return Rational(mpq_class(num, scale));
}

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_from(num_), mpz_from(den_));
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (rhs.num_ == 0) return *this;
        if (num_ == 0) {
            num_ = rhs.num_;
            den_ = rhs.den_;
            return *this;
        }
        if (den_ == rhs.den_) {
            const i128 n = static_cast<i128>(num_) + rhs.num_;
            if (fits(n)) {
                const std::int64_t g = gcd64(static_cast<std::int64_t>(n), den_);
                num_ = static_cast<std::int64_t>(n) / g;
                den_ /= g;
                return *this;
            }
        } else {
            // Knuth 4.5.1: only gcd(t, d1) can remain after cross-scaling.
            const std::int64_t d1 = std::gcd(den_, rhs.den_);
            const i128 t = static_cast<i128>(num_) * (rhs.den_ / d1) +
                           static_cast<i128>(rhs.num_) * (den_ / d1);
            const std::int64_t d2 =
                d1 == 1 ? 1 : std::gcd(static_cast<std::int64_t>(t % d1 < 0 ? -(t % d1) : t % d1), d1);
            const i128 n = t / d2;
            const i128 d = static_cast<i128>(den_ / d1) * (rhs.den_ / d2);
            if (fits(n) && fits(d)) {
                num_ = static_cast<std::int64_t>(n);
                den_ = static_cast<std::int64_t>(d);
                if (num_ == 0) den_ = 1;
                return *this;
            }
        }
    }
    set_big(to_mpq() + rhs.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    if (!big_ && !rhs.big_) {
        if (num_ == 0) return *this;
        if (rhs.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        const std::int64_t g1 = gcd64(num_, rhs.den_);
        const std::int64_t g2 = gcd64(rhs.num_, den_);
        const i128 n = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
        const i128 d = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
        if (fits(n) && fits(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            return *this;
        }
    }
    set_big(to_mpq() * rhs.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("division by zero");
    if (!rhs.big_) {
        Rational inv;
        inv.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
        inv.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
        return *this *= inv;
    }
    set_big(to_mpq() / rhs.to_mpq());
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    if (big_) {
        r.set_big(-*big_);
    } else {
        r.num_ = -num_;
        r.den_ = den_;
    }
    return r;
}

void Rational::sub_mul(const Rational& factor, const Rational& other) {
    if (factor.is_zero() || other.is_zero()) return;
    Rational product = factor;
    product *= other;
    *this -= product;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.to_mpq() == b.to_mpq();
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        const i128 lhs = static_cast<i128>(a.num_) * b.den_;
        const i128 rhs = static_cast<i128>(b.num_) * a.den_;
        return lhs < rhs ? std::strong_ordering::less
             : lhs > rhs ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace itembound
