#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace skeleta {

// Expression templates off so that generic code can deduce plain values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline bool is_zero(const Rational& v) { return v.is_zero(); }

// Element of F_p. The modulus travels with the value so that generic code
// never needs a field object to build zero or one.
class ModP {
public:
    ModP() = default;
    ModP(std::int64_t v, std::uint32_t p) : p_(p) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        v_ = static_cast<std::uint32_t>(r);
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }

    ModP operator+(const ModP& o) const { return raw((static_cast<std::uint64_t>(v_) + o.v_) % mod(o)); }
    ModP operator-(const ModP& o) const { return raw((static_cast<std::uint64_t>(v_) + mod(o) - o.v_) % mod(o)); }
    ModP operator*(const ModP& o) const { return raw(static_cast<std::uint64_t>(v_) * o.v_ % mod(o)); }
    ModP operator/(const ModP& o) const { return *this * o.inverse(); }
    ModP operator-() const { return raw(v_ == 0 ? 0 : p_ - v_); }
    ModP& operator+=(const ModP& o) { return *this = *this + o; }
    ModP& operator-=(const ModP& o) { return *this = *this - o; }
    ModP& operator*=(const ModP& o) { return *this = *this * o; }
    bool operator==(const ModP& o) const { return v_ == o.v_; }
    bool operator!=(const ModP& o) const { return v_ != o.v_; }

    ModP inverse() const {
        if (v_ == 0) throw std::domain_error("division by zero in F_p");
        std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
        while (m != 0) {
            std::int64_t q = a / m;
            std::int64_t t = a - q * m; a = m; m = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return ModP(x0, p_);
    }

private:
    std::uint32_t mod(const ModP& o) const { return p_ != 0 ? p_ : o.p_; }
    ModP raw(std::uint64_t v) const {
        ModP r;
        r.v_ = static_cast<std::uint32_t>(v);
        r.p_ = p_;
        return r;
    }

    std::uint32_t v_ = 0;
    std::uint32_t p_ = 0;
};

inline bool is_zero(const ModP& v) { return v.value() == 0; }

inline std::ostream& operator<<(std::ostream& os, const ModP& v) { return os << v.value(); }

inline std::string scalar_string(const ModP& v) { return std::to_string(v.value()); }

struct RationalField {
    using value_type = Rational;
    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(std::int64_t k) const { return value_type(k); }
    value_type parse(const std::string& s) const { return value_type(s); }
    std::string name() const { return "Q"; }
};

inline std::string scalar_string(const Rational& v) { return v.str(); }

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

struct PrimeField {
    using value_type = ModP;
    explicit PrimeField(std::uint32_t prime = 32003) : p(prime) {
        if (!is_prime(p) || p >= (1u << 31)) throw std::invalid_argument("modulus must be a prime below 2^31");
    }
    value_type zero() const { return ModP(0, p); }
    value_type one() const { return ModP(1, p); }
    value_type from_int(std::int64_t k) const { return ModP(k, p); }
    value_type parse(const std::string& s) const {
        auto slash = s.find('/');
        if (slash == std::string::npos) return ModP(std::stoll(s), p);
        return ModP(std::stoll(s.substr(0, slash)), p) / ModP(std::stoll(s.substr(slash + 1)), p);
    }
    std::string name() const { return "F_" + std::to_string(p); }
    std::uint32_t p;
};

}  // namespace skeleta
