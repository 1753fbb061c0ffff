#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace qalg {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
using Elem_t = typename F::Elem;

// Runtime description of the coefficient field, as it appears in files and CLI flags.
struct FieldSpec {
    enum class Kind { Rationals, Prime };
    Kind kind = Kind::Prime;
    std::int64_t p = 101;

    static FieldSpec rationals() { return {Kind::Rationals, 0}; }
    static FieldSpec prime(std::int64_t p) { return {Kind::Prime, p}; }
    std::string str() const
    {
        return kind == Kind::Rationals ? "QQ" : "GF(" + std::to_string(p) + ")";
    }
};

inline bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/* Prime field with runtime modulus. Elements are least nonnegative residues,
 * so equal values have equal representations. */
class Fp {
public:
    using Elem = std::int64_t;

    explicit Fp(std::int64_t p) : p_(p)
    {
        if (!is_prime(p)) throw error("Fp: modulus " + std::to_string(p) + " is not prime");
        if (p >= (std::int64_t(1) << 31)) throw error("Fp: modulus too large");
    }

    std::int64_t characteristic() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem from_int(std::int64_t n) const
    {
        Elem r = n % p_;
        return r < 0 ? r + p_ : r;
    }
    // parses "n" or "n/d"
    Elem from_string(const std::string& s) const
    {
        auto slash = s.find('/');
        if (slash == std::string::npos) return from_int(parse_int(s));
        Elem num = from_int(parse_int(s.substr(0, slash)));
        Elem den = from_int(parse_int(s.substr(slash + 1)));
        return mul(num, inv(den));
    }
    std::string to_string(Elem a) const { return std::to_string(a); }

    Elem add(Elem a, Elem b) const
    {
        Elem r = a + b;
        return r >= p_ ? r - p_ : r;
    }
    Elem sub(Elem a, Elem b) const
    {
        Elem r = a - b;
        return r < 0 ? r + p_ : r;
    }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
    Elem inv(Elem a) const
    {
        if (a == 0) throw error("Fp: division by zero");
        // extended Euclid
        std::int64_t t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        return t < 0 ? t + p_ : t;
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

private:
    static std::int64_t parse_int(const std::string& s)
    {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw error("bad integer literal: " + s);
        return v;
    }
    std::int64_t p_;
};

/* Exact rationals backed by GMP. mpq_class keeps values canonical
 * (lowest terms, positive denominator) through arithmetic. */
class Rationals {
public:
    using Elem = mpq_class;

    std::int64_t characteristic() const { return 0; }
    FieldSpec spec() const { return FieldSpec::rationals(); }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return cmp(a, b) == 0; }

    Elem from_int(std::int64_t n) const { return Elem(static_cast<long>(n)); }
    Elem from_string(const std::string& s) const
    {
        Elem v;
        if (v.set_str(s, 10) != 0) throw error("bad rational literal: " + s);
        v.canonicalize();
        return v;
    }
    std::string to_string(const Elem& a) const { return a.get_str(); }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const
    {
        if (sgn(a) == 0) throw error("Rationals: division by zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return a / inv_guard(b); }

private:
    const Elem& inv_guard(const Elem& b) const
    {
        if (sgn(b) == 0) throw error("Rationals: division by zero");
        return b;
    }
};

}  // namespace qalg
