#pragma once

#include <vector>

#include "qalg/matrix.hpp"

namespace qalg {

/* Dense univariate polynomials over a field context, low degree first.
 * Only what the Krull-Schmidt splitting needs: arithmetic, gcd, evaluation,
 * deterministic Berlekamp over F_p and rational-root extraction over Q. */
template <class F>
struct Poly {
    std::vector<Elem_t<F>> c;

    static Poly normalized(const F& f, std::vector<Elem_t<F>> v)
    {
        while (!v.empty() && f.is_zero(v.back())) v.pop_back();
        return {std::move(v)};
    }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
};

template <class F>
Poly<F> poly_add(const F& f, const Poly<F>& a, const Poly<F>& b)
{
    std::vector<Elem_t<F>> v(std::max(a.c.size(), b.c.size()), f.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) v[i] = a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) v[i] = f.add(v[i], b.c[i]);
    return Poly<F>::normalized(f, std::move(v));
}

template <class F>
Poly<F> poly_scale(const F& f, const Poly<F>& a, const Elem_t<F>& s)
{
    std::vector<Elem_t<F>> v = a.c;
    for (auto& x : v) x = f.mul(x, s);
    return Poly<F>::normalized(f, std::move(v));
}

template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Elem_t<F>> v(a.c.size() + b.c.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            v[i + j] = f.add(v[i + j], f.mul(a.c[i], b.c[j]));
    return Poly<F>::normalized(f, std::move(v));
}

template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const F& f, Poly<F> a, const Poly<F>& b)
{
    if (b.is_zero()) throw error("poly division by zero");
    std::vector<Elem_t<F>> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, f.zero());
    Elem_t<F> inv = f.inv(b.c.back());
    while (!a.is_zero() && a.deg() >= b.deg()) {
        int shift = a.deg() - b.deg();
        Elem_t<F> coef = f.mul(a.c.back(), inv);
        q[shift] = f.add(q[shift], coef);
        for (int i = 0; i <= b.deg(); ++i)
            a.c[shift + i] = f.sub(a.c[shift + i], f.mul(coef, b.c[i]));
        a = Poly<F>::normalized(f, std::move(a.c));
    }
    return {Poly<F>::normalized(f, std::move(q)), a};
}

template <class F>
Poly<F> poly_monic(const F& f, Poly<F> a)
{
    if (a.is_zero()) return a;
    return poly_scale(f, a, f.inv(a.c.back()));
}

template <class F>
Poly<F> poly_gcd(const F& f, Poly<F> a, Poly<F> b)
{
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(f, a, b);
        a = b;
        b = r;
    }
    return poly_monic(f, a);
}

// extended euclid: returns (g, u, v) with u a + v b = g
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> poly_ext_gcd(const F& f, Poly<F> a, Poly<F> b)
{
    Poly<F> u0{{f.one()}}, v0{}, u1{}, v1{{f.one()}};
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(f, a, b);
        a = b;
        b = r;
        Poly<F> nu = poly_add(f, u0, poly_scale(f, poly_mul(f, q, u1), f.neg(f.one())));
        Poly<F> nv = poly_add(f, v0, poly_scale(f, poly_mul(f, q, v1), f.neg(f.one())));
        u0 = u1;
        v0 = v1;
        u1 = nu;
        v1 = nv;
    }
    if (a.is_zero()) return {a, u0, v0};
    Elem_t<F> inv = f.inv(a.c.back());
    return {poly_scale(f, a, inv), poly_scale(f, u0, inv), poly_scale(f, v0, inv)};
}

template <class F>
Poly<F> poly_derivative(const F& f, const Poly<F>& a)
{
    std::vector<Elem_t<F>> v;
    for (int i = 1; i <= a.deg(); ++i) v.push_back(f.mul(a.c[i], f.from_int(i)));
    return Poly<F>::normalized(f, std::move(v));
}

template <class F>
Elem_t<F> poly_eval(const F& f, const Poly<F>& a, const Elem_t<F>& x)
{
    Elem_t<F> r = f.zero();
    for (int i = a.deg(); i >= 0; --i) r = f.add(f.mul(r, x), a.c[i]);
    return r;
}

/* minimal polynomial of a square matrix: first linear dependence among powers */
template <class F>
Poly<F> min_poly(const Matrix<F>& m)
{
    const F& f = m.field();
    int n = m.rows();
    std::vector<std::vector<Elem_t<F>>> pows;
    Matrix<F> cur = Matrix<F>::identity(f, n);
    for (int d = 0; d <= n; ++d) {
        std::vector<Elem_t<F>> flat;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) flat.push_back(cur.at(i, j));
        pows.push_back(flat);
        // does cur lie in the span of the previous powers?
        Matrix<F> cols(f, n * n, d);
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < n * n; ++r) cols.at(r, c) = pows[c][r];
        auto sol = cols.express_in_columns(flat);
        if (sol && d > 0) {
            std::vector<Elem_t<F>> coeffs(d + 1, f.zero());
            for (int i = 0; i < d; ++i) coeffs[i] = f.neg((*sol)[i]);
            coeffs[d] = f.one();
            return Poly<F>::normalized(f, std::move(coeffs));
        }
        if (d == 0 && n == 0) return Poly<F>{{f.one()}};
        cur = cur.mul(m);
    }
    throw error("min_poly: no dependence found");
}

/* deterministic Berlekamp over F_p: distinct monic irreducible factors of a
 * squarefree polynomial */
inline std::vector<Poly<Fp>> berlekamp_squarefree(const Fp& f, Poly<Fp> g)
{
    g = poly_monic(f, g);
    if (g.deg() <= 1) return {g};
    const std::int64_t p = f.characteristic();
    int n = g.deg();
    // Q matrix: rows = x^{ip} mod g
    Matrix<Fp> Q(f, n, n);
    Poly<Fp> xp{{f.zero()}};
    {
        // x^p mod g by repeated squaring
        Poly<Fp> base{{f.zero(), f.one()}};
        Poly<Fp> acc{{f.one()}};
        std::int64_t e = p;
        while (e) {
            if (e & 1) acc = poly_divmod(f, poly_mul(f, acc, base), g).second;
            base = poly_divmod(f, poly_mul(f, base, base), g).second;
            e >>= 1;
        }
        xp = acc;
    }
    Poly<Fp> cur{{f.one()}};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= cur.deg(); ++j) Q.at(i, j) = cur.c[j];
        cur = poly_divmod(f, poly_mul(f, cur, xp), g).second;
    }
    for (int i = 0; i < n; ++i) Q.at(i, i) = f.sub(Q.at(i, i), f.one());
    auto [rk, ker] = Q.transpose().rank_and_kernel();
    (void)rk;
    if (ker.cols() <= 1) return {g};
    // split with the first non-constant kernel vector
    std::vector<Poly<Fp>> todo{g}, done;
    for (int c = 0; c < ker.cols() && !todo.empty(); ++c) {
        std::vector<Elem_t<Fp>> vc(n);
        for (int i = 0; i < n; ++i) vc[i] = ker.at(i, c);
        Poly<Fp> v = Poly<Fp>::normalized(f, vc);
        if (v.deg() < 1) continue;
        std::vector<Poly<Fp>> next;
        for (const auto& h : todo) {
            bool split = false;
            std::vector<Poly<Fp>> parts;
            for (std::int64_t s = 0; s < p; ++s) {
                Poly<Fp> shifted = poly_add(f, v, Poly<Fp>{{f.from_int(-s)}});
                Poly<Fp> d = poly_gcd(f, h, shifted);
                if (d.deg() >= 1 && d.deg() < h.deg()) parts.push_back(d), split = true;
            }
            if (!split) {
                next.push_back(h);
            } else {
                // parts are pairwise coprime and their product is h (v separates roots)
                for (auto& d : parts) next.push_back(d);
            }
        }
        todo = next;
    }
    for (auto& h : todo) {
        if (h.deg() >= 1) done.push_back(poly_monic(f, h));
    }
    // recurse once more in case some parts are still reducible
    std::vector<Poly<Fp>> out;
    for (auto& h : done) {
        if (h.deg() <= 1) {
            out.push_back(h);
            continue;
        }
        auto sub = berlekamp_squarefree(f, h);
        for (auto& s : sub) out.push_back(s);
    }
    return out;
}

/* rational roots of a squarefree polynomial over Q, by the rational root
 * theorem with trial division; divisor counts are capped. */
inline std::vector<mpq_class> rational_roots(const Rationals& f, const Poly<Rationals>& g)
{
    if (g.deg() < 1) return {};
    // clear denominators
    mpz_class lcm = 1;
    for (const auto& c : g.c) lcm = lcm * c.get_den() / gcd(lcm, mpz_class(c.get_den()));
    std::vector<mpz_class> a;
    for (const auto& c : g.c) a.push_back(mpz_class(c * lcm));
    while (!a.empty() && a.back() == 0) a.pop_back();
    mpz_class a0 = a.front(), an = a.back();
    std::vector<mpq_class> roots;
    if (a0 == 0) {
        roots.push_back(mpq_class(0));
    }
    auto divisors = [](mpz_class n) {
        n = abs(n);
        std::vector<mpz_class> ds;
        if (n == 0) return ds;
        for (mpz_class d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                ds.push_back(d);
                ds.push_back(n / d);
            }
            if (ds.size() > 4000) throw error("rational root search: too many divisors");
        }
        return ds;
    };
    for (const auto& p : divisors(a0))
        for (const auto& q : divisors(an))
            for (int s = -1; s <= 1; s += 2) {
                mpq_class cand(s * p, q);
                cand.canonicalize();
                if (f.is_zero(poly_eval(f, g, cand))) roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end(), [](const mpq_class& x, const mpq_class& y) {
        return cmp(x, y) < 0;
    });
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](const mpq_class& x, const mpq_class& y) { return cmp(x, y) == 0; }),
                roots.end());
    return roots;
}

}  // namespace qalg
