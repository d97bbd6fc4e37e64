#include "dgim/poly.hpp"

#include <algorithm>
#include <functional>
#include <cstdint>
#include <numeric>
#include <stdexcept>

// Rational factorization via Zassenhaus: factor mod a small prime with
// Berlekamp, Hensel-lift to a power of p past the Mignotte bound, then
// recombine lifted factors by subset search.

namespace dgim {
namespace {

using ModPoly = std::vector<int64_t>;  // little-endian, coefficients in [0, p)

void mtrim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int64_t mod_inv(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return ((t % p) + p) % p;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    mtrim(r);
    return r;
}

ModPoly mmod(ModPoly a, const ModPoly& f, int64_t p) {
    mtrim(a);
    int64_t inv = mod_inv(f.back(), p);
    while (a.size() >= f.size()) {
        int64_t c = a.back() * inv % p;
        size_t shift = a.size() - f.size();
        for (size_t i = 0; i < f.size(); ++i)
            a[shift + i] = ((a[shift + i] - c * f[i]) % p + p) % p;
        mtrim(a);
    }
    return a;
}

ModPoly mgcd(ModPoly a, ModPoly b, int64_t p) {
    mtrim(a); mtrim(b);
    while (!b.empty()) {
        ModPoly r = mmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        int64_t inv = mod_inv(a.back(), p);
        for (auto& x : a) x = x * inv % p;
    }
    return a;
}

ModPoly mderiv(const ModPoly& a, int64_t p) {
    if (a.size() <= 1) return {};
    ModPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = (a[i] * static_cast<int64_t>(i % p)) % p;
    mtrim(r);
    return r;
}

ModPoly to_mod(const IntPoly& f, int64_t p) {
    ModPoly r(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) {
        Int m = f.c[i] % p;
        if (m < 0) m += p;
        r[i] = m.get_si();
    }
    mtrim(r);
    return r;
}

// x^(p*row) mod f for rows 0..n-1, as the Berlekamp Q matrix.
std::vector<ModPoly> berlekamp_matrix(const ModPoly& f, int64_t p) {
    size_t n = f.size() - 1;
    // x^p mod f by square-and-multiply
    ModPoly xp{0, 1};
    {
        ModPoly base{0, 1}, acc{1};
        int64_t e = p;
        while (e > 0) {
            if (e & 1) acc = mmod(mmul(acc, base, p), f, p);
            base = mmod(mmul(base, base, p), f, p);
            e >>= 1;
        }
        xp = acc;
    }
    std::vector<ModPoly> rows(n);
    ModPoly cur{1};
    for (size_t i = 0; i < n; ++i) {
        rows[i] = cur;
        rows[i].resize(n, 0);
        cur = mmod(mmul(cur, xp, p), f, p);
    }
    return rows;
}

// kernel basis of (Q - I) over F_p; vectors of length n
std::vector<std::vector<int64_t>> berlekamp_kernel(std::vector<ModPoly> rows, int64_t p) {
    size_t n = rows.size();
    // M[i][j] = Q[j][i] - delta_ij  (columns are images, we solve v*(Q-I)=0 i.e. (Q^T-I)v=0)
    std::vector<std::vector<int64_t>> M(n, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            int64_t v = rows[j][i] % p;
            if (i == j) v = ((v - 1) % p + p) % p;
            M[i][j] = (v + p) % p;
        }
    std::vector<int> pivot_col(n, -1);
    size_t rank = 0;
    for (size_t col = 0; col < n && rank < n; ++col) {
        size_t piv = rank;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(M[piv], M[rank]);
        int64_t inv = mod_inv(M[rank][col], p);
        for (size_t j = 0; j < n; ++j) M[rank][j] = M[rank][j] * inv % p;
        for (size_t i = 0; i < n; ++i) {
            if (i == rank || M[i][col] == 0) continue;
            int64_t f = M[i][col];
            for (size_t j = 0; j < n; ++j)
                M[i][j] = ((M[i][j] - f * M[rank][j]) % p + p) % p;
        }
        pivot_col[rank] = static_cast<int>(col);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (size_t r = 0; r < rank; ++r) is_pivot[static_cast<size_t>(pivot_col[r])] = true;
    std::vector<std::vector<int64_t>> basis;
    for (size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<int64_t> v(n, 0);
        v[free_col] = 1;
        for (size_t r = 0; r < rank; ++r) {
            size_t pc = static_cast<size_t>(pivot_col[r]);
            v[pc] = ((-M[r][free_col]) % p + p) % p;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<ModPoly> berlekamp_factor(const ModPoly& f_in, int64_t p) {
    ModPoly f = f_in;
    int64_t inv = mod_inv(f.back(), p);
    for (auto& x : f) x = x * inv % p;
    if (f.size() <= 2) return {f};
    auto kernel = berlekamp_kernel(berlekamp_matrix(f, p), p);
    size_t r = kernel.size();
    std::vector<ModPoly> factors{f};
    if (r <= 1) return factors;
    for (const auto& vvec : kernel) {
        if (factors.size() == r) break;
        ModPoly v(vvec.begin(), vvec.end());
        mtrim(v);
        if (v.size() <= 1) continue;  // constant vector splits nothing
        std::vector<ModPoly> next;
        for (const ModPoly& g : factors) {
            if (g.size() <= 2) { next.push_back(g); continue; }
            ModPoly rem = g;
            bool split = false;
            std::vector<ModPoly> pieces;
            for (int64_t a = 0; a < p && rem.size() > 1; ++a) {
                ModPoly va = v;
                if (va.empty()) va.push_back(0);
                va[0] = ((va[0] - a) % p + p) % p;
                ModPoly d = mgcd(rem, va, p);
                if (d.size() > 1 && d.size() < rem.size()) {
                    pieces.push_back(d);
                    // rem /= d
                    ModPoly q;
                    {
                        ModPoly num = rem, den = d;
                        // synthetic division
                        int64_t di = mod_inv(den.back(), p);
                        ModPoly res(num.size() - den.size() + 1, 0);
                        while (num.size() >= den.size()) {
                            int64_t c = num.back() * di % p;
                            size_t sh = num.size() - den.size();
                            res[sh] = c;
                            for (size_t i = 0; i < den.size(); ++i)
                                num[sh + i] = ((num[sh + i] - c * den[i]) % p + p) % p;
                            mtrim(num);
                        }
                        q = res;
                        mtrim(q);
                    }
                    rem = q;
                    split = true;
                }
            }
            if (!rem.empty() && rem.size() > 1) pieces.push_back(rem);
            if (!split) next.push_back(g);
            else next.insert(next.end(), pieces.begin(), pieces.end());
        }
        factors = std::move(next);
    }
    return factors;
}

// Hensel step: f = g*h (mod m), s*g + t*h = 1 (mod m)  ->  same mod m^2.
struct LiftPair {
    IntPoly g, h, s, t;
};

IntPoly ip_mod(const IntPoly& a, const Int& m) {
    std::vector<Int> v(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) {
        v[i] = a.c[i] % m;
        if (v[i] < 0) v[i] += m;
    }
    return IntPoly(std::move(v));
}

// division of a by monic-mod-m b, all arithmetic mod m
std::pair<IntPoly, IntPoly> ip_divmod_mod(const IntPoly& a, const IntPoly& b, const Int& m) {
    Int lcinv;
    {
        Int t;
        if (mpz_invert(t.get_mpz_t(), b.lc().get_mpz_t(), m.get_mpz_t()) == 0)
            throw std::runtime_error("hensel: leading coefficient not invertible");
        lcinv = t;
    }
    IntPoly r = ip_mod(a, m);
    std::vector<Int> q(std::max<int>(0, r.degree() - b.degree() + 1), Int(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Int c = r.lc() * lcinv % m;
        int sh = r.degree() - b.degree();
        q[static_cast<size_t>(sh)] = c;
        for (size_t i = 0; i < b.c.size(); ++i) {
            Int& t = r.c[static_cast<size_t>(sh) + i];
            t = (t - c * b.c[i]) % m;
            if (t < 0) t += m;
        }
        r.trim();
    }
    return {IntPoly(std::move(q)), r};
}

LiftPair hensel_step(const IntPoly& f, const LiftPair& lp, const Int& m) {
    Int m2 = m * m;
    auto mul = [&](const IntPoly& a, const IntPoly& b) { return ip_mod(a * b, m2); };
    IntPoly e = ip_mod(f - lp.g * lp.h, m2);
    auto [q, r] = ip_divmod_mod(mul(lp.s, e), lp.h, m2);
    IntPoly g1 = ip_mod(lp.g + mul(lp.t, e) + mul(q, lp.g), m2);
    IntPoly h1 = ip_mod(lp.h + r, m2);
    IntPoly b = ip_mod(mul(lp.s, g1) + mul(lp.t, h1) - IntPoly{1}, m2);
    auto [c, d] = ip_divmod_mod(mul(lp.s, b), h1, m2);
    IntPoly s1 = ip_mod(lp.s - d, m2);
    IntPoly t1 = ip_mod(lp.t - mul(lp.t, b) - mul(c, g1), m2);
    return {g1, h1, s1, t1};
}

// lift factorization f = lc * prod(h_i) from mod p to mod p^2^k >= bound, h_i monic
std::vector<IntPoly> hensel_lift_all(const IntPoly& f, std::vector<ModPoly> mods, int64_t p,
                                     const Int& bound, Int& modulus_out) {
    Int modulus(p);
    std::vector<IntPoly> facs;
    for (const ModPoly& g : mods) {
        std::vector<Int> v(g.begin(), g.end());
        facs.emplace_back(std::move(v));
    }
    if (facs.size() == 1) {
        while (modulus <= bound) modulus *= modulus;
        modulus_out = modulus;
        // single monic factor: f / lc mod modulus
        Int lcinv;
        mpz_invert(lcinv.get_mpz_t(), f.lc().get_mpz_t(), modulus.get_mpz_t());
        return {ip_mod(f * lcinv, modulus)};
    }
    std::function<std::vector<IntPoly>(const IntPoly&, std::vector<ModPoly>, Int)> lift_tree =
        [&](const IntPoly& target, std::vector<ModPoly> parts, Int mod_goal) -> std::vector<IntPoly> {
        if (parts.size() == 1) {
            Int lcinv;
            mpz_invert(lcinv.get_mpz_t(), target.lc().get_mpz_t(), mod_goal.get_mpz_t());
            return {ip_mod(target * lcinv, mod_goal)};
        }
        size_t half = parts.size() / 2;
        std::vector<ModPoly> left(parts.begin(), parts.begin() + half);
        std::vector<ModPoly> right(parts.begin() + half, parts.end());
        ModPoly gl{1}, hr{1};
        for (const auto& q : left) gl = mmul(gl, q, p);
        for (const auto& q : right) hr = mmul(hr, q, p);
        // make g = lc(target)*gl, h = hr monic representation
        IntPoly g, h;
        {
            std::vector<Int> vg(gl.begin(), gl.end()), vh(hr.begin(), hr.end());
            g = IntPoly(std::move(vg));
            h = IntPoly(std::move(vh));
        }
        Int lcf = target.lc() % p;
        if (lcf < 0) lcf += p;
        g = ip_mod(g * lcf, Int(p));
        // Bezout s*g + t*h = 1 mod p, ext-gcd over F_p
        ModPoly a(g.c.size()), b(h.c.size());
        for (size_t i = 0; i < g.c.size(); ++i) a[i] = g.c[i].get_si();
        for (size_t i = 0; i < h.c.size(); ++i) b[i] = h.c[i].get_si();
        ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
        auto msub = [&](const ModPoly& x, const ModPoly& y) {
            ModPoly r(std::max(x.size(), y.size()), 0);
            for (size_t i = 0; i < x.size(); ++i) r[i] = x[i];
            for (size_t i = 0; i < y.size(); ++i) r[i] = ((r[i] - y[i]) % p + p) % p;
            mtrim(r);
            return r;
        };
        while (!r1.empty()) {
            // q = r0 / r1
            ModPoly q;
            {
                ModPoly num = r0;
                int64_t di = mod_inv(r1.back(), p);
                ModPoly res(num.size() >= r1.size() ? num.size() - r1.size() + 1 : 0, 0);
                while (num.size() >= r1.size()) {
                    int64_t c = num.back() * di % p;
                    size_t sh = num.size() - r1.size();
                    res[sh] = c;
                    for (size_t i = 0; i < r1.size(); ++i)
                        num[sh + i] = ((num[sh + i] - c * r1[i]) % p + p) % p;
                    mtrim(num);
                }
                q = res;
                mtrim(q);
                r0 = std::move(num);
            }
            std::swap(r0, r1);
            ModPoly s2 = msub(s0, mmul(q, s1, p));
            ModPoly t2 = msub(t0, mmul(q, t1, p));
            s0 = std::move(s1); s1 = std::move(s2);
            t0 = std::move(t1); t1 = std::move(t2);
        }
        // r0 is a unit (g, h coprime mod p since f squarefree mod p)
        if (r0.size() != 1) throw std::runtime_error("hensel: factors not coprime");
        int64_t unit_inv = mod_inv(r0[0], p);
        for (auto& x : s0) x = x * unit_inv % p;
        for (auto& x : t0) x = x * unit_inv % p;
        LiftPair lp;
        lp.g = g;
        lp.h = h;
        {
            std::vector<Int> vs(s0.begin(), s0.end()), vt(t0.begin(), t0.end());
            lp.s = IntPoly(std::move(vs));
            lp.t = IntPoly(std::move(vt));
        }
        Int mcur(p);
        while (mcur < mod_goal) {
            lp = hensel_step(target, lp, mcur);
            mcur *= mcur;
        }
        auto lf = lift_tree(lp.g, left, mod_goal);
        auto rf = lift_tree(lp.h, right, mod_goal);
        lf.insert(lf.end(), rf.begin(), rf.end());
        return lf;
    };
    Int goal(p);
    while (goal <= bound) goal *= goal;
    modulus_out = goal;
    return lift_tree(f, mods, goal);
}

Int mignotte_bound(const IntPoly& f) {
    Int norm2_sq(0);
    for (const Int& a : f.c) norm2_sq += a * a;
    Int norm2;
    mpz_sqrt(norm2.get_mpz_t(), norm2_sq.get_mpz_t());
    norm2 += 1;
    Int b = (Int(1) << (f.degree() + 1)) * norm2 * abs(f.lc());
    return 2 * b;  // factor coefficients are within  b; modulus must exceed 2b
}

Int symm(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    if (r * 2 > m) r -= m;
    return r;
}

// factor a primitive squarefree polynomial of degree >= 1
std::vector<IntPoly> factor_squarefree_primitive(const IntPoly& f) {
    if (f.degree() == 1) return {f};
    static const int64_t primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                     53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103};
    for (int64_t p : primes) {
        if (f.lc() % p == 0) continue;
        ModPoly fp = to_mod(f, p);
        if (static_cast<int>(fp.size()) - 1 != f.degree()) continue;
        ModPoly g = mgcd(fp, mderiv(fp, p), p);
        if (g.size() != 1) continue;  // not squarefree mod p
        std::vector<ModPoly> mods = berlekamp_factor(fp, p);
        if (mods.size() == 1) return {f};  // irreducible mod p => irreducible over Q
        Int modulus;
        std::vector<IntPoly> lifted = hensel_lift_all(f, mods, p, mignotte_bound(f), modulus);
        // recombination
        std::vector<IntPoly> result;
        IntPoly rem = f;
        std::vector<IntPoly> pool = lifted;
        size_t subset_size = 1;
        while (2 * subset_size <= pool.size()) {
            bool found = false;
            std::vector<size_t> idx(subset_size);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                // candidate = lc(rem) * prod(pool[idx]) mod modulus, symmetric
                IntPoly cand = IntPoly{1} * rem.lc();
                for (size_t i : idx) cand = ip_mod(cand * pool[i], modulus);
                std::vector<Int> v(cand.c.size());
                for (size_t i = 0; i < cand.c.size(); ++i) v[i] = symm(cand.c[i], modulus);
                IntPoly candidate = IntPoly(std::move(v)).primitive_part();
                bool divides = false;
                if (!candidate.is_zero() && candidate.degree() >= 1) {
                    auto [q, r] = divmod(RatPoly::from(rem), RatPoly::from(candidate));
                    if (r.is_zero()) {
                        result.push_back(candidate);
                        rem = q.clear_denominators();
                        if (rem.lc() < 0) rem = -rem;
                        divides = true;
                    }
                }
                if (divides) {
                    std::vector<IntPoly> np;
                    for (size_t i = 0, k = 0; i < pool.size(); ++i) {
                        if (k < idx.size() && idx[k] == i) { ++k; continue; }
                        np.push_back(pool[i]);
                    }
                    pool = std::move(np);
                    found = true;
                    break;
                }
                // next combination
                int pos = static_cast<int>(subset_size) - 1;
                while (pos >= 0 && idx[static_cast<size_t>(pos)] ==
                                       pool.size() - subset_size + static_cast<size_t>(pos))
                    --pos;
                if (pos < 0) break;
                ++idx[static_cast<size_t>(pos)];
                for (size_t j = static_cast<size_t>(pos) + 1; j < subset_size; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
            if (!found) ++subset_size;
        }
        if (rem.degree() >= 1) result.push_back(rem.primitive_part());
        return result;
    }
    throw std::runtime_error("factor: no usable prime found");
}

}  // namespace

std::vector<IntPoly> factor_rational(const IntPoly& p_in) {
    std::vector<IntPoly> out;
    IntPoly p = p_in.primitive_part();
    if (p.degree() < 1) return out;
    // strip x-powers
    size_t k = 0;
    while (k < p.c.size() && p.c[k] == 0) ++k;
    if (k > 0) {
        for (size_t i = 0; i < k; ++i) out.push_back(IntPoly{0, 1});
        p = IntPoly(std::vector<Int>(p.c.begin() + static_cast<long>(k), p.c.end()));
    }
    if (p.degree() < 1) return out;
    // squarefree decomposition (Yun)
    IntPoly g = int_gcd(p, p.derivative());
    if (g.degree() >= 1) {
        IntPoly w = exact_div(p, g);
        auto a = factor_rational(w);
        auto b = factor_rational(g);
        // multiplicities: every factor of g also divides w's radical; combine
        out.insert(out.end(), a.begin(), a.end());
        out.insert(out.end(), b.begin(), b.end());
        return out;
    }
    auto fs = factor_squarefree_primitive(p);
    out.insert(out.end(), fs.begin(), fs.end());
    return out;
}

bool is_irreducible(const IntPoly& p_in) {
    IntPoly p = p_in.primitive_part();
    if (p.degree() < 1) return false;
    if (p.degree() == 1) return true;
    return factor_rational(p).size() == 1;
}

}  // namespace dgim
