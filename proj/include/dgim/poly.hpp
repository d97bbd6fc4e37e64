#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dgim {

using Int = mpz_class;
using Rat = mpq_class;

// Dense univariate polynomials, little-endian coefficients, trailing zeros
// stripped (zero polynomial has an empty coefficient vector, degree -1).

struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly zero() { return IntPoly{}; }
    static IntPoly monomial(const Int& a, int deg);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Int& lc() const { return c.back(); }
    const Int& coeff(int i) const;
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    void trim();
    Int content() const;
    IntPoly primitive_part() const;   // content removed, leading coefficient > 0
    IntPoly derivative() const;
    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const Int& k) const;
    bool operator==(const IntPoly& o) const { return c == o.c; }
    bool operator!=(const IntPoly& o) const { return c != o.c; }

    std::string str(const std::string& var = "t") const;
};

struct RatPoly {
    std::vector<Rat> c;

    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    static RatPoly from(const IntPoly& p);
    static RatPoly constant(const Rat& a);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Rat& lc() const { return c.back(); }
    void trim();

    RatPoly operator-() const;
    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator*(const Rat& k) const;
    bool operator==(const RatPoly& o) const { return c == o.c; }

    Rat eval(const Rat& x) const;
    RatPoly monic() const;

    // integer content cleared: returns primitive integer polynomial
    IntPoly clear_denominators() const;
};

// Euclidean division over Q: a = q*b + r with deg r < deg b.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly poly_gcd(RatPoly a, RatPoly b);  // monic gcd
// Extended Euclid: g = u*a + v*b (g monic gcd).
RatPoly poly_gcd_ext(const RatPoly& a, const RatPoly& b, RatPoly& u, RatPoly& v);

IntPoly int_gcd(const IntPoly& a, const IntPoly& b);  // primitive gcd
// Exact division; throws if not divisible.
IntPoly exact_div(const IntPoly& a, const IntPoly& b);

IntPoly squarefree_part(const IntPoly& p);

// Sturm chain of a squarefree polynomial; counts real roots in (a, b].
class SturmChain {
  public:
    explicit SturmChain(const IntPoly& squarefree);
    int variations(const Rat& x) const;
    int count_roots(const Rat& a, const Rat& b) const;

  private:
    std::vector<RatPoly> seq_;
};

// 1 + max |c_i / lc| : all real roots lie in (-bound, bound).
Rat cauchy_root_bound(const IntPoly& p);

struct RootInterval {
    Rat lo, hi;
    Rat width() const { return hi - lo; }
};

// Isolating interval [lo, hi] for the largest real root of a squarefree
// polynomial; lo, hi are never roots. nullopt when there is no real root.
std::optional<RootInterval> isolate_largest_real_root(const IntPoly& squarefree);

// Bisect an isolating interval of p once (p squarefree, exactly one root inside,
// p(lo), p(hi) != 0).
RootInterval bisect_root_interval(const IntPoly& p, const RootInterval& iv);

// Irreducible factors over Q with multiplicity, each primitive with positive
// leading coefficient; constants are dropped. Product equals p up to a rational
// unit. Zassenhaus (Berlekamp mod p + Hensel lifting + recombination).
std::vector<IntPoly> factor_rational(const IntPoly& p);
bool is_irreducible(const IntPoly& p);

}  // namespace dgim
