#pragma once

#include "dgim/poly.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace dgim {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct ContextMismatch : Error {
    explicit ContextMismatch(const std::string& msg) : Error(msg) {}
};
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};
// request is well-formed but undefined for this class of input
struct UnsupportedClass : Error {
    explicit UnsupportedClass(const std::string& msg) : Error(msg) {}
};

// One real algebraic number: an irreducible integer polynomial together with
// a rational interval isolating exactly one of its real roots. The interval
// is refined lazily and cached; contexts are shared immutably apart from the
// cache, so Scalars remain freely shareable across threads.
class AlgebraicContext {
  public:
    static std::shared_ptr<const AlgebraicContext> make(IntPoly minpoly, Rat lo, Rat hi);

    const IntPoly& minpoly() const { return p_; }
    int degree() const { return p_.degree(); }
    RootInterval interval() const;
    // Shrink the cached isolating interval until its width is <= w.
    RootInterval refine_to(const Rat& w) const;
    double approx() const;

  private:
    AlgebraicContext(IntPoly p, Rat lo, Rat hi)
        : p_(std::move(p)), lo_(std::move(lo)), hi_(std::move(hi)) {}

    IntPoly p_;
    mutable std::mutex mu_;
    mutable Rat lo_, hi_;
};

using ContextPtr = std::shared_ptr<const AlgebraicContext>;

// True when both contexts describe the same real number.
bool same_root(const ContextPtr& a, const ContextPtr& b);

// Exact element of Q or Q(s): a rational polynomial in the context root,
// reduced modulo the minimal polynomial. Canonical form: degree < deg(minpoly),
// and context dropped whenever the value is rational.
class Scalar {
  public:
    Scalar() : coeffs_{} {}
    Scalar(long v);                  // NOLINT(google-explicit-constructor)
    Scalar(const Rat& v);            // NOLINT(google-explicit-constructor)
    Scalar(const Int& v);            // NOLINT(google-explicit-constructor)
    static Scalar algebraic(RatPoly coeffs, ContextPtr ctx);
    static Scalar generator(ContextPtr ctx);  // the root s itself
    static Scalar from_decimal(const std::string& text);  // "3", "-1/2", "0.75"

    bool is_rational() const { return ctx_ == nullptr; }
    const Rat& rat() const;              // requires is_rational()
    bool is_integer() const;
    Int integer() const;                 // requires is_integer()
    const ContextPtr& context() const { return ctx_; }
    const RatPoly& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.is_zero(); }
    int sign() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inverse() const;
    Scalar abs() const { return sign() < 0 ? -*this : *this; }
    Scalar pow(long e) const;

    // total order on the reals they denote (contexts must be compatible)
    static int compare(const Scalar& a, const Scalar& b);
    bool operator==(const Scalar& o) const { return compare(*this, o) == 0; }
    bool operator!=(const Scalar& o) const { return compare(*this, o) != 0; }
    bool operator<(const Scalar& o) const { return compare(*this, o) < 0; }
    bool operator<=(const Scalar& o) const { return compare(*this, o) <= 0; }
    bool operator>(const Scalar& o) const { return compare(*this, o) > 0; }
    bool operator>=(const Scalar& o) const { return compare(*this, o) >= 0; }

    // [lo, hi] rational with hi - lo <= width, containing the value exactly
    RootInterval enclosure(const Rat& width) const;
    double approx() const;

    // largest integer <= value
    Int floor() const;

    std::string str() const;  // "p/q" or polynomial-in-s with approx

  private:
    Scalar(RatPoly coeffs, ContextPtr ctx) : coeffs_(std::move(coeffs)), ctx_(std::move(ctx)) {
        canonicalize();
    }
    void canonicalize();
    static void unify(const Scalar& a, const Scalar& b, RatPoly& ca, RatPoly& cb, ContextPtr& ctx);

    RatPoly coeffs_;   // degree < ctx degree; for rationals degree <= 0
    ContextPtr ctx_;   // null for rationals
};

inline int sign_of(const Scalar& s) { return s.sign(); }

}  // namespace dgim
