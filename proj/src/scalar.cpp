#include "dgim/scalar.hpp"

#include <cmath>
#include <sstream>

namespace dgim {

namespace {

// interval Horner: image of [lo,hi] under the polynomial, exact rational bounds
RootInterval eval_interval(const RatPoly& p, const Rat& lo, const Rat& hi) {
    Rat m(0), M(0);
    for (size_t i = p.c.size(); i-- > 0;) {
        // [m,M] * [lo,hi] + c
        Rat cand[4] = {m * lo, m * hi, M * lo, M * hi};
        Rat nm = cand[0], nM = cand[0];
        for (int k = 1; k < 4; ++k) {
            if (cand[k] < nm) nm = cand[k];
            if (cand[k] > nM) nM = cand[k];
        }
        m = nm + p.c[i];
        M = nM + p.c[i];
    }
    return {m, M};
}

RatPoly reduce_mod(RatPoly a, const IntPoly& minpoly) {
    RatPoly m = RatPoly::from(minpoly);
    if (a.degree() >= m.degree()) a = divmod(a, m).second;
    return a;
}

}  // namespace

std::shared_ptr<const AlgebraicContext> AlgebraicContext::make(IntPoly minpoly, Rat lo, Rat hi) {
    minpoly = minpoly.primitive_part();
    if (minpoly.degree() < 1) throw Error("algebraic context: minpoly must have degree >= 1");
    if (!(lo < hi)) throw Error("algebraic context: empty isolating interval");
    if (minpoly.eval(lo) == 0 || minpoly.eval(hi) == 0)
        throw Error("algebraic context: exact root at an interval endpoint is not allowed");
    if (!is_irreducible(minpoly)) throw Error("algebraic context: minpoly is reducible");
    SturmChain st(minpoly);
    if (st.count_roots(lo, hi) != 1)
        throw Error("algebraic context: interval does not isolate exactly one root");
    return std::shared_ptr<const AlgebraicContext>(
        new AlgebraicContext(std::move(minpoly), std::move(lo), std::move(hi)));
}

RootInterval AlgebraicContext::interval() const {
    std::lock_guard<std::mutex> g(mu_);
    return {lo_, hi_};
}

RootInterval AlgebraicContext::refine_to(const Rat& w) const {
    std::lock_guard<std::mutex> g(mu_);
    while (hi_ - lo_ > w) {
        RootInterval r = bisect_root_interval(p_, {lo_, hi_});
        lo_ = r.lo;
        hi_ = r.hi;
    }
    return {lo_, hi_};
}

double AlgebraicContext::approx() const {
    RootInterval r = refine_to(Rat(1, 1000000000L));
    return (r.lo.get_d() + r.hi.get_d()) / 2;
}

bool same_root(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->minpoly() != b->minpoly()) return false;
    RootInterval ia = a->interval(), ib = b->interval();
    Rat lo = ia.lo > ib.lo ? ia.lo : ib.lo;
    Rat hi = ia.hi < ib.hi ? ia.hi : ib.hi;
    if (!(lo < hi)) return false;
    SturmChain st(a->minpoly());
    return st.count_roots(lo, hi) == 1;
}

Scalar::Scalar(long v) : coeffs_(RatPoly::constant(Rat(v))) {}
Scalar::Scalar(const Rat& v) : coeffs_(RatPoly::constant([&] { Rat c = v; c.canonicalize(); return c; }())) {}
Scalar::Scalar(const Int& v) : coeffs_(RatPoly::constant(Rat(v))) {}

Scalar Scalar::algebraic(RatPoly coeffs, ContextPtr ctx) {
    if (!ctx) throw Error("algebraic scalar without context");
    return Scalar(std::move(coeffs), std::move(ctx));
}

Scalar Scalar::generator(ContextPtr ctx) {
    return algebraic(RatPoly(std::vector<Rat>{Rat(0), Rat(1)}), std::move(ctx));
}

Scalar Scalar::from_decimal(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw Error("empty number literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rat r;
        if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
            throw Error("bad number literal: " + text);
        if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
            throw Error("zero denominator in number literal: " + text);
        r.canonicalize();
        return Scalar(r);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Int v;
        if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
            throw Error("bad number literal: " + text);
        return Scalar(Rat(v));
    }
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg) head = head.substr(1);
    if (head.empty()) head = "0";
    for (char c : head + tail)
        if (!isdigit(static_cast<unsigned char>(c))) throw Error("bad number literal: " + text);
    Int num = Int(head.empty() ? "0" : head);
    Int den(1);
    for (size_t i = 0; i < tail.size(); ++i) {
        num = num * 10 + Int(std::string(1, tail[i]));
        den *= 10;
    }
    Rat r(num, den);
    r.canonicalize();
    if (neg) r = -r;
    return Scalar(r);
}

void Scalar::canonicalize() {
    if (ctx_) {
        coeffs_ = reduce_mod(std::move(coeffs_), ctx_->minpoly());
        if (coeffs_.degree() <= 0) ctx_.reset();
    }
    for (Rat& q : coeffs_.c) q.canonicalize();
}

const Rat& Scalar::rat() const {
    static const Rat kZero(0);
    if (!is_rational()) throw Error("scalar is not rational");
    return coeffs_.is_zero() ? kZero : coeffs_.c[0];
}

bool Scalar::is_integer() const { return is_rational() && rat().get_den() == 1; }

Int Scalar::integer() const {
    if (!is_integer()) throw Error("scalar is not an integer");
    return rat().get_num();
}

void Scalar::unify(const Scalar& a, const Scalar& b, RatPoly& ca, RatPoly& cb, ContextPtr& ctx) {
    if (a.ctx_ && b.ctx_) {
        if (!same_root(a.ctx_, b.ctx_))
            throw ContextMismatch("scalars from different algebraic contexts");
        ctx = a.ctx_;
    } else {
        ctx = a.ctx_ ? a.ctx_ : b.ctx_;
    }
    ca = a.coeffs_;
    cb = b.coeffs_;
}

Scalar Scalar::operator-() const { return Scalar(-coeffs_, ctx_); }

Scalar Scalar::operator+(const Scalar& o) const {
    RatPoly ca, cb;
    ContextPtr ctx;
    unify(*this, o, ca, cb, ctx);
    return Scalar(ca + cb, ctx);
}

Scalar Scalar::operator-(const Scalar& o) const {
    RatPoly ca, cb;
    ContextPtr ctx;
    unify(*this, o, ca, cb, ctx);
    return Scalar(ca - cb, ctx);
}

Scalar Scalar::operator*(const Scalar& o) const {
    RatPoly ca, cb;
    ContextPtr ctx;
    unify(*this, o, ca, cb, ctx);
    return Scalar(ca * cb, ctx);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) return Scalar(Rat(1) / rat());
    RatPoly u, v;
    RatPoly g = poly_gcd_ext(coeffs_, RatPoly::from(ctx_->minpoly()), u, v);
    if (g.degree() != 0) throw Error("inverse: coefficients share a factor with minpoly");
    return Scalar(u * (Rat(1) / g.c[0]), ctx_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

int Scalar::sign() const {
    if (is_rational()) return coeffs_.is_zero() ? 0 : sgn(coeffs_.c[0]);
    // canonical nonzero polynomial of degree < deg(minpoly): value is nonzero,
    // so interval refinement separates it from 0
    RootInterval iv = ctx_->interval();
    for (;;) {
        RootInterval e = eval_interval(coeffs_, iv.lo, iv.hi);
        if (e.lo > 0) return 1;
        if (e.hi < 0) return -1;
        iv = ctx_->refine_to(iv.width() / 2);
    }
}

int Scalar::compare(const Scalar& a, const Scalar& b) { return (a - b).sign(); }

RootInterval Scalar::enclosure(const Rat& width) const {
    if (is_rational()) {
        Rat v = rat();
        return {v, v};
    }
    RootInterval iv = ctx_->interval();
    for (;;) {
        RootInterval e = eval_interval(coeffs_, iv.lo, iv.hi);
        if (e.hi - e.lo <= width) return e;
        iv = ctx_->refine_to(iv.width() / 2);
    }
}

double Scalar::approx() const {
    RootInterval e = enclosure(Rat(1, 1000000000L));
    return (e.lo.get_d() + e.hi.get_d()) / 2;
}

Int Scalar::floor() const {
    if (is_rational()) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rat().get_num().get_mpz_t(), rat().get_den().get_mpz_t());
        return q;
    }
    RootInterval e = enclosure(Rat(1, 4));
    Int k;
    mpz_fdiv_q(k.get_mpz_t(), e.lo.get_num().get_mpz_t(), e.lo.get_den().get_mpz_t());
    // adjust with exact sign tests: want k <= x < k+1
    while ((*this - Scalar(Rat(k + 1))).sign() >= 0) k += 1;
    while ((*this - Scalar(Rat(k))).sign() < 0) k -= 1;
    return k;
}

std::string Scalar::str() const {
    if (is_rational()) {
        Rat v = rat();
        return v.get_str();
    }
    std::ostringstream os;
    bool first = true;
    for (size_t i = coeffs_.c.size(); i-- > 0;) {
        const Rat& a = coeffs_.c[i];
        if (a == 0) continue;
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        Rat mag = ::abs(a);
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i > 0) {
            if (mag != 1) os << "*";
            os << "s";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace dgim
