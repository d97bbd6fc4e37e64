#include "dgim/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace dgim {

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c.emplace_back(v);
    trim();
}

IntPoly IntPoly::monomial(const Int& a, int deg) {
    if (a == 0) return zero();
    std::vector<Int> v(static_cast<size_t>(deg) + 1, Int(0));
    v.back() = a;
    return IntPoly(std::move(v));
}

const Int& IntPoly::coeff(int i) const {
    static const Int kZero(0);
    if (i < 0 || i >= static_cast<int>(c.size())) return kZero;
    return c[static_cast<size_t>(i)];
}

void IntPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Int IntPoly::content() const {
    Int g(0);
    for (const Int& a : c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return zero();
    Int g = content();
    if (lc() < 0) g = -g;
    std::vector<Int> v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v[i] = c[i] / g;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::derivative() const {
    if (c.size() <= 1) return zero();
    std::vector<Int> v(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) v[i - 1] = c[i] * static_cast<long>(i);
    return IntPoly(std::move(v));
}

Int IntPoly::eval(const Int& x) const {
    Int r(0);
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

Rat IntPoly::eval(const Rat& x) const {
    Rat r(0);
    for (size_t i = c.size(); i-- > 0;) r = r * x + Rat(c[i]);
    return r;
}

IntPoly IntPoly::operator-() const {
    std::vector<Int> v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v[i] = -c[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> v(std::max(c.size(), o.c.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) v[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) v[i] += o.c[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<Int> v(c.size() + o.c.size() - 1, Int(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) v[i + j] += c[i] * o.c[j];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::operator*(const Int& k) const {
    if (k == 0) return zero();
    std::vector<Int> v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v[i] = c[i] * k;
    return IntPoly(std::move(v));
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        Int a = c[i];
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        Int mag = abs(a);
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

RatPoly RatPoly::from(const IntPoly& p) {
    std::vector<Rat> v(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) v[i] = Rat(p.c[i]);
    return RatPoly(std::move(v));
}

RatPoly RatPoly::constant(const Rat& a) {
    if (a == 0) return RatPoly{};
    return RatPoly(std::vector<Rat>{a});
}

void RatPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

RatPoly RatPoly::operator-() const {
    std::vector<Rat> v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v[i] = -c[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rat> v(std::max(c.size(), o.c.size()), Rat(0));
    for (size_t i = 0; i < c.size(); ++i) v[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) v[i] += o.c[i];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator-(const RatPoly& o) const { return *this + (-o); }

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly{};
    std::vector<Rat> v(c.size() + o.c.size() - 1, Rat(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) v[i + j] += c[i] * o.c[j];
    return RatPoly(std::move(v));
}

RatPoly RatPoly::operator*(const Rat& k) const {
    if (k == 0) return RatPoly{};
    std::vector<Rat> v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v[i] = c[i] * k;
    return RatPoly(std::move(v));
}

Rat RatPoly::eval(const Rat& x) const {
    Rat r(0);
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    Rat inv = 1 / lc();
    return *this * inv;
}

IntPoly RatPoly::clear_denominators() const {
    if (is_zero()) return IntPoly::zero();
    Int l(1);
    for (const Rat& a : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den().get_mpz_t());
    std::vector<Int> v(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        Rat t = c[i] * Rat(l);
        v[i] = t.get_num();
    }
    return IntPoly(std::move(v)).primitive_part();
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    RatPoly r = a;
    std::vector<Rat> q(a.c.size() > b.c.size() - 1 ? a.c.size() - b.c.size() + 1 : 0, Rat(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int d = r.degree() - b.degree();
        Rat f = r.lc() / b.lc();
        q[static_cast<size_t>(d)] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[static_cast<size_t>(d) + i] -= f * b.c[i];
        r.trim();
    }
    return {RatPoly(std::move(q)), r};
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        RatPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    Rat inv = 1 / a.lc();
    return a * inv;
}

RatPoly poly_gcd_ext(const RatPoly& a, const RatPoly& b, RatPoly& u, RatPoly& v) {
    RatPoly r0 = a, r1 = b;
    RatPoly u0 = RatPoly::constant(1), u1;
    RatPoly v0, v1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        RatPoly u2 = u0 - q * u1;
        RatPoly v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) { u = u0; v = v0; return r0; }
    Rat inv = 1 / r0.lc();
    u = u0 * inv;
    v = v0 * inv;
    return r0 * inv;
}

IntPoly int_gcd(const IntPoly& a, const IntPoly& b) {
    RatPoly g = poly_gcd(RatPoly::from(a), RatPoly::from(b));
    return g.clear_denominators();
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = divmod(RatPoly::from(a), RatPoly::from(b));
    if (!r.is_zero()) throw std::invalid_argument("exact_div: not divisible");
    std::vector<Int> v(q.c.size());
    for (size_t i = 0; i < q.c.size(); ++i) {
        if (q.c[i].get_den() != 1) throw std::invalid_argument("exact_div: non-integer quotient");
        v[i] = q.c[i].get_num();
    }
    return IntPoly(std::move(v));
}

IntPoly squarefree_part(const IntPoly& p) {
    if (p.degree() <= 0) return p.primitive_part();
    IntPoly g = int_gcd(p, p.derivative());
    if (g.degree() <= 0) return p.primitive_part();
    return exact_div(p.primitive_part(), g).primitive_part();
}

SturmChain::SturmChain(const IntPoly& squarefree) {
    RatPoly p = RatPoly::from(squarefree);
    seq_.push_back(p);
    RatPoly d = RatPoly::from(squarefree.derivative());
    if (!d.is_zero()) seq_.push_back(d);
    while (seq_.size() >= 2 && !seq_.back().is_zero()) {
        RatPoly r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
        if (r.is_zero()) break;
        seq_.push_back(-r);
    }
}

int SturmChain::variations(const Rat& x) const {
    int count = 0, prev = 0;
    for (const RatPoly& p : seq_) {
        Rat v = p.eval(x);
        int s = sgn(v);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

int SturmChain::count_roots(const Rat& a, const Rat& b) const {
    return variations(a) - variations(b);
}

Rat cauchy_root_bound(const IntPoly& p) {
    if (p.degree() < 0) return Rat(1);
    Rat m(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rat a = abs(Rat(p.coeff(i)) / Rat(p.lc()));
        if (a > m) m = a;
    }
    return m + 1;
}

std::optional<RootInterval> isolate_largest_real_root(const IntPoly& squarefree) {
    if (squarefree.degree() < 1) return std::nullopt;
    SturmChain st(squarefree);
    Rat hi = cauchy_root_bound(squarefree);
    Rat lo = -hi;
    // p(±bound) != 0 by the strict Cauchy bound
    int total = st.count_roots(lo, hi);
    if (total == 0) return std::nullopt;
    // shrink [lo, hi] keeping exactly the largest root: maintain "roots in (lo,hi] >= 1
    // and roots in (hi, +bound] == 0"; stop once (lo,hi] holds exactly one root.
    Rat top = hi;
    while (st.count_roots(lo, hi) > 1) {
        Rat mid = (lo + hi) / 2;
        if (squarefree.eval(mid) == 0) {
            // mid is a root; nudge the cut so endpoints stay off roots
            mid = (mid + hi) / 2;
            if (squarefree.eval(mid) == 0) mid = (lo + mid) / 2;
        }
        if (st.count_roots(mid, top) >= 1)
            lo = mid;
        else
            hi = mid;
    }
    return RootInterval{lo, hi};
}

RootInterval bisect_root_interval(const IntPoly& p, const RootInterval& iv) {
    Rat mid = (iv.lo + iv.hi) / 2;
    Rat vm = p.eval(mid);
    if (vm == 0) {
        // cannot happen for irreducible deg >= 2; fall back to an off-center cut
        mid = iv.lo + (iv.hi - iv.lo) / 3;
        vm = p.eval(mid);
    }
    Rat vl = p.eval(iv.lo);
    if (sgn(vl) * sgn(vm) < 0) return RootInterval{iv.lo, mid};
    return RootInterval{mid, iv.hi};
}

}  // namespace dgim
