#include "dgim/dimension.hpp"

#include <algorithm>
#include <sstream>

namespace dgim {

Scalar LaurentPoly::eval(const Scalar& s) const {
    Scalar acc(0);
    for (int i = 0; i <= p.degree(); ++i) {
        if (p.coeff(i) == 0) continue;
        acc += Scalar(p.coeff(i)) * s.pow(i + low);
    }
    return acc;
}

std::string LaurentPoly::str() const {
    if (low == 0) return p.str();
    return "t^" + std::to_string(low) + "*(" + p.str() + ")";
}

namespace {

std::vector<Int> apply_power(const std::vector<Int>& v, const IMat& A, int e) {
    std::vector<Int> r = v;
    for (int i = 0; i < e; ++i) r = row_times_mat(r, A);
    return r;
}

bool vec_zero(const std::vector<Int>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

bool ga_equal(const StationaryPresentation& T, const GAElement& x, const GAElement& y) {
    if (static_cast<int>(x.v.size()) != T.q || static_cast<int>(y.v.size()) != T.q)
        throw Error("ga element size mismatch");
    // v1 A^{n2+k} = v2 A^{n1+k} for some k >= 0 iff it holds at k = q
    std::vector<Int> a = apply_power(x.v, T.A, y.n);
    std::vector<Int> b = apply_power(y.v, T.A, x.n);
    std::vector<Int> w(a.size());
    for (size_t i = 0; i < a.size(); ++i) w[i] = a[i] - b[i];
    return vec_zero(apply_power(w, T.A, T.q));
}

bool ga_is_zero(const StationaryPresentation& T, const GAElement& x) {
    return ga_equal(T, x, GAElement{std::vector<Int>(static_cast<size_t>(T.q), Int(0)), 0});
}

Scalar ga_state(const StationaryPresentation& T, const GAElement& x) {
    Scalar acc(0);
    for (int i = 0; i < T.q; ++i) acc += Scalar(x.v[static_cast<size_t>(i)]) * T.weights[static_cast<size_t>(i)];
    return acc * T.s.pow(-x.n);
}

Positivity ga_positive(const StationaryPresentation& T, const GAElement& x, OrderMode mode,
                       int iteration_bound) {
    if (ga_is_zero(T, x)) return Positivity::zero;
    if (mode == OrderMode::strict_state) {
        int sg = ga_state(T, x).sign();
        if (sg > 0) return Positivity::positive;
        if (sg < 0) return Positivity::negative;
        return Positivity::incomparable;  // nonzero infinitesimal
    }
    // bounded iteration: [v,n] >= 0 iff v A^k >= 0 for some k
    std::vector<Int> v = x.v;
    for (int k = 0; k <= iteration_bound; ++k) {
        bool nonneg = true, nonpos = true;
        for (const auto& c : v) {
            if (c < 0) nonneg = false;
            if (c > 0) nonpos = false;
        }
        if (nonneg) return Positivity::positive;
        if (nonpos) return Positivity::negative;
        v = row_times_mat(v, T.A);
    }
    return Positivity::undetermined;
}

Scalar laurent_state(const LaurentCyclicPresentation& T, const LaurentPoly& p) {
    return p.eval(T.s);
}

Positivity laurent_positive(const LaurentCyclicPresentation& T, const LaurentPoly& p) {
    if (p.is_zero()) return Positivity::zero;
    if (T.generic_s) return Positivity::positive;  // p(s) != 0 for generic s; sign undecidable
    int sg = p.eval(T.s).sign();
    if (sg > 0) return Positivity::positive;
    if (sg < 0) return Positivity::negative;
    return Positivity::incomparable;
}

DimensionTriple markov_presentation(const PLMap& map, int bound) {
    auto det = detect_markov(map, bound);
    if (std::holds_alternative<NotMarkovWithinBound>(det))
        throw Error("markov presentation: not Markov within bound " + std::to_string(bound));
    const MarkovData& md = std::get<MarkovData>(det);
    if (!md.eventually_surjective)
        throw UnsupportedClass("markov presentation: map is not eventually surjective");
    Primitivity pr = primitivity_period(md.incidence);
    if (!pr.irreducible)
        throw UnsupportedClass("markov presentation: incidence matrix reducible (map not transitive)");
    PerronData pd = perron_data(md.incidence, map.context());
    StationaryPresentation st;
    st.A = md.incidence;
    st.q = static_cast<int>(md.incidence.rows());
    st.weights = pd.right;
    st.s = pd.s;
    st.charpoly = pd.charpoly;
    st.primitive = pr.primitive;
    st.period = pr.period;
    st.order_unit.assign(static_cast<size_t>(st.q), Int(1));
    st.basis = "partition_indicators";
    return DimensionTriple{st};
}

BetaPresentation beta_presentation(const Scalar& beta, int bound) {
    if (!(beta > Scalar(1))) throw Error("beta presentation: beta > 1 required");
    BetaPresentation out;
    PLMap map = PLMap::beta_map(beta);
    Int nfloor = beta.floor();
    bool integral = (Scalar(nfloor) == beta);

    if (integral) {
        // tau(1) = 1 via the left limit: case (i), m(t) = t - beta
        out.orbit_case = 1;
        out.minimal_poly = IntPoly(std::vector<Int>{-nfloor, Int(1)});
        out.digits = {nfloor};
        out.k = 0;
        out.p = 1;
        IMat B(1, 1);
        B[0][0] = nfloor;
        out.B = B;
        out.state_basis = {Scalar(1)};
        StationaryPresentation st;
        st.A = B;
        st.q = 1;
        st.weights = {Scalar(1)};
        st.s = beta;
        st.charpoly = out.minimal_poly;
        st.primitive = true;
        st.period = 1;
        st.order_unit = {Int(1)};
        st.basis = "transfer_powers";
        out.triple = DimensionTriple{st};
        return out;
    }

    // greedy orbit of 1 with digits
    std::vector<Scalar> orbit{Scalar(1)};
    std::vector<Int> digits;
    int k = -1, p = -1;
    for (int step = 0; step < bound; ++step) {
        const Scalar& x = orbit.back();
        Int d;
        if (x == Scalar(1)) d = nfloor;  // 1 lies in the last interval [n/beta, 1]
        else d = (beta * x).floor();
        digits.push_back(d);
        Scalar next = beta * x - Scalar(d);
        int rep = -1;
        for (size_t j = 0; j < orbit.size(); ++j)
            if (orbit[j] == next) {
                rep = static_cast<int>(j);
                break;
            }
        if (rep >= 0) {
            k = rep;
            p = static_cast<int>(orbit.size());
            break;
        }
        orbit.push_back(next);
    }
    out.digits = digits;
    out.k = k;
    out.p = p;

    if (k < 0) {
        // open within bound: fallback group presentation Z[t, 1/t]
        out.fallback = true;
        LaurentCyclicPresentation lc;
        lc.s = beta;
        out.triple = DimensionTriple{lc};
        out.state_basis = {Scalar(1)};
        return out;
    }

    // tau^p 1 = tau^k 1; the orbit lands on the fixed point 0 iff orbit[k] = 0
    bool hits_zero = orbit[static_cast<size_t>(k)].is_zero();
    int q;
    if (hits_zero) {
        out.orbit_case = 3;
        // m(t) = t^{p-1} - n_0 t^{p-2} - ... - n_{p-2}
        q = p - 1;
        std::vector<Int> c(static_cast<size_t>(q) + 1, Int(0));
        c[static_cast<size_t>(q)] = 1;
        for (int i = 0; i < q; ++i) c[static_cast<size_t>(q - 1 - i)] = -digits[static_cast<size_t>(i)];
        out.minimal_poly = IntPoly(std::move(c));
    } else {
        out.orbit_case = 2;
        // m(t) = t^p - n_0 t^{p-1} - ... - n_{p-1} - (t^k - n_0 t^{k-1} - ... - n_{k-1})
        q = p;
        std::vector<Int> c(static_cast<size_t>(p) + 1, Int(0));
        c[static_cast<size_t>(p)] = 1;
        for (int i = 0; i < p; ++i) c[static_cast<size_t>(p - 1 - i)] -= digits[static_cast<size_t>(i)];
        c[static_cast<size_t>(k)] -= 1;
        for (int i = 0; i < k; ++i) c[static_cast<size_t>(k - 1 - i)] += digits[static_cast<size_t>(i)];
        out.minimal_poly = IntPoly(std::move(c));
    }

    // B: matrix of L in the basis psi_i = L^i I(0,1), built from the verified
    // identity psi(v B) = L psi(v) by expanding L^q(1) in the basis.
    TransferContext T(map);
    std::vector<StepFunction> basis;
    StepFunction cur = StepFunction::constant(Scalar(1));
    for (int i = 0; i < q; ++i) {
        basis.push_back(cur);
        cur = T.apply(cur);
    }
    // cur = L^q(1); solve cur = sum_i x_i basis_i on the common refinement
    std::vector<Scalar> pts;
    {
        std::vector<Scalar> all;
        for (const auto& b : basis)
            for (const auto& c : b.cuts()) all.push_back(c);
        for (const auto& c : cur.cuts()) all.push_back(c);
        std::sort(all.begin(), all.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
        for (const auto& c : all)
            if (pts.empty() || pts.back() != c) pts.push_back(c);
    }
    size_t rows = pts.size() - 1;
    std::vector<std::vector<Scalar>> M(rows, std::vector<Scalar>(static_cast<size_t>(q) + 1, Scalar(0)));
    for (int cidx = 0; cidx < q; ++cidx)
        for (size_t r = 0; r < rows; ++r)
            M[r][static_cast<size_t>(cidx)] = basis[static_cast<size_t>(cidx)].value_right_of(pts[r]);
    for (size_t r = 0; r < rows; ++r) M[r][static_cast<size_t>(q)] = cur.value_right_of(pts[r]);
    // Gauss-Jordan
    size_t rank = 0;
    std::vector<int> pivot_col(static_cast<size_t>(q), -1);
    for (size_t c = 0; c < static_cast<size_t>(q) && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && M[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[rank]);
        Scalar inv = M[rank][c].inverse();
        for (size_t j = 0; j <= static_cast<size_t>(q); ++j) M[rank][j] = M[rank][j] * inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || M[r][c].is_zero()) continue;
            Scalar f = M[r][c];
            for (size_t j = 0; j <= static_cast<size_t>(q); ++j) M[r][j] = M[r][j] - f * M[rank][j];
        }
        pivot_col[c] = static_cast<int>(rank);
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (!M[r][static_cast<size_t>(q)].is_zero())
            throw Error("beta presentation: L^q(1) escaped the module basis");
    std::vector<Int> last_row(static_cast<size_t>(q), Int(0));
    for (size_t c = 0; c < static_cast<size_t>(q); ++c) {
        if (pivot_col[c] < 0) continue;
        const Scalar& v = M[static_cast<size_t>(pivot_col[c])][static_cast<size_t>(q)];
        if (!v.is_integer()) throw Error("beta presentation: non-integer coordinates for L^q(1)");
        last_row[c] = v.integer();
    }
    IMat B(static_cast<size_t>(q), static_cast<size_t>(q));
    for (int i = 0; i + 1 < q; ++i) B[static_cast<size_t>(i)][static_cast<size_t>(i) + 1] = 1;
    for (int c = 0; c < q; ++c) B[static_cast<size_t>(q) - 1][static_cast<size_t>(c)] = last_row[static_cast<size_t>(c)];
    // verify psi(e_i B) = L psi(e_i) exactly on every basis vector
    for (int i = 0; i < q; ++i) {
        StepFunction lhs = StepFunction::constant(Scalar(0));
        for (int c = 0; c < q; ++c)
            if (B[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0)
                lhs = lhs + basis[static_cast<size_t>(c)] * Scalar(B[static_cast<size_t>(i)][static_cast<size_t>(c)]);
        StepFunction rhs = (i + 1 < q) ? basis[static_cast<size_t>(i) + 1] : cur;
        if (lhs != rhs) throw Error("beta presentation: psi(vB) = L psi(v) verification failed");
    }
    if (charpoly(B) != out.minimal_poly)
        throw Error("beta presentation: char poly of B differs from the minimal polynomial");
    out.B = B;
    out.state_basis.resize(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i) out.state_basis[static_cast<size_t>(i)] = beta.pow(i);

    StationaryPresentation st;
    st.A = B;
    st.q = q;
    st.weights = out.state_basis;
    st.s = beta;
    st.charpoly = out.minimal_poly;
    // beta-transformations are topologically exact; the strict-state order applies
    st.primitive = true;
    st.period = 1;
    st.order_unit.assign(static_cast<size_t>(q), Int(0));
    st.order_unit[0] = 1;
    st.basis = "transfer_powers";
    out.triple = DimensionTriple{st};
    return out;
}

bool cyclic_detect(const PLMap& map, int bound) {
    const auto& bk = map.breakpoints();
    OrbitTable tbl = critical_orbits(map, bound);
    auto orbit_open = [&](const Scalar& a) {
        for (const auto& rec : tbl.records)
            if (rec.seed == a) return rec.open;
        return false;
    };
    for (const Scalar& a : {Scalar(0), Scalar(1)}) {
        if (!orbit_open(a)) continue;
        bool rest_ok = true;
        for (const Scalar& c : bk) {
            if (c == a) continue;
            for (const Scalar& y : map.hat_image_point(c))
                if (std::none_of(bk.begin(), bk.end(), [&](const Scalar& b) { return b == y; }))
                    rest_ok = false;
        }
        if (rest_ok) return true;
    }
    return false;
}

CanonicalGenerators canonical_generators(const PLMap& map) {
    Classification cls = map.classify();
    if (!cls.surjective_hat) throw Error("canonical generators: map is not surjective");
    CanonicalGenerators out;
    const auto& bk = map.breakpoints();
    for (size_t i = 0; i + 1 < bk.size(); ++i)
        out.j1.push_back(StepFunction::indicator(bk[i], bk[i + 1]));
    for (int i = 1; i < map.branch_count(); ++i) {
        Scalar a = map.branch(i - 1).apply(bk[static_cast<size_t>(i)]);
        Scalar b = map.branch(i).apply(bk[static_cast<size_t>(i)]);
        if (a > b) std::swap(a, b);
        if (a < b) out.j2.push_back(StepFunction::indicator(a, b));
    }
    return out;
}

bool infinitesimal_exists(const IntPoly& charpoly_in) {
    IntPoly p = charpoly_in.primitive_part();
    if (p.degree() < 1) throw Error("infinitesimal test: constant polynomial");
    size_t k = 0;
    while (k < p.c.size() && p.c[k] == 0) ++k;
    if (k > 0) p = IntPoly(std::vector<Int>(p.c.begin() + static_cast<long>(k), p.c.end()));
    if (p.degree() < 1) return false;  // pure power of t
    return !is_irreducible(p);
}

namespace {

Int strip_primes_of(Int x, const Int& N) {
    if (x == 0) return x;
    Int g;
    for (;;) {
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), N.get_mpz_t());
        if (g == 1) return x;
        // remove every factor of g
        while (x % g == 0) x /= g;
        if (x == 1 || x == -1) return x;
    }
}

// row HNF of an integer matrix (nonnegative pivots, echelon rows)
std::vector<std::vector<Int>> hermite_rows(std::vector<std::vector<Int>> rows) {
    if (rows.empty()) return rows;
    size_t cols = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); ++c) {
        // reduce column c below row r by gcd steps
        for (;;) {
            size_t piv = rows.size();
            for (size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (piv == rows.size() ||
                                        cmp(abs(rows[i][c]), abs(rows[piv][c])) < 0))
                    piv = i;
            if (piv == rows.size()) break;  // column is zero below r
            std::swap(rows[piv], rows[r]);
            bool cleared = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Int qq = rows[i][c] / rows[r][c];
                for (size_t j = 0; j < cols; ++j) rows[i][j] -= qq * rows[r][j];
                if (rows[i][c] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (rows[r][c] != 0) {
            if (rows[r][c] < 0)
                for (size_t j = 0; j < cols; ++j) rows[r][j] = -rows[r][j];
            ++r;
        }
    }
    rows.resize(r);
    return rows;
}

}  // namespace

bool SubgroupOfR::contains(const Scalar& x) const {
    switch (backend) {
        case RangeBackend::rational_denominator: {
            if (!x.is_rational()) return false;
            if (rational_g == 0) return x.is_zero();
            Rat q = x.rat() / rational_g;
            Int den = strip_primes_of(q.get_den(), rational_N);
            return den == 1;
        }
        case RangeBackend::unit_lattice: {
            // solve integer combination of lattice_basis rows = coordinates of x
            size_t d = lattice_basis.empty() ? 0 : lattice_basis[0].size();
            std::vector<Rat> target(d, Rat(0));
            const RatPoly& cf = x.coeffs();
            for (size_t i = 0; i < d; ++i)
                target[i] = i < cf.c.size() ? cf.c[i] : Rat(0);
            // clear denominators jointly with the basis
            Int lcm(1);
            for (const auto& row : lattice_basis)
                for (const auto& v : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
            for (const auto& v : target) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
            std::vector<std::vector<Int>> rows;
            for (const auto& row : lattice_basis) {
                std::vector<Int> r(d);
                for (size_t j = 0; j < d; ++j) r[j] = Rat(row[j] * Rat(lcm)).get_num();
                rows.push_back(std::move(r));
            }
            std::vector<Int> t(d);
            for (size_t j = 0; j < d; ++j) t[j] = Rat(target[j] * Rat(lcm)).get_num();
            // solve t = sum z_i rows_i by echelon elimination (rows are in HNF)
            auto work = rows;
            for (const auto& row : work) {
                // find leading column
                size_t lead = 0;
                while (lead < d && row[lead] == 0) ++lead;
                if (lead == d) continue;
                if (t[lead] % row[lead] != 0) {
                    if (t[lead] != 0) return false;
                    continue;
                }
                Int z = t[lead] / row[lead];
                for (size_t j = 0; j < d; ++j) t[j] -= z * row[j];
            }
            return vec_zero(t);
        }
        case RangeBackend::generic_symbolic:
            throw Error("membership undecidable for a generic (declared transcendental) s; "
                        "only syntactic Laurent combinations are members");
        case RangeBackend::undecided:
            throw Error("state-range membership backend undecided for this s");
    }
    return false;
}

std::string SubgroupOfR::describe() const {
    std::ostringstream os;
    switch (backend) {
        case RangeBackend::rational_denominator:
            os << "(" << rational_g.get_str() << ")*Z[1/" << rational_N.get_str() << "]";
            break;
        case RangeBackend::unit_lattice: {
            os << "Z-lattice with basis {";
            for (size_t i = 0; i < lattice_basis.size(); ++i) {
                if (i) os << ", ";
                bool first = true;
                for (size_t j = 0; j < lattice_basis[i].size(); ++j) {
                    if (lattice_basis[i][j] == 0) continue;
                    if (!first) os << " + ";
                    os << lattice_basis[i][j].get_str();
                    if (j >= 1) os << "*s";
                    if (j > 1) os << "^" << j;
                    first = false;
                }
                if (first) os << "0";
            }
            os << "}";
            break;
        }
        case RangeBackend::generic_symbolic: {
            os << "sum of Z[t,1/t]*w over generators (s generic)";
            break;
        }
        case RangeBackend::undecided:
            os << "undecided";
            break;
    }
    return os.str();
}

SubgroupOfR state_range(const Scalar& s, const std::vector<Scalar>& weights, bool generic_s) {
    SubgroupOfR out;
    out.s = s;
    out.generators = weights;
    if (generic_s) {
        out.backend = RangeBackend::generic_symbolic;
        return out;
    }
    if (s.is_rational()) {
        bool all_rational = true;
        for (const auto& w : weights)
            if (!w.is_rational()) all_rational = false;
        if (all_rational) {
            out.backend = RangeBackend::rational_denominator;
            // Z[s, 1/s] = Z[1/(num*den)] for s = num/den in lowest terms
            Int N = abs(s.rat().get_num() * s.rat().get_den());
            out.rational_N = N;
            // the module sum Z[1/N]*w_i is cyclic: g = gcd of the weights in the
            // localization (N-power parts of numerators/denominators are units)
            Rat g(0);
            for (const auto& w : weights) {
                if (w.is_zero()) continue;
                Rat q = w.rat();
                Int num = strip_primes_of(abs(q.get_num()), N);
                Int den = strip_primes_of(q.get_den(), N);
                Rat reduced(num, den);
                reduced.canonicalize();
                if (g == 0) {
                    g = reduced;
                } else {
                    Int common, gl;
                    mpz_lcm(common.get_mpz_t(), g.get_den().get_mpz_t(),
                            reduced.get_den().get_mpz_t());
                    Int a = g.get_num() * (common / g.get_den());
                    Int b = reduced.get_num() * (common / reduced.get_den());
                    mpz_gcd(gl.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                    g = Rat(gl, common);
                    g.canonicalize();
                }
            }
            out.rational_g = g;
            return out;
        }
        out.backend = RangeBackend::undecided;
        return out;
    }
    // algebraic s: unit test via minpoly (monic, constant coefficient +-1)
    const IntPoly& mp = s.context()->minpoly();
    bool unit = mp.is_monic() && (mp.coeff(0) == 1 || mp.coeff(0) == -1);
    if (!unit) {
        out.backend = RangeBackend::undecided;
        return out;
    }
    out.backend = RangeBackend::unit_lattice;
    int d = mp.degree();
    // lattice spanned by s^j * w_i for 0 <= j < d  (s^d reduces integrally)
    std::vector<std::vector<Rat>> rows;
    for (const auto& w : weights) {
        Scalar cur = w;
        for (int j = 0; j < d; ++j) {
            std::vector<Rat> row(static_cast<size_t>(d), Rat(0));
            const RatPoly& cf = cur.coeffs();
            for (size_t i = 0; i < cf.c.size(); ++i) row[i] = cf.c[i];
            rows.push_back(row);
            cur = cur * s;
        }
    }
    // integer HNF after clearing the common denominator
    Int lcm(1);
    for (const auto& row : rows)
        for (const auto& v : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<std::vector<Int>> irows;
    for (const auto& row : rows) {
        std::vector<Int> r(row.size());
        for (size_t j = 0; j < row.size(); ++j) r[j] = Rat(row[j] * Rat(lcm)).get_num();
        irows.push_back(std::move(r));
    }
    auto hnf = hermite_rows(std::move(irows));
    for (const auto& row : hnf) {
        std::vector<Rat> r(row.size());
        for (size_t j = 0; j < row.size(); ++j) {
            r[j] = Rat(row[j], lcm);
            r[j].canonicalize();
        }
        out.lattice_basis.push_back(std::move(r));
    }
    return out;
}

DimensionTriple unimodal_presentation(const PLMap& map, int bound, bool generic_s) {
    if (!map.is_unimodal()) throw UnsupportedClass("unimodal presentation: map is not unimodal");
    TransitivityResult tr = transitivity_check(map, bound);
    if (tr.verdict == Verdict3::no)
        throw UnsupportedClass("unimodal presentation: map is not transitive");
    ScalingMeasure sm = [&] {
        auto det = detect_markov(map, bound);
        if (std::holds_alternative<MarkovData>(det))
            return scaling_measure(map, std::get<MarkovData>(det));
        return scaling_measure(map);
    }();
    // boundary case s^2 = 2: direct sum of two pieces exchanged by L_*
    if ((sm.s * sm.s) == Scalar(2)) {
        ExactDecomposition dec = exact_decomposition(map, bound);
        return direct_sum_decompose(map, dec, bound);
    }
    auto det = detect_markov(map, bound);
    if (std::holds_alternative<MarkovData>(det)) return markov_presentation(map, bound);
    LaurentCyclicPresentation lc;
    lc.s = sm.s;
    lc.generic_s = generic_s;
    return DimensionTriple{lc};
}

DimensionTriple direct_sum_decompose(const PLMap& map, const ExactDecomposition& dec, int bound) {
    DirectSumPresentation ds;
    ds.N = dec.N;
    if (dec.N == 1) {
        // direct sum of one component: the plain presentation
        auto det = detect_markov(map, bound);
        if (std::holds_alternative<MarkovData>(det)) {
            ds.components.push_back(std::make_shared<DimensionTriple>(markov_presentation(map, bound)));
            return DimensionTriple{ds};
        }
        throw Error("direct sum: single-part non-Markov presentation unavailable");
    }
    auto det = detect_markov(map, bound);
    if (std::holds_alternative<NotMarkovWithinBound>(det))
        throw Error("direct sum: only the Markov route is implemented for N > 1");
    const MarkovData& md = std::get<MarkovData>(det);
    Primitivity pr = primitivity_period(md.incidence);
    if (pr.period != dec.N) throw Error("direct sum: decomposition size differs from digraph period");
    PerronData pd = perron_data(md.incidence, map.context());
    auto classes = cyclic_classes(md.incidence, pr.period);
    // order classes to match dec.parts
    std::vector<std::vector<int>> ordered(static_cast<size_t>(dec.N));
    for (int c = 0; c < dec.N; ++c) {
        IntervalSet span;
        for (int idx : classes[static_cast<size_t>(c)])
            span = span.unite(IntervalSet::single(md.partition[static_cast<size_t>(idx)],
                                                  md.partition[static_cast<size_t>(idx) + 1]));
        int where = -1;
        for (int j = 0; j < dec.N; ++j)
            if (span == dec.parts[static_cast<size_t>(j)]) where = j;
        if (where < 0) throw Error("direct sum: cyclic classes do not match decomposition parts");
        ordered[static_cast<size_t>(where)] = classes[static_cast<size_t>(c)];
    }
    IMat AN = md.incidence.pow(static_cast<unsigned>(dec.N));
    for (int part = 0; part < dec.N; ++part) {
        const auto& idxs = ordered[static_cast<size_t>(part)];
        size_t m = idxs.size();
        StationaryPresentation st;
        st.A = IMat(m, m);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j)
                st.A[i][j] = AN[static_cast<size_t>(idxs[i])][static_cast<size_t>(idxs[j])];
        st.q = static_cast<int>(m);
        // weights renormalized by the part mass
        Scalar mass(0);
        for (int idx : idxs) mass += pd.right[static_cast<size_t>(idx)];
        Scalar inv = mass.inverse();
        for (int idx : idxs) st.weights.push_back(pd.right[static_cast<size_t>(idx)] * inv);
        st.s = pd.s.pow(dec.N);
        st.charpoly = charpoly(st.A);
        Primitivity prp = primitivity_period(st.A);
        st.primitive = prp.primitive;
        st.period = prp.period;
        st.order_unit.assign(m, Int(1));
        st.basis = "partition_indicators";
        ds.components.push_back(std::make_shared<DimensionTriple>(DimensionTriple{st}));
    }
    return DimensionTriple{ds};
}

ConjugacyResult conjugacy_compare(const PLMap& a, const PLMap& b, int bound) {
    ConjugacyResult out;
    for (const PLMap* m : {&a, &b}) {
        if (!m->is_continuous()) {
            out.verdict = ConjugacyVerdict::undetermined;
            out.reason = "comparison requires continuous maps";
            return out;
        }
        TransitivityResult tr = transitivity_check(*m, bound);
        if (tr.verdict == Verdict3::no) {
            out.verdict = ConjugacyVerdict::undetermined;
            out.reason = "a map is not transitive";
            return out;
        }
        if (tr.verdict == Verdict3::undetermined) {
            out.verdict = ConjugacyVerdict::undetermined;
            out.reason = "transitivity undetermined: " + tr.note;
            return out;
        }
    }
    auto uniformized = [&](const PLMap& m) -> std::optional<PLMap> {
        std::optional<MarkovData> md;
        auto det = detect_markov(m, bound);
        if (std::holds_alternative<MarkovData>(det)) md = std::get<MarkovData>(det);
        try {
            ScalingMeasure sm = scaling_measure(m, md);
            return uniformize(m, sm.mu, sm.s);
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    auto ua = uniformized(a), ub = uniformized(b);
    if (!ua || !ub) {
        out.verdict = ConjugacyVerdict::undetermined;
        out.reason = "scaling measure unavailable (non-Markov, non-uniform input)";
        return out;
    }
    Scalar sa = *ua->uniform_slope(), sb = *ub->uniform_slope();
    bool same_ctx_ok = true;
    try {
        if (sa != sb) {
            out.verdict = ConjugacyVerdict::not_conjugate;
            out.reason = "scaling factors differ (entropy distinguishes the maps)";
            return out;
        }
    } catch (const ContextMismatch&) {
        same_ctx_ok = false;
    }
    if (!same_ctx_ok) {
        // different algebraic contexts: separate numerically until distinct
        RootInterval ia = sa.enclosure(Rat(1, 1000000000L));
        RootInterval ib = sb.enclosure(Rat(1, 1000000000L));
        if (ia.hi < ib.lo || ib.hi < ia.lo) {
            out.verdict = ConjugacyVerdict::not_conjugate;
            out.reason = "scaling factors differ (entropy distinguishes the maps)";
            return out;
        }
        out.verdict = ConjugacyVerdict::undetermined;
        out.reason = "scaling factors numerically close across unrelated contexts";
        return out;
    }
    if (ua->branch_count() != ub->branch_count()) {
        out.verdict = ConjugacyVerdict::not_conjugate;
        out.reason = "different numbers of monotonicity intervals";
        return out;
    }
    if (ua->branch(0).increasing() != ub->branch(0).increasing()) {
        out.verdict = ConjugacyVerdict::not_conjugate;
        out.reason = "first-interval direction";
        return out;
    }
    for (int i = 0; i < ua->branch_count(); ++i)
        if (ua->branch(i).increasing() != ub->branch(i).increasing()) {
            out.verdict = ConjugacyVerdict::not_conjugate;
            out.reason = "fold-direction sequences differ";
            return out;
        }
    for (size_t i = 0; i < ua->breakpoints().size(); ++i)
        if (ua->breakpoints()[i] != ub->breakpoints()[i]) {
            out.verdict = ConjugacyVerdict::not_conjugate;
            out.reason = "breakpoint measure-coordinates differ";
            return out;
        }
    // same lengths, same directions, same slopes: the uniform models coincide
    for (int i = 0; i < ua->branch_count(); ++i)
        if (ua->branch(i).intercept != ub->branch(i).intercept)
            throw Error("conjugacy: uniform models agree on data but not intercepts");
    out.verdict = ConjugacyVerdict::conjugate_increasing;
    out.reason = "uniform models coincide";
    return out;
}

}  // namespace dgim
