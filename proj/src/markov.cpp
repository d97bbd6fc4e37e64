#include "dgim/markov.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

namespace dgim {

namespace {

// sorted unique insertion; returns true when x was new
bool insert_sorted(std::vector<Scalar>& v, const Scalar& x) {
    auto it = std::lower_bound(v.begin(), v.end(), x,
                               [](const Scalar& a, const Scalar& b) { return a < b; });
    if (it != v.end() && *it == x) return false;
    v.insert(it, x);
    return true;
}

}  // namespace

Scalar tau_point(const PLMap& map, const Scalar& x) {
    auto bi = map.breakpoint_index(x);
    if (!bi) return map.branch(map.branch_of_interior(x)).apply(x);
    int i = *bi;
    if (i == map.branch_count()) return map.branch(i - 1).apply(x);  // left limit at 1
    return map.branch(i).apply(x);                                   // right branch
}

OrbitTable critical_orbits(const PLMap& map, int bound) {
    OrbitTable table;
    std::vector<Scalar> seeds;
    const auto& bk = map.breakpoints();
    for (size_t i = 0; i < bk.size(); ++i) {
        insert_sorted(seeds, bk[i]);
        for (const Scalar& v : map.hat_image_point(bk[i])) insert_sorted(seeds, v);
    }
    for (const Scalar& seed : seeds) {
        OrbitRecord rec;
        rec.seed = seed;
        rec.points.push_back(seed);
        for (int k = 0; k < bound; ++k) {
            Scalar next = tau_point(map, rec.points.back());
            int rep = -1;
            for (size_t j = 0; j < rec.points.size(); ++j)
                if (rec.points[j] == next) {
                    rep = static_cast<int>(j);
                    break;
                }
            if (rep >= 0) {
                rec.preperiod = rep;
                rec.period = static_cast<int>(rec.points.size()) - rep;
                rec.open = false;
                break;
            }
            rec.points.push_back(next);
        }
        if (rec.open) table.all_closed = false;
        table.records.push_back(std::move(rec));
    }
    return table;
}

std::variant<MarkovData, NotMarkovWithinBound> detect_markov(const PLMap& map, int bound) {
    // forward closure of the breakpoints under the multivalued extension
    std::vector<Scalar> pts = map.breakpoints();
    std::sort(pts.begin(), pts.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
    std::vector<Scalar> frontier = pts;
    bool closed = false;
    for (int round = 0; round <= bound; ++round) {
        if (frontier.empty()) {
            closed = true;
            break;
        }
        std::vector<Scalar> next;
        for (const Scalar& x : frontier)
            for (const Scalar& y : map.hat_image_point(x))
                if (insert_sorted(pts, y)) next.push_back(y);
        frontier = std::move(next);
    }
    if (!closed) return NotMarkovWithinBound{bound};

    MarkovData md;
    md.partition = pts;
    size_t q = pts.size() - 1;
    md.incidence = IMat(q, q);
    for (size_t j = 0; j < q; ++j) {
        const Scalar& lo = pts[j];
        const Scalar& hi = pts[j + 1];
        // the gap sits inside one branch: breakpoints are partition points
        int branch = map.branch_of_interior((lo + hi) / Scalar(2));
        Scalar a = map.branch(branch).apply(lo);
        Scalar b = map.branch(branch).apply(hi);
        if (a > b) std::swap(a, b);
        auto ia = std::lower_bound(pts.begin(), pts.end(), a,
                                   [](const Scalar& x, const Scalar& y) { return x < y; });
        auto ib = std::lower_bound(pts.begin(), pts.end(), b,
                                   [](const Scalar& x, const Scalar& y) { return x < y; });
        if (ia == pts.end() || *ia != a || ib == pts.end() || *ib != b)
            throw Error("markov: branch image endpoint escaped the closure");
        for (auto k = static_cast<size_t>(ia - pts.begin()); k < static_cast<size_t>(ib - pts.begin()); ++k)
            md.incidence[j][k] = 1;
    }
    // image chain on cells
    std::vector<bool> covered(q, false);
    {
        std::vector<bool> cur(q, true);
        for (;;) {
            std::vector<bool> img(q, false);
            for (size_t j = 0; j < q; ++j)
                if (cur[j])
                    for (size_t k = 0; k < q; ++k)
                        if (md.incidence[j][k] == 1) img[k] = true;
            if (img == cur) break;
            cur = img;
        }
        covered = cur;
    }
    md.surjective = true;
    {
        std::vector<bool> img(q, false);
        for (size_t j = 0; j < q; ++j)
            for (size_t k = 0; k < q; ++k)
                if (md.incidence[j][k] == 1) img[k] = true;
        for (bool b : img)
            if (!b) md.surjective = false;
    }
    md.eventually_surjective = std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
    return md;
}

Primitivity primitivity_period(const IMat& A) {
    size_t n = A.rows();
    Primitivity out;
    // strong connectivity: BFS forward and backward from 0
    auto reach = [&](bool forward) {
        std::vector<bool> seen(n, false);
        std::queue<size_t> q;
        q.push(0);
        seen[0] = true;
        while (!q.empty()) {
            size_t u = q.front();
            q.pop();
            for (size_t v = 0; v < n; ++v) {
                bool edge = forward ? A[u][v] != 0 : A[v][u] != 0;
                if (edge && !seen[v]) {
                    seen[v] = true;
                    q.push(v);
                }
            }
        }
        return seen;
    };
    auto fwd = reach(true), bwd = reach(false);
    out.irreducible = true;
    for (size_t i = 0; i < n; ++i)
        if (!fwd[i] || !bwd[i]) out.irreducible = false;
    if (!out.irreducible) {
        out.primitive = false;
        out.period = 0;
        return out;
    }
    // period = gcd over edges u->v of level[u] + 1 - level[v]
    std::vector<long> level(n, -1);
    std::queue<size_t> q;
    q.push(0);
    level[0] = 0;
    while (!q.empty()) {
        size_t u = q.front();
        q.pop();
        for (size_t v = 0; v < n; ++v)
            if (A[u][v] != 0 && level[v] < 0) {
                level[v] = level[u] + 1;
                q.push(v);
            }
    }
    long g = 0;
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v)
            if (A[u][v] != 0) g = std::gcd(g, level[u] + 1 - level[v]);
    if (g < 0) g = -g;
    if (g == 0) g = 1;
    out.period = static_cast<int>(g);
    out.primitive = (g == 1);
    return out;
}

std::vector<std::vector<int>> cyclic_classes(const IMat& A, int period) {
    size_t n = A.rows();
    std::vector<long> level(n, -1);
    std::queue<size_t> q;
    q.push(0);
    level[0] = 0;
    while (!q.empty()) {
        size_t u = q.front();
        q.pop();
        for (size_t v = 0; v < n; ++v)
            if (A[u][v] != 0 && level[v] < 0) {
                level[v] = level[u] + 1;
                q.push(v);
            }
    }
    std::vector<std::vector<int>> classes(static_cast<size_t>(period));
    for (size_t i = 0; i < n; ++i)
        classes[static_cast<size_t>(((level[i] % period) + period) % period)].push_back(
            static_cast<int>(i));
    return classes;
}

namespace {

// kernel of (A - s I) over Q(s); A integer, s Scalar. Returns one kernel vector.
std::vector<Scalar> eigenvector(const IMat& A, const Scalar& s) {
    size_t n = A.rows();
    std::vector<std::vector<Scalar>> M(n, std::vector<Scalar>(n, Scalar(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            M[i][j] = Scalar(A[i][j]);
            if (i == j) M[i][j] -= s;
        }
    std::vector<int> pivot_col;
    size_t rank = 0;
    for (size_t c = 0; c < n && rank < n; ++c) {
        size_t piv = rank;
        while (piv < n && M[piv][c].is_zero()) ++piv;
        if (piv == n) continue;
        std::swap(M[piv], M[rank]);
        Scalar inv = M[rank][c].inverse();
        for (size_t k = 0; k < n; ++k) M[rank][k] = M[rank][k] * inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == rank || M[r][c].is_zero()) continue;
            Scalar f = M[r][c];
            for (size_t k = 0; k < n; ++k) M[r][k] = M[r][k] - f * M[rank][k];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++rank;
    }
    if (rank == n) throw Error("perron: eigenvalue does not annihilate (A - sI)");
    // pick the first free column, back-substitute
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    size_t free_col = 0;
    while (free_col < n && is_pivot[free_col]) ++free_col;
    std::vector<Scalar> v(n, Scalar(0));
    v[free_col] = Scalar(1);
    for (size_t r = 0; r < rank; ++r) {
        size_t pc = static_cast<size_t>(pivot_col[r]);
        v[pc] = -M[r][free_col];
    }
    return v;
}

}  // namespace

PerronData perron_data(const IMat& A, const ContextPtr& ctx_hint) {
    Primitivity pr = primitivity_period(A);
    if (!pr.irreducible) throw Error("perron: matrix is reducible");
    PerronData out;
    out.charpoly = charpoly(A);
    IntPoly sf = squarefree_part(out.charpoly);
    auto factors = factor_rational(sf);
    // largest real root across irreducible factors
    std::optional<Scalar> best;
    for (const IntPoly& f : factors) {
        std::optional<Scalar> root;
        if (f.degree() == 1) {
            root = Scalar(Rat(-f.coeff(0), f.coeff(1)));
        } else {
            auto iv = isolate_largest_real_root(f);
            if (!iv) continue;
            if (ctx_hint && ctx_hint->minpoly() == f.primitive_part()) {
                auto tmp = AlgebraicContext::make(f, iv->lo, iv->hi);
                if (same_root(ctx_hint, tmp)) root = Scalar::generator(ctx_hint);
            }
            if (!root) root = Scalar::generator(AlgebraicContext::make(f, iv->lo, iv->hi));
        }
        if (root) {
            if (!best) best = root;
            else {
                // compare across possibly different contexts via enclosures
                Rat w(1, 16);
                for (;;) {
                    RootInterval a = best->enclosure(w), b = root->enclosure(w);
                    if (a.hi < b.lo) {
                        best = root;
                        break;
                    }
                    if (b.hi < a.lo) break;
                    if (best->context() && root->context() &&
                        best->context()->minpoly() == root->context()->minpoly() &&
                        same_root(best->context(), root->context()))
                        break;  // identical root
                    w /= 16;
                }
            }
        }
    }
    if (!best) throw Error("perron: no real root found");
    out.s = *best;
    out.right = eigenvector(A, out.s);
    // normalize sum = 1; for irreducible A the Perron eigenvector is simple
    Scalar total(0);
    for (const auto& v : out.right) total += v;
    if (total.is_zero()) throw Error("perron: degenerate eigenvector");
    Scalar inv = total.inverse();
    for (auto& v : out.right) v *= inv;
    int expected_sign = out.right[0].sign();
    if (expected_sign < 0)
        for (auto& v : out.right) v = -v;
    out.left = eigenvector(A.transpose(), out.s);
    Scalar dot(0);
    for (size_t i = 0; i < out.left.size(); ++i) dot += out.left[i] * out.right[i];
    if (dot.is_zero()) throw Error("perron: left/right eigenvectors orthogonal");
    Scalar dinv = dot.inverse();
    for (auto& v : out.left) v *= dinv;
    return out;
}

ScalingMeasure scaling_measure(const PLMap& map, const std::optional<MarkovData>& markov) {
    if (auto s = map.uniform_slope()) {
        return {MeasureWeights::lebesgue(), *s, MeasureRoute::uniform_lebesgue};
    }
    if (markov) {
        PerronData pd = perron_data(markov->incidence, map.context());
        for (const auto& w : pd.right)
            if (w.sign() <= 0)
                throw Error("scaling measure: non-positive Perron mass (map not transitive?)");
        return {MeasureWeights::on_cells(markov->partition, pd.right), pd.s,
                MeasureRoute::markov_perron};
    }
    throw UnsupportedClass(
        "scaling measure: unsupported input class (not uniformly piecewise linear and not "
        "Markov within bound); supply the uniform model directly");
}

PLMap uniformize(const PLMap& map, const MeasureWeights& mu, const Scalar& s) {
    for (const auto& m : mu.masses)
        if (m.sign() <= 0) throw Error("uniformize: measure lacks full support");
    // new breakpoints: h(a_i)
    std::vector<Scalar> new_bk;
    for (const auto& a : map.breakpoints()) new_bk.push_back(mu.cumulative(a));
    std::vector<PLBranch> new_br;
    for (int i = 0; i < map.branch_count(); ++i) {
        const PLBranch& br = map.branch(i);
        // cells of mu inside the branch domain
        std::vector<Scalar> cell_pts{map.domain_lo(i)};
        for (const auto& b : mu.bounds)
            if (map.domain_lo(i) < b && b < map.domain_hi(i)) cell_pts.push_back(b);
        cell_pts.push_back(map.domain_hi(i));
        // the uniformized branch through the first cell
        Scalar x0 = mu.cumulative(cell_pts[0]);
        Scalar y0 = mu.cumulative(br.apply(cell_pts[0]));
        Scalar slope = br.increasing() ? s : -s;
        PLBranch nb{slope, y0 - slope * x0};
        // every cell must agree with that affine map (otherwise mu was not a
        // scaling measure at cell resolution)
        for (size_t j = 0; j < cell_pts.size(); ++j) {
            Scalar hx = mu.cumulative(cell_pts[j]);
            Scalar hy = mu.cumulative(br.apply(cell_pts[j]));
            if (nb.apply(hx) != hy)
                throw Error("uniformize: measure is not scaled by the map at cell resolution");
        }
        new_br.push_back(nb);
    }
    PLMap out(std::move(new_bk), std::move(new_br));
    if (auto u = out.uniform_slope(); !u || *u != s)
        throw Error("uniformize: output slopes are not +-s");
    return out;
}

EntropyEstimate entropy_markov(const PLMap& map, int bound) {
    EntropyEstimate e;
    e.method = "markov_exact";
    auto det = detect_markov(map, bound);
    if (std::holds_alternative<NotMarkovWithinBound>(det)) {
        e.note = "not Markov within bound " + std::to_string(bound);
        return e;
    }
    const MarkovData& md = std::get<MarkovData>(det);
    PerronData pd = perron_data(md.incidence, map.context());
    e.s_exact = pd.s;
    RootInterval iv = pd.s.enclosure(Rat(1, 1000000000000L));
    e.lo = iv.lo;
    e.hi = iv.hi;
    e.certified = true;
    e.note = "h = ln s, s the Perron root of the incidence matrix";
    return e;
}

EntropyEstimate entropy_power_iteration(const PLMap& map, const Rat& tol, int maxiter) {
    EntropyEstimate e;
    e.method = "power_iteration";
    TransferContext T(map);
    StepFunction f = StepFunction::constant(Scalar(1));
    Rat best_lo(0), best_hi(-1);
    int stagnant = 0;
    constexpr int kStagnationWindow = 50;   // bracket stopped improving: give up
    constexpr size_t kCutCap = 2048;        // complexity cap on iterate cuts
    for (int it = 1; it <= maxiter; ++it) {
        StepFunction Lf = T.apply(f);
        // f must stay strictly positive for the Collatz-Wielandt bracket
        for (const auto& v : Lf.values())
            if (v.sign() <= 0) {
                e.lo = Rat(0);
                e.hi = Rat(0);
                e.certified = false;
                e.iterations = it;
                e.note = "iterate lost strict positivity (map not surjective); no bracket";
                return e;
            }
        // bracket: min and max of Lf/f over the common refinement
        std::optional<Scalar> mn, mx;
        {
            std::vector<Scalar> pts;
            pts.reserve(Lf.cuts().size() + f.cuts().size());
            std::merge(Lf.cuts().begin(), Lf.cuts().end(), f.cuts().begin(), f.cuts().end(),
                       std::back_inserter(pts),
                       [](const Scalar& a, const Scalar& b) { return a < b; });
            pts.erase(std::unique(pts.begin(), pts.end(),
                                  [](const Scalar& a, const Scalar& b) { return a == b; }),
                      pts.end());
            for (size_t k = 0; k + 1 < pts.size(); ++k) {
                Scalar r = Lf.value_right_of(pts[k]) / f.value_right_of(pts[k]);
                if (!mn || r < *mn) mn = r;
                if (!mx || r > *mx) mx = r;
            }
        }
        Rat lo = mn->enclosure(tol / 4).lo;
        Rat hi = mx->enclosure(tol / 4).hi;
        Rat old_width = best_hi - best_lo;
        if (best_hi < best_lo || hi - lo < old_width) {
            if (best_hi >= best_lo && old_width - (hi - lo) < tol / 64) ++stagnant;
            else stagnant = 0;
            best_lo = lo;
            best_hi = hi;
        } else {
            ++stagnant;
        }
        e.iterations = it;
        if (best_hi - best_lo <= tol) break;
        if (stagnant >= kStagnationWindow) {
            e.note = "bracket stopped improving (map may not be mixing); widest-known bracket";
            break;
        }
        if (Lf.cuts().size() > kCutCap) {
            e.note = "cut-complexity cap reached; widest-known bracket";
            break;
        }
        // renormalize to keep values small: divide by sup
        Scalar sup = Lf.sup_norm();
        f = Lf * sup.inverse();
    }
    e.lo = best_lo;
    e.hi = best_hi;
    e.certified = true;  // bracket is valid whenever a full-support scaling measure exists
    if (e.note.empty()) {
        if (best_hi - best_lo > tol)
            e.note = "maxiter exceeded; widest-known bracket returned";
        else
            e.note = "Collatz-Wielandt bracket on exp(h)";
    }
    return e;
}

CylinderCount entropy_cylinder_count(const PLMap& map, int depth) {
    if (depth < 1) throw Error("cylinder count: depth must be >= 1");
    // nonempty cylinders tracked as forward image intervals with positive length
    struct Node {
        Scalar lo, hi;
    };
    std::vector<Node> cur;
    for (int i = 0; i < map.branch_count(); ++i)
        cur.push_back({map.domain_lo(i), map.domain_hi(i)});  // depth-1 cylinders
    Int count = static_cast<long>(cur.size());
    for (int d = 2; d <= depth; ++d) {
        std::vector<Node> next;
        for (const auto& nd : cur) {
            const Scalar& a = nd.lo;
            const Scalar& b = nd.hi;
            // image under the branch containing [a,b]
            int br = map.branch_of_interior((a + b) / Scalar(2));
            Scalar ia = map.branch(br).apply(a);
            Scalar ib = map.branch(br).apply(b);
            if (ia > ib) std::swap(ia, ib);
            for (int j = 0; j < map.branch_count(); ++j) {
                Scalar lo = ia > map.domain_lo(j) ? ia : map.domain_lo(j);
                Scalar hi = ib < map.domain_hi(j) ? ib : map.domain_hi(j);
                if (lo < hi) next.push_back({lo, hi});
            }
        }
        cur = std::move(next);
        count = static_cast<long>(cur.size());
    }
    CylinderCount out;
    out.count = count;
    out.depth = depth;
    out.estimate = std::log(count.get_d()) / depth;
    return out;
}

}  // namespace dgim
