#include "dgim/transfer.hpp"

#include <algorithm>

namespace dgim {

StepFunction TransferContext::apply(const StepFunction& f) const {
    StepFunction out = StepFunction::constant(Scalar(0));
    const auto& cuts = f.cuts();
    for (int i = 0; i < map_.branch_count(); ++i) {
        const Scalar& a = map_.domain_lo(i);
        const Scalar& b = map_.domain_hi(i);
        const PLBranch& br = map_.branch(i);
        // restriction cuts a = d_0 < ... < d_k = b
        std::vector<Scalar> d{a};
        for (const auto& c : cuts)
            if (a < c && c < b) d.push_back(c);
        d.push_back(b);
        std::vector<Scalar> vals(d.size() - 1);
        for (size_t j = 0; j + 1 < d.size(); ++j) vals[j] = f.value_right_of(d[j]);
        // push forward through the affine branch
        std::vector<Scalar> e(d.size());
        for (size_t j = 0; j < d.size(); ++j) e[j] = br.apply(d[j]);
        if (!br.increasing()) {
            std::reverse(e.begin(), e.end());
            std::reverse(vals.begin(), vals.end());
        }
        // assemble the branch contribution as a step function on [0,1]
        std::vector<Scalar> pc{Scalar(0)};
        std::vector<Scalar> pv;
        if (e.front().sign() > 0) {
            pc.push_back(e.front());
            pv.push_back(Scalar(0));
        }
        for (size_t j = 0; j + 1 < e.size(); ++j) {
            pv.push_back(vals[j]);
            if (j + 2 < e.size()) pc.push_back(e[j + 1]);
        }
        if (e.back() < Scalar(1)) {
            pc.push_back(e.back());
            pv.push_back(Scalar(0));
        }
        pc.push_back(Scalar(1));
        out = out + StepFunction(std::move(pc), std::move(pv));
    }
    return out;
}

StepFunction TransferContext::apply_power(StepFunction f, int n) const {
    for (int i = 0; i < n; ++i) f = apply(f);
    return f;
}

StepFunction TransferContext::pf_apply(const StepFunction& f, const Scalar& s) const {
    if (s.sign() <= 0) throw Error("pf_apply: s must be positive");
    return apply(f) * s.inverse();
}

namespace {

// expand h on the partition given by points (which must refine h's cuts)
std::vector<Scalar> coords_on_partition(const StepFunction& h, const std::vector<Scalar>& pts) {
    std::vector<Scalar> v(pts.size() - 1);
    for (size_t i = 0; i + 1 < pts.size(); ++i) v[i] = h.value_right_of(pts[i]);
    return v;
}

bool cuts_subset_of(const StepFunction& h, const std::vector<Scalar>& pts) {
    for (const auto& c : h.cuts()) {
        bool found = false;
        for (const auto& p : pts)
            if (p == c) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

}  // namespace

std::optional<IntPoly> express_in_transfer_powers(const TransferContext& ctx,
                                                  const StepFunction& h, int maxdeg) {
    // basis psi_j = L^j(1); solve sum x_j psi_j = h exactly over Q, requiring
    // integer coefficients. Gaussian elimination on the common refinement.
    std::vector<StepFunction> basis;
    StepFunction cur = StepFunction::constant(Scalar(1));
    for (int j = 0; j <= maxdeg; ++j) {
        basis.push_back(cur);
        // try to solve with the current basis
        std::vector<Scalar> pts;  // refinement of all cuts
        {
            std::vector<Scalar> all;
            for (const auto& b : basis)
                for (const auto& c : b.cuts()) all.push_back(c);
            for (const auto& c : h.cuts()) all.push_back(c);
            std::sort(all.begin(), all.end(),
                      [](const Scalar& x, const Scalar& y) { return x < y; });
            for (const auto& c : all)
                if (pts.empty() || pts.back() != c) pts.push_back(c);
        }
        size_t rows = pts.size() - 1, cols = basis.size();
        std::vector<std::vector<Scalar>> M(rows, std::vector<Scalar>(cols + 1, Scalar(0)));
        for (size_t cidx = 0; cidx < cols; ++cidx) {
            auto col = coords_on_partition(basis[cidx], pts);
            for (size_t r = 0; r < rows; ++r) M[r][cidx] = col[r];
        }
        auto rhs = coords_on_partition(h, pts);
        for (size_t r = 0; r < rows; ++r) M[r][cols] = rhs[r];
        // eliminate
        size_t rank = 0;
        std::vector<int> pivot_of_col(cols, -1);
        for (size_t c = 0; c < cols && rank < rows; ++c) {
            size_t piv = rank;
            while (piv < rows && M[piv][c].is_zero()) ++piv;
            if (piv == rows) continue;
            std::swap(M[piv], M[rank]);
            Scalar inv = M[rank][c].inverse();
            for (size_t k = c; k <= cols; ++k) M[rank][k] = M[rank][k] * inv;
            for (size_t r2 = 0; r2 < rows; ++r2) {
                if (r2 == rank || M[r2][c].is_zero()) continue;
                Scalar f = M[r2][c];
                for (size_t k = c; k <= cols; ++k) M[r2][k] = M[r2][k] - f * M[rank][k];
            }
            pivot_of_col[c] = static_cast<int>(rank);
            ++rank;
        }
        bool consistent = true;
        for (size_t r = rank; r < rows; ++r)
            if (!M[r][cols].is_zero()) {
                consistent = false;
                break;
            }
        if (consistent) {
            std::vector<Int> coef(cols, Int(0));
            bool integral = true;
            for (size_t c = 0; c < cols && integral; ++c) {
                if (pivot_of_col[c] < 0) continue;  // free variable: take 0
                const Scalar& v = M[static_cast<size_t>(pivot_of_col[c])][cols];
                if (!v.is_integer()) integral = false;
                else coef[c] = v.integer();
            }
            if (integral) {
                IntPoly p = IntPoly(std::move(coef));
                // verify (free variables may have made the solve non-unique)
                StepFunction check = StepFunction::constant(Scalar(0));
                for (size_t c2 = 0; c2 < basis.size(); ++c2) {
                    int deg = static_cast<int>(c2);
                    if (p.coeff(deg) != 0) check = check + basis[c2] * Scalar(p.coeff(deg));
                }
                if (check == h) return p;
            }
        }
        cur = ctx.apply(cur);
    }
    return std::nullopt;
}

EquivalenceResult dg_equivalent(const TransferContext& ctx, const StepFunction& f,
                                const StepFunction& g, int bound, const DgHooks* hooks) {
    if (!f.integer_valued() || !g.integer_valued())
        throw Error("dg_equivalent: inputs must be integer-valued");
    StepFunction h = f - g;
    StepFunction it = h;
    for (int n = 0; n <= bound; ++n) {
        if (it.is_zero()) return {EqVerdict::equal, n, "L^n(f-g) = 0"};
        if (n < bound) it = ctx.apply(it);
    }
    if (hooks) {
        if (hooks->state_measure) {
            Scalar w = h.integrate(*hooks->state_measure);
            if (!w.is_zero())
                return {EqVerdict::distinct, -1, "scaled state is nonzero on f-g"};
        }
        if (hooks->markov) {
            const auto& [pts, A] = *hooks->markov;
            if (cuts_subset_of(h, pts)) {
                auto coords = coords_on_partition(h, pts);
                std::vector<Int> v(coords.size());
                bool ok = true;
                for (size_t i = 0; i < coords.size(); ++i) {
                    if (!coords[i].is_integer()) { ok = false; break; }
                    v[i] = coords[i].integer();
                }
                if (ok) {
                    IMat Aq = A.pow(static_cast<unsigned>(A.rows()));
                    auto w = row_times_mat(v, Aq);
                    bool zero = true;
                    for (const auto& x : w)
                        if (x != 0) { zero = false; break; }
                    if (!zero)
                        return {EqVerdict::distinct, -1,
                                "kernel chain of the incidence matrix never kills f-g"};
                }
            }
        }
        if (hooks->laurent_cyclic) {
            auto p = express_in_transfer_powers(ctx, h, std::min(bound, 24));
            if (p && !p->is_zero())
                return {EqVerdict::distinct, -1,
                        "f-g = p(L)1 with p != 0 in a free cyclic module"};
        }
    }
    return {EqVerdict::undetermined, -1, "bound " + std::to_string(bound) + " exhausted"};
}

}  // namespace dgim
