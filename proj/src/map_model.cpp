#include "dgim/map_model.hpp"

#include <algorithm>
#include <sstream>

namespace dgim {

IntervalSet IntervalSet::single(const Scalar& a, const Scalar& b) {
    IntervalSet s;
    s.add(a, b);
    return s;
}

void IntervalSet::add(const Scalar& a, const Scalar& b) {
    if (a > b) throw Error("interval with lo > hi");
    iv.emplace_back(a, b);
    normalize();
}

void IntervalSet::normalize() {
    std::sort(iv.begin(), iv.end(), [](const auto& x, const auto& y) {
        int c = Scalar::compare(x.first, y.first);
        if (c != 0) return c < 0;
        return Scalar::compare(x.second, y.second) < 0;
    });
    std::vector<std::pair<Scalar, Scalar>> out;
    for (auto& p : iv) {
        if (!out.empty() && p.first <= out.back().second) {
            if (p.second > out.back().second) out.back().second = p.second;
        } else {
            out.push_back(p);
        }
    }
    iv = std::move(out);
}

Scalar IntervalSet::total_length() const {
    Scalar t(0);
    for (const auto& p : iv) t += p.second - p.first;
    return t;
}

bool IntervalSet::contains_point(const Scalar& x) const {
    for (const auto& p : iv)
        if (p.first <= x && x <= p.second) return true;
    return false;
}

bool IntervalSet::contains(const IntervalSet& other) const {
    for (const auto& q : other.iv) {
        bool ok = false;
        for (const auto& p : iv)
            if (p.first <= q.first && q.second <= p.second) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

bool IntervalSet::operator==(const IntervalSet& o) const {
    if (iv.size() != o.iv.size()) return false;
    for (size_t i = 0; i < iv.size(); ++i)
        if (iv[i].first != o.iv[i].first || iv[i].second != o.iv[i].second) return false;
    return true;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
    IntervalSet r = *this;
    r.iv.insert(r.iv.end(), o.iv.begin(), o.iv.end());
    r.normalize();
    return r;
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
    IntervalSet r;
    for (const auto& p : iv)
        for (const auto& q : o.iv) {
            Scalar lo = p.first > q.first ? p.first : q.first;
            Scalar hi = p.second < q.second ? p.second : q.second;
            if (lo <= hi) r.iv.emplace_back(lo, hi);
        }
    r.normalize();
    return r;
}

IntervalSet IntervalSet::complement() const {
    IntervalSet r;
    Scalar cur(0);
    for (const auto& p : iv) {
        if (p.first > cur) r.iv.emplace_back(cur, p.first);
        if (p.second > cur) cur = p.second;
    }
    if (cur < Scalar(1)) r.iv.emplace_back(cur, Scalar(1));
    r.normalize();
    return r;
}

bool IntervalSet::complement_has_interior() const {
    IntervalSet c = complement();
    for (const auto& p : c.iv)
        if (p.first < p.second) return true;
    return false;
}

std::string IntervalSet::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < iv.size(); ++i) {
        if (i) os << " u ";
        os << "[" << iv[i].first.str() << ", " << iv[i].second.str() << "]";
    }
    if (iv.empty()) os << "{}";
    return os.str();
}

PLMap::PLMap(std::vector<Scalar> breakpoints, std::vector<PLBranch> branches)
    : bk_(std::move(breakpoints)), br_(std::move(branches)) {
    validate();
}

void PLMap::validate() {
    if (bk_.size() < 2 || br_.size() + 1 != bk_.size())
        throw Error("map: need n+1 breakpoints for n branches");
    if (bk_.front() != Scalar(0) || bk_.back() != Scalar(1))
        throw Error("map: breakpoints must start at 0 and end at 1");
    // single-generator policy: collect the one context used by any datum
    auto absorb = [&](const Scalar& x) {
        if (x.context()) {
            if (!ctx_) ctx_ = x.context();
            else if (!same_root(ctx_, x.context()))
                throw ContextMismatch("map mixes unrelated algebraic numbers");
        }
    };
    for (const auto& b : bk_) absorb(b);
    for (const auto& b : br_) {
        absorb(b.slope);
        absorb(b.intercept);
    }
    for (size_t i = 0; i + 1 < bk_.size(); ++i)
        if (!(bk_[i] < bk_[i + 1])) throw Error("map: breakpoints not strictly increasing");
    Scalar zero(0), one(1);
    for (size_t i = 0; i < br_.size(); ++i) {
        if (br_[i].slope.is_zero()) throw Error("map: zero slope");
        Scalar lo = br_[i].apply(bk_[i]), hi = br_[i].apply(bk_[i + 1]);
        if (lo > hi) std::swap(lo, hi);
        if (lo < zero || hi > one) throw Error("map: branch image escapes [0,1]");
    }
    // maximality: interior breakpoints must be folds or jumps
    for (size_t i = 1; i + 1 < bk_.size(); ++i) {
        const PLBranch& l = br_[i - 1];
        const PLBranch& r = br_[i];
        bool continuous_here = l.apply(bk_[i]) == r.apply(bk_[i]);
        if (continuous_here && l.increasing() == r.increasing())
            throw Error("map: partition point " + bk_[i].str() + " is not a fold or jump");
    }
}

PLMap PLMap::tent(const Scalar& s) {
    if (!(s > Scalar(1)) || s > Scalar(2)) throw Error("tent: need 1 < s <= 2");
    Scalar c = Scalar(1) - s.inverse();
    // increasing through (c, 1), then decreasing through (c, 1)
    PLBranch up{s, Scalar(1) - s * c};
    PLBranch down{-s, Scalar(1) + s * c};
    return PLMap({Scalar(0), c, Scalar(1)}, {up, down});
}

PLMap PLMap::beta_map(const Scalar& b) {
    if (!(b > Scalar(1))) throw Error("beta: need beta > 1");
    Int n = b.floor();
    bool integral = (Scalar(n) == b);
    if (integral) n -= 1;  // degenerate last interval dropped; left limits cover 1
    std::vector<Scalar> bk{Scalar(0)};
    std::vector<PLBranch> brs;
    Scalar binv = b.inverse();
    for (Int k(1); k <= n; k += 1) {
        bk.push_back(Scalar(k) * binv);
        brs.push_back(PLBranch{b, Scalar(Int(1 - k))});
    }
    bk.push_back(Scalar(1));
    brs.push_back(PLBranch{b, Scalar(Int(-n))});
    return PLMap(std::move(bk), std::move(brs));
}

PLMap PLMap::uniform_pl(const Scalar& s, std::vector<Scalar> breakpoints,
                        std::vector<bool> increasing, int anchor_branch, const Scalar& anchor_x,
                        const Scalar& anchor_y) {
    if (s.sign() <= 0) throw Error("uniform_pl: slope magnitude must be positive");
    if (breakpoints.size() != increasing.size() + 1)
        throw Error("uniform_pl: need one direction per branch");
    size_t n = increasing.size();
    if (anchor_branch < 0 || static_cast<size_t>(anchor_branch) >= n)
        throw Error("uniform_pl: bad anchor branch");
    std::vector<PLBranch> brs(n);
    for (size_t i = 0; i < n; ++i) brs[i].slope = increasing[i] ? s : -s;
    brs[static_cast<size_t>(anchor_branch)].intercept =
        anchor_y - brs[static_cast<size_t>(anchor_branch)].slope * anchor_x;
    // chain intercepts by continuity at shared breakpoints
    for (size_t i = static_cast<size_t>(anchor_branch); i + 1 < n; ++i) {
        Scalar v = brs[i].apply(breakpoints[i + 1]);
        brs[i + 1].intercept = v - brs[i + 1].slope * breakpoints[i + 1];
    }
    for (size_t i = static_cast<size_t>(anchor_branch); i > 0; --i) {
        Scalar v = brs[i].apply(breakpoints[i]);
        brs[i - 1].intercept = v - brs[i - 1].slope * breakpoints[i];
    }
    return PLMap(std::move(breakpoints), std::move(brs));
}

std::optional<int> PLMap::breakpoint_index(const Scalar& x) const {
    for (size_t i = 0; i < bk_.size(); ++i)
        if (bk_[i] == x) return static_cast<int>(i);
    return std::nullopt;
}

int PLMap::branch_of_interior(const Scalar& x) const {
    for (size_t i = 0; i < br_.size(); ++i)
        if (bk_[i] < x && x < bk_[i + 1]) return static_cast<int>(i);
    throw Error("point is a partition point or outside [0,1]");
}

std::vector<Scalar> PLMap::hat_image_point(const Scalar& x) const {
    if (x.sign() < 0 || x > Scalar(1)) throw Error("point outside [0,1]");
    auto bi = breakpoint_index(x);
    std::vector<Scalar> out;
    if (!bi) {
        out.push_back(br_[static_cast<size_t>(branch_of_interior(x))].apply(x));
        return out;
    }
    int i = *bi;
    if (i > 0) out.push_back(br_[static_cast<size_t>(i - 1)].apply(x));
    if (i < branch_count()) {
        Scalar v = br_[static_cast<size_t>(i)].apply(x);
        if (out.empty() || out[0] != v) out.push_back(v);
    }
    return out;
}

IntervalSet PLMap::branch_image(int i) const {
    Scalar lo = br_[static_cast<size_t>(i)].apply(bk_[static_cast<size_t>(i)]);
    Scalar hi = br_[static_cast<size_t>(i)].apply(bk_[static_cast<size_t>(i) + 1]);
    if (lo > hi) std::swap(lo, hi);
    return IntervalSet::single(lo, hi);
}

IntervalSet PLMap::hat_image_set(const IntervalSet& s) const {
    IntervalSet out;
    for (int i = 0; i < branch_count(); ++i) {
        IntervalSet dom = IntervalSet::single(domain_lo(i), domain_hi(i));
        IntervalSet part = s.intersect(dom);
        for (const auto& p : part.iv) {
            Scalar a = br_[static_cast<size_t>(i)].apply(p.first);
            Scalar b = br_[static_cast<size_t>(i)].apply(p.second);
            if (a > b) std::swap(a, b);
            out.iv.emplace_back(a, b);
        }
    }
    out.normalize();
    return out;
}

IntervalSet PLMap::hat_preimage_set(const IntervalSet& s) const {
    IntervalSet out;
    for (int i = 0; i < branch_count(); ++i) {
        IntervalSet img = branch_image(i);
        IntervalSet part = s.intersect(img);
        for (const auto& p : part.iv) {
            Scalar a = br_[static_cast<size_t>(i)].invert(p.first);
            Scalar b = br_[static_cast<size_t>(i)].invert(p.second);
            if (a > b) std::swap(a, b);
            out.iv.emplace_back(a, b);
        }
    }
    out.normalize();
    return out;
}

bool PLMap::is_continuous() const {
    for (size_t i = 1; i + 1 < bk_.size(); ++i)
        if (br_[i - 1].apply(bk_[i]) != br_[i].apply(bk_[i])) return false;
    return true;
}

Classification PLMap::classify() const {
    Classification c;
    c.continuous = is_continuous();
    IntervalSet img;
    for (int i = 0; i < branch_count(); ++i) img = img.unite(branch_image(i));
    c.surjective_hat = (img == IntervalSet::full());
    c.essentially_injective = true;
    for (int i = 0; i < branch_count() && c.essentially_injective; ++i)
        for (int j = i + 1; j < branch_count(); ++j) {
            IntervalSet overlap = branch_image(i).intersect(branch_image(j));
            for (const auto& p : overlap.iv)
                if (p.first < p.second) {
                    c.essentially_injective = false;
                    break;
                }
            if (!c.essentially_injective) break;
        }
    return c;
}

std::optional<Scalar> PLMap::uniform_slope() const {
    Scalar s = br_[0].slope.abs();
    for (const auto& b : br_)
        if (b.slope.abs() != s) return std::nullopt;
    return s;
}

Scalar PLMap::min_abs_slope() const {
    Scalar m = br_[0].slope.abs();
    for (const auto& b : br_) {
        Scalar v = b.slope.abs();
        if (v < m) m = v;
    }
    return m;
}

bool PLMap::is_unimodal() const {
    return branch_count() == 2 && is_continuous() && br_[0].increasing() && !br_[1].increasing();
}

}  // namespace dgim
