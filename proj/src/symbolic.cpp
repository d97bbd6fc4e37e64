#include "dgim/symbolic.hpp"

#include <algorithm>
#include <sstream>

namespace dgim {

XPoint::XPoint(Scalar v, Side s) : value(std::move(v)), side(s) {
    if (value.sign() < 0 || value > Scalar(1)) throw Error("X point outside [0,1]");
    if (value.is_zero()) side = Side::plus;
    else if (value == Scalar(1)) side = Side::minus;
}

int XPoint::compare(const XPoint& a, const XPoint& b) {
    int c = Scalar::compare(a.value, b.value);
    if (c != 0) return c;
    return static_cast<int>(a.side) - static_cast<int>(b.side);
}

std::string XPoint::str() const {
    std::string s = value.str();
    if (value.is_zero() || value == Scalar(1)) return s;
    if (side == Side::minus) return s + "-";
    if (side == Side::plus) return s + "+";
    return s;
}

XPoint sigma_apply(const PLMap& map, const XPoint& x) {
    auto bi = map.breakpoint_index(x.value);
    int branch;
    if (bi) {
        int i = *bi;
        if (i == 0) branch = 0;
        else if (i == map.branch_count()) branch = map.branch_count() - 1;
        else if (x.side == Side::minus) branch = i - 1;
        else if (x.side == Side::plus) branch = i;
        else throw Error("plain point at a partition point: split it first");
    } else {
        branch = map.branch_of_interior(x.value);
    }
    const PLBranch& b = map.branch(branch);
    Scalar y = b.apply(x.value);
    Side s = x.side;
    if (!b.increasing()) s = static_cast<Side>(-static_cast<int>(s));
    return XPoint(std::move(y), s);
}

MeasureWeights MeasureWeights::lebesgue() {
    MeasureWeights m;
    m.bounds = {Scalar(0), Scalar(1)};
    m.masses = {Scalar(1)};
    return m;
}

MeasureWeights MeasureWeights::on_cells(std::vector<Scalar> bounds, std::vector<Scalar> masses) {
    MeasureWeights m;
    m.bounds = std::move(bounds);
    m.masses = std::move(masses);
    if (m.bounds.size() != m.masses.size() + 1) throw Error("measure: bounds/masses mismatch");
    if (m.bounds.front() != Scalar(0) || m.bounds.back() != Scalar(1))
        throw Error("measure: cells must cover [0,1]");
    for (size_t i = 0; i + 1 < m.bounds.size(); ++i)
        if (!(m.bounds[i] < m.bounds[i + 1])) throw Error("measure: cells not increasing");
    for (const auto& w : m.masses)
        if (w.sign() < 0) throw Error("measure: negative mass");
    return m;
}

Scalar MeasureWeights::total() const {
    Scalar t(0);
    for (const auto& w : masses) t += w;
    return t;
}

Scalar MeasureWeights::cumulative(const Scalar& x) const {
    if (x.sign() <= 0) return Scalar(0);
    Scalar acc(0);
    for (size_t i = 0; i < masses.size(); ++i) {
        if (x >= bounds[i + 1]) {
            acc += masses[i];
            continue;
        }
        if (x > bounds[i])
            acc += masses[i] * (x - bounds[i]) / (bounds[i + 1] - bounds[i]);
        break;
    }
    return acc;
}

Scalar MeasureWeights::measure_interval(const Scalar& a, const Scalar& b) const {
    return cumulative(b) - cumulative(a);
}

StepFunction::StepFunction(std::vector<Scalar> cuts, std::vector<Scalar> values)
    : cuts_(std::move(cuts)), values_(std::move(values)) {
    if (cuts_.size() != values_.size() + 1 || values_.empty())
        throw Error("step function: cuts/values mismatch");
    if (cuts_.front() != Scalar(0) || cuts_.back() != Scalar(1))
        throw Error("step function: cuts must start at 0 and end at 1");
    for (size_t i = 0; i + 1 < cuts_.size(); ++i)
        if (!(cuts_[i] < cuts_[i + 1])) throw Error("step function: cuts not increasing");
    canonicalize();
}

void StepFunction::canonicalize() {
    std::vector<Scalar> nc{cuts_.front()};
    std::vector<Scalar> nv{values_.front()};
    for (size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] == nv.back()) {
            // merge: drop the cut
        } else {
            nc.push_back(cuts_[i]);
            nv.push_back(values_[i]);
        }
    }
    nc.push_back(cuts_.back());
    cuts_ = std::move(nc);
    values_ = std::move(nv);
}

StepFunction StepFunction::constant(const Scalar& v) {
    return StepFunction({Scalar(0), Scalar(1)}, {v});
}

StepFunction StepFunction::indicator(const Scalar& a, const Scalar& b) {
    if (a > b) throw Error("indicator: a > b");
    if (a == b) return constant(Scalar(0));
    std::vector<Scalar> cuts{Scalar(0)};
    std::vector<Scalar> vals;
    if (a.sign() > 0) {
        cuts.push_back(a);
        vals.push_back(Scalar(0));
    }
    vals.push_back(Scalar(1));
    if (b < Scalar(1)) {
        cuts.push_back(b);
        vals.push_back(Scalar(0));
    }
    cuts.push_back(Scalar(1));
    return StepFunction(std::move(cuts), std::move(vals));
}

StepFunction StepFunction::indicator(const IntervalSet& s) {
    StepFunction f = constant(Scalar(0));
    for (const auto& p : s.iv)
        if (p.first < p.second) f = f + indicator(p.first, p.second);
    return f;
}

bool StepFunction::is_zero() const {
    for (const auto& v : values_)
        if (!v.is_zero()) return false;
    return true;
}

bool StepFunction::integer_valued() const {
    for (const auto& v : values_)
        if (!v.is_integer()) return false;
    return true;
}

Scalar StepFunction::value_right_of(const Scalar& c) const {
    // gap containing (c, c+eps): first i with cuts_[i] <= c < cuts_[i+1]  (or c in gap)
    size_t lo = 0, hi = cuts_.size() - 1;
    while (lo + 1 < hi) {
        size_t mid = (lo + hi) / 2;
        if (cuts_[mid] <= c) lo = mid;
        else hi = mid;
    }
    return values_[lo];
}

Scalar StepFunction::value_at(const XPoint& x) const {
    for (size_t i = 1; i + 1 < cuts_.size(); ++i) {
        if (cuts_[i] == x.value) {
            if (x.side == Side::minus) return values_[i - 1];
            if (x.side == Side::plus) return values_[i];
            if (values_[i - 1] == values_[i]) return values_[i];
            throw Error("ambiguous plain point at a step-function cut");
        }
    }
    if (x.value == Scalar(1)) return values_.back();
    return value_right_of(x.value);
}

StepFunction zip_with(const StepFunction& f, const StepFunction& g,
                      Scalar (*op)(const Scalar&, const Scalar&)) {
    std::vector<Scalar> cuts;
    size_t i = 0, j = 0;
    while (i < f.cuts_.size() || j < g.cuts_.size()) {
        if (j >= g.cuts_.size()) cuts.push_back(f.cuts_[i++]);
        else if (i >= f.cuts_.size()) cuts.push_back(g.cuts_[j++]);
        else {
            int c = Scalar::compare(f.cuts_[i], g.cuts_[j]);
            if (c <= 0) {
                cuts.push_back(f.cuts_[i++]);
                if (c == 0) ++j;
            } else {
                cuts.push_back(g.cuts_[j++]);
            }
        }
    }
    std::vector<Scalar> vals;
    size_t fi = 0, gi = 0;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        while (fi + 1 < f.values_.size() && f.cuts_[fi + 1] <= cuts[k]) ++fi;
        while (gi + 1 < g.values_.size() && g.cuts_[gi + 1] <= cuts[k]) ++gi;
        vals.push_back(op(f.values_[fi], g.values_[gi]));
    }
    return StepFunction(std::move(cuts), std::move(vals));
}

StepFunction StepFunction::operator+(const StepFunction& o) const {
    return zip_with(*this, o, +[](const Scalar& a, const Scalar& b) { return a + b; });
}

StepFunction StepFunction::operator-(const StepFunction& o) const {
    return zip_with(*this, o, +[](const Scalar& a, const Scalar& b) { return a - b; });
}

StepFunction StepFunction::operator*(const Scalar& k) const {
    std::vector<Scalar> vals(values_.size());
    for (size_t i = 0; i < values_.size(); ++i) vals[i] = values_[i] * k;
    return StepFunction(cuts_, std::move(vals));
}

Scalar StepFunction::sup_norm() const {
    Scalar m(0);
    for (const auto& v : values_) {
        Scalar a = v.abs();
        if (a > m) m = a;
    }
    return m;
}

Scalar StepFunction::var() const {
    Scalar t(0);
    for (size_t i = 1; i < values_.size(); ++i) t += (values_[i] - values_[i - 1]).abs();
    return t;
}

Scalar StepFunction::integrate(const MeasureWeights& mu) const {
    Scalar t(0);
    for (size_t i = 0; i < values_.size(); ++i) {
        if (values_[i].is_zero()) continue;
        t += values_[i] * mu.measure_interval(cuts_[i], cuts_[i + 1]);
    }
    return t;
}

Scalar StepFunction::sup_distance(const StepFunction& f, const StepFunction& g) {
    return (f - g).sup_norm();
}

IntervalSet StepFunction::support() const {
    IntervalSet s;
    for (size_t i = 0; i < values_.size(); ++i)
        if (!values_[i].is_zero()) s.iv.emplace_back(cuts_[i], cuts_[i + 1]);
    s.normalize();
    return s;
}

std::string StepFunction::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < values_.size(); ++i) {
        if (i) os << ", ";
        os << values_[i].str() << " on I(" << cuts_[i].str() << "," << cuts_[i + 1].str() << ")";
    }
    return os.str();
}

}  // namespace dgim
