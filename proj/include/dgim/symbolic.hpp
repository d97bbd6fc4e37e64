#pragma once

#include "dgim/map_model.hpp"

#include <vector>

namespace dgim {

// Point of the disconnection X: a value in [0,1] plus a side tag. Minus/plus
// name the two copies of a split point; plain marks a point not known to need
// splitting. 0 carries no minus copy and 1 no plus copy (normalized on
// construction: 0 -> plus, 1 -> minus).
enum class Side { minus = -1, plain = 0, plus = 1 };

struct XPoint {
    Scalar value;
    Side side = Side::plain;

    XPoint() = default;
    XPoint(Scalar v, Side s);
    static XPoint at_minus(Scalar v) { return XPoint(std::move(v), Side::minus); }
    static XPoint at_plus(Scalar v) { return XPoint(std::move(v), Side::plus); }
    static XPoint at_plain(Scalar v) { return XPoint(std::move(v), Side::plain); }

    static int compare(const XPoint& a, const XPoint& b);
    bool operator==(const XPoint& o) const { return compare(*this, o) == 0; }
    bool operator<(const XPoint& o) const { return compare(*this, o) < 0; }
    bool operator<=(const XPoint& o) const { return compare(*this, o) <= 0; }
    std::string str() const;
};

// sigma, the lift of tau to X: branch selected by the side tag at partition
// points; decreasing branches swap sides. Plain points exactly at interior
// partition points are rejected (caller must split first).
XPoint sigma_apply(const PLMap& map, const XPoint& x);

// Piecewise-linear distribution: masses on a refinement 0 = d_0 < ... < d_r = 1,
// interpolated linearly inside each cell (against the uniformized coordinate).
struct MeasureWeights {
    std::vector<Scalar> bounds;  // r+1 ascending, first 0, last 1
    std::vector<Scalar> masses;  // r positive entries

    static MeasureWeights lebesgue();
    static MeasureWeights on_cells(std::vector<Scalar> bounds, std::vector<Scalar> masses);
    Scalar total() const;
    Scalar measure_interval(const Scalar& a, const Scalar& b) const;
    // h(x) = mu([0,x])
    Scalar cumulative(const Scalar& x) const;
};

// Element of C(X) with finitely many jumps, all at points produced by orbit
// or preimage computations: cut values 0 = c_0 < ... < c_m = 1 and one value
// per order interval I(c_{i-1}, c_i) = [c_{i-1}^+, c_i^-]. Canonical form
// merges adjacent equal values; equality is representation equality.
class StepFunction {
  public:
    StepFunction() : cuts_{Scalar(0), Scalar(1)}, values_{Scalar(0)} {}
    StepFunction(std::vector<Scalar> cuts, std::vector<Scalar> values);

    static StepFunction constant(const Scalar& v);
    // indicator of I(a,b), a <= b (empty when a == b)
    static StepFunction indicator(const Scalar& a, const Scalar& b);
    static StepFunction indicator(const IntervalSet& s);

    const std::vector<Scalar>& cuts() const { return cuts_; }
    const std::vector<Scalar>& values() const { return values_; }
    size_t pieces() const { return values_.size(); }

    bool is_zero() const;
    bool integer_valued() const;
    Scalar value_at(const XPoint& x) const;
    // value on the order interval immediately right of cut value c (c in [0,1))
    Scalar value_right_of(const Scalar& c) const;

    StepFunction operator+(const StepFunction& o) const;
    StepFunction operator-(const StepFunction& o) const;
    StepFunction operator*(const Scalar& k) const;
    StepFunction operator-() const { return *this * Scalar(-1); }
    bool operator==(const StepFunction& o) const {
        return cuts_ == o.cuts_ && values_ == o.values_;
    }
    bool operator!=(const StepFunction& o) const { return !(*this == o); }

    Scalar sup_norm() const;
    Scalar var() const;  // sum of |jumps| across interior cuts
    Scalar integrate(const MeasureWeights& mu) const;
    // max over pieces of |f - g| evaluated piecewise (sup distance)
    static Scalar sup_distance(const StepFunction& f, const StepFunction& g);

    // closure of {f != 0}, projected to [0,1]
    IntervalSet support() const;

    std::string str() const;

  private:
    void canonicalize();
    std::vector<Scalar> cuts_;    // size m+1
    std::vector<Scalar> values_;  // size m
    friend StepFunction zip_with(const StepFunction&, const StepFunction&,
                                 Scalar (*)(const Scalar&, const Scalar&));
};

// common-refinement combination
StepFunction zip_with(const StepFunction& f, const StepFunction& g,
                      Scalar (*op)(const Scalar&, const Scalar&));

}  // namespace dgim
