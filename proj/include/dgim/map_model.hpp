#pragma once

#include "dgim/scalar.hpp"

#include <optional>
#include <vector>

namespace dgim {

// Finite union of closed subintervals of [0,1], pairwise disjoint and sorted;
// touching intervals are merged.
struct IntervalSet {
    std::vector<std::pair<Scalar, Scalar>> iv;

    IntervalSet() = default;
    static IntervalSet single(const Scalar& a, const Scalar& b);
    static IntervalSet full() { return single(Scalar(0), Scalar(1)); }

    void add(const Scalar& a, const Scalar& b);  // keeps normal form
    void normalize();
    bool empty() const { return iv.empty(); }
    Scalar total_length() const;
    bool contains_point(const Scalar& x) const;
    bool contains(const IntervalSet& other) const;
    bool operator==(const IntervalSet& o) const;
    IntervalSet unite(const IntervalSet& o) const;
    IntervalSet intersect(const IntervalSet& o) const;
    // closure of [0,1] \ this
    IntervalSet complement() const;
    bool complement_has_interior() const;
    std::string str() const;
};

struct PLBranch {
    Scalar slope;      // nonzero
    Scalar intercept;  // value = slope*x + intercept
    bool increasing() const { return slope.sign() > 0; }
    Scalar apply(const Scalar& x) const { return slope * x + intercept; }
    Scalar invert(const Scalar& y) const { return (y - intercept) / slope; }
};

struct Classification {
    bool continuous = false;
    bool surjective_hat = false;
    bool essentially_injective = false;
};

// Piecewise linear interval map: breakpoints 0 = a_0 < ... < a_n = 1 and one
// affine branch per partition interval [a_{i-1}, a_i]. Values at partition
// points are never stored; the multivalued extension is the interface.
class PLMap {
  public:
    PLMap(std::vector<Scalar> breakpoints, std::vector<PLBranch> branches);

    static PLMap tent(const Scalar& s);      // 1 < s <= 2
    static PLMap beta_map(const Scalar& b);  // b > 1
    // continuous uniformly piecewise linear map: slope magnitudes all s,
    // directions given per branch, one anchor point fixes the intercepts
    static PLMap uniform_pl(const Scalar& s, std::vector<Scalar> breakpoints,
                            std::vector<bool> increasing, int anchor_branch,
                            const Scalar& anchor_x, const Scalar& anchor_y);
    static PLMap explicit_map(std::vector<Scalar> breakpoints, std::vector<PLBranch> branches) {
        return PLMap(std::move(breakpoints), std::move(branches));
    }

    int branch_count() const { return static_cast<int>(br_.size()); }
    const std::vector<Scalar>& breakpoints() const { return bk_; }
    const PLBranch& branch(int i) const { return br_[static_cast<size_t>(i)]; }
    const Scalar& domain_lo(int i) const { return bk_[static_cast<size_t>(i)]; }
    const Scalar& domain_hi(int i) const { return bk_[static_cast<size_t>(i) + 1]; }

    // index of the breakpoint equal to x, if any
    std::optional<int> breakpoint_index(const Scalar& x) const;
    // branch whose open domain contains x (requires x not a breakpoint)
    int branch_of_interior(const Scalar& x) const;

    // left/right limit values of tau at x, deduplicated
    std::vector<Scalar> hat_image_point(const Scalar& x) const;
    IntervalSet hat_image_set(const IntervalSet& s) const;
    IntervalSet hat_preimage_set(const IntervalSet& s) const;
    IntervalSet branch_image(int i) const;

    Classification classify() const;
    bool is_continuous() const;
    // all slope magnitudes equal; returns that magnitude
    std::optional<Scalar> uniform_slope() const;
    Scalar min_abs_slope() const;
    bool is_unimodal() const;  // two branches, continuous, up then down

    // shared algebraic context of all map data (null when everything is rational)
    const ContextPtr& context() const { return ctx_; }

  private:
    void validate();
    std::vector<Scalar> bk_;
    std::vector<PLBranch> br_;
    ContextPtr ctx_;
};

}  // namespace dgim
