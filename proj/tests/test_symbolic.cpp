#include "dgim/symbolic.hpp"

#include <doctest.h>

#include <random>

using namespace dgim;

namespace {

Scalar phi() {
    static ContextPtr ctx = AlgebraicContext::make(IntPoly{-1, -1, 1}, Rat(1), Rat(2));
    return Scalar::generator(ctx);
}

}  // namespace

TEST_CASE("X points are totally ordered with minus < plain < plus") {
    XPoint a = XPoint::at_minus(Scalar(Rat(1, 2)));
    XPoint b = XPoint::at_plain(Scalar(Rat(1, 2)));
    XPoint c = XPoint::at_plus(Scalar(Rat(1, 2)));
    XPoint d = XPoint::at_plain(Scalar(Rat(1, 3)));
    CHECK(a < b);
    CHECK(b < c);
    CHECK(d < a);
    // 0 has no minus copy, 1 no plus copy
    CHECK(XPoint::at_minus(Scalar(0)) == XPoint::at_plus(Scalar(0)));
    CHECK(XPoint::at_plus(Scalar(1)) == XPoint::at_minus(Scalar(1)));
}

TEST_CASE("sigma applies the branch selected by the side tag") {
    PLMap t2 = PLMap::tent(Scalar(2));
    // both sides of the peak land on 1
    CHECK(sigma_apply(t2, XPoint::at_minus(Scalar(Rat(1, 2)))).value == Scalar(1));
    CHECK(sigma_apply(t2, XPoint::at_plus(Scalar(Rat(1, 2)))).value == Scalar(1));
    CHECK_THROWS_AS(sigma_apply(t2, XPoint::at_plain(Scalar(Rat(1, 2)))), Error);

    PLMap b = PLMap::beta_map(phi());
    Scalar inv = phi().inverse();
    CHECK(sigma_apply(b, XPoint::at_minus(inv)).value == Scalar(1));
    CHECK(sigma_apply(b, XPoint::at_plus(inv)).value == Scalar(0));

    PLMap ident = PLMap::explicit_map({Scalar(0), Scalar(1)}, {PLBranch{Scalar(1), Scalar(0)}});
    XPoint x = XPoint::at_plain(Scalar(Rat(2, 7)));
    CHECK(sigma_apply(ident, x) == x);
}

TEST_CASE("sigma is monotone per branch, reversing on decreasing branches") {
    PLMap t2 = PLMap::tent(Scalar(2));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(1, 63);
    for (int i = 0; i < 60; ++i) {
        Rat a(num(rng), 64), b(num(rng), 64);
        if (a == b) continue;
        XPoint xa = XPoint::at_plain(Scalar(a)), xb = XPoint::at_plain(Scalar(b));
        if (a > b) std::swap(xa, xb);
        bool same_branch_left = xb.value < Scalar(Rat(1, 2));
        bool same_branch_right = xa.value > Scalar(Rat(1, 2));
        if (same_branch_left)
            CHECK(sigma_apply(t2, xa) < sigma_apply(t2, xb));
        else if (same_branch_right)
            CHECK(sigma_apply(t2, xb) < sigma_apply(t2, xa));
    }
}

TEST_CASE("sigma projects onto the underlying map") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> num(1, 127);
    for (auto m : {PLMap::tent(Scalar(2)), PLMap::beta_map(phi()), PLMap::tent(Scalar(Rat(3, 2)))}) {
        for (int i = 0; i < 40; ++i) {
            Scalar v(Rat(num(rng), 128));
            if (m.breakpoint_index(v)) continue;
            XPoint x = XPoint::at_plain(v);
            auto imgs = m.hat_image_point(v);
            REQUIRE(imgs.size() == 1);
            CHECK(sigma_apply(m, x).value == imgs[0]);
        }
        // at split points, the two sides realize the two branch limits
        for (size_t k = 1; k + 1 < m.breakpoints().size(); ++k) {
            const Scalar& a = m.breakpoints()[k];
            Scalar left = sigma_apply(m, XPoint::at_minus(a)).value;
            Scalar right = sigma_apply(m, XPoint::at_plus(a)).value;
            auto imgs = m.hat_image_point(a);
            CHECK((imgs.size() == 1 ? (left == imgs[0] && right == imgs[0])
                                    : ((left == imgs[0] && right == imgs[1]) ||
                                       (left == imgs[1] && right == imgs[0]))));
        }
    }
}

TEST_CASE("step functions normalize to a canonical merged form") {
    StepFunction f({Scalar(0), Scalar(Rat(1, 2)), Scalar(1)}, {Scalar(1), Scalar(1)});
    CHECK(f == StepFunction::constant(Scalar(1)));
    CHECK(f.pieces() == 1);

    StepFunction g({Scalar(0), Scalar(Rat(1, 2)), Scalar(1)}, {Scalar(2), Scalar(3)});
    CHECK(g.pieces() == 2);  // no merge

    // idempotence: constructing from the canonical data changes nothing
    StepFunction h(g.cuts(), g.values());
    CHECK(h == g);
}

TEST_CASE("indicator step functions and evaluation") {
    StepFunction f = StepFunction::indicator(Scalar(0), Scalar(Rat(1, 2)));
    CHECK(f.value_at(XPoint::at_plain(Scalar(Rat(1, 4)))) == Scalar(1));
    CHECK(f.value_at(XPoint::at_minus(Scalar(Rat(1, 2)))) == Scalar(1));
    CHECK(f.value_at(XPoint::at_plus(Scalar(Rat(1, 2)))) == Scalar(0));
    CHECK_THROWS_AS(f.value_at(XPoint::at_plain(Scalar(Rat(1, 2)))), Error);
    CHECK(StepFunction::indicator(Scalar(Rat(1, 3)), Scalar(Rat(1, 3))).is_zero());
}

TEST_CASE("integration, sup norm, and variation") {
    MeasureWeights leb = MeasureWeights::lebesgue();
    CHECK(StepFunction::constant(Scalar(1)).integrate(leb) == Scalar(1));
    CHECK(StepFunction::indicator(Scalar(0), Scalar(Rat(1, 3))).integrate(leb) == Scalar(Rat(1, 3)));

    StepFunction f({Scalar(0), Scalar(Rat(1, 3)), Scalar(Rat(2, 3)), Scalar(1)},
                   {Scalar(1), Scalar(-2), Scalar(1)});
    CHECK(f.var() == Scalar(6));
    CHECK(f.sup_norm() == Scalar(2));
    CHECK(f.integrate(leb) == Scalar(0));
}

TEST_CASE("piecewise-linear measures integrate exactly") {
    MeasureWeights mu = MeasureWeights::on_cells(
        {Scalar(0), Scalar(Rat(1, 2)), Scalar(1)}, {Scalar(Rat(3, 4)), Scalar(Rat(1, 4))});
    CHECK(mu.total() == Scalar(1));
    CHECK(mu.measure_interval(Scalar(0), Scalar(Rat(1, 2))) == Scalar(Rat(3, 4)));
    CHECK(mu.measure_interval(Scalar(Rat(1, 4)), Scalar(Rat(1, 2))) == Scalar(Rat(3, 8)));
    CHECK(mu.cumulative(Scalar(Rat(3, 4))) == Scalar(Rat(7, 8)));
}

TEST_CASE("variation is subadditive and dominates the sup norm gap") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> val(-4, 4), cut(1, 15);
    MeasureWeights leb = MeasureWeights::lebesgue();
    auto rnd = [&] {
        std::vector<Scalar> cuts{Scalar(0)};
        std::vector<int> cs{cut(rng), cut(rng), cut(rng)};
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        for (int c : cs) cuts.push_back(Scalar(Rat(c, 16)));
        cuts.push_back(Scalar(1));
        std::vector<Scalar> vals;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) vals.push_back(Scalar(val(rng)));
        return StepFunction(cuts, vals);
    };
    for (int i = 0; i < 100; ++i) {
        StepFunction f = rnd(), g = rnd();
        CHECK((f + g).var() <= f.var() + g.var());
        // |f|_inf <= var f + integral |f|
        StepFunction absf = zip_with(f, StepFunction::constant(Scalar(0)),
                                     +[](const Scalar& a, const Scalar&) { return a.abs(); });
        CHECK(f.sup_norm() <= f.var() + absf.integrate(leb));
    }
}
