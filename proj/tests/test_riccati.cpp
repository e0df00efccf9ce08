#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rpair/catalog.hpp"
#include "rpair/riccati.hpp"
#include "rpair/specfun.hpp"

using namespace rpair;

namespace {

BuiltSpec hardy_spec() {
    SpecConfig c;
    c.kappa = 0.0;
    c.n = 3;
    c.p = 2.0;
    c.lo = 0.0;
    c.hi = INFINITY;
    c.w = "1";
    c.L = "(n - 1)/t";
    c.W = "1/(4*t^2)";
    c.G = "1/(2*t)";
    return build_spec(c);
}

RadialFunction scaled(const RadialFunction& G, double lambda) {
    return RadialFunction([G, lambda](double t) { return lambda * G(t); }, "scaled");
}

}  // namespace

TEST(Residual, Examples) {
    const auto h = hardy_spec();
    EXPECT_NEAR(residual(h.spec, h.G, 1.0), 0.0, 1e-12);

    SpecConfig m;
    m.kappa = -1.0;
    m.n = 2;
    m.L = "kind:constant_floor";
    m.W = "1/4";
    m.G = "1/2";
    const auto mk = build_spec(m);
    for (double t : {0.01, 1.0, 7.0}) EXPECT_EQ(residual(mk.spec, mk.G, t), 0.0);

    for (double t : {0.1, 1.0, 10.0})
        EXPECT_EQ(residual(h.spec, RadialFunction::constant(0.0), t), -1.0 / (4 * t * t));
}

TEST(Certify, HardyAndScaledFailure) {
    const auto h = hardy_spec();
    const auto ok = certify(h.spec, h.G);
    EXPECT_EQ(ok.verdict, Verdict::Certified);
    EXPECT_LE(ok.max_abs_residual, 1e-12);
    EXPECT_GE(ok.grid.size(), 512u);

    const auto bad = certify(h.spec, scaled(h.G, 1.5));
    EXPECT_EQ(bad.verdict, Verdict::Failed);
    ASSERT_TRUE(bad.witness_t.has_value());
    EXPECT_LT(residual(h.spec, scaled(h.G, 1.5), *bad.witness_t), 0.0);
    // Hand value at t = 1: -0.75 + 1.5 - 0.5625 - 0.25.
    EXPECT_NEAR(residual(h.spec, scaled(h.G, 1.5), 1.0), -0.0625, 1e-15);
}

TEST(Certify, BrezisVazquez) {
    const auto inst = instantiate("brezis_vazquez", {{"n", 3}, {"nu", 0}, {"D", 1}});
    const auto rep = certify(inst.spec, inst.G);
    EXPECT_EQ(rep.verdict, Verdict::Certified) << rep.reason;
    EXPECT_LE(rep.max_abs_residual, 1e-8);
}

TEST(Certify, GridAndInconclusive) {
    const auto h = hardy_spec();
    EXPECT_THROW((void)certification_grid(Interval{0.0, 1.0}, GridPolicy::Log, 100), ParameterError);
    const auto g = certification_grid(Interval{0.0, 1.0}, GridPolicy::Uniform, 512);
    for (double t : g) {
        EXPECT_GT(t, 0.0);
        EXPECT_LT(t, 1.0);
    }
    // Points clustered near the lower end.
    EXPECT_LT(g.front(), 1e-3);
    const RadialFunction broken([](double t) -> Jet {
        if (t > 2.0) throw DomainError("outside");
        return Jet(0.5 / t, -0.5 / (t * t));
    }, "broken");
    const auto rep = certify(h.spec, broken);
    EXPECT_EQ(rep.verdict, Verdict::Inconclusive);
    ASSERT_TRUE(rep.witness_t.has_value());
    EXPECT_GT(*rep.witness_t, 2.0);
}

TEST(SolveIvp, HardyClosedForm) {
    const auto h = hardy_spec();
    std::vector<double> fwd, bwd;
    for (int i = 0; i <= 40; ++i) fwd.push_back(1.0 + 9.0 * i / 40.0);
    for (int i = 0; i <= 40; ++i) bwd.push_back(0.1 + 0.9 * i / 40.0);
    const auto a = solve_ivp(h.spec, 1.0, 0.5, Direction::Forward, fwd);
    const auto b = solve_ivp(h.spec, 1.0, 0.5, Direction::Backward, bwd);
    ASSERT_EQ(a.status, OdeStatus::Completed);
    ASSERT_EQ(b.status, OdeStatus::Completed);
    for (std::size_t i = 0; i < a.t.size(); ++i) EXPECT_NEAR(a.y[i], 0.5 / a.t[i], 1e-8);
    for (std::size_t i = 0; i < b.t.size(); ++i) EXPECT_NEAR(b.y[i], 0.5 / b.t[i], 1e-8);
    EXPECT_THROW((void)solve_ivp(h.spec, 1.0, 0.5, Direction::Forward, {0.5}), ParameterError);
}

TEST(SolveIvp, AcrClosedForm) {
    const auto inst = instantiate("acr", {{"n", 3}, {"D", 1}});
    std::vector<double> fwd, bwd;
    for (int i = 0; i <= 20; ++i) fwd.push_back(0.5 + 0.45 * i / 20.0);
    for (int i = 0; i <= 20; ++i) bwd.push_back(0.05 + 0.45 * i / 20.0);
    const double G0 = inst.G.value(0.5);
    const auto a = solve_ivp(inst.spec, 0.5, G0, Direction::Forward, fwd);
    const auto b = solve_ivp(inst.spec, 0.5, G0, Direction::Backward, bwd);
    ASSERT_EQ(a.status, OdeStatus::Completed);
    ASSERT_EQ(b.status, OdeStatus::Completed);
    auto closed = [](double t) { return 1.0 / (2 * t) + 1.0 / (2 * t * std::log(std::exp(1.0) / t)); };
    for (std::size_t i = 0; i < a.t.size(); ++i) EXPECT_NEAR(a.y[i], closed(a.t[i]), 1e-7);
    for (std::size_t i = 0; i < b.t.size(); ++i) EXPECT_NEAR(b.y[i], closed(b.t[i]), 1e-7);
}

TEST(SolveIvp, FaberKrahnBlowsUpPastTheSharpConstant) {
    auto inst = instantiate("faber_krahn", {{"n", 2}, {"R", 1}});
    const double j = bessel_zero(0.0, 1);
    const double C = j * j * 1.01;
    inst.spec.W = RadialFunction::constant(C);
    // Regular solution: G = sqrt(C) J_1/J_0 (sqrt(C) t), started at t0 = 0.1.
    const double G0 = std::sqrt(C) * bessel_ratio(0.0, std::sqrt(C) * 0.1);
    const auto sol = solve_ivp(inst.spec, 0.1, G0, Direction::Forward, {0.5, 1.0});
    EXPECT_EQ(sol.status, OdeStatus::BlowUp);
    EXPECT_LT(sol.t_stop, 1.0);
    EXPECT_NEAR(sol.t_stop, j / std::sqrt(C), 1e-4);
    // At the sharp constant the blow-up sits at R = 1 itself.
    inst.spec.W = RadialFunction::constant(j * j);
    const auto edge = solve_ivp(inst.spec, 0.1, j * bessel_ratio(0.0, j * 0.1), Direction::Forward, {0.99});
    EXPECT_EQ(edge.status, OdeStatus::Completed);
}

TEST(BesselRiccati, Examples) {
    const RadialFunction y([](double t) { return Jet(std::pow(t, -0.5), -0.5 * std::pow(t, -1.5)); }, "t^-1/2");
    const auto G = bessel_to_riccati(y, 2.0);
    for (double t : {0.3, 1.0, 4.0}) {
        EXPECT_NEAR(G.value(t), 0.5 / t, 1e-15);
        EXPECT_NEAR(G(t).d, -0.5 / (t * t), 1e-7);
    }
    ParamBinding b{{"kappa", -1.0}, {"n", 3.0}};
    const auto ys = bessel_to_riccati(RadialFunction::from_expr(parse("s(t)^(-(n - 2)/2)"), b), 2.0);
    for (double t : {0.2, 1.0, 3.0}) EXPECT_NEAR(ys.value(t), 0.5 / std::tanh(t), 1e-14);
    EXPECT_EQ(bessel_to_riccati(RadialFunction::constant(1.0), 2.0).value(2.0), 0.0);
    EXPECT_THROW((void)bessel_to_riccati(RadialFunction::constant(-1.0), 2.0).value(1.0), DomainError);

    const auto yb = riccati_to_bessel(RadialFunction::from_expr(parse("1/(2*t)"), {}), 2.0, 1.0);
    for (int i = 0; i <= 30; ++i) {
        const double t = 0.25 * std::pow(16.0, i / 30.0);
        EXPECT_NEAR(yb.value(t), std::pow(t, -0.5), 1e-9);
    }
    EXPECT_EQ(riccati_to_bessel(RadialFunction::constant(0.0), 2.0, 1.0).value(3.0), 1.0);
}

TEST(BesselRiccatiProperties, RoundTripForCatalogEntries) {
    const std::pair<const char*, ParamBinding> cases[] = {
        {"mckean", {}},         {"hardy", {{"n", 3}}},           {"acr", {}},
        {"brezis_vazquez", {}}, {"faber_krahn", {}},             {"mckean_improved", {}},
        {"interpolation", {}},  {"akutagawa_kumura", {}},        {"hardy_log", {}}};
    for (const auto& [name, params] : cases) {
        const auto inst = instantiate(name, params);
        ASSERT_EQ(inst.spec.geo.p, 2.0) << name;
        const double lo = inst.spec.interval.lo, hi = std::min(inst.spec.interval.hi, lo + 5.0);
        const double anchor = 0.5 * (lo + hi);
        const auto back = bessel_to_riccati(riccati_to_bessel(inst.G, 2.0, anchor), 2.0);
        double worst = 0.0;
        for (int i = 1; i <= 50; ++i) {
            const double t = lo + (hi - lo) * (0.05 + 0.9 * (i - 1) / 49.0);
            worst = std::max(worst, std::fabs(back.value(t) - inst.G.value(t)));
        }
        EXPECT_LE(worst, 1e-7) << name;
    }
}

TEST(RiccatiProperties, ResidualOfScaledGIsAlgebraic) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> td(0.05, 5.0), ld(0.01, 0.99);
    for (const char* name : {"hardy", "mckean", "acr", "caccioppoli"}) {
        const auto inst = instantiate(name);
        const double p = inst.spec.geo.p, pc = inst.spec.geo.conjugate();
        for (int i = 0; i < 100; ++i) {
            double t = td(rng);
            if (!inst.spec.interval.contains(t)) t = inst.spec.interval.lo + 0.5 * (inst.spec.interval.hi - inst.spec.interval.lo) * ld(rng);
            const double lambda = ld(rng);
            const Jet g = inst.G(t), w = inst.spec.w(t);
            const double lin = g.d + (w.d / w.v + inst.spec.L.value(t)) * g.v;
            const double expected =
                lambda * lin - (p - 1) * std::pow(lambda, pc) * std::pow(std::fabs(g.v), pc) - inst.spec.W.value(t);
            const double got = residual(inst.spec, scaled(inst.G, lambda), t);
            EXPECT_NEAR(got, expected, 1e-12 * (1 + std::fabs(expected) + std::fabs(lin))) << name << " t=" << t;
            // Convexity slack in its literal form.
            const double base = residual(inst.spec, inst.G, t);
            const double bound = lambda * base + (lambda - std::pow(lambda, pc)) * (p - 1) * std::pow(std::fabs(g.v), pc) -
                                 (1 - lambda) * inst.spec.W.value(t);
            EXPECT_GE(got, bound - 1e-12 * (1 + std::fabs(bound) + std::fabs(lin))) << name;
        }
    }
}
