// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Usage: acceptance [path-to-cli-binary]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "flowlab/format.hpp"
#include "flowlab/iteration.hpp"
#include "flowlab/oned.hpp"
#include "flowlab/orbits.hpp"
#include "flowlab/solution.hpp"
#include "flowlab/verify.hpp"

using namespace flowlab;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << " — " << detail
              << "\n";
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

struct NamedSolution {
    std::string name;
    Solution s;
};

// The solution set exercised by the residual criteria: the canonical
// families, seeded quadratic/linear flows and the whole 2-D catalog.
std::vector<NamedSolution> criterion_solutions() {
    std::vector<NamedSolution> out;
    out.push_back({"identity", Solution::identity(2)});
    out.push_back({"zero", Solution::zero(2)});
    out.push_back({"canonical1 k=1", Solution::canonical1(1)});
    out.push_back({"canonical1 k=2", Solution::canonical1(2)});
    out.push_back({"canonical1 k=3", Solution::canonical1(3)});
    out.push_back({"canonicalinf d=(1,-1)", Solution::canonical_inf(vec2(1.0, -1.0))});
    for (int i = 0; i < 5; ++i) {
        SampleRng rng(1000, static_cast<std::uint64_t>(i));
        Mat m(2, 2);
        for (Index r = 0; r < 2; ++r)
            for (Index c = 0; c < 2; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
        const QuadraticForm q(Mat(m.transpose() * m + 0.2 * Mat::Identity(2, 2)));
        const Vec a = rng.uniform_vec(vec2(0.2, 0.2), vec2(2.0, 2.0));
        out.push_back({"quadflow #" + std::to_string(i), Solution::quad_flow(a, q)});
    }
    for (int i = 0; i < 3; ++i) {
        SampleRng rng(2000, static_cast<std::uint64_t>(i));
        Vec l = rng.uniform_vec(vec2(-2.0, -2.0), vec2(2.0, 2.0));
        if (l.norm() < 0.2) l = vec2(1.0, 1.0);
        Vec c = rng.uniform_vec(vec2(-2.0, -2.0), vec2(2.0, 2.0));
        c -= (l.dot(c) / l.squaredNorm()) * l;  // project onto ker L
        out.push_back({"linflow #" + std::to_string(i), Solution::lin_flow(c, LinearForm(l))});
    }
    out.push_back({"pvz1(1,1)", Solution::catalog(sol::CatalogId::pvz1, 1.0, 1.0)});
    out.push_back({"pvz2(1,1)", Solution::catalog(sol::CatalogId::pvz2, 1.0, 1.0)});
    out.push_back({"pvz3(1,1)", Solution::catalog(sol::CatalogId::pvz3, 1.0, 1.0)});
    out.push_back({"pvz4", Solution::catalog(sol::CatalogId::pvz4)});
    out.push_back({"pvz5", Solution::catalog(sol::CatalogId::pvz5)});
    out.push_back({"pvz6", Solution::catalog(sol::CatalogId::pvz6)});
    out.push_back({"pvz7", Solution::catalog(sol::CatalogId::pvz7)});
    out.push_back({"pvz8", Solution::catalog(sol::CatalogId::pvz8)});
    return out;
}

// --- criterion 1: the motivating 1-D limit --------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    double worst_final = 0.0;
    for (double x : {0.5, 1.0, 2.0, 10.0}) {
        Vec v(1);
        v << x;
        const LimitEstimate est = estimate_limit(IterMap::log1p_map(), v, 1, 21, 1e-4);
        const double limit = 2.0 * x / (x + 2.0);
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& [n, p] : est.history) {
            (void)n;
            const double err = std::abs(p.coords()[0] - limit);
            if (err > prev) {
                pass = false;
                detail += " non-monotone at x=" + fmt_double(x) + ";";
            }
            prev = err;
        }
        worst_final = std::max(worst_final, prev);
        if (!(prev < 1e-4)) pass = false;
    }
    const double dt = seconds_since(t0);
    if (dt >= 5.0) pass = false;
    report(1, pass,
           "log1p limits 2x/(x+2): worst |L_n - f| at n=2^20 is " + fmt_double(worst_final) +
               " (< 1e-4), errors monotone, runtime " + fmt_fixed(dt, 2) + "s (< 5s)" + detail);
}

// --- criterion 2: the 2-D limit is pvz5 ------------------------------------

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const Solution pvz5 = Solution::catalog(sol::CatalogId::pvz5);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        SampleRng rng(77, i);
        const Vec x = rng.uniform_vec(vec2(0.01, 0.01), vec2(0.99, 0.99));
        const LimitEstimate est = estimate_limit(IterMap::quad2d_map(), x, 1 << 10, 8, 1e-3);
        worst = std::max(worst, chordal_distance(est.value, pvz5.eval(Point::finite(x))));
    }
    const double dt = seconds_since(t0);
    const bool pass = worst < 1e-3 && dt < 30.0;
    report(2, pass,
           "quad2d limit vs pvz5 at n=2^17 over 20 seeded points: worst chordal " +
               fmt_double(worst) + " (< 1e-3), runtime " + fmt_fixed(dt, 2) + "s (< 30s)");
}

// --- criterion 3: translation-equation residuals ----------------------------

void criterion_3(const std::vector<NamedSolution>& sols) {
    bool pass = true;
    double worst = 0.0;
    std::string worst_name;
    for (const auto& [name, s] : sols) {
        const auto rep = verify_translation(s, 10000, 31, SampleBox::standard(s.dim()), 1e-9, 4);
        if (rep.max_residual > worst) {
            worst = rep.max_residual;
            worst_name = name;
        }
        if (!rep.passed()) {
            pass = false;
        }
    }
    report(3, pass,
           "Eq. residual over 10^4 samples for " + std::to_string(sols.size()) +
               " solutions: worst " + fmt_double(worst) + " (" + worst_name + ", tol 1e-9)");
}

// --- criterion 4: group law --------------------------------------------------

void criterion_4(const std::vector<NamedSolution>& sols) {
    bool pass = true;
    double worst = 0.0;
    std::string worst_name;
    for (const auto& [name, s] : sols) {
        const auto rep = check_group_law(s, 10000, 37, SampleBox::standard(s.dim()), 1e-9, 4);
        if (rep.max_residual > worst) {
            worst = rep.max_residual;
            worst_name = name;
        }
        if (!rep.passed()) pass = false;
    }
    report(4, pass,
           "flow(z1).flow(z2) = flow(z1+z2) over 10^4 samples per solution: worst " +
               fmt_double(worst) + " (" + worst_name + ", tol 1e-9)");
}

// --- criterion 5: composition law and the scalar identity --------------------

void criterion_5() {
    double worst_compose = 0.0;
    std::int64_t tested = 0;
    for (std::uint64_t i = 0; tested < 1000 && i < 20000; ++i) {
        SampleRng rng(41, i);
        Mat m(2, 2);
        for (Index r = 0; r < 2; ++r)
            for (Index c = 0; c < 2; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
        const QuadraticForm q(Mat(m.transpose() * m + 0.2 * Mat::Identity(2, 2)));
        const Vec a = rng.uniform_vec(vec2(-2.0, -2.0), vec2(2.0, 2.0));
        const Vec b = rng.uniform_vec(vec2(-2.0, -2.0), vec2(2.0, 2.0));
        const Vec xv = rng.uniform_vec(vec2(-3.0, -3.0), vec2(3.0, 3.0));
        if (q(a) < 1e-2 || q(b) < 1e-2 || q(Vec(a + b)) < 1e-2) continue;
        const Solution fa = Solution::quad_flow(a, q);
        const Solution fb = Solution::quad_flow(b, q);
        const Solution fab = quadflow_compose(a, b, q);
        const Point x = Point::finite(xv);
        if (fb.singular_clearance(x) < 1e-3 || fab.singular_clearance(x) < 1e-3) continue;
        const Point mid = fb.eval(x);
        if (mid.is_infinity() || fa.singular_clearance(mid) < 1e-3) continue;
        worst_compose = std::max(worst_compose, chordal_distance(fab.eval(x), fa.eval(mid)));
        ++tested;
    }

    double worst_tarp = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        SampleRng rng(43, i);
        Mat m(2, 2);
        for (Index r = 0; r < 2; ++r)
            for (Index c = 0; c < 2; ++c) m(r, c) = rng.uniform(-2.0, 2.0);
        const QuadraticForm q(m);
        const Vec b = rng.uniform_vec(vec2(-2.0, -2.0), vec2(2.0, 2.0));
        const Vec x = rng.uniform_vec(vec2(-3.0, -3.0), vec2(3.0, 3.0));
        auto [lhs, rhs] = tarp_identity_check(b, q, x);
        worst_tarp =
            std::max(worst_tarp, std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs)));
    }

    const bool pass = tested == 1000 && worst_compose <= 1e-10 && worst_tarp <= 1e-12;
    report(5, pass,
           "composition two-path worst " + fmt_double(worst_compose) + " over 10^3 (tol 1e-10); " +
               "scalar identity worst relative " + fmt_double(worst_tarp) + " (tol 1e-12)");
}

// --- criterion 6: conjugation identities --------------------------------------

void criterion_6() {
    double worst_linear = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        SampleRng rng(47, i);
        Mat base(2, 2);
        for (Index r = 0; r < 2; ++r)
            for (Index c = 0; c < 2; ++c) base(r, c) = rng.uniform(-1.0, 1.0);
        const QuadraticForm q(Mat(base.transpose() * base + 0.3 * Mat::Identity(2, 2)));
        const Vec a = rng.uniform_vec(vec2(0.2, 0.2), vec2(2.0, 2.0));
        Mat m(2, 2);
        do {
            for (Index r = 0; r < 2; ++r)
                for (Index c = 0; c < 2; ++c) m(r, c) = rng.uniform(-2.0, 2.0);
        } while (std::abs(m.determinant()) < 0.2);
        worst_linear = std::max(worst_linear, conjugate_linear_identity_check(a, q, m, 200, 53 + i));
    }

    auto pointwise_worst = [](const Solution& lhs, const Solution& rhs, std::uint64_t seed) {
        double worst = 0.0;
        std::int64_t tested = 0;
        for (std::uint64_t i = 0; tested < 1000 && i < 20000; ++i) {
            SampleRng rng(seed, i);
            const Point x = Point::finite(rng.uniform_vec(vec2(-3.0, -3.0), vec2(3.0, 3.0)));
            if (lhs.singular_clearance(x) < 1e-3 || rhs.singular_clearance(x) < 1e-3) continue;
            worst = std::max(worst, chordal_distance(lhs.eval(x), rhs.eval(x)));
            ++tested;
        }
        return worst;
    };

    const double worst_pvz6 = pointwise_worst(
        Solution::conjugated(Solution::catalog(sol::CatalogId::pvz5), Homothety::circle()),
        Solution::catalog(sol::CatalogId::pvz6), 59);
    const double worst_pvz7 = pointwise_worst(
        Solution::conjugated(Solution::catalog(sol::CatalogId::pvz1, 1.0, 1.0), Homothety::astroid()),
        Solution::catalog(sol::CatalogId::pvz7), 61);

    const bool pass = worst_linear <= 1e-10 && worst_pvz6 <= 1e-9 && worst_pvz7 <= 1e-9;
    report(6, pass,
           "linear conjugation worst " + fmt_double(worst_linear) + " (tol 1e-10); " +
               "pvz6 vs circle-conjugate " + fmt_double(worst_pvz6) + ", pvz7 vs astroid-conjugate " +
               fmt_double(worst_pvz7) + " (tol 1e-9, 10^3 samples each)");
}

// --- criterion 7: representation-set solver ------------------------------------

void criterion_7() {
    const Solution c1 = Solution::canonical1(2);
    double worst = 0.0;
    std::int64_t tested = 0;
    for (std::uint64_t i = 0; tested < 1000 && i < 20000; ++i) {
        SampleRng rng(67, i);
        const Vec y = rng.uniform_vec(vec2(-3.0, -3.0), vec2(3.0, 3.0));
        if (y.norm() < 1e-3) continue;
        const Vec dev = y - Vec::Constant(2, y.sum() / 2.0);
        if (dev.norm() < 1e-3 * y.norm()) continue;
        const RepSetSolution r = repset_solve_phi1(y, 2);
        const Point back = r.at_infinity ? c1.flow(r.z, Point::infinity(2))
                                         : c1.flow(r.z, Point::finite(r.x));
        worst = std::max(worst, chordal_distance(back, Point::finite(y)));
        ++tested;
    }

    const RepSetSolution w1 = repset_solve_phi1(vec2(1.0, -1.0), 2);
    const bool case1 = !w1.at_infinity && w1.z == 0.0 && w1.x == vec2(1.0, -1.0);
    const RepSetSolution w2 = repset_solve_phi1(vec2(2.0, 2.0), 2);
    const bool case2 = w2.at_infinity;
    const RepSetSolution w3 = repset_solve_phi1(vec2(1.0, 0.0), 2);
    const bool case3 = !w3.at_infinity && w3.z == 1.0 && w3.x == vec2(1.0, -1.0);

    const bool pass = tested == 1000 && worst <= 1e-8 && case1 && case2 && case3;
    report(7, pass,
           "round trip worst " + fmt_double(worst) + " over 10^3 seeded y (tol 1e-8); worked cases " +
               (case1 ? "Y=0 ok" : "Y=0 FAIL") + ", " + (case2 ? "y∝e ok" : "y∝e FAIL") + ", " +
               (case3 ? "y=(1,0) ok" : "y=(1,0) FAIL"));
}

// --- criterion 8: axis action ----------------------------------------------------

void criterion_8(const std::vector<NamedSolution>& sols) {
    std::vector<double> grid;
    for (double z = -10.0; z <= 10.0 + 1e-12; z += 0.25) {
        if (std::abs(z + 1.0) > 1e-12) grid.push_back(z);
    }
    bool pass = true;
    double worst = 0.0;
    for (const auto& [name, s] : sols) {
        if (name.rfind("quadflow", 0) != 0 && name.rfind("canonical1", 0) != 0) continue;
        const double r = axis_action_check(s, grid);
        worst = std::max(worst, r);
        if (r > 1e-10) pass = false;
    }
    report(8, pass,
           "phi(a z) = z/(z+1)·a on z in [-10,10]\\{-1} for canonical1 and seeded quadflows: worst " +
               fmt_double(worst) + " (tol 1e-10)");
}

// --- criterion 9: iterate identity ------------------------------------------------

void criterion_9(const std::vector<NamedSolution>& sols) {
    bool pass = true;
    double worst = 0.0;
    std::string worst_name;
    for (const auto& [name, s] : sols) {
        for (int n : {2, 3, 5}) {
            const auto rep =
                iterate_identity_check(s, n, 1000, 71, SampleBox::standard(s.dim()), 1e-9, 4);
            if (rep.max_residual > worst) {
                worst = rep.max_residual;
                worst_name = name + " n=" + std::to_string(n);
            }
            if (!rep.passed()) pass = false;
        }
    }
    report(9, pass,
           "(1/n)phi(nx) vs n-fold composition, n in {2,3,5}, 10^3 samples: worst " +
               fmt_double(worst) + " (" + worst_name + ", tol 1e-9)");
}

// --- criterion 10: the 1-D classification ------------------------------------------

void criterion_10() {
    bool pass = true;
    double worst_residual = 0.0;
    for (double c : {0.0, 0.1, 1.0, 10.0}) {
        const OneDReport rep = verify_1d(OneDSolution(c), 10000, 73, 1e-12);
        worst_residual = std::max(worst_residual, rep.max_residual);
        if (!rep.passed()) pass = false;
    }

    double worst_fit = 0.0;
    for (std::uint64_t i = 0; i < 20; ++i) {
        SampleRng rng(79, i);
        const double c = rng.uniform(0.0, 10.0);
        const OneDSolution f(c);
        std::vector<std::pair<double, double>> samples;
        for (double u = 0.2; u < 1e4; u *= 2.3) samples.emplace_back(u, f(u));
        const FitC fit = fit_c(samples);
        worst_fit = std::max(worst_fit, std::abs(fit.C - c));
        if (!fit.valid) pass = false;
    }
    if (worst_fit > 1e-10) pass = false;

    std::vector<std::pair<double, double>> limit_samples;
    for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        Vec v(1);
        v << x;
        const LimitEstimate est = estimate_limit(IterMap::log1p_map(), v, 1 << 13, 8, 1e-3);
        limit_samples.emplace_back(x, est.value.coords()[0]);
    }
    const FitC limit_fit = fit_c(limit_samples);
    if (std::abs(limit_fit.C - 0.5) > 1e-3) pass = false;

    bool monotone = true;
    for (double c : {0.0, 0.1, 1.0, 10.0}) {
        const OneDSolution f(c);
        double prev = std::numeric_limits<double>::infinity();
        for (double x = 0.05; x <= 100.0; x *= 1.31) {
            const double ratio = f(x) / x;
            if (ratio > prev * (1.0 + 1e-15)) monotone = false;
            prev = ratio;
        }
    }
    if (!monotone) pass = false;

    report(10, pass,
           "verify_1d worst " + fmt_double(worst_residual) + " (tol 1e-12); fit_C worst |ΔC| " +
               fmt_double(worst_fit) + " (tol 1e-10); C from log1p limits " +
               fmt_double(limit_fit.C) + " (0.5 ± 1e-3); f(x)/x " +
               (monotone ? "monotone" : "NOT monotone"));
}

// --- criterion 11: determinism -------------------------------------------------------

std::string run_command(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    pclose(pipe);
    return out;
}

void criterion_11(const char* cli_path) {
    const Solution s = Solution::catalog(sol::CatalogId::pvz5);
    const std::string a = verify_translation(s, 5000, 42, SampleBox::standard(2), 1e-9, 1).to_string();
    const std::string b = verify_translation(s, 5000, 42, SampleBox::standard(2), 1e-9, 4).to_string();
    const std::string c = verify_translation(s, 5000, 42, SampleBox::standard(2), 1e-9, 1).to_string();
    bool pass = (a == b) && (a == c);
    std::string detail = std::string("library reports identical across reruns and thread counts: ") +
                         (pass ? "yes" : "NO");

    if (cli_path != nullptr) {
        const std::string cmd =
            std::string(cli_path) + " verify catalog pvz5 --samples 3000 --seed 7 2>/dev/null";
        const std::string r1 = run_command(cmd);
        const std::string r2 = run_command(cmd);
        const bool cli_ok = !r1.empty() && r1 == r2;
        if (!cli_ok) pass = false;
        detail += std::string("; CLI stdout byte-identical across runs: ") + (cli_ok ? "yes" : "NO");
    }
    report(11, pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli_path = argc > 1 ? argv[1] : nullptr;
    const std::vector<NamedSolution> sols = criterion_solutions();

    criterion_1();
    criterion_2();
    criterion_3(sols);
    criterion_4(sols);
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(sols);
    criterion_9(sols);
    criterion_10();
    criterion_11(cli_path);

    if (g_failures == 0) {
        std::cout << "acceptance: all 11 criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria FAILED\n";
    return 1;
}
