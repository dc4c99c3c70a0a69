// flowlab command line: catalog browsing, evaluation, verification, scaled
// iteration, orbit export, representation-set solving and 1-D fitting.
//
// Exit codes: 0 success / verification pass, 1 numerical or verification
// failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "flowlab/descriptor.hpp"
#include "flowlab/format.hpp"
#include "flowlab/io.hpp"
#include "flowlab/iteration.hpp"
#include "flowlab/oned.hpp"
#include "flowlab/orbits.hpp"
#include "flowlab/solution.hpp"
#include "flowlab/verify.hpp"

namespace {

using namespace flowlab;

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

Point parse_point(const std::string& text, Index k) {
    if (detail::trim(text) == "inf") return Point::infinity(k);
    const Vec v = parse_vector(text);
    detail::require_same_dim(v.size(), k, "point");
    return Point::finite(v);
}

struct CatalogRow {
    std::string name;
    std::string formula;
    bool continuous;
    std::string singular;
};

void print_catalog(std::ostream& os) {
    const std::vector<CatalogRow> rows = {
        {"identity", "phi(x) = x", true, "none"},
        {"zero", "phi(x) = 0", true, "none"},
        {"canonical1", "phi_j(x) = (sum_i x_i^2 + k*x_j) / sum_i (x_i+1)^2", true,
         "point (-1,...,-1)"},
        {"canonicalinf d=...", "phi_j(x) = d_j*(sum_i x_i)^2 + x_j  (sum_i d_i = 0)", true,
         "none"},
        {"quadflow a=... Q=...", "phi(x) = (a*Q(x) + x) / (Q(x)Q(a) + B(x,a) + 1)", true,
         "point -a/Q(a) for positive definite Q; a conic otherwise"},
        {"linflow c=... L=...", "phi(x) = c*L(x)^2 + x  (L(c) = 0)", true, "none"},
        {"pvz1(a,b)", "phi(x,y) = (x/(a*x+1), y/(b*y+1))", false,
         Solution::catalog(sol::CatalogId::pvz1).singular_description()},
        {"pvz2(a,b)", "phi(x,y) = (x, y) / (a*x + b*y + 1)", false,
         Solution::catalog(sol::CatalogId::pvz2).singular_description()},
        {"pvz3(a,b)", "phi(x,y) = (x/((b*y+1)(a*x+b*y+1)), y/(b*y+1))", false,
         Solution::catalog(sol::CatalogId::pvz3).singular_description()},
        {"pvz4", "phi(x,y) = ((2x^2-8y^2+x)/(4x-8y+1), (x^2-4y^2+y)/(4x-8y+1))", true,
         Solution::catalog(sol::CatalogId::pvz4).singular_description()},
        {"pvz5", "phi(x,y) = ((2x^2+2y^2+4x)/(x^2+y^2+4x+4), 4y/(x^2+y^2+4x+4))", true,
         Solution::catalog(sol::CatalogId::pvz5).singular_description()},
        {"pvz6", "circle-conjugate of pvz5 (rational of degree 12)", false,
         Solution::catalog(sol::CatalogId::pvz6).singular_description()},
        {"pvz7", "astroid-conjugate of pvz1(1,1) (signed cube roots)", false,
         Solution::catalog(sol::CatalogId::pvz7).singular_description()},
        {"pvz8", "phi(x,y) = ((x-y)^2 + x, (x-y)^2 + y)", true,
         Solution::catalog(sol::CatalogId::pvz8).singular_description()},
    };
    for (const auto& r : rows) {
        os << r.name << "\n  formula:    " << r.formula << "\n  continuity: "
           << (r.continuous ? "continuous on S^2" : "not continuous on S^2")
           << "\n  singular:   " << r.singular << "\n";
    }
}

std::unique_ptr<std::ofstream> open_output(const std::string& path) {
    auto f = std::make_unique<std::ofstream>(path);
    if (!*f) throw Error("cannot open output file '" + path + "'");
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flowlab: solution families of the translation equation "
                 "(1-z)phi(x) = phi(phi(x z)(1-z)/z) on R^k U {inf}"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::int64_t samples = 10000;
    Index k = 2;
    int threads = 1;
    std::string out_path;
    app.add_option("--seed", seed, "RNG seed")->envname("FLOWLAB_SEED");
    app.add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
    app.add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
    app.add_option("--k", k, "space dimension for dimension-agnostic descriptors");
    app.add_option("--threads", threads, "verification worker threads");
    app.add_option("-o,--out", out_path, "output file path");

    std::function<int()> action;

    // --- catalog ------------------------------------------------------------
    auto* cmd_catalog = app.add_subcommand("catalog", "list the built-in solution families");
    cmd_catalog->fallthrough();
    cmd_catalog->callback([&] {
        action = [&]() {
            print_catalog(std::cout);
            return 0;
        };
    });

    // --- eval ---------------------------------------------------------------
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a solution at a point");
    cmd_eval->fallthrough();
    std::vector<std::string> eval_desc;
    std::string eval_point;
    cmd_eval->add_option("descriptor", eval_desc, "solution descriptor")->required()->expected(-1);
    cmd_eval->add_option("--point", eval_point, "comma-separated coordinates, or 'inf'")->required();
    cmd_eval->callback([&] {
        action = [&]() {
            const Solution s = parse_solution(join(eval_desc), k);
            std::cout << fmt_point(s.eval(parse_point(eval_point, s.dim()))) << "\n";
            return 0;
        };
    });

    // --- verify ---------------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "sample the translation-equation residual");
    cmd_verify->fallthrough();
    std::vector<std::string> verify_desc;
    cmd_verify->add_option("descriptor", verify_desc, "solution descriptor")->required()->expected(-1);
    cmd_verify->callback([&] {
        action = [&]() {
            const Solution s = parse_solution(join(verify_desc), k);
            const VerificationReport rep =
                verify_translation(s, samples, seed, SampleBox::standard(s.dim()), tol, threads);
            std::cout << rep.to_string() << "\n";
            return rep.passed() ? 0 : 1;
        };
    });

    // --- iterate --------------------------------------------------------------
    auto* cmd_iterate = app.add_subcommand("iterate", "scaled iteration L_n(x) = n*g^n(x/n)");
    cmd_iterate->fallthrough();
    std::string map_name;
    std::string iter_x;
    std::int64_t n0 = 1024;
    int levels = 8;
    cmd_iterate->add_option("--map", map_name, "log1p or quad2d")->required();
    cmd_iterate->add_option("--x", iter_x, "starting point")->required();
    cmd_iterate->add_option("--n0", n0, "first n of the doubling schedule");
    cmd_iterate->add_option("--levels", levels, "number of doublings");
    cmd_iterate->callback([&] {
        action = [&]() {
            IterMap g = map_name == "log1p"    ? IterMap::log1p_map()
                        : map_name == "quad2d" ? IterMap::quad2d_map()
                                               : throw Error("unknown map '" + map_name + "'");
            const Vec x = parse_vector(iter_x);
            const LimitEstimate est = estimate_limit(g, x, n0, levels, tol);
            std::cout << "value=" << fmt_point(est.value)
                      << " converged=" << (est.converged ? "yes" : "no")
                      << " rate_estimate=" << fmt_double(est.rate_estimate)
                      << " final_n=" << est.history.back().first << "\n";
            if (!out_path.empty()) {
                auto f = open_output(out_path);
                write_iteration_csv(*f, est);
            }
            return est.converged ? 0 : 1;
        };
    });

    // --- orbit ----------------------------------------------------------------
    auto* cmd_orbit = app.add_subcommand("orbit", "trace the orbit V(x) over a z range");
    cmd_orbit->fallthrough();
    std::vector<std::string> orbit_desc;
    std::string orbit_point;
    double zmin = -3.0, zmax = 3.0;
    int steps = 121;
    std::string format = "csv";
    cmd_orbit->add_option("descriptor", orbit_desc, "solution descriptor")->required()->expected(-1);
    cmd_orbit->add_option("--point", orbit_point, "base point")->required();
    cmd_orbit->add_option("--zmin", zmin, "start of the z grid");
    cmd_orbit->add_option("--zmax", zmax, "end of the z grid");
    cmd_orbit->add_option("--steps", steps, "grid size")->check(CLI::Range(2, 1000000));
    cmd_orbit->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    cmd_orbit->callback([&] {
        action = [&]() {
            const Solution s = parse_solution(join(orbit_desc), k);
            const Point x = parse_point(orbit_point, s.dim());
            std::vector<double> grid;
            grid.reserve(steps);
            for (int i = 0; i < steps; ++i) {
                grid.push_back(zmin + (zmax - zmin) * double(i) / double(steps - 1));
            }
            const OrbitTrace trace = orbit_trace(s, x, std::move(grid));
            std::ostream* os = &std::cout;
            std::unique_ptr<std::ofstream> f;
            if (!out_path.empty()) {
                f = open_output(out_path);
                os = f.get();
            }
            if (format == "svg") {
                write_orbit_svg(*os, trace);
            } else {
                write_orbit_csv(*os, trace);
            }
            return 0;
        };
    });

    // --- conjugate --------------------------------------------------------------
    auto* cmd_conj = app.add_subcommand("conjugate", "evaluate ell^-1 . phi . ell at a point");
    cmd_conj->fallthrough();
    std::vector<std::string> conj_desc;
    std::string conj_ell;
    std::string conj_point;
    cmd_conj->add_option("descriptor", conj_desc, "solution descriptor")->required()->expected(-1);
    cmd_conj->add_option("--ell", conj_ell, "homothety descriptor")->required();
    cmd_conj->add_option("--point", conj_point, "sample point")->required();
    cmd_conj->callback([&] {
        action = [&]() {
            const Solution s = parse_solution(join(conj_desc), k);
            const Homothety ell = parse_homothety(conj_ell);
            const Solution conj = Solution::conjugated(s, ell);
            const Point p = parse_point(conj_point, conj.dim());
            const Point chain = ell.apply_inverse(s.eval(ell.apply(p)));
            Point direct = conj.eval(p);
            // closed form for a linear conjugation of a quadratic-form flow
            if (const auto* qf = std::get_if<sol::QuadFlow>(&s.node())) {
                if (const auto* lin = std::get_if<hom::Linear>(&ell.node())) {
                    const Solution closed =
                        Solution::quad_flow(lin->inv * qf->a, qf->q.pullback(lin->m));
                    direct = closed.eval(p);
                }
            }
            std::cout << "chain=" << fmt_point(chain) << " direct=" << fmt_point(direct)
                      << " residual=" << fmt_double(chordal_distance(chain, direct)) << "\n";
            return 0;
        };
    });

    // --- repset -----------------------------------------------------------------
    auto* cmd_repset = app.add_subcommand(
        "repset", "orbit representative of y on the hyperplane sum(x)=0 (canonical1)");
    cmd_repset->fallthrough();
    std::string repset_y;
    cmd_repset->add_option("--y", repset_y, "target point")->required();
    cmd_repset->callback([&] {
        action = [&]() {
            const Vec y = parse_vector(repset_y);
            const RepSetSolution r = repset_solve_phi1(y, y.size());
            if (r.at_infinity) {
                std::cout << "at_infinity z=" << fmt_double(r.z) << "\n";
            } else {
                std::cout << "z=" << fmt_double(r.z) << " x=" << fmt_vec(r.x) << "\n";
            }
            return 0;
        };
    });

    // --- fitc -------------------------------------------------------------------
    auto* cmd_fitc = app.add_subcommand("fitc", "fit C of f(x) = x/(Cx+1) from CSV u,fu pairs");
    cmd_fitc->fallthrough();
    std::string fitc_path;
    cmd_fitc->add_option("csv", fitc_path, "path to a CSV of u,fu pairs")->required();
    cmd_fitc->callback([&] {
        action = [&]() {
            std::ifstream in(fitc_path);
            if (!in) throw Error("cannot open '" + fitc_path + "'");
            std::vector<std::pair<double, double>> pairs;
            std::string line;
            while (std::getline(in, line)) {
                const auto cells = detail::split_top_level(line, ',');
                if (cells.size() != 2) continue;
                try {
                    pairs.emplace_back(detail::parse_double_token(cells[0]),
                                       detail::parse_double_token(cells[1]));
                } catch (const DescriptorError&) {
                    continue;  // header or comment row
                }
            }
            const FitC fit = fit_c(pairs);
            std::cout << "C=" << fmt_double(fit.C)
                      << " constancy_residual=" << fmt_double(fit.constancy_residual)
                      << " valid=" << (fit.valid ? "yes" : "no") << "\n";
            return fit.valid ? 0 : 1;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return action();
    } catch (const DescriptorError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
