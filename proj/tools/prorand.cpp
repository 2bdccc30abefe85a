#include "prorand/prorand.hpp"
#include "prorand/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

using namespace prorand;

namespace {

// Usage and parse errors exit 2, failed checks exit 1.
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

std::string real12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void report(const std::string& quantity, const std::string& value) { std::cout << quantity << '\t' << value << '\n'; }

stream::Stream load_stream(const std::string& path, std::uint64_t n) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open stream file: " + path);
    return stream::parse_stream(in, n);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudorandom objects: finite fields, hash families, expander walks, F2 sketches"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "BitSource seed")->capture_default_str();

    // gf
    auto* gf_cmd = app.add_subcommand("gf", "Finite field utilities")->require_subcommand(1);
    std::uint64_t p = 2, deg = 1;
    bool random_mode = false, brute_check = false;
    auto* find_cmd = gf_cmd->add_subcommand("find-irreducible", "Irreducible polynomial of a given degree");
    find_cmd->add_option("--p", p, "prime")->required();
    find_cmd->add_option("--deg", deg, "degree")->required();
    find_cmd->add_flag("--random", random_mode, "sample instead of the smallest index");
    auto* count_cmd = gf_cmd->add_subcommand("count-irreducible", "Gauss count of monic irreducibles");
    count_cmd->add_option("--p", p, "prime")->required();
    count_cmd->add_option("--deg", deg, "degree")->required();
    count_cmd->add_flag("--brute-check", brute_check, "cross-check by Rabin tests over all monic polynomials");

    // pro
    auto* pro_cmd = app.add_subcommand("pro", "Pseudorandom object expressions")->require_subcommand(1);
    std::string spec;
    std::uint64_t count = 1;
    std::string cap_text = "1048576";
    auto* sample_cmd = pro_cmd->add_subcommand("sample", "Sample elements");
    sample_cmd->add_option("--spec", spec, "expression, e.g. H(4,8,L[1,-1])")->required();
    sample_cmd->add_option("--count", count, "number of samples")->capture_default_str();
    auto* dist_cmd = pro_cmd->add_subcommand("dist", "Exact distribution by enumeration");
    dist_cmd->add_option("--spec", spec, "expression")->required();
    dist_cmd->add_option("--cap", cap_text, "maximum enumerated size")->capture_default_str();

    // expander
    auto* exp_cmd = app.add_subcommand("expander", "Expander certification")->require_subcommand(1);
    std::uint64_t n_vertices = 1;
    double lambda = 0.0;
    std::size_t max_dim = spectral::kDenseCap;
    auto* certify_cmd = exp_cmd->add_subcommand("certify", "Spectral report for the degree-16 family");
    certify_cmd->add_option("--n", n_vertices, "vertex count")->required();
    auto* lambda_opt = certify_cmd->add_option("--lambda", lambda, "target spectral bound in (0,1)");
    certify_cmd->add_option("--max-dim", max_dim, "dense cap")->capture_default_str();
    auto* cheeger_cmd = exp_cmd->add_subcommand("cheeger", "Cheeger inequality report (n <= 20)");
    cheeger_cmd->add_option("--n", n_vertices, "vertex count")->required();

    // f2
    auto* f2_cmd = app.add_subcommand("f2", "Second frequency moment")->require_subcommand(1);
    std::string file;
    double eps = 0.5, delta = 0.2;
    std::uint64_t s_override = 0, t_override = 0;
    std::string mode = "hashed";
    bool rand_field = false;
    auto add_stream_opts = [&](CLI::App* cmd) {
        cmd->add_option("--file", file, "stream file")->required();
        cmd->add_option("--n", n_vertices, "universe size")->required();
        cmd->add_option("--eps", eps, "relative error")->capture_default_str();
        cmd->add_option("--delta", delta, "failure probability")->capture_default_str();
        cmd->add_option("--s", s_override, "mean repetitions override");
        cmd->add_option("--t", t_override, "median repetitions override");
        cmd->add_option("--mode", mode, "independent|hashed")->check(CLI::IsMember({"independent", "hashed"}))->capture_default_str();
        cmd->add_flag("--rand-field", rand_field, "randomized field construction");
    };
    auto* f2_exact_cmd = f2_cmd->add_subcommand("exact", "Exact F2");
    auto* f2_basic_cmd = f2_cmd->add_subcommand("basic", "Basic sketch");
    auto* f2_mean_cmd = f2_cmd->add_subcommand("mean", "Mean of s sketches");
    auto* f2_median_cmd = f2_cmd->add_subcommand("median", "Median over an expander walk");
    for (auto* c : {f2_exact_cmd, f2_basic_cmd, f2_mean_cmd, f2_median_cmd}) add_stream_opts(c);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Verification suites")->require_subcommand(1);
    auto* v_kindep = verify_cmd->add_subcommand("k-indep", "Restriction law");
    auto* v_component = verify_cmd->add_subcommand("component", "Component law");
    auto* v_chernoff = verify_cmd->add_subcommand("chernoff", "Exact expander Chernoff tails");
    auto* v_bienayme = verify_cmd->add_subcommand("bienayme", "Bienayme additivity");
    auto* v_all = verify_cmd->add_subcommand("all", "Every suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        BitSource bits(seed);

        if (*find_cmd) {
            if (random_mode) {
                auto r = gf::sample_irreducible(p, deg, bits);
                std::cout << r.poly.to_string() << '\n';
            } else {
                std::cout << gf::find_irreducible_det(p, deg).to_string() << '\n';
            }
            return 0;
        }
        if (*count_cmd) {
            const Natural c = gf::count_irreducible(p, deg);
            std::cout << c << '\n';
            if (brute_check) {
                Natural brute = 0;
                const Natural total = pow_natural(Natural(p), deg);
                for (Natural i = 0; i < total; ++i)
                    if (gf::rabin_test(gf::enum_monic_poly(p, deg, i))) ++brute;
                const bool ok = brute == c;
                harness::print_check(std::cout, "count-irreducible(p=" + std::to_string(p) + ",deg=" + std::to_string(deg) + ")", ok);
                return ok ? 0 : kExitFailed;
            }
            return 0;
        }
        if (*sample_cmd || *dist_cmd) {
            expr::ProExpr e;
            try {
                e = expr::parse_pro_expr(spec);
            } catch (const expr::ParseError& err) {
                std::cerr << err.what() << '\n';
                return kExitUsage;
            }
            const Pro pro = expr::build_pro(e, &bits);
            if (*sample_cmd) {
                for (std::uint64_t i = 0; i < count; ++i) std::cout << sample_pro(pro, bits).render() << '\n';
            } else {
                harness::dump_dist(std::cout, harness::exhaustive_dist(pro, Natural(cap_text)));
            }
            return 0;
        }
        if (*certify_cmd) {
            ExplicitGraph g = see_std(n_vertices);
            std::uint64_t k = 1;
            if (lambda_opt->count() > 0) {
                auto bounded = see_bound(n_vertices, lambda);
                g = bounded.graph;
                k = bounded.power;
            }
            const double lam = spectral::lambda_a(spectral::dense_stochastic(g, max_dim));
            bool pass = lam <= g.claimed_lambda() + spectral::kSlack;
            if (lambda_opt->count() > 0) pass = pass && lam <= lambda + spectral::kSlack;
            report("vertices", g.vertex_count().str());
            report("degree", g.degree().str());
            report("power", std::to_string(k));
            report("lambda_a", real12(lam));
            report("claimed_lambda", real12(g.claimed_lambda()));
            if (lambda_opt->count() > 0) report("target_lambda", real12(lambda));
            report("pass", pass ? "true" : "false");
            return pass ? 0 : kExitFailed;
        }
        if (*cheeger_cmd) {
            const ExplicitGraph g = see_std(n_vertices);
            const auto r = spectral::cheeger_check(g);
            report("vertices", g.vertex_count().str());
            report("degree", g.degree().str());
            report("lambda_2", real12(r.lambda2));
            report("lhs", real12(r.lhs));
            report("h", render_rational(r.h));
            report("rhs", real12(r.rhs));
            report("pass", r.pass ? "true" : "false");
            return r.pass ? 0 : kExitFailed;
        }
        if (*f2_exact_cmd || *f2_basic_cmd || *f2_mean_cmd || *f2_median_cmd) {
            const stream::Stream s = load_stream(file, n_vertices);
            if (*f2_exact_cmd) {
                std::cout << stream::f2_exact(s) << '\n';
                return 0;
            }
            Rational estimate;
            if (*f2_basic_cmd) {
                estimate = stream::estimate_basic(s, bits, rand_field);
            } else if (*f2_mean_cmd) {
                const std::uint64_t reps = s_override > 0 ? s_override : stream::mean_repetitions(eps);
                estimate = stream::estimate_mean(s, reps, mode == "hashed" ? stream::MeanMode::hashed : stream::MeanMode::independent,
                                                 bits, rand_field);
            } else {
                auto params = stream::EstimatorParams::from(eps, delta);
                if (s_override > 0) params.s = s_override;
                if (t_override > 0) params.t = t_override;
                estimate = stream::estimate_median_expander(s, params, bits);
            }
            std::cout << real12(estimate.convert_to<double>()) << '\n';
            return 0;
        }
        if (*verify_cmd) {
            bool pass = true;
            const bool all = static_cast<bool>(*v_all);
            if (all || *v_kindep) pass = suites::run_k_indep(std::cout) && pass;
            if (all || *v_component) pass = suites::run_component(std::cout) && pass;
            if (all || *v_bienayme) pass = suites::run_bienayme(std::cout) && pass;
            if (all || *v_chernoff) pass = suites::run_chernoff(std::cout) && pass;
            return pass ? 0 : kExitFailed;
        }
    } catch (const NotPrimePower& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const expr::MissingBitSource& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
    return kExitUsage;
}
