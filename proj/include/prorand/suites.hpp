#pragma once

#include "prorand/expander.hpp"
#include "prorand/harness.hpp"
#include "prorand/hash.hpp"
#include "prorand/pro.hpp"
#include "prorand/spectral.hpp"
#include "prorand/stream.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace prorand::suites {

struct HashConfig {
    std::uint64_t k;
    std::uint64_t n;
    std::string inner_text;
    std::function<Pro()> inner;
};

/// Hash families small enough for exhaustive seed enumeration.
inline std::vector<HashConfig> hash_battery() {
    return {
        {2, 2, "N(2)", [] { return nat_pro(2); }},
        {4, 2, "L[1,-1]", [] { return list_pro(std::vector<long long>{1, -1}); }},
        {2, 3, "N(3)", [] { return nat_pro(3); }},
        {2, 4, "N(4)", [] { return nat_pro(4); }},
        {3, 3, "N(3)", [] { return nat_pro(3); }},
        {2, 5, "N(5)", [] { return nat_pro(5); }},
    };
}

inline std::string config_name(const HashConfig& c) {
    return "(" + std::to_string(c.k) + "," + std::to_string(c.n) + "," + c.inner_text + ")";
}

inline bool run_k_indep(std::ostream& out) {
    bool all = true;
    out << "k\tn\tinner\tseeds\tsubsets\tmax_size\n";
    for (const auto& c : hash_battery()) {
        const auto family = HashFamily::deterministic(c.k, c.n, c.inner());
        const auto r = harness::check_k_indep(family);
        out << c.k << '\t' << c.n << '\t' << c.inner_text << '\t' << family.size() << '\t' << r.subsets_checked << '\t'
            << (r.sizes_covered.empty() ? 0 : r.sizes_covered.back()) << '\n';
        harness::print_check(out, "k-indep" + config_name(c), r.pass);
        all = all && r.pass;
    }
    return all;
}

inline bool run_component(std::ostream& out) {
    bool all = true;
    for (const auto& c : hash_battery()) {
        const auto family = HashFamily::deterministic(c.k, c.n, c.inner());
        bool pass = true;
        for (std::uint64_t i = 0; i < c.n; ++i) pass = pass && harness::check_component(family, i);
        harness::print_check(out, "component" + config_name(c), pass);
        all = all && pass;
    }
    return all;
}

inline bool run_bienayme(std::ostream& out) {
    bool all = true;
    out << "case\tvariance_of_sum\tsum_of_variances\n";
    for (const auto& c : hash_battery()) {
        const auto family = HashFamily::deterministic(c.k, c.n, c.inner());
        const auto r = harness::bienayme_hash(family);
        out << config_name(c) << '\t' << render_rational(r.variance_of_sum) << '\t' << render_rational(r.sum_of_variances) << '\n';
        harness::print_check(out, "bienayme" + config_name(c), r.pass);
        all = all && r.pass;
    }
    const std::vector<stream::Stream> streams = {{2, {0, 1}}, {3, {0, 0, 2}}, {4, {0, 1, 1, 3}}};
    for (const auto& s : streams) {
        for (std::uint64_t reps : {2, 3, 4}) {
            const auto r = harness::bienayme_mean_estimator(s, reps);
            const std::string name = "bienayme-f2(n=" + std::to_string(s.n) + ",m=" + std::to_string(s.xs.size()) +
                                     ",s=" + std::to_string(reps) + ")";
            out << name << '\t' << render_rational(r.variance_of_sum) << '\t' << render_rational(r.sum_of_variances) << '\n';
            harness::print_check(out, name, r.pass);
            all = all && r.pass;
        }
    }
    return all;
}

struct ChernoffSummary {
    bool pass = true;
    std::uint64_t cases = 0;
    double worst_margin = 1e300;  // min over cases of bound - tail
};

/// Exact expander-walk tails on walk_pro(l, lambda, N(n)) for every 0/1
/// marking of the n vertices and c in {0, 0.1, ..., 0.9}. With
/// use_spectral_lambda the deviation threshold is c + lambda_a(G) of the
/// actual graph instead of c + lambda.
inline ChernoffSummary chernoff_grid(std::uint64_t n, std::uint64_t l, const Rational& lambda, bool use_spectral_lambda) {
    const WalkFamily walk = walk_family(l, lambda.convert_to<double>(), nat_pro(n));
    const harness::WalkVisitProfile profile(walk);
    Rational threshold_lambda = lambda;
    if (use_spectral_lambda) threshold_lambda = Rational(spectral::lambda_a(walk.graph()));
    ChernoffSummary summary;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        auto marking = [mask](const Element& e) { return ((mask >> e.as_integer().convert_to<unsigned>()) & 1U) ? 1 : 0; };
        for (int tenth = 0; tenth <= 9; ++tenth) {
            const auto r = harness::walk_tail_exact(profile, marking, Rational(tenth, 10), threshold_lambda);
            ++summary.cases;
            summary.pass = summary.pass && r.pass;
            summary.worst_margin = std::min(summary.worst_margin, r.bound - r.tail.convert_to<double>());
        }
    }
    return summary;
}

inline bool run_chernoff(std::ostream& out) {
    bool all = true;
    out << "n\tl\tlambda\tcases\tworst_margin\n";
    for (std::uint64_t n : {2, 4, 6}) {
        for (std::uint64_t l : {2, 3, 4, 5}) {
            for (bool spectral_form : {false, true}) {
                const auto r = chernoff_grid(n, l, Rational(19, 20), spectral_form);
                const std::string form = spectral_form ? "lambda_a(G)" : "19/20";
                out << n << '\t' << l << '\t' << form << '\t' << r.cases << '\t' << r.worst_margin << '\n';
                harness::print_check(out, std::string(spectral_form ? "chernoff-spectral" : "chernoff") + "(n=" + std::to_string(n) +
                                              ",l=" + std::to_string(l) + ")",
                                     r.pass);
                all = all && r.pass;
            }
        }
    }
    return all;
}

}  // namespace prorand::suites
