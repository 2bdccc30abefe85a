#pragma once

#include "prorand/core.hpp"
#include "prorand/element.hpp"
#include "prorand/expander.hpp"
#include "prorand/hash.hpp"
#include "prorand/pro.hpp"
#include "prorand/stream.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace prorand::harness {

inline const Natural kDefaultCap = Natural(1) << 20;

/// Exact law: element -> probability, all positive and summing to 1.
using ExactDist = std::map<Element, Rational>;

inline Rational total_mass(const ExactDist& dist) {
    Rational sum = 0;
    for (const auto& [e, p] : dist) sum += p;
    return sum;
}

/// Distribution of select over every index: multiplicity / size.
inline ExactDist exhaustive_dist(const Pro& pro, const Natural& cap = kDefaultCap) {
    if (pro.size() > cap) throw SizeExceedsCap(pro.size(), cap);
    std::map<Element, Natural> counts;
    for (Natural i = 0; i < pro.size(); ++i) ++counts[pro.select(i)];
    ExactDist dist;
    for (auto& [e, c] : counts) dist.emplace(e, Rational(c, pro.size()));
    return dist;
}

/// One `element<TAB>num/den` line per element, sorted by rendering.
inline void dump_dist(std::ostream& out, const ExactDist& dist) {
    std::vector<std::pair<std::string, Rational>> rows;
    for (const auto& [e, p] : dist) rows.emplace_back(e.render(), p);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [text, p] : rows) out << text << '\t' << render_rational(p) << '\n';
}

/// Mean and variance of an integer-valued law.
inline Rational dist_mean(const ExactDist& dist) {
    Rational m = 0;
    for (const auto& [e, p] : dist) m += p * Rational(e.as_integer());
    return m;
}

inline Rational dist_variance(const ExactDist& dist) {
    const Rational m = dist_mean(dist);
    Rational v = 0;
    for (const auto& [e, p] : dist) {
        Rational d = Rational(e.as_integer()) - m;
        v += p * d * d;
    }
    return v;
}

namespace detail {

inline void for_each_subset(std::size_t n, std::size_t max_size,
                            const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> current;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (!current.empty()) visit(current);
        if (current.size() == max_size) return;
        for (std::size_t i = start; i < n; ++i) {
            current.push_back(i);
            rec(i + 1);
            current.pop_back();
        }
    };
    rec(0);
}

// |J|-fold product law of `base` keyed by tuples.
inline ExactDist product_law(const ExactDist& base, std::size_t arity) {
    ExactDist out{{Element::tuple({}), Rational(1)}};
    for (std::size_t r = 0; r < arity; ++r) {
        ExactDist next;
        for (const auto& [prefix, p] : out)
            for (const auto& [e, q] : base) {
                auto items = prefix.items();
                items.push_back(e);
                next.emplace(Element::tuple(std::move(items)), p * q);
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace detail

struct KIndepReport {
    bool pass = true;
    std::vector<std::size_t> sizes_covered;
    std::uint64_t subsets_checked = 0;
    std::string failure;
};

/// Restriction law: for every J with |J| <= k, the joint law of (h(x))_{x in J}
/// over all seeds equals the |J|-fold product of the inner law.
inline KIndepReport check_k_indep(const HashFamily& family, const Natural& cap = kDefaultCap) {
    const std::uint64_t k = family.independence();
    if (family.size() > cap) throw SizeExceedsCap(family.size(), cap);
    if (pow_natural(family.range_size(), k) > cap) throw SizeExceedsCap(pow_natural(family.range_size(), k), cap);
    require(family.domain_size() <= 64, "check_k_indep: domain too large for subset enumeration");
    const auto n = family.domain_size().convert_to<std::size_t>();
    const ExactDist inner_law = exhaustive_dist(family.inner(), cap);
    const std::size_t max_size = std::min<std::size_t>(k, n);

    std::vector<std::vector<std::size_t>> subsets;
    detail::for_each_subset(n, max_size, [&](const std::vector<std::size_t>& j) { subsets.push_back(j); });
    std::vector<std::map<Element, Natural>> joint(subsets.size());

    for (Natural seed = 0; seed < family.size(); ++seed) {
        const HashFunction h = family.function(seed);
        std::vector<Element> table;
        table.reserve(n);
        for (std::size_t x = 0; x < n; ++x) table.push_back(h.at(x));
        for (std::size_t s = 0; s < subsets.size(); ++s) {
            std::vector<Element> key;
            for (auto x : subsets[s]) key.push_back(table[x]);
            ++joint[s][Element::tuple(std::move(key))];
        }
    }

    KIndepReport report;
    std::vector<ExactDist> product_by_size(max_size + 1);
    for (std::size_t r = 1; r <= max_size; ++r) {
        product_by_size[r] = detail::product_law(inner_law, r);
        report.sizes_covered.push_back(r);
    }
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        ExactDist law;
        for (auto& [e, c] : joint[s]) law.emplace(e, Rational(c, family.size()));
        ++report.subsets_checked;
        if (law != product_by_size[subsets[s].size()]) {
            report.pass = false;
            std::string j;
            for (auto x : subsets[s]) j += (j.empty() ? "" : ",") + std::to_string(x);
            report.failure = "joint law differs from product law at J={" + j + "}";
            break;
        }
    }
    return report;
}

inline KIndepReport check_k_indep(std::uint64_t k, const Natural& n, const Pro& inner, const Natural& cap = kDefaultCap) {
    return check_k_indep(HashFamily::deterministic(k, n, inner), cap);
}

/// Law of h(i) over all seeds equals the inner law.
inline bool check_component(const HashFamily& family, const Natural& i, const Natural& cap = kDefaultCap) {
    require(i >= 0 && i < family.domain_size(), "check_component: i must be < n");
    if (family.size() > cap) throw SizeExceedsCap(family.size(), cap);
    std::map<Element, Natural> counts;
    for (Natural seed = 0; seed < family.size(); ++seed) ++counts[family.function(seed).at(i)];
    ExactDist law;
    for (auto& [e, c] : counts) law.emplace(e, Rational(c, family.size()));
    return law == exhaustive_dist(family.inner(), cap);
}

inline bool check_component(std::uint64_t k, const Natural& n, const Pro& inner, const Natural& i,
                            const Natural& cap = kDefaultCap) {
    return check_component(HashFamily::deterministic(k, n, inner), i, cap);
}

/// Multiset of per-vertex visit counts over every walk index, so tails for
/// many markings and thresholds come from a single enumeration.
class WalkVisitProfile {
public:
    explicit WalkVisitProfile(const WalkFamily& walk, const Natural& cap = kDefaultCap)
        : length_(walk.length()), total_(walk.size()) {
        if (walk.size() > cap) throw SizeExceedsCap(walk.size(), cap);
        require(walk.inner().size() <= 4096, "walk profile: too many vertices");
        vertices_ = walk.inner().size().convert_to<std::size_t>();
        for (std::size_t v = 0; v < vertices_; ++v) elements_.push_back(walk.inner().select(v));
        for (Natural i = 0; i < walk.size(); ++i) {
            std::vector<std::uint32_t> visits(vertices_, 0);
            for (const auto& v : walk.vertices(i)) ++visits[v.convert_to<std::size_t>()];
            ++profile_[visits];
        }
        inner_law_ = exhaustive_dist(walk.inner(), cap);
    }

    std::uint64_t length() const { return length_; }
    const Natural& walks() const { return total_; }
    const std::vector<Element>& vertex_elements() const { return elements_; }

    /// Exact P(|(1/l) sum f(v_i) - mu| >= threshold), mu the mean of f under
    /// the inner law.
    Rational tail(const std::function<int(const Element&)>& marking, const Rational& threshold) const {
        std::vector<int> f(vertices_);
        for (std::size_t v = 0; v < vertices_; ++v) f[v] = marking(elements_[v]);
        Rational mu = 0;
        for (const auto& [e, p] : inner_law_) mu += p * marking(e);
        Natural hits = 0;
        for (const auto& [visits, mult] : profile_) {
            long long sum = 0;
            for (std::size_t v = 0; v < vertices_; ++v) sum += static_cast<long long>(visits[v]) * f[v];
            Rational dev = Rational(sum, length_) - mu;
            if (dev < 0) dev = -dev;
            if (dev >= threshold) hits += mult;
        }
        return Rational(hits, total_);
    }

private:
    std::uint64_t length_;
    Natural total_;
    std::size_t vertices_ = 0;
    std::vector<Element> elements_;
    std::map<std::vector<std::uint32_t>, Natural> profile_;
    ExactDist inner_law_;
};

struct TailReport {
    Rational tail;
    double bound;
    bool pass;
};

inline constexpr double kTailSlack = 1e-12;

/// Deviation threshold c + lambda against the bound 2 exp(-l c^2).
inline TailReport walk_tail_exact(const WalkVisitProfile& profile, const std::function<int(const Element&)>& marking,
                                  const Rational& c, const Rational& lambda) {
    const double cd = c.convert_to<double>();
    const double bound = 2.0 * std::exp(-static_cast<double>(profile.length()) * cd * cd);
    Rational tail = profile.tail(marking, c + lambda);
    return {tail, bound, tail.convert_to<double>() <= bound + kTailSlack};
}

inline TailReport walk_tail_exact(std::uint64_t l, const Rational& lambda, const Pro& inner,
                                  const std::function<int(const Element&)>& marking, const Rational& c,
                                  const Natural& cap = kDefaultCap) {
    const WalkFamily walk = walk_family(l, lambda.convert_to<double>(), inner);
    return walk_tail_exact(WalkVisitProfile(walk, cap), marking, c, lambda);
}

/// Exact law of each walk coordinate over all indices.
inline std::vector<ExactDist> coordinate_laws(const WalkFamily& walk, const Natural& cap = kDefaultCap) {
    if (walk.size() > cap) throw SizeExceedsCap(walk.size(), cap);
    std::vector<std::map<Element, Natural>> counts(walk.length());
    for (Natural i = 0; i < walk.size(); ++i) {
        const Element tuple = walk.select(i);
        for (std::size_t t = 0; t < walk.length(); ++t) ++counts[t][tuple.items()[t]];
    }
    std::vector<ExactDist> laws(walk.length());
    for (std::size_t t = 0; t < walk.length(); ++t)
        for (auto& [e, c] : counts[t]) laws[t].emplace(e, Rational(c, walk.size()));
    return laws;
}

/// Law of (sum_x h(x))^2 over all 2^n sign functions h: [0, n) -> {-1, 1}.
inline ExactDist f2_oracle_dist(const stream::Stream& s) {
    stream::validate(s);
    require(s.n <= 16, "f2_oracle_dist: n must be <= 16");
    const std::uint64_t functions = std::uint64_t{1} << s.n;
    const auto counts = stream::occurrence_counts(s);
    std::map<Element, Natural> tally;
    for (std::uint64_t mask = 0; mask < functions; ++mask) {
        long long sum = 0;
        for (const auto& [x, c] : counts) sum += ((mask >> x) & 1U) ? -static_cast<long long>(c) : static_cast<long long>(c);
        ++tally[Element::integer(Natural(sum) * sum)];
    }
    ExactDist dist;
    for (auto& [e, c] : tally) dist.emplace(e, Rational(c, functions));
    return dist;
}

/// Law of the basic estimator over every seed of its sign family.
inline ExactDist basic_estimator_dist(const stream::Stream& s, const stream::SignSketch& sketch,
                                      const Natural& cap = kDefaultCap) {
    const auto& family = sketch.family();
    if (family.size() > cap) throw SizeExceedsCap(family.size(), cap);
    const auto counts = stream::occurrence_counts(s);
    std::map<Element, Natural> tally;
    for (Natural seed = 0; seed < family.size(); ++seed) ++tally[Element::integer(sketch.value(seed, counts))];
    ExactDist dist;
    for (auto& [e, c] : tally) dist.emplace(e, Rational(c, family.size()));
    return dist;
}

inline ExactDist basic_estimator_dist(const stream::Stream& s, const Natural& cap = kDefaultCap) {
    return basic_estimator_dist(s, stream::SignSketch::deterministic(s.n), cap);
}

/// Exact P(|estimate - F2| > eps * F2) for the hashed mean estimator, over
/// every outer seed.
inline Rational mean_failure_exact(const stream::Stream& s, std::uint64_t repetitions, const Rational& eps,
                                   const Natural& cap = kDefaultCap) {
    const stream::MeanSketch sketch(stream::SignSketch::deterministic(s.n), repetitions);
    if (sketch.outer().size() > cap) throw SizeExceedsCap(sketch.outer().size(), cap);
    const Rational f2(stream::f2_exact(s));
    const auto counts = stream::occurrence_counts(s);
    Natural failures = 0;
    for (Natural seed = 0; seed < sketch.outer().size(); ++seed) {
        Rational dev = sketch.value(seed, counts) - f2;
        if (dev < 0) dev = -dev;
        if (dev > eps * f2) ++failures;
    }
    return Rational(failures, sketch.outer().size());
}

struct BienaymeReport {
    Rational variance_of_sum;
    Rational sum_of_variances;
    bool pass;
};

/// Variance of sum_i X_i versus sum_i Var(X_i) over a uniform seed space,
/// where variables(seed) returns (X_0(seed), X_1(seed), ...).
inline BienaymeReport bienayme_exact(const Natural& seeds,
                                     const std::function<std::vector<Rational>(const Natural&)>& variables) {
    std::vector<Rational> sum1, sum2;
    Rational total1 = 0, total2 = 0;
    for (Natural seed = 0; seed < seeds; ++seed) {
        const auto xs = variables(seed);
        if (sum1.empty()) {
            sum1.assign(xs.size(), Rational(0));
            sum2.assign(xs.size(), Rational(0));
        }
        Rational total = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sum1[i] += xs[i];
            sum2[i] += xs[i] * xs[i];
            total += xs[i];
        }
        total1 += total;
        total2 += total * total;
    }
    const Rational count(seeds);
    auto variance = [&](const Rational& s1, const Rational& s2) { return s2 / count - (s1 / count) * (s1 / count); };
    Rational sum_var = 0;
    for (std::size_t i = 0; i < sum1.size(); ++i) sum_var += variance(sum1[i], sum2[i]);
    const Rational var_sum = variance(total1, total2);
    return {var_sum, sum_var, var_sum == sum_var};
}

/// X_i = h(i) for an integer-valued hash family with k >= 2.
inline BienaymeReport bienayme_hash(const HashFamily& family, const Natural& cap = kDefaultCap) {
    if (family.size() > cap) throw SizeExceedsCap(family.size(), cap);
    const auto n = family.domain_size().convert_to<std::size_t>();
    return bienayme_exact(family.size(), [&](const Natural& seed) {
        const HashFunction h = family.function(seed);
        std::vector<Rational> xs;
        for (std::size_t x = 0; x < n; ++x) xs.emplace_back(h.at(x).as_integer());
        return xs;
    });
}

/// X_j = j-th basic estimate inside the hashed mean estimator.
inline BienaymeReport bienayme_mean_estimator(const stream::Stream& s, std::uint64_t repetitions,
                                              const Natural& cap = kDefaultCap) {
    const stream::MeanSketch sketch(stream::SignSketch::deterministic(s.n), repetitions);
    if (sketch.outer().size() > cap) throw SizeExceedsCap(sketch.outer().size(), cap);
    const auto counts = stream::occurrence_counts(s);
    return bienayme_exact(sketch.outer().size(), [&](const Natural& seed) {
        std::vector<Rational> xs;
        for (const auto& v : sketch.components(seed, counts)) xs.emplace_back(v);
        return xs;
    });
}

struct MonteCarloReport {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Two-sided Hoeffding half-width sqrt(ln(2 / alpha) / (2 trials)) at 99%.
inline double hoeffding_half_width(std::uint64_t trials, double alpha = 0.01) {
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(trials)));
}

/// Runs estimator with BitSource(base_seed + i) for i < trials and counts
/// |estimate - truth| > eps * truth.
inline MonteCarloReport monte_carlo_failure(const std::function<Rational(BitSource&)>& estimator, const Rational& truth,
                                            const Rational& eps, std::uint64_t trials, std::uint64_t base_seed) {
    require(trials >= 1, "monte_carlo_failure: trials must be >= 1");
    MonteCarloReport report;
    report.trials = trials;
    for (std::uint64_t i = 0; i < trials; ++i) {
        BitSource bits(base_seed + i);
        Rational dev = estimator(bits) - truth;
        if (dev < 0) dev = -dev;
        if (dev > eps * truth) ++report.failures;
    }
    report.rate = static_cast<double>(report.failures) / static_cast<double>(trials);
    const double half = hoeffding_half_width(trials);
    report.ci_low = std::max(0.0, report.rate - half);
    report.ci_high = std::min(1.0, report.rate + half);
    return report;
}

/// `CHECK <name> PASS|FAIL`
inline void print_check(std::ostream& out, const std::string& name, bool pass) {
    out << "CHECK " << name << ' ' << (pass ? "PASS" : "FAIL") << '\n';
}

}  // namespace prorand::harness
