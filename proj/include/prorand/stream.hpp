#pragma once

#include "prorand/bit_source.hpp"
#include "prorand/core.hpp"
#include "prorand/expander.hpp"
#include "prorand/hash.hpp"
#include "prorand/pro.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace prorand::stream {

/// Sequence of values from the universe [0, n).
struct Stream {
    std::uint64_t n = 1;
    std::vector<std::uint64_t> xs;
};

inline void validate(const Stream& s) {
    require(s.n >= 1, "stream: universe size must be >= 1");
    for (auto x : s.xs)
        if (x >= s.n) throw InvalidArgument("stream: value " + std::to_string(x) + " outside universe [0, " + std::to_string(s.n) + ")");
}

/// Whitespace-separated decimal naturals; values >= n are rejected.
inline Stream parse_stream(std::istream& in, std::uint64_t n) {
    Stream s{n, {}};
    std::string token;
    while (in >> token) {
        require(std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c) != 0; }),
                "stream: not a decimal natural: " + token);
        require(token.size() <= 19, "stream: value too large: " + token);
        s.xs.push_back(std::stoull(token));
    }
    validate(s);
    return s;
}

/// (value, occurrence count) pairs in increasing value order.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> occurrence_counts(const Stream& s) {
    std::map<std::uint64_t, std::uint64_t> counts;
    for (auto x : s.xs) ++counts[x];
    return {counts.begin(), counts.end()};
}

/// F2 = sum over u of c(u)^2.
inline Natural f2_exact(const Stream& s) {
    validate(s);
    Natural total = 0;
    for (const auto& [value, count] : occurrence_counts(s)) total += Natural(count) * count;
    return total;
}

/// s = ceil(8 / eps^2).
inline std::uint64_t mean_repetitions(double eps) {
    require(eps > 0.0, "eps must be > 0");
    return static_cast<std::uint64_t>(std::ceil(8.0 / (eps * eps)));
}

/// t = ceil(32 ln(1 / delta)).
inline std::uint64_t median_repetitions(double delta) {
    require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    auto t = static_cast<std::uint64_t>(std::ceil(32.0 * std::log(1.0 / delta)));
    return std::max<std::uint64_t>(t, 1);
}

struct EstimatorParams {
    double eps;
    double delta;
    std::uint64_t s;
    std::uint64_t t;
    double lambda_walk = 1.0 / 8.0;

    static EstimatorParams from(double eps, double delta) {
        return {eps, delta, mean_repetitions(eps), median_repetitions(delta)};
    }
};

/// Lower median: element at index floor((len - 1) / 2) of the sorted values.
template <typename T>
T median(std::vector<T> values) {
    require(!values.empty(), "median: empty input");
    const std::size_t mid = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    return values[mid];
}

enum class MeanMode { independent, hashed };

/// The sign family H(4, n, L[1,-1]) and its squared-sum estimator.
class SignSketch {
public:
    explicit SignSketch(HashFamily family) : family_(std::move(family)) {
        for (Natural i = 0; i < family_.range_size(); ++i)
            signs_.push_back(family_.inner().select(i).as_integer().convert_to<long long>());
    }

    static SignSketch deterministic(std::uint64_t n) {
        return SignSketch(HashFamily::deterministic(4, n, list_pro(std::vector<long long>{1, -1})));
    }
    static SignSketch randomized(std::uint64_t n, BitSource& bits) {
        return SignSketch(HashFamily::randomized(4, n, list_pro(std::vector<long long>{1, -1}), bits));
    }

    const HashFamily& family() const { return family_; }

    /// (sum over the stream of h(x))^2 for the function with the given seed.
    Natural value(const Natural& seed, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts) const {
        const HashFunction h = family_.function(seed);
        long long sum = 0;
        for (const auto& [x, c] : counts) {
            const std::uint64_t idx = h.has_small_path() ? h.range_index_small(x) : h.range_index(x).convert_to<std::uint64_t>();
            sum += signs_[idx] * static_cast<long long>(c);
        }
        return Natural(sum) * sum;
    }

private:
    HashFamily family_;
    std::vector<long long> signs_;
};

/// One draw of the basic tug-of-war estimator.
inline Rational estimate_basic(const Stream& s, BitSource& bits, bool randomized_field = false) {
    validate(s);
    const SignSketch sketch = randomized_field ? SignSketch::randomized(s.n, bits) : SignSketch::deterministic(s.n);
    return Rational(sketch.value(bits.uniform_below(sketch.family().size()), occurrence_counts(s)));
}

/// H(2, s, H(4, n, L[1,-1])): one seed yields s pairwise independent sketch seeds.
class MeanSketch {
public:
    MeanSketch(SignSketch inner, std::uint64_t s)
        : inner_(std::move(inner)), outer_(HashFamily::deterministic(2, s, inner_.family().as_pro())), s_(s) {
        require(s >= 1, "mean estimator: s must be >= 1");
    }

    const SignSketch& inner() const { return inner_; }
    const HashFamily& outer() const { return outer_; }
    std::uint64_t repetitions() const { return s_; }

    /// Component values for the outer seed.
    std::vector<Natural> components(const Natural& seed,
                                    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts) const {
        const HashFunction g = outer_.function(seed);
        std::vector<Natural> out;
        out.reserve(s_);
        for (std::uint64_t j = 0; j < s_; ++j) out.push_back(inner_.value(g.range_index(j), counts));
        return out;
    }

    Rational value(const Natural& seed, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts) const {
        Natural total = 0;
        for (const auto& v : components(seed, counts)) total += v;
        return Rational(total, s_);
    }

private:
    SignSketch inner_;
    HashFamily outer_;
    std::uint64_t s_;
};

/// Mean of s basic estimates, with independent or pairwise independent seeds.
inline Rational estimate_mean(const Stream& s, std::uint64_t repetitions, MeanMode mode, BitSource& bits,
                              bool randomized_field = false) {
    validate(s);
    require(repetitions >= 1, "estimate_mean: s must be >= 1");
    const auto counts = occurrence_counts(s);
    SignSketch sketch = randomized_field ? SignSketch::randomized(s.n, bits) : SignSketch::deterministic(s.n);
    if (mode == MeanMode::independent) {
        Natural total = 0;
        for (std::uint64_t j = 0; j < repetitions; ++j) total += sketch.value(bits.uniform_below(sketch.family().size()), counts);
        return Rational(total, repetitions);
    }
    const MeanSketch mean(std::move(sketch), repetitions);
    return mean.value(bits.uniform_below(mean.outer().size()), counts);
}

/// E(t, lambda, H(2, s, H(4, n, L[1,-1]))) with the median of the t walk
/// estimates.
class MedianSketch {
public:
    MedianSketch(MeanSketch mean, std::uint64_t t, double lambda_walk)
        : mean_(std::move(mean)), walk_(walk_family(t, lambda_walk, mean_.outer().as_pro())) {}

    const MeanSketch& mean() const { return mean_; }
    const WalkFamily& walk() const { return walk_; }

    std::vector<Rational> estimates(const Natural& walk_index,
                                    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts) const {
        std::vector<Rational> out;
        for (const auto& v : walk_.vertices(walk_index)) out.push_back(mean_.value(v, counts));
        return out;
    }

    Rational value(const Natural& walk_index, const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts) const {
        return median(estimates(walk_index, counts));
    }

private:
    MeanSketch mean_;
    WalkFamily walk_;
};

inline MedianSketch make_median_sketch(const Stream& s, std::uint64_t repetitions, std::uint64_t walk_length,
                                       double lambda_walk = 1.0 / 8.0) {
    return MedianSketch(MeanSketch(SignSketch::deterministic(s.n), repetitions), walk_length, lambda_walk);
}

/// Median of t mean-estimates read off one expander walk.
inline Rational estimate_median_expander(const Stream& s, const EstimatorParams& params, BitSource& bits) {
    validate(s);
    require(params.s >= 1 && params.t >= 1, "estimate_median_expander: s and t must be >= 1");
    const MedianSketch sketch = make_median_sketch(s, params.s, params.t, params.lambda_walk);
    return sketch.value(bits.uniform_below(sketch.walk().size()), occurrence_counts(s));
}

}  // namespace prorand::stream
