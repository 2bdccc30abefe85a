#pragma once

#include "prorand/bit_source.hpp"
#include "prorand/core.hpp"
#include "prorand/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace prorand::spectral {

inline constexpr double kSlack = 1e-9;
inline constexpr std::size_t kDenseCap = 512;

/// Dense symmetric matrix, row-major.
struct DenseSym {
    std::size_t n = 0;
    std::vector<double> entries;

    double operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
    double& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
};

/// Exact adjacency counts a_vw = |{i : neighbor(v, i) = w}|, row-major.
/// Enumerates every slot, so n * d is capped.
inline std::vector<std::uint64_t> adjacency_counts(const ExplicitGraph& g, std::size_t max_dim = kDenseCap) {
    if (g.vertex_count() > max_dim) throw SizeExceedsCap(g.vertex_count(), max_dim);
    if (g.vertex_count() * g.degree() > (Natural(1) << 26)) throw SizeExceedsCap(g.vertex_count() * g.degree(), Natural(1) << 26);
    const auto n = g.vertex_count().convert_to<std::size_t>();
    const auto d = g.degree().convert_to<std::uint64_t>();
    std::vector<std::uint64_t> counts(n * n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (std::uint64_t i = 0; i < d; ++i) ++counts[v * n + g.neighbor(v, i).convert_to<std::size_t>()];
    return counts;
}

inline DenseSym multiply(const DenseSym& a, const DenseSym& b) {
    DenseSym c{a.n, std::vector<double>(a.n * a.n, 0.0)};
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = 0; k < a.n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < a.n; ++j) c(i, j) += aik * b(k, j);
        }
    // Products of commuting symmetric powers are symmetric; remove rounding skew.
    for (std::size_t i = 0; i < c.n; ++i)
        for (std::size_t j = i + 1; j < c.n; ++j) c(i, j) = c(j, i) = 0.5 * (c(i, j) + c(j, i));
    return c;
}

/// Stochastic matrix: adjacency counts divided by the degree. Powers of
/// graphs too wide to enumerate are evaluated as the matrix power of their
/// base graph's stochastic matrix.
inline DenseSym dense_stochastic(const ExplicitGraph& g, std::size_t max_dim = kDenseCap) {
    if (g.vertex_count() > max_dim) throw SizeExceedsCap(g.vertex_count(), max_dim);
    const auto n = g.vertex_count().convert_to<std::size_t>();
    if (g.vertex_count() * g.degree() > (Natural(1) << 26)) {
        auto lineage = power_lineage(g);
        if (!lineage) throw SizeExceedsCap(g.vertex_count() * g.degree(), Natural(1) << 26);
        DenseSym base = dense_stochastic(lineage->first, max_dim);
        DenseSym result{n, std::vector<double>(n * n, 0.0)};
        for (std::size_t i = 0; i < n; ++i) result(i, i) = 1.0;
        for (std::uint64_t k = lineage->second; k > 0; k >>= 1U) {
            if (k & 1U) result = multiply(result, base);
            if (k > 1) base = multiply(base, base);
        }
        return result;
    }
    const auto counts = adjacency_counts(g, max_dim);
    const double d = g.degree().convert_to<double>();
    DenseSym m{n, std::vector<double>(n * n)};
    for (std::size_t i = 0; i < n * n; ++i) m.entries[i] = static_cast<double>(counts[i]) / d;
    return m;
}

struct EigenOptions {
    double tolerance = 1e-12;
    int max_sweeps = 100;
};

/// All eigenvalues, descending, by cyclic Jacobi rotations.
inline std::vector<double> eigenvalues_sym(DenseSym a, EigenOptions options = {}) {
    const std::size_t n = a.n;
    require(n <= kDenseCap, "eigenvalues_sym: dimension exceeds dense cap");
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };
    int sweep = 0;
    while (off_norm() > options.tolerance) {
        if (++sweep > options.max_sweeps) throw Error("eigenvalues_sym: no convergence");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::abs(theta) > 1e150
                                     ? 0.5 / theta
                                     : (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
            }
        }
    }
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

/// Spectral norm of (A - J), J the all-1/n matrix. Equals the largest
/// eigenvalue magnitude on the complement of the stationary vector even when
/// eigenvalue 1 is repeated.
inline double lambda_a(const DenseSym& stochastic) {
    DenseSym m = stochastic;
    const double j = 1.0 / static_cast<double>(m.n);
    for (auto& x : m.entries) x -= j;
    double best = 0.0;
    for (double v : eigenvalues_sym(std::move(m))) best = std::max(best, std::abs(v));
    return best;
}

inline double lambda_a(const ExplicitGraph& g) { return lambda_a(dense_stochastic(g)); }

/// Second largest signed eigenvalue of the stochastic matrix.
inline double lambda_2(const ExplicitGraph& g) {
    require(g.vertex_count() >= 2, "lambda_2: graph needs at least two vertices");
    return eigenvalues_sym(dense_stochastic(g))[1];
}

/// h(G) = min over 0 < |S| <= n/2 of E(S, V \ S) / |S|, exact. Self-loops
/// never cross a cut; parallel edges count with multiplicity.
inline Rational edge_expansion(const ExplicitGraph& g) {
    require(g.vertex_count() >= 2, "edge_expansion: graph needs at least two vertices");
    if (g.vertex_count() > 20) throw SizeExceedsCap(g.vertex_count(), 20);
    const auto n = g.vertex_count().convert_to<std::size_t>();
    const auto counts = adjacency_counts(g);
    Rational best = -1;
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (2 * size > n) continue;
        std::uint64_t crossing = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (!((mask >> v) & 1U)) continue;
            for (std::size_t w = 0; w < n; ++w)
                if (!((mask >> w) & 1U)) crossing += counts[v * n + w];
        }
        Rational ratio(crossing, size);
        if (best < 0 || ratio < best) best = ratio;
    }
    return best;
}

struct CheegerReport {
    double lhs;
    Rational h;
    double rhs;
    double lambda2;
    bool pass;
};

/// d/2 * (1 - lambda_2) <= h(G) <= d * sqrt(2 * (1 - lambda_2)).
inline CheegerReport cheeger_check(const ExplicitGraph& g) {
    const double d = g.degree().convert_to<double>();
    const double l2 = lambda_2(g);
    const Rational h = edge_expansion(g);
    const double hv = h.convert_to<double>();
    const double lhs = d / 2.0 * (1.0 - l2);
    const double rhs = d * std::sqrt(std::max(0.0, 2.0 * (1.0 - l2)));
    return {lhs, h, rhs, l2, lhs <= hv + kSlack && hv <= rhs + kSlack};
}

struct QuadraticFormReport {
    std::uint64_t trials;
    double lambda_a;
    double worst_full;       // max of |x'Ax| - (lambda ||x||^2 + (1 - lambda)(x'u)^2)
    double worst_orthogonal; // max of |x'Ax| - lambda over unit x orthogonal to u
    bool pass;
};

/// Random-vector check of |x'Ax| <= lambda_a ||x||^2 + (1 - lambda_a)(x'u)^2,
/// and of |x'Ax| <= lambda_a for unit x orthogonal to u.
inline QuadraticFormReport quadratic_form_check(const ExplicitGraph& g, std::uint64_t trials, BitSource& bits) {
    const DenseSym a = dense_stochastic(g);
    const double lam = lambda_a(a);
    const std::size_t n = a.n;
    const double u = 1.0 / std::sqrt(static_cast<double>(n));
    auto form = [&](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) s += x[i] * a(i, j) * x[j];
        return s;
    };
    QuadraticFormReport report{trials, lam, -1e300, -1e300, true};
    std::vector<double> x(n);
    for (std::uint64_t t = 0; t < trials; ++t) {
        double norm2 = 0.0, dot_u = 0.0;
        for (auto& xi : x) {
            xi = 2.0 * bits.next_unit() - 1.0;
            norm2 += xi * xi;
            dot_u += xi * u;
        }
        report.worst_full = std::max(report.worst_full, std::abs(form(x)) - (lam * norm2 + (1.0 - lam) * dot_u * dot_u));
        double mean = 0.0;
        for (double xi : x) mean += xi;
        mean /= static_cast<double>(n);
        double pnorm2 = 0.0;
        for (auto& xi : x) {
            xi -= mean;
            pnorm2 += xi * xi;
        }
        if (pnorm2 > 1e-18) {
            const double inv = 1.0 / std::sqrt(pnorm2);
            for (auto& xi : x) xi *= inv;
            report.worst_orthogonal = std::max(report.worst_orthogonal, std::abs(form(x)) - lam);
        }
    }
    report.pass = report.worst_full <= kSlack && report.worst_orthogonal <= kSlack;
    return report;
}

}  // namespace prorand::spectral
