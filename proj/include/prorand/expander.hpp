#pragma once

#include "prorand/core.hpp"
#include "prorand/element.hpp"
#include "prorand/pro.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace prorand {

class ExplicitGraph;

namespace detail {

class GraphImpl {
public:
    virtual ~GraphImpl() = default;
    // v < vertex_count and slot < degree are checked by the caller.
    virtual Natural neighbor(const Natural& v, const Natural& slot) const = 0;
};

}  // namespace detail

/// Strongly explicit regular multigraph: neighbors are computed from the
/// vertex index and edge slot, never stored. A self-loop occupies one slot.
/// `claimed_lambda` is metadata only; certification is done numerically.
class ExplicitGraph {
public:
    ExplicitGraph(Natural vertex_count, Natural degree, double claimed_lambda,
                  std::shared_ptr<const detail::GraphImpl> impl)
        : vertex_count_(std::move(vertex_count)),
          degree_(std::move(degree)),
          claimed_lambda_(claimed_lambda),
          impl_(std::move(impl)) {
        require(vertex_count_ >= 1, "graph must have at least one vertex");
        require(degree_ >= 1, "graph degree must be >= 1");
    }

    const Natural& vertex_count() const { return vertex_count_; }
    const Natural& degree() const { return degree_; }
    double claimed_lambda() const { return claimed_lambda_; }

    Natural neighbor(const Natural& v, const Natural& slot) const {
        require(v >= 0 && v < vertex_count_, "neighbor: vertex out of range");
        require(slot >= 0 && slot < degree_, "neighbor: slot out of range");
        return impl_->neighbor(v, slot);
    }

    const detail::GraphImpl& impl() const { return *impl_; }

private:
    Natural vertex_count_;
    Natural degree_;
    double claimed_lambda_;
    std::shared_ptr<const detail::GraphImpl> impl_;
};

namespace detail {

class AdjacencyGraph final : public GraphImpl {
public:
    explicit AdjacencyGraph(std::vector<std::vector<std::uint64_t>> slots) : slots_(std::move(slots)) {}
    Natural neighbor(const Natural& v, const Natural& slot) const override {
        return slots_[v.convert_to<std::size_t>()][slot.convert_to<std::size_t>()];
    }

private:
    std::vector<std::vector<std::uint64_t>> slots_;
};

inline Natural mod_floor(const Natural& a, const Natural& m) {
    Natural r = a % m;
    if (r < 0) r += m;
    return r;
}

// Vertex (x, y) of Z_s x Z_s has index x * s + y.
class MggGraph final : public GraphImpl {
public:
    explicit MggGraph(Natural s) : s_(std::move(s)) {}
    Natural neighbor(const Natural& v, const Natural& slot) const override {
        Natural x, y;
        boost::multiprecision::divide_qr(v, s_, x, y);
        Natural nx = x, ny = y;
        switch (slot.convert_to<int>()) {
        case 0: nx = x + 1; break;
        case 1: nx = x - 1; break;
        case 2: ny = y + 1; break;
        case 3: ny = y - 1; break;
        case 4: ny = y + x; break;
        case 5: ny = y - x; break;
        case 6: nx = x + y; break;
        case 7: nx = x - y; break;
        default: break;
        }
        return mod_floor(nx, s_) * s_ + mod_floor(ny, s_);
    }

private:
    Natural s_;
};

// Vertex j of the base graph becomes j mod m. Slots d..2d-1 of v carry the
// edges of v + m when v < n - m and are self-loops otherwise.
class ContractedGraph final : public GraphImpl {
public:
    ContractedGraph(ExplicitGraph base, Natural m) : base_(std::move(base)), m_(std::move(m)) {
        paired_ = base_.vertex_count() - m_;
    }
    Natural neighbor(const Natural& v, const Natural& slot) const override {
        const Natural& d = base_.degree();
        if (slot < d) return base_.neighbor(v, slot) % m_;
        if (v < paired_) return base_.neighbor(v + m_, slot - d) % m_;
        return v;
    }

private:
    ExplicitGraph base_;
    Natural m_;
    Natural paired_;
};

// Slot i is read as k base-d digits, least significant digit = first step.
class PowerGraph final : public GraphImpl {
public:
    PowerGraph(ExplicitGraph base, std::uint64_t k) : base_(std::move(base)), k_(k) {}
    Natural neighbor(const Natural& v, const Natural& slot) const override {
        Natural at = v, rest = slot, digit;
        for (std::uint64_t t = 0; t < k_; ++t) {
            boost::multiprecision::divide_qr(rest, base_.degree(), rest, digit);
            at = base_.neighbor(at, digit);
        }
        return at;
    }
    const ExplicitGraph& base() const { return base_; }
    std::uint64_t exponent() const { return k_; }

private:
    ExplicitGraph base_;
    std::uint64_t k_;
};

}  // namespace detail

/// Graph from explicit slot lists (test fixtures, parsed dumps).
inline ExplicitGraph graph_from_slots(std::vector<std::vector<std::uint64_t>> slots, double claimed_lambda = 1.0) {
    require(!slots.empty(), "graph_from_slots: no vertices");
    const std::size_t d = slots.front().size();
    for (const auto& row : slots) {
        require(row.size() == d, "graph_from_slots: graph is not regular");
        for (auto w : row) require(w < slots.size(), "graph_from_slots: neighbor out of range");
    }
    Natural n = slots.size();
    return ExplicitGraph(n, d, claimed_lambda, std::make_shared<detail::AdjacencyGraph>(std::move(slots)));
}

inline ExplicitGraph cycle_graph(std::uint64_t n) {
    require(n >= 3, "cycle_graph: n must be >= 3");
    std::vector<std::vector<std::uint64_t>> slots(n);
    for (std::uint64_t v = 0; v < n; ++v) slots[v] = {(v + 1) % n, (v + n - 1) % n};
    return graph_from_slots(std::move(slots));
}

inline ExplicitGraph complete_graph(std::uint64_t n) {
    require(n >= 2, "complete_graph: n must be >= 2");
    std::vector<std::vector<std::uint64_t>> slots(n);
    for (std::uint64_t v = 0; v < n; ++v)
        for (std::uint64_t w = 0; w < n; ++w)
            if (w != v) slots[v].push_back(w);
    return graph_from_slots(std::move(slots));
}

inline const double kMggLambda = 5.0 * std::sqrt(2.0) / 8.0;
/// Spectral bound of the degree-16 family: (5*sqrt(2) + 8) / 16.
inline const double kStdLambda = (5.0 * std::sqrt(2.0) + 8.0) / 16.0;

/// Margulis-Gabber-Galil graph on Z_s x Z_s, degree 8, slots in the order
/// (x+1,y) (x-1,y) (x,y+1) (x,y-1) (x,y+x) (x,y-x) (x+y,y) (x-y,y).
inline ExplicitGraph mgg(const Natural& s) {
    require(s >= 1, "mgg: s must be >= 1");
    return ExplicitGraph(s * s, 8, kMggLambda, std::make_shared<detail::MggGraph>(s));
}

/// Identifies vertex j with j mod m, ceil(n/2) <= m <= n; degree doubles and
/// the spectral bound becomes (lambda + 1) / 2.
inline ExplicitGraph contract(const ExplicitGraph& g, const Natural& m) {
    const Natural& n = g.vertex_count();
    require(2 * m >= n && m <= n && m >= 1, "contract: m must satisfy ceil(n/2) <= m <= n");
    return ExplicitGraph(m, 2 * g.degree(), (g.claimed_lambda() + 1.0) / 2.0,
                         std::make_shared<detail::ContractedGraph>(g, m));
}

/// Edges of G^k are the length-k walks of G.
inline ExplicitGraph power(const ExplicitGraph& g, std::uint64_t k) {
    require(k >= 1, "power: k must be >= 1");
    return ExplicitGraph(g.vertex_count(), pow_natural(g.degree(), k), std::pow(g.claimed_lambda(), static_cast<double>(k)),
                         std::make_shared<detail::PowerGraph>(g, k));
}

/// Base graph and exponent when g was built by power().
inline std::optional<std::pair<ExplicitGraph, std::uint64_t>> power_lineage(const ExplicitGraph& g) {
    const auto* p = dynamic_cast<const detail::PowerGraph*>(&g.impl());
    if (p == nullptr) return std::nullopt;
    return std::make_pair(p->base(), p->exponent());
}

/// Degree-16 expander on exactly n vertices: MGG on the smallest square
/// s^2 >= n, always contracted to n vertices.
inline ExplicitGraph see_std(const Natural& n) {
    require(n >= 1, "see_std: n must be >= 1");
    Natural s = boost::multiprecision::sqrt(n);
    if (s * s < n) s += 1;
    return contract(mgg(s), n);
}

struct BoundedExpander {
    ExplicitGraph graph;
    std::uint64_t power;
};

/// see_std(n) raised to the smallest power k >= 1 with kStdLambda^k <= bound.
inline BoundedExpander see_bound(const Natural& n, double bound) {
    require(bound > 0.0 && bound < 1.0, "see_bound: lambda must lie in (0, 1)");
    auto k = static_cast<std::uint64_t>(std::ceil(std::log(bound) / std::log(kStdLambda)));
    if (k < 1) k = 1;
    return {power(see_std(n), k), k};
}

/// Random walks of length l on an expander over the vertex set [0, |inner|).
///
/// Index layout: the start vertex is index mod n and the remaining
/// index div n is read as l-1 base-d digits, least significant first, one
/// edge slot per step. There are exactly n * d^(l-1) indices; distinct
/// indices may yield the same vertex tuple.
class WalkFamily {
public:
    WalkFamily(ExplicitGraph graph, std::uint64_t length, Pro inner)
        : graph_(std::move(graph)), length_(length), inner_(std::move(inner)) {
        require(length_ >= 1, "walk_pro: walk length must be >= 1");
        require(graph_.vertex_count() == inner_.size(), "walk_pro: graph must have one vertex per inner index");
        size_ = inner_.size() * pow_natural(graph_.degree(), length_ - 1);
    }

    const ExplicitGraph& graph() const { return graph_; }
    std::uint64_t length() const { return length_; }
    const Pro& inner() const { return inner_; }
    const Natural& size() const { return size_; }

    std::vector<Natural> vertices(const Natural& index) const {
        require(index >= 0 && index < size_, "walk index out of range");
        std::vector<Natural> walk;
        walk.reserve(length_);
        Natural rest, start, digit;
        boost::multiprecision::divide_qr(index, inner_.size(), rest, start);
        walk.push_back(std::move(start));
        for (std::uint64_t t = 1; t < length_; ++t) {
            boost::multiprecision::divide_qr(rest, graph_.degree(), rest, digit);
            walk.push_back(graph_.neighbor(walk.back(), digit));
        }
        return walk;
    }

    Element select(const Natural& index) const {
        std::vector<Element> items;
        items.reserve(length_);
        for (const auto& v : vertices(index)) items.push_back(inner_.select(v));
        return Element::tuple(std::move(items));
    }

    Pro as_pro() const;

private:
    ExplicitGraph graph_;
    std::uint64_t length_;
    Pro inner_;
    Natural size_;
};

namespace detail {

class WalkPro final : public ProImpl {
public:
    explicit WalkPro(WalkFamily family) : family_(std::move(family)) {}
    const Natural& size() const override { return family_.size(); }
    Element select(const Natural& index) const override { return family_.select(index); }
    ElementKind kind() const override { return ElementKind::tuple; }
    const WalkFamily& family() const { return family_; }

private:
    WalkFamily family_;
};

}  // namespace detail

inline Pro WalkFamily::as_pro() const { return Pro(std::make_shared<detail::WalkPro>(*this)); }

/// E l bound inner: walks on see_bound(|inner|, bound).
inline WalkFamily walk_family(std::uint64_t length, double bound, const Pro& inner) {
    return WalkFamily(see_bound(inner.size(), bound).graph, length, inner);
}

inline Pro walk_pro(std::uint64_t length, double bound, const Pro& inner) {
    return walk_family(length, bound, inner).as_pro();
}

inline const WalkFamily* as_walk_family(const Pro& pro) {
    const auto* impl = dynamic_cast<const detail::WalkPro*>(&pro.impl());
    return impl == nullptr ? nullptr : &impl->family();
}

/// Header "n d" followed by one line of d slot targets per vertex.
inline void dump_graph(std::ostream& out, const ExplicitGraph& g) {
    out << g.vertex_count() << ' ' << g.degree() << '\n';
    for (Natural v = 0; v < g.vertex_count(); ++v) {
        for (Natural i = 0; i < g.degree(); ++i) {
            if (i > 0) out << ' ';
            out << g.neighbor(v, i);
        }
        out << '\n';
    }
}

}  // namespace prorand
