#include "geocycle/family.hpp"

#include "geocycle/errors.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

namespace geocycle {

Rational GraphFamily::ray_position(const VertexId&) const {
    throw InputError("family '" + name() + "' has no ray layout");
}

VertexId GraphFamily::ray_vertex(std::size_t) const {
    throw InputError("family '" + name() + "' has no ray layout");
}

std::string to_string(LengthScheme scheme) {
    switch (scheme) {
        case LengthScheme::Unit: return "unit";
        case LengthScheme::Nst: return "nst";
        case LengthScheme::DyadicHarmonic: return "dyadic_harmonic";
    }
    return "unit";
}

LengthScheme length_scheme_from_string(const std::string& text) {
    if (text == "unit") return LengthScheme::Unit;
    if (text == "nst") return LengthScheme::Nst;
    if (text == "dyadic_harmonic") return LengthScheme::DyadicHarmonic;
    throw InputError("unknown length scheme '" + text + "'");
}

namespace {

std::optional<long> parse_suffix_number(const std::string& s, std::size_t from) {
    if (from >= s.size()) return std::nullopt;
    long value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + from, s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value < 1) return std::nullopt;
    return value;
}

// Lazily extended enumeration of vertices along a spanning ray. Positions
// 1 - 2^-k make every structural edge isometric to a subinterval of [0,1).
class RayLayout {
public:
    explicit RayLayout(std::function<std::optional<VertexId>(std::size_t)> generator)
        : generator_(std::move(generator)) {}

    std::optional<std::size_t> index_of(const VertexId& v) const {
        auto it = index_.find(v);
        while (it == index_.end()) {
            if (exhausted_) return std::nullopt;
            extend();
            it = index_.find(v);
        }
        return it->second;
    }

    std::optional<VertexId> at(std::size_t k) const {
        while (order_.size() <= k && !exhausted_) extend();
        if (k < order_.size()) return order_[k];
        return std::nullopt;
    }

    Rational position(const VertexId& v) const {
        auto idx = index_of(v);
        if (!idx) throw InputError("vertex '" + v + "' is not on the ray");
        return Rational(1) - pow2_inverse(static_cast<unsigned>(*idx));
    }

private:
    void extend() const {
        GEOCYCLE_CHECK(order_.size() < 5000000);
        auto next = generator_(order_.size());
        if (!next) {
            exhausted_ = true;
            return;
        }
        index_[*next] = order_.size();
        order_.push_back(*next);
    }

    std::function<std::optional<VertexId>(std::size_t)> generator_;
    mutable std::vector<VertexId> order_;
    mutable std::map<VertexId, std::size_t> index_;
    mutable bool exhausted_ = false;
};

std::string xv(long n) { return "x" + std::to_string(n); }
std::string yv(long n) { return "y" + std::to_string(n); }
std::string rail_upper(long n) { return xv(n) + "-" + xv(n + 1); }
std::string rail_lower(long n) { return yv(n) + "-" + yv(n + 1); }
std::string rung_edge(long n) { return xv(n) + "-" + yv(n); }

// Zigzag spanning ray of the plain ladder:
//   x1, y1, y2, x2, x3, y3, y4, x4, x5, ...
std::optional<VertexId> ladder_ray_at(std::size_t k, std::optional<long> rungs) {
    long n;
    if (k == 0) {
        n = 1;
        return rungs && *rungs < 1 ? std::nullopt : std::optional<VertexId>(xv(1));
    }
    const std::size_t block = (k - 1) / 4;
    const std::size_t step = (k - 1) % 4;
    switch (step) {
        case 0: n = 2 * static_cast<long>(block) + 1; return !rungs || n <= *rungs
                    ? std::optional<VertexId>(yv(n)) : std::nullopt;
        case 1: n = 2 * static_cast<long>(block) + 2; return !rungs || n <= *rungs
                    ? std::optional<VertexId>(yv(n)) : std::nullopt;
        case 2: n = 2 * static_cast<long>(block) + 2; return !rungs || n <= *rungs
                    ? std::optional<VertexId>(xv(n)) : std::nullopt;
        default: n = 2 * static_cast<long>(block) + 3; return !rungs || n <= *rungs
                    ? std::optional<VertexId>(xv(n)) : std::nullopt;
    }
}

class LadderFamily : public GraphFamily {
public:
    LadderFamily(LengthScheme scheme, std::optional<int> rungs)
        : scheme_(scheme),
          rungs_(rungs ? std::optional<long>(*rungs) : std::nullopt),
          ray_([this](std::size_t k) { return ladder_ray_at(k, rungs_); }) {
        if (rungs_ && *rungs_ < 1) throw InputError("ladder needs at least one rung");
    }

    std::string name() const override {
        std::string base = rungs_ ? "ladder[" + std::to_string(*rungs_) + "]" : "ladder";
        return base + ":" + to_string(scheme_);
    }
    VertexId root() const override { return xv(1); }
    bool is_finite() const override { return rungs_.has_value(); }
    bool one_ended() const override { return !rungs_.has_value(); }

    bool has_vertex(const VertexId& v) const override { return side_of(v).has_value(); }

    std::vector<NeighborEdge> neighbors(const VertexId& v) const override {
        auto parsed = side_of(v);
        if (!parsed) throw InputError("not a ladder vertex: '" + v + "'");
        auto [is_upper, n] = *parsed;
        std::vector<NeighborEdge> out;
        auto add = [&](const EdgeId& id, const VertexId& to) {
            out.push_back({id, to, edge_length(id, v, to)});
        };
        if (is_upper) {
            if (n > 1) add(rail_upper(n - 1), xv(n - 1));
            if (!rungs_ || n + 1 <= *rungs_) add(rail_upper(n), xv(n + 1));
            add(rung_edge(n), yv(n));
        } else {
            if (n > 1) add(rail_lower(n - 1), yv(n - 1));
            if (!rungs_ || n + 1 <= *rungs_) add(rail_lower(n), yv(n + 1));
            add(rung_edge(n), xv(n));
        }
        std::sort(out.begin(), out.end(),
                  [](const NeighborEdge& a, const NeighborEdge& b) { return a.edge < b.edge; });
        return out;
    }

    std::optional<Rational> analytic_distance(const VertexId& u,
                                              const VertexId& v) const override {
        if (scheme_ != LengthScheme::Nst) return std::nullopt;
        return rational_abs(ray_.position(u) - ray_.position(v));
    }
    bool has_ray_layout() const override { return scheme_ == LengthScheme::Nst; }
    Rational ray_position(const VertexId& v) const override { return ray_.position(v); }
    VertexId ray_vertex(std::size_t k) const override {
        auto v = ray_.at(k);
        if (!v) throw InputError("ray index past the end of the finite ladder");
        return *v;
    }

    std::optional<Rational> spread_upper(int i) const override {
        if (scheme_ != LengthScheme::DyadicHarmonic) return std::nullopt;
        if (i <= 0) return Rational(4);
        // Slide to a vertex costs at most 1/i; every vertex beyond the ball
        // is within 3*2^-i of the end along the dyadic rail.
        return Rational(2) * (Rational(1, i) + Rational(3) * pow2_inverse(static_cast<unsigned>(i)));
    }

    std::optional<Rational> min_edge_length() const override {
        if (scheme_ == LengthScheme::Unit) return Rational(1);
        return std::nullopt;
    }

    LengthScheme scheme() const { return scheme_; }
    std::optional<long> rung_cap() const { return rungs_; }

private:
    std::optional<std::pair<bool, long>> side_of(const VertexId& v) const {
        if (v.size() < 2 || (v[0] != 'x' && v[0] != 'y')) return std::nullopt;
        auto n = parse_suffix_number(v, 1);
        if (!n) return std::nullopt;
        if (rungs_ && *n > *rungs_) return std::nullopt;
        return std::make_pair(v[0] == 'x', *n);
    }

    Rational edge_length(const EdgeId& id, const VertexId& u, const VertexId& v) const {
        switch (scheme_) {
            case LengthScheme::Unit: return Rational(1);
            case LengthScheme::Nst:
                return rational_abs(ray_.position(u) - ray_.position(v));
            case LengthScheme::DyadicHarmonic: {
                // Upper rail and rung n: 2^-n. Lower rail n: 1/(n+1).
                const bool lower_rail = id[0] == 'y';
                const bool rung = id.find('y') != std::string::npos && !lower_rail;
                long n = 0;
                auto dash = id.find('-');
                n = *parse_suffix_number(id.substr(0, dash), 1);
                if (lower_rail) return Rational(1, n + 1);
                if (rung) return pow2_inverse(static_cast<unsigned>(n));
                return pow2_inverse(static_cast<unsigned>(n));
            }
        }
        return Rational(1);
    }

    LengthScheme scheme_;
    std::optional<long> rungs_;
    RayLayout ray_;
};

std::string rseg(long n, long j) { return "r" + std::to_string(n) + "s" + std::to_string(j); }
std::string rvert(long n, long j) { return "r" + std::to_string(n) + "." + std::to_string(j); }

// Vertex j along rung n, identifying 0 with x_n and 2n with y_n.
VertexId rung_node(long n, long j) {
    if (j == 0) return xv(n);
    if (j == 2 * n) return yv(n);
    return rvert(n, j);
}

// Zigzag spanning ray of the subdivided ladder. Each rung is traversed
// inline, so the enumeration is generated blockwise and memoised.
class SubdividedRayGen {
public:
    std::optional<VertexId> at(std::size_t k, std::optional<long> rungs) {
        while (buffer_.size() <= k) {
            if (!append_block(rungs)) return std::nullopt;
        }
        return buffer_[k];
    }

private:
    bool append_block(std::optional<long> rungs) {
        auto fits = [&](long n) { return !rungs || n <= *rungs; };
        if (next_block_ == 0) {
            if (!fits(1)) return false;
            buffer_.push_back(xv(1));
            buffer_.push_back(yv(1));
            next_block_ = 1;
            return true;
        }
        const long k = next_block_;
        const long even = 2 * k, odd = 2 * k + 1;
        if (!fits(even)) return false;
        buffer_.push_back(yv(even));
        for (long j = 2 * even - 1; j >= 1; --j) buffer_.push_back(rvert(even, j));
        buffer_.push_back(xv(even));
        if (fits(odd)) {
            buffer_.push_back(xv(odd));
            for (long j = 1; j <= 2 * odd - 1; ++j) buffer_.push_back(rvert(odd, j));
            buffer_.push_back(yv(odd));
        }
        ++next_block_;
        return fits(odd);
    }

    std::vector<VertexId> buffer_;
    long next_block_ = 0;
};

class SubdividedLadderFamily : public GraphFamily {
public:
    SubdividedLadderFamily(LengthScheme scheme, std::optional<int> rungs)
        : scheme_(scheme),
          rungs_(rungs ? std::optional<long>(*rungs) : std::nullopt),
          ray_([this](std::size_t k) { return gen_.at(k, rungs_); }) {
        if (scheme == LengthScheme::DyadicHarmonic)
            throw InputError("the subdivided ladder supports unit and nst lengths");
        if (rungs_ && *rungs_ < 1) throw InputError("ladder needs at least one rung");
    }

    std::string name() const override {
        std::string base =
            rungs_ ? "subdivided_ladder[" + std::to_string(*rungs_) + "]" : "subdivided_ladder";
        return base + ":" + to_string(scheme_);
    }
    VertexId root() const override { return xv(1); }
    bool is_finite() const override { return rungs_.has_value(); }
    bool one_ended() const override { return !rungs_.has_value(); }

    bool has_vertex(const VertexId& v) const override { return classify(v).has_value(); }

    std::vector<NeighborEdge> neighbors(const VertexId& v) const override {
        auto parsed = classify(v);
        if (!parsed) throw InputError("not a subdivided-ladder vertex: '" + v + "'");
        std::vector<NeighborEdge> out;
        auto add = [&](const EdgeId& id, const VertexId& to) {
            out.push_back({id, to, edge_length(v, to)});
        };
        const auto [kind, n, j] = *parsed;
        if (kind == 'r') {
            add(j == 1 ? rseg(n, 0) : rseg(n, j - 1), rung_node(n, j - 1));
            add(rseg(n, j), rung_node(n, j + 1));
        } else if (kind == 'x') {
            if (n > 1) add(rail_upper(n - 1), xv(n - 1));
            if (!rungs_ || n + 1 <= *rungs_) add(rail_upper(n), xv(n + 1));
            if (n == 1) add(rung_edge(1), yv(1));
            else add(rseg(n, 0), rung_node(n, 1));
        } else {
            if (n > 1) add(rail_lower(n - 1), yv(n - 1));
            if (!rungs_ || n + 1 <= *rungs_) add(rail_lower(n), yv(n + 1));
            if (n == 1) add(rung_edge(1), xv(1));
            else add(rseg(n, 2 * n - 1), rung_node(n, 2 * n - 1));
        }
        std::sort(out.begin(), out.end(),
                  [](const NeighborEdge& a, const NeighborEdge& b) { return a.edge < b.edge; });
        return out;
    }

    std::optional<Rational> analytic_distance(const VertexId& u,
                                              const VertexId& v) const override {
        if (scheme_ != LengthScheme::Nst) return std::nullopt;
        return rational_abs(ray_.position(u) - ray_.position(v));
    }
    bool has_ray_layout() const override { return scheme_ == LengthScheme::Nst; }
    Rational ray_position(const VertexId& v) const override { return ray_.position(v); }
    VertexId ray_vertex(std::size_t k) const override {
        auto v = ray_.at(k);
        if (!v) throw InputError("ray index past the end of the finite ladder");
        return *v;
    }

    std::optional<Rational> min_edge_length() const override {
        if (scheme_ == LengthScheme::Unit) return Rational(1);
        return std::nullopt;
    }

    LengthScheme scheme() const { return scheme_; }
    std::optional<long> rung_cap() const { return rungs_; }

private:
    // ('x', n, 0) | ('y', n, 0) | ('r', n, j)
    std::optional<std::tuple<char, long, long>> classify(const VertexId& v) const {
        if (v.size() < 2) return std::nullopt;
        if (v[0] == 'x' || v[0] == 'y') {
            auto n = parse_suffix_number(v, 1);
            if (!n) return std::nullopt;
            if (rungs_ && *n > *rungs_) return std::nullopt;
            return std::make_tuple(v[0], *n, 0L);
        }
        if (v[0] == 'r') {
            auto dot = v.find('.');
            if (dot == std::string::npos) return std::nullopt;
            auto n = parse_suffix_number(v.substr(0, dot), 1);
            auto j = parse_suffix_number(v, dot + 1);
            if (!n || !j || *n < 2 || *j > 2 * *n - 1) return std::nullopt;
            if (rungs_ && *n > *rungs_) return std::nullopt;
            return std::make_tuple('r', *n, *j);
        }
        return std::nullopt;
    }

    Rational edge_length(const VertexId& u, const VertexId& v) const {
        if (scheme_ == LengthScheme::Unit) return Rational(1);
        return rational_abs(ray_.position(u) - ray_.position(v));
    }

    LengthScheme scheme_;
    std::optional<long> rungs_;
    mutable SubdividedRayGen gen_;
    RayLayout ray_;
};

class FiniteFamily : public GraphFamily {
public:
    FiniteFamily(Graph g, std::optional<VertexId> root) : graph_(std::move(g)) {
        if (graph_.vertex_count() == 0) throw InputError("empty graph family");
        if (root) {
            if (!graph_.has_vertex(*root)) throw InputError("unknown root '" + *root + "'");
            root_ = *root;
        } else {
            root_ = *std::min_element(graph_.vertices().begin(), graph_.vertices().end());
        }
    }

    std::string name() const override { return "finite"; }
    VertexId root() const override { return root_; }
    bool is_finite() const override { return true; }
    bool has_vertex(const VertexId& v) const override { return graph_.has_vertex(v); }

    std::vector<NeighborEdge> neighbors(const VertexId& v) const override {
        std::vector<NeighborEdge> out;
        for (std::size_t idx : graph_.incident(v)) {
            const Edge& e = graph_.edge_at(idx);
            if (e.is_loop()) continue;  // loops never leave the vertex
            out.push_back({e.id, e.other(v), e.length});
        }
        return out;
    }

    std::optional<Rational> min_edge_length() const override {
        std::optional<Rational> best;
        for (const auto& e : graph_.edges()) {
            if (!best || e.length < *best) best = e.length;
        }
        return best;
    }

    const Graph& graph() const { return graph_; }

private:
    Graph graph_;
    VertexId root_;
};

}  // namespace

std::shared_ptr<const GraphFamily> make_ladder(LengthScheme scheme, std::optional<int> rungs) {
    return std::make_shared<LadderFamily>(scheme, rungs);
}

std::shared_ptr<const GraphFamily> make_subdivided_ladder(LengthScheme scheme,
                                                          std::optional<int> rungs) {
    return std::make_shared<SubdividedLadderFamily>(scheme, rungs);
}

std::shared_ptr<const GraphFamily> make_finite_family(Graph g, std::optional<VertexId> root) {
    return std::make_shared<FiniteFamily>(std::move(g), std::move(root));
}

ClosedWalk family_square_walk(const GraphFamily& f, int n) {
    if (n < 1) throw InputError("square index must be >= 1");
    if (dynamic_cast<const LadderFamily*>(&f) != nullptr) {
        ClosedWalk w;
        w.vertices = {xv(n), yv(n), yv(n + 1), xv(n + 1)};
        w.edges = {rung_edge(n), rail_lower(n), rung_edge(n + 1), rail_upper(n)};
        return w;
    }
    if (dynamic_cast<const SubdividedLadderFamily*>(&f) != nullptr) {
        ClosedWalk w;
        auto push_rung_down = [&](long m) {  // x_m .. y_m, vertices exclude y_m
            if (m == 1) {
                w.vertices.push_back(xv(1));
                w.edges.push_back(rung_edge(1));
                return;
            }
            for (long j = 0; j < 2 * m; ++j) {
                w.vertices.push_back(rung_node(m, j));
                w.edges.push_back(rseg(m, j));
            }
        };
        auto push_rung_up = [&](long m) {  // y_m .. x_m, vertices exclude x_m
            if (m == 1) {
                w.vertices.push_back(yv(1));
                w.edges.push_back(rung_edge(1));
                return;
            }
            for (long j = 2 * m; j > 0; --j) {
                w.vertices.push_back(rung_node(m, j));
                w.edges.push_back(rseg(m, j - 1));
            }
        };
        push_rung_down(n);
        w.vertices.push_back(yv(n));
        w.edges.push_back(rail_lower(n));
        push_rung_up(n + 1);
        w.vertices.push_back(xv(n + 1));
        w.edges.push_back(rail_upper(n));
        // Rotate so the walk starts at x_n with the rung; it already does.
        GEOCYCLE_CHECK(w.vertices.size() == w.edges.size());
        return w;
    }
    throw InputError("squares are only defined for ladder families");
}

EdgeId family_first_rung_edge(const GraphFamily& f) {
    if (dynamic_cast<const LadderFamily*>(&f) || dynamic_cast<const SubdividedLadderFamily*>(&f))
        return rung_edge(1);
    throw InputError("first rung is only defined for ladder families");
}

namespace {
std::vector<Rational> rail_lengths(const GraphFamily& f, char side, int count) {
    std::vector<Rational> out;
    for (int n = 1; n <= count; ++n) {
        const VertexId from = side == 'y' ? yv(n) : xv(n);
        const EdgeId id = side == 'y' ? rail_lower(n) : rail_upper(n);
        bool found = false;
        for (const auto& nb : f.neighbors(from)) {
            if (nb.edge == id) {
                out.push_back(nb.length);
                found = true;
                break;
            }
        }
        if (!found) throw InputError("rail edge '" + id + "' not present in family");
    }
    return out;
}
}  // namespace

std::vector<Rational> family_lower_rail_lengths(const GraphFamily& f, int count) {
    return rail_lengths(f, 'y', count);
}

std::vector<Rational> family_upper_rail_lengths(const GraphFamily& f, int count) {
    return rail_lengths(f, 'x', count);
}

}  // namespace geocycle
