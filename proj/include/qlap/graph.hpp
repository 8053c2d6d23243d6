#ifndef QLAP_GRAPH_HPP
#define QLAP_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qlap {

// graph6 supports n <= 62 in the single-byte size form; that is all we handle.
inline constexpr int kMaxOrder = 62;

class Graph6Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// First byte is not a valid single-byte order (or the line is empty).
class Graph6HeaderError : public Graph6Error {
public:
    using Graph6Error::Graph6Error;
};

// Bit body truncated, has trailing bytes, an out-of-range byte, or nonzero padding.
class Graph6BodyError : public Graph6Error {
public:
    using Graph6Error::Graph6Error;
};

// Multi-byte size forms ('~' prefix) encode n > 62 and are unsupported.
class Graph6SizeError : public Graph6Error {
public:
    using Graph6Error::Graph6Error;
};

/// Undirected simple graph on vertices 0..n-1, adjacency kept as one
/// 64-bit row mask per vertex. Immutable by convention once built.
class Graph {
public:
    explicit Graph(int n) : n_(n), rows_(static_cast<std::size_t>(valid_order(n)), 0) {}

    static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    int order() const { return n_; }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return u != v && ((rows_[static_cast<std::size_t>(u)] >> v) & 1u);
    }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("graph: self-loops not allowed");
        rows_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
        rows_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
    }

    std::uint64_t neighbors(int v) const {
        check_vertex(v);
        return rows_[static_cast<std::size_t>(v)];
    }

    int degree(int v) const { return __builtin_popcountll(neighbors(v)); }

    int edge_count() const {
        int twice = 0;
        for (int v = 0; v < n_; ++v) twice += degree(v);
        return twice / 2;
    }

    /// Edges as (u, v) with u < v, ordered by (u, v).
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(edge_count()));
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (has_edge(u, v)) out.emplace_back(u, v);
        return out;
    }

    bool operator==(const Graph&) const = default;

private:
    static int valid_order(int n) {
        if (n < 1 || n > kMaxOrder)
            throw std::invalid_argument("graph: order must be in 1..62");
        return n;
    }
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("graph: vertex out of range");
    }

    int n_;
    std::vector<std::uint64_t> rows_;
};

// ---------------------------------------------------------------------------
// Upper-triangle pair ordering shared by graph6 and the labeled enumeration:
// (0,1),(0,2),(1,2),(0,3),(1,3),(2,3),... i.e. column by column.
// ---------------------------------------------------------------------------

inline int pair_count(int n) { return n * (n - 1) / 2; }

inline int pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
}

/// Graph on n vertices whose edge set is given by `mask`: bit k set means the
/// k-th pair in column-major upper-triangle order is an edge.
inline Graph graph_from_edge_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int k = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++k)
            if ((mask >> k) & 1u) g.add_edge(i, j);
    return g;
}

// ---------------------------------------------------------------------------
// graph6 codec. Byte 0 is n+63 (n <= 62); the following bytes pack the upper
// triangle in the pair order above, 6 bits per byte (MSB first), each byte
// offset by 63, the final byte zero-padded.
// ---------------------------------------------------------------------------

inline std::string write_graph6(const Graph& g) {
    const int n = g.order();
    std::string out;
    out.push_back(static_cast<char>(n + 63));
    const int bits = pair_count(n);
    int acc = 0, filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
    (void)bits;
    return out;
}

inline Graph parse_graph6(std::string_view text) {
    if (text.empty()) throw Graph6HeaderError("graph6: empty input");
    const unsigned char head = static_cast<unsigned char>(text[0]);
    if (head == 126) throw Graph6SizeError("graph6: multi-byte size form (n > 62) unsupported");
    if (head < 63 || head > 126) throw Graph6HeaderError("graph6: invalid header byte");
    const int n = head - 63;
    if (n == 0) throw Graph6HeaderError("graph6: order 0 not supported");

    const int bits = pair_count(n);
    const std::size_t body_bytes = static_cast<std::size_t>((bits + 5) / 6);
    if (text.size() < 1 + body_bytes) throw Graph6BodyError("graph6: truncated bit body");
    if (text.size() > 1 + body_bytes) throw Graph6BodyError("graph6: trailing bytes after bit body");

    Graph g(n);
    int k = 0;
    for (std::size_t b = 0; b < body_bytes; ++b) {
        const unsigned char c = static_cast<unsigned char>(text[1 + b]);
        if (c < 63 || c > 126) throw Graph6BodyError("graph6: body byte out of range");
        const int group = c - 63;
        for (int bit = 5; bit >= 0; --bit, ++k) {
            const bool set = (group >> bit) & 1;
            if (k >= bits) {
                if (set) throw Graph6BodyError("graph6: nonzero padding bits");
                continue;
            }
            if (set) {
                // invert pair_index: k-th pair in column-major order
                int j = 1;
                while (pair_count(j + 1) <= k) ++j;
                const int i = k - pair_count(j);
                g.add_edge(i, j);
            }
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Elementary constructions.
// ---------------------------------------------------------------------------

inline Graph complement(const Graph& g) {
    const int n = g.order();
    Graph out(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) out.add_edge(u, v);
    return out;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    const int na = a.order();
    Graph out(na + b.order());
    for (auto [u, v] : a.edges()) out.add_edge(u, v);
    for (auto [u, v] : b.edges()) out.add_edge(na + u, na + v);
    return out;
}

// ---------------------------------------------------------------------------
// Named families.
// ---------------------------------------------------------------------------

inline Graph empty_graph(int n) { return Graph(n); }

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

/// Complete multipartite graph; parts laid out in the given order with
/// consecutive vertex labels.
inline Graph complete_multipartite_graph(const std::vector<int>& parts) {
    if (parts.empty()) throw std::invalid_argument("family: no parts given");
    int n = 0;
    for (int p : parts) {
        if (p < 1) throw std::invalid_argument("family: part sizes must be >= 1");
        n += p;
    }
    Graph g(n);
    // class id per vertex
    std::vector<int> cls(static_cast<std::size_t>(n));
    int v = 0;
    for (std::size_t c = 0; c < parts.size(); ++c)
        for (int i = 0; i < parts[c]; ++i) cls[static_cast<std::size_t>(v++)] = static_cast<int>(c);
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w)
            if (cls[static_cast<std::size_t>(u)] != cls[static_cast<std::size_t>(w)]) g.add_edge(u, w);
    return g;
}

/// Star on n vertices total, center 0 (i.e. K_{1,n-1}).
inline Graph star_graph(int n) {
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

inline Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("family: cycle needs n >= 3");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

/// K_{1,t,...,t} with r parts of size t after the singleton part.
inline Graph k1t_graph(int t, int r) {
    if (t < 1 || r < 1) throw std::invalid_argument("family: K1t needs t,r >= 1");
    std::vector<int> parts{1};
    parts.insert(parts.end(), static_cast<std::size_t>(r), t);
    return complete_multipartite_graph(parts);
}

/// Declarative family description (the CLI's --family mini-language maps here).
struct FamilySpec {
    enum class Kind { complete, empty, star, complete_multipartite, path, cycle, k1t, disjoint_union };

    Kind kind = Kind::empty;
    int n = 0;                       // complete/empty/star/path/cycle
    std::vector<int> parts;          // complete_multipartite
    int t = 0, r = 0;                // k1t
    std::vector<FamilySpec> members; // disjoint_union

    static FamilySpec Complete(int n) { return {Kind::complete, n, {}, 0, 0, {}}; }
    static FamilySpec Empty(int n) { return {Kind::empty, n, {}, 0, 0, {}}; }
    static FamilySpec Star(int n) { return {Kind::star, n, {}, 0, 0, {}}; }
    static FamilySpec Multipartite(std::vector<int> parts) {
        return {Kind::complete_multipartite, 0, std::move(parts), 0, 0, {}};
    }
    static FamilySpec Path(int n) { return {Kind::path, n, {}, 0, 0, {}}; }
    static FamilySpec Cycle(int n) { return {Kind::cycle, n, {}, 0, 0, {}}; }
    static FamilySpec K1t(int t, int r) { return {Kind::k1t, 0, {}, t, r, {}}; }
    static FamilySpec Union(std::vector<FamilySpec> members) {
        return {Kind::disjoint_union, 0, {}, 0, 0, std::move(members)};
    }
};

inline Graph construct_family(const FamilySpec& spec) {
    using Kind = FamilySpec::Kind;
    switch (spec.kind) {
        case Kind::complete: return complete_graph(spec.n);
        case Kind::empty: return empty_graph(spec.n);
        case Kind::star: return star_graph(spec.n);
        case Kind::complete_multipartite: return complete_multipartite_graph(spec.parts);
        case Kind::path: return path_graph(spec.n);
        case Kind::cycle: return cycle_graph(spec.n);
        case Kind::k1t:
            if (spec.t < 2 || spec.r < 1) throw std::invalid_argument("family: K1t needs t >= 2, r >= 1");
            return k1t_graph(spec.t, spec.r);
        case Kind::disjoint_union: {
            if (spec.members.empty()) throw std::invalid_argument("family: empty union");
            Graph g = construct_family(spec.members.front());
            for (std::size_t i = 1; i < spec.members.size(); ++i)
                g = disjoint_union(g, construct_family(spec.members[i]));
            return g;
        }
    }
    throw std::invalid_argument("family: unknown kind");
}

/// Parse the family mini-language:
///   K:n  empty:n  star:n  path:n  cycle:n  Km:a,b,c  K1t:t,r  union:SPEC+SPEC
FamilySpec parse_family(std::string_view text);

namespace detail {
inline int parse_int(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("family: missing number");
    int value = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("family: bad number '" + std::string(s) + "'");
        value = value * 10 + (c - '0');
        if (value > 1000000) throw std::invalid_argument("family: number too large");
    }
    return value;
}
} // namespace detail

inline FamilySpec parse_family(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("family: expected '<name>:<args>', got '" + std::string(text) + "'");
    const std::string_view name = text.substr(0, colon);
    const std::string_view args = text.substr(colon + 1);

    auto split = [](std::string_view s, char sep) {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true) {
            const auto pos = s.find(sep, start);
            if (pos == std::string_view::npos) {
                out.push_back(s.substr(start));
                return out;
            }
            out.push_back(s.substr(start, pos - start));
            start = pos + 1;
        }
    };

    if (name == "K") return FamilySpec::Complete(detail::parse_int(args));
    if (name == "empty") return FamilySpec::Empty(detail::parse_int(args));
    if (name == "star") return FamilySpec::Star(detail::parse_int(args));
    if (name == "path") return FamilySpec::Path(detail::parse_int(args));
    if (name == "cycle") return FamilySpec::Cycle(detail::parse_int(args));
    if (name == "Km") {
        std::vector<int> parts;
        for (auto piece : split(args, ',')) parts.push_back(detail::parse_int(piece));
        return FamilySpec::Multipartite(std::move(parts));
    }
    if (name == "K1t") {
        const auto pieces = split(args, ',');
        if (pieces.size() != 2) throw std::invalid_argument("family: K1t wants 't,r'");
        return FamilySpec::K1t(detail::parse_int(pieces[0]), detail::parse_int(pieces[1]));
    }
    if (name == "union") {
        std::vector<FamilySpec> members;
        for (auto piece : split(args, '+')) members.push_back(parse_family(piece));
        return FamilySpec::Union(std::move(members));
    }
    throw std::invalid_argument("family: unknown family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Degree statistics.
// ---------------------------------------------------------------------------

/// Exact average degree as a reduced fraction (fits easily in 64 bits).
struct Fraction {
    long long num = 0;
    long long den = 1;

    bool operator==(const Fraction&) const = default;
};

inline Fraction make_fraction(long long num, long long den) {
    const long long g = std::gcd(num, den);
    return {num / g, den / g};
}

struct DegreeStats {
    int min_degree = 0;        // delta
    int max_degree = 0;        // Delta
    int second_max_degree = 0; // Delta_2: second entry of the sorted degree sequence
    Fraction average;          // dbar = 2|E| / n
};

inline DegreeStats degree_stats(const Graph& g) {
    const int n = g.order();
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
    std::sort(deg.begin(), deg.end(), std::greater<int>());
    DegreeStats s;
    s.max_degree = deg.front();
    s.min_degree = deg.back();
    s.second_max_degree = n >= 2 ? deg[1] : 0;
    s.average = make_fraction(2LL * g.edge_count(), n);
    return s;
}

inline bool is_complete(const Graph& g) {
    return g.edge_count() == pair_count(g.order());
}

/// Subgraph induced by the given vertices (ascending relabeling).
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    Graph out(static_cast<int>(vertices.size()));
    for (std::size_t a = 0; a < vertices.size(); ++a)
        for (std::size_t b = a + 1; b < vertices.size(); ++b)
            if (g.has_edge(vertices[a], vertices[b])) out.add_edge(static_cast<int>(a), static_cast<int>(b));
    return out;
}

} // namespace qlap

#endif // QLAP_GRAPH_HPP
