#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/sparse_matrix.hpp"

namespace refnet {

enum class Sign : std::int8_t { negative = -1, positive = 1 };

constexpr Sign flip(Sign s) noexcept { return s == Sign::positive ? Sign::negative : Sign::positive; }
constexpr char sign_char(Sign s) noexcept { return s == Sign::positive ? '+' : '-'; }

struct SignedEdge {
    Vertex u; ///< u < v
    Vertex v;
    Sign sign;

    friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

struct Neighbor {
    Vertex vertex;
    Sign sign;
};

/// Loopless signed graph with at most one positive and one negative edge per
/// vertex pair. Every vertex carries an `origin` tag: for graphs built from a
/// matrix it is the matrix row, and subgraphs inherit it from their parent.
class SignedGraph {
public:
    SignedGraph() = default;

    /// Same-sign duplicates collapse; loops and out-of-range endpoints throw.
    /// An empty `origin` means the identity.
    SignedGraph(std::size_t n, std::span<const SignedEdge> edges, std::vector<std::size_t> origin = {});

    std::size_t n() const noexcept { return adjacency_.size(); }
    std::size_t m() const noexcept { return edges_.size(); }

    /// Edges sorted by (u, v, sign) with u < v.
    const std::vector<SignedEdge>& edges() const noexcept { return edges_; }
    /// Neighbors sorted by vertex; for a parallel pair the positive edge comes first.
    std::span<const Neighbor> neighbors(Vertex v) const { return adjacency_[v]; }
    /// Number of incident edges, a parallel pair counting twice.
    std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
    bool has_edge(Vertex u, Vertex v, Sign s) const;

    std::size_t origin(Vertex v) const { return origin_[v]; }
    const std::vector<std::size_t>& origins() const noexcept { return origin_; }

    std::size_t negative_edge_count() const;

    friend bool operator==(const SignedGraph& a, const SignedGraph& b) { return a.edges_ == b.edges_ && a.origin_ == b.origin_; }

private:
    std::vector<SignedEdge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<std::size_t> origin_;
};

/// A vertex subset W, stored as a membership mask over the graph's vertices.
struct SwitchSet {
    std::vector<bool> members;

    static SwitchSet from_vertices(std::size_t n, std::span<const Vertex> vertices);
    std::vector<Vertex> vertices() const;
    bool contains(Vertex v) const { return v < members.size() && members[v]; }
};

/// Cycle with an odd number of negative edges. `signs[i]` is the sign of the
/// edge between `vertices[i]` and `vertices[(i + 1) % size]`.
struct OddCycle {
    std::vector<Vertex> vertices;
    std::vector<Sign> signs;
};

/// Either a switching labeling (W with G^W all positive) or an odd cycle.
struct BalanceCertificate {
    std::variant<SwitchSet, OddCycle> proof;

    bool balanced() const noexcept { return std::holds_alternative<SwitchSet>(proof); }
    const SwitchSet& labeling() const { return std::get<SwitchSet>(proof); }
    const OddCycle& witness() const { return std::get<OddCycle>(proof); }
};

struct Subgraph {
    SignedGraph graph;
    std::vector<Vertex> to_parent; ///< subgraph vertex -> parent vertex
};

/// Signed graph G(A) over the (0,±1)-rows of `a`: positive edge ij when
/// a_ik = -a_jk != 0 for some column k, negative edge when a_ik = a_jk != 0.
/// Vertex v has origin() equal to its matrix row.
SignedGraph build_signed_graph(const SparseMatrix& a);

/// W-switch: flips every edge with exactly one endpoint in W.
SignedGraph apply_switch(const SignedGraph& g, const SwitchSet& w);

/// Labels components in ascending vertex order (BFS, neighbors ascending).
/// A conflict yields the tree path between its endpoints closed by the
/// conflicting edge.
BalanceCertificate is_balanced(const SignedGraph& g);

/// Endpoints of negative edges (ascending) and the negative edges among them.
Subgraph negative_subgraph(const SignedGraph& g);

Subgraph induced_subgraph(const SignedGraph& g, std::span<const Vertex> vertices);

/// G minus the listed vertices.
Subgraph remove_vertices(const SignedGraph& g, std::span<const Vertex> removed);

/// Underlying simple graph of the negative edges, on all n vertices.
Graph negative_edge_graph(const SignedGraph& g);

bool has_odd_negative_count(const SignedGraph& g, const OddCycle& cycle);

/// Debug dump: "n m" then one "u v sign" line per edge, 1-based vertices.
void write_signed_graph(std::ostream& out, const SignedGraph& g);

/// Raised by extract_network when the requested rows do not induce a
/// balanced subgraph. The witness is expressed in matrix rows.
class UnbalancedRows : public std::runtime_error {
public:
    explicit UnbalancedRows(OddCycle witness_rows);
    const OddCycle& witness() const noexcept { return witness_; }

private:
    OddCycle witness_;
};

struct NetworkExtraction {
    std::vector<std::size_t> rows;      ///< matrix rows of B, ascending
    std::vector<std::size_t> reflected; ///< matrix rows that were sign-flipped
    SparseMatrix network;               ///< B: the rows, reflected, in row order
};

/// Reflects the rows of a balanced row set so the submatrix becomes a
/// network matrix. Rows must be (0,±1)-rows; otherwise std::invalid_argument.
NetworkExtraction extract_network(const SparseMatrix& a, std::span<const std::size_t> rows);

} // namespace refnet
