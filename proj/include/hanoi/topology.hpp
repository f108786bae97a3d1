#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace hanoi {

using vertex_t = std::uint32_t;

enum class EdgeMode { paired, chain };

std::string_view to_string(EdgeMode mode);
EdgeMode parse_edge_mode(std::string_view text);

// k = 2^level * (2 * index + 1) for k >= 1.
struct VertexLabel {
    vertex_t k = 0;
    int level = 0;
    vertex_t index = 0;
};

VertexLabel factorize(vertex_t k, int n);
vertex_t compose(int level, vertex_t index, int n);

struct PortVertex {
    int port = 0;
    vertex_t vertex = 0;

    friend bool operator==(const PortVertex&, const PortVertex&) = default;
};

enum class EdgeClass { backbone, level, loop };

std::string_view to_string(EdgeClass cls);

struct Edge {
    vertex_t k = 0;
    vertex_t k_prime = 0;
    EdgeClass cls = EdgeClass::backbone;
};

inline constexpr int coin_dim = 4;
inline constexpr int min_levels = 2;
inline constexpr int max_levels = 28;

/// Degree-4 Hanoi network on N = 2^n vertices.
///
/// Ports 2 and 3 walk the backbone cycle (k -> k+1, k -> k-1 mod N). Ports 0
/// and 1 follow the small-world edge inside the vertex's hierarchy level.
/// Vertices 0 and N/2 carry a loop on ports 0/1. Every move flips the port
/// (0<->1, 2<->3), so the port map is an involution.
///
/// Immutable after construction.
class Topology {
public:
    Topology(int n, EdgeMode mode);

    int levels() const noexcept { return n_; }
    vertex_t size() const noexcept { return size_; }
    EdgeMode mode() const noexcept { return mode_; }

    PortVertex shift_target(int port, vertex_t k) const;

    // Flat permutation over coin-major-within-vertex slots:
    // slot 4*k + a moves to permutation()[4*k + a].
    std::span<const std::uint32_t> permutation() const noexcept { return perm_; }

    // One row per orbit of the port map; a doubled level edge yields two rows.
    std::vector<Edge> edges() const;

private:
    PortVertex compute_target(int port, vertex_t k) const;

    int n_;
    vertex_t size_;
    EdgeMode mode_;
    std::vector<std::uint32_t> perm_;
};

void write_edges_csv(std::ostream& out, const Topology& topo);

}  // namespace hanoi
