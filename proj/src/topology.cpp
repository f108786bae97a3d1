#include "hanoi/topology.hpp"

#include <bit>
#include <ostream>
#include <string>

#include "hanoi/errors.hpp"

namespace hanoi {

std::string_view to_string(EdgeMode mode)
{
    return mode == EdgeMode::paired ? "paired" : "chain";
}

EdgeMode parse_edge_mode(std::string_view text)
{
    if (text == "paired") return EdgeMode::paired;
    if (text == "chain") return EdgeMode::chain;
    throw DomainError("unknown edge mode '" + std::string(text) + "' (expected paired|chain)");
}

std::string_view to_string(EdgeClass cls)
{
    switch (cls) {
        case EdgeClass::backbone: return "backbone";
        case EdgeClass::level: return "level";
        case EdgeClass::loop: return "loop";
    }
    return "?";
}

namespace {

void check_levels(int n)
{
    if (n < min_levels || n > max_levels) {
        throw DomainError("level count n=" + std::to_string(n) + " outside [" +
                          std::to_string(min_levels) + ", " + std::to_string(max_levels) + "]");
    }
}

}  // namespace

VertexLabel factorize(vertex_t k, int n)
{
    check_levels(n);
    const vertex_t size = vertex_t{1} << n;
    if (k == 0) throw NoFactorization("vertex 0 has no (level, index) decomposition");
    if (k >= size) {
        throw DomainError("vertex " + std::to_string(k) + " outside [1, " + std::to_string(size - 1) + "]");
    }
    const int level = std::countr_zero(k);
    return VertexLabel{k, level, (k >> level) >> 1};
}

vertex_t compose(int level, vertex_t index, int n)
{
    check_levels(n);
    if (level < 0 || level > n - 1) {
        throw DomainError("level " + std::to_string(level) + " outside [0, " + std::to_string(n - 1) + "]");
    }
    const vertex_t level_size = vertex_t{1} << (n - level - 1);
    if (index >= level_size) {
        throw DomainError("in-level index " + std::to_string(index) + " outside [0, " +
                          std::to_string(level_size - 1) + "] at level " + std::to_string(level));
    }
    return (vertex_t{1} << level) * (2 * index + 1);
}

Topology::Topology(int n, EdgeMode mode) : n_(n), size_(0), mode_(mode)
{
    check_levels(n);
    size_ = vertex_t{1} << n;
    perm_.resize(static_cast<std::size_t>(coin_dim) * size_);
    for (vertex_t k = 0; k < size_; ++k) {
        for (int a = 0; a < coin_dim; ++a) {
            const PortVertex t = compute_target(a, k);
            perm_[coin_dim * static_cast<std::size_t>(k) + a] =
                static_cast<std::uint32_t>(coin_dim * static_cast<std::size_t>(t.vertex) + t.port);
        }
    }
}

PortVertex Topology::compute_target(int port, vertex_t k) const
{
    const vertex_t mask = size_ - 1;
    switch (port) {
        case 2: return {3, (k + 1) & mask};
        case 3: return {2, (k + mask) & mask};
        case 0:
        case 1: break;
        default: throw DomainError("coin port " + std::to_string(port) + " outside [0, 3]");
    }

    const int flipped = 1 - port;
    if (k == 0 || k == size_ / 2) return {flipped, k};

    const VertexLabel label = factorize(k, n_);
    vertex_t index = label.index;
    if (mode_ == EdgeMode::paired) {
        index = (index % 2 == 0) ? index + 1 : index - 1;
    } else {
        const vertex_t level_size = vertex_t{1} << (n_ - label.level - 1);
        index = (port == 0) ? (index + 1) % level_size : (index + level_size - 1) % level_size;
    }
    return {flipped, compose(label.level, index, n_)};
}

PortVertex Topology::shift_target(int port, vertex_t k) const
{
    if (port < 0 || port >= coin_dim) {
        throw DomainError("coin port " + std::to_string(port) + " outside [0, 3]");
    }
    if (k >= size_) {
        throw DomainError("vertex " + std::to_string(k) + " outside [0, " + std::to_string(size_ - 1) + "]");
    }
    const std::uint32_t slot = perm_[coin_dim * static_cast<std::size_t>(k) + port];
    return {static_cast<int>(slot % coin_dim), slot / coin_dim};
}

std::vector<Edge> Topology::edges() const
{
    std::vector<Edge> out;
    out.reserve(2 * static_cast<std::size_t>(size_));
    for (vertex_t k = 0; k < size_; ++k) {
        for (int a = 0; a < coin_dim; ++a) {
            const std::size_t slot = coin_dim * static_cast<std::size_t>(k) + a;
            const std::size_t partner = perm_[slot];
            if (partner < slot) continue;
            const vertex_t other = static_cast<vertex_t>(partner / coin_dim);
            EdgeClass cls = EdgeClass::level;
            if (other == k) {
                cls = EdgeClass::loop;
            } else if (a >= 2) {
                cls = EdgeClass::backbone;
            }
            out.push_back(Edge{k, other, cls});
        }
    }
    return out;
}

void write_edges_csv(std::ostream& out, const Topology& topo)
{
    out << "k,k_prime,class\n";
    for (const Edge& e : topo.edges()) {
        out << e.k << ',' << e.k_prime << ',' << to_string(e.cls) << '\n';
    }
}

}  // namespace hanoi
