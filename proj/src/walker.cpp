#include "hanoi/walker.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "hanoi/csv.hpp"
#include "hanoi/errors.hpp"

namespace hanoi {

namespace {

void check_epsilon(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon <= 2.0)) {
        throw DomainError("epsilon=" + format_number(epsilon) +
                          " outside (0, 2]; the coin has real entries only for d - 2 eps >= 0 with d = 4");
    }
}

void check_vertex(const WalkerState& state, vertex_t k0)
{
    if (k0 >= state.vertices()) {
        throw DomainError("marked vertex " + std::to_string(k0) + " outside [0, " +
                          std::to_string(state.vertices() - 1) + "]");
    }
}

void coin_block(amplitude* block, const CoinMatrix& m)
{
    const amplitude x0 = block[0], x1 = block[1], x2 = block[2], x3 = block[3];
    for (int r = 0; r < coin_dim; ++r) {
        const double* row = &m[r * coin_dim];
        block[r] = row[0] * x0 + row[1] * x1 + row[2] * x2 + row[3] * x3;
    }
}

void reflect_block(amplitude* block, const CoinVector& axis)
{
    amplitude overlap = 0.0;
    for (int a = 0; a < coin_dim; ++a) overlap += axis[a] * block[a];
    for (int a = 0; a < coin_dim; ++a) block[a] -= 2.0 * axis[a] * overlap;
}

void coin_slice(std::span<amplitude> slice, const CoinMatrix& m)
{
    for (std::size_t base = 0; base < slice.size(); base += coin_dim) coin_block(&slice[base], m);
}

void shift_slice(std::span<amplitude> slice, std::vector<amplitude>& scratch, const Topology& topo)
{
    const auto perm = topo.permutation();
    scratch.resize(slice.size());
    for (std::size_t i = 0; i < slice.size(); ++i) scratch[perm[i]] = slice[i];
    std::copy(scratch.begin(), scratch.end(), slice.begin());
}

void marked_coin_slice(std::span<amplitude> slice, const CoinMatrix& m, vertex_t k0)
{
    const std::size_t marked = coin_dim * static_cast<std::size_t>(k0);
    for (std::size_t base = 0; base < slice.size(); base += coin_dim) {
        if (base == marked) {
            for (int a = 0; a < coin_dim; ++a) slice[base + a] = -slice[base + a];
        } else {
            coin_block(&slice[base], m);
        }
    }
}

void check_topology(const WalkerState& state, const Topology& topo)
{
    if (topo.levels() != state.levels()) {
        throw DomainError("topology has n=" + std::to_string(topo.levels()) + " but state has n=" +
                          std::to_string(state.levels()));
    }
}

}  // namespace

CoinVector build_coin_vector(double epsilon)
{
    check_epsilon(epsilon);
    const double small_world = std::sqrt(epsilon / 4.0);
    const double backbone = std::sqrt((4.0 - 2.0 * epsilon) / 8.0);
    return {small_world, small_world, backbone, backbone};
}

Coin Coin::epsilon(double eps)
{
    check_epsilon(eps);
    // Entries written out from the eps family with d = 4 rather than as
    // 2 v v^T - I, so eps = 1 is exactly +-1/2.
    const double a = eps / 2.0;
    const double b = std::sqrt(eps * (2.0 - eps)) / 2.0;
    const double c = (2.0 - eps) / 2.0;
    const CoinMatrix m{
        a - 1.0, a,       b,       b,
        a,       a - 1.0, b,       b,
        b,       b,       c - 1.0, c,
        b,       b,       c,       c - 1.0,
    };
    return Coin(eps, m);
}

WalkerState::WalkerState(int n, bool with_ancilla)
    : n_(n), size_(0), ancilla_(with_ancilla)
{
    if (n < min_levels || n > max_levels) {
        throw DomainError("level count n=" + std::to_string(n) + " outside [" + std::to_string(min_levels) +
                          ", " + std::to_string(max_levels) + "]");
    }
    size_ = vertex_t{1} << n;
    amp_.assign(slice_length() * slices(), amplitude{0.0, 0.0});
}

WalkerState WalkerState::initial(double epsilon, int n, bool with_ancilla)
{
    return initial_from(build_coin_vector(epsilon), n, with_ancilla);
}

WalkerState WalkerState::initial_from(const CoinVector& axis, int n, bool with_ancilla)
{
    WalkerState state(n, with_ancilla);
    const double position = 1.0 / std::sqrt(static_cast<double>(state.vertices()));
    auto active = state.slice(with_ancilla ? 1 : 0);
    for (std::size_t base = 0; base < active.size(); base += coin_dim) {
        for (int a = 0; a < coin_dim; ++a) active[base + a] = axis[a] * position;
    }
    return state;
}

std::span<amplitude> WalkerState::slice(int ancilla)
{
    return std::span<amplitude>(amp_).subspan(slice_length() * ancilla, slice_length());
}

std::span<const amplitude> WalkerState::slice(int ancilla) const
{
    return std::span<const amplitude>(amp_).subspan(slice_length() * ancilla, slice_length());
}

amplitude& WalkerState::at(int ancilla, int coin, vertex_t k)
{
    return amp_[(static_cast<std::size_t>(ancilla) * size_ + k) * coin_dim + coin];
}

const amplitude& WalkerState::at(int ancilla, int coin, vertex_t k) const
{
    return amp_[(static_cast<std::size_t>(ancilla) * size_ + k) * coin_dim + coin];
}

double WalkerState::norm_squared() const
{
    double sum = 0.0;
    for (const amplitude& x : amp_) sum += std::norm(x);
    return sum;
}

void apply_coin(WalkerState& state, const Coin& coin)
{
    for (int s = 0; s < state.slices(); ++s) coin_slice(state.slice(s), coin.matrix());
}

void apply_shift(WalkerState& state, const Topology& topo)
{
    check_topology(state, topo);
    for (int s = 0; s < state.slices(); ++s) shift_slice(state.slice(s), state.scratch(), topo);
}

void apply_marked_coin(WalkerState& state, const Coin& coin, vertex_t k0)
{
    check_vertex(state, k0);
    for (int s = 0; s < state.slices(); ++s) marked_coin_slice(state.slice(s), coin.matrix(), k0);
}

void apply_reflection(WalkerState& state, const CoinVector& axis, vertex_t k0)
{
    check_vertex(state, k0);
    for (int s = 0; s < state.slices(); ++s) reflect_block(&state.at(s, 0, k0), axis);
}

void apply_reflection(WalkerState& state, double epsilon, vertex_t k0)
{
    apply_reflection(state, build_coin_vector(epsilon), k0);
}

void step_search(WalkerState& state, const Topology& topo, const Coin& coin, vertex_t k0)
{
    if (state.has_ancilla()) throw DomainError("step_search expects a state without ancilla");
    check_topology(state, topo);
    check_vertex(state, k0);
    auto slice = state.slice(0);
    marked_coin_slice(slice, coin.matrix(), k0);
    shift_slice(slice, state.scratch(), topo);
    state.advance_time();
}

TulsiStep TulsiStep::from_angle(double delta, const CoinVector& axis)
{
    return TulsiStep{std::cos(delta), std::sin(delta), axis};
}

TulsiStep TulsiStep::from_cosine(double cos_delta, const CoinVector& axis)
{
    if (!(cos_delta >= -1.0 && cos_delta <= 1.0)) {
        throw DomainError("cos(delta)=" + format_number(cos_delta) + " outside [-1, 1]");
    }
    return TulsiStep{cos_delta, std::sqrt(1.0 - cos_delta * cos_delta), axis};
}

void step_tulsi(WalkerState& state, const Topology& topo, const Coin& coin, vertex_t k0,
                const TulsiStep& tulsi)
{
    if (!state.has_ancilla()) throw DomainError("step_tulsi expects a state with an ancilla qubit");
    check_topology(state, topo);
    check_vertex(state, k0);
    const double c = tulsi.cos_delta;
    const double s = tulsi.sin_delta;
    if (!(std::abs(c * c + s * s - 1.0) <= 1e-12)) {
        throw DomainError("ancilla rotation is not unitary: cos^2 + sin^2 = " + format_number(c * c + s * s));
    }
    auto off = state.slice(0);
    auto on = state.slice(1);

    // X_delta = [[c, s], [-s, c]] on the ancilla.
    for (std::size_t i = 0; i < off.size(); ++i) {
        const amplitude x0 = off[i], x1 = on[i];
        off[i] = c * x0 + s * x1;
        on[i] = -s * x0 + c * x1;
    }
    reflect_block(&on[coin_dim * static_cast<std::size_t>(k0)], tulsi.axis);
    // X_delta^dagger = [[c, -s], [s, c]].
    for (std::size_t i = 0; i < off.size(); ++i) {
        const amplitude x0 = off[i], x1 = on[i];
        off[i] = c * x0 - s * x1;
        on[i] = s * x0 + c * x1;
    }
    coin_slice(on, coin.matrix());
    shift_slice(on, state.scratch(), topo);
    // -Z = diag(-1, +1).
    for (amplitude& x : off) x = -x;
    state.advance_time();
}

double marked_probability(const WalkerState& state, vertex_t k0)
{
    check_vertex(state, k0);
    double p = 0.0;
    for (int s = 0; s < state.slices(); ++s) {
        for (int a = 0; a < coin_dim; ++a) p += std::norm(state.at(s, a, k0));
    }
    return p;
}

std::vector<double> position_distribution(const WalkerState& state)
{
    std::vector<double> dist(state.vertices(), 0.0);
    for (int s = 0; s < state.slices(); ++s) {
        for (vertex_t k = 0; k < state.vertices(); ++k) {
            for (int a = 0; a < coin_dim; ++a) dist[k] += std::norm(state.at(s, a, k));
        }
    }
    return dist;
}

void write_state_csv(std::ostream& out, const WalkerState& state)
{
    out << "ancilla,coin,vertex,re,im\n";
    for (int s = 0; s < state.slices(); ++s) {
        for (vertex_t k = 0; k < state.vertices(); ++k) {
            for (int a = 0; a < coin_dim; ++a) {
                const amplitude x = state.at(s, a, k);
                out << (state.has_ancilla() ? std::to_string(s) : std::string{}) << ',' << a << ',' << k << ','
                    << format_number(x.real()) << ',' << format_number(x.imag()) << '\n';
            }
        }
    }
}

}  // namespace hanoi
