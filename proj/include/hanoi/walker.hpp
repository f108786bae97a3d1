#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "hanoi/topology.hpp"

namespace hanoi {

using amplitude = std::complex<double>;
using CoinVector = std::array<double, coin_dim>;
using CoinMatrix = std::array<double, coin_dim * coin_dim>;  // row-major

// Weighted coin vector v(eps): sqrt(eps/4) on the small-world ports 0,1 and
// sqrt((4 - 2 eps)/8) on the backbone ports 2,3. Unit norm; eps = 1 is uniform.
CoinVector build_coin_vector(double epsilon);

inline constexpr CoinVector uniform_coin_vector{0.5, 0.5, 0.5, 0.5};

/// Real 4x4 coin of the eps family, C(eps) = 2 v v^T - I.
///
/// eps = 1 gives the Grover coin (all entries +-1/2); eps in (0, 1) weakens
/// the flux onto the small-world edges, eps in (1, 2] strengthens it. Above 2
/// the off-diagonal blocks turn imaginary, so the domain is (0, 2].
class Coin {
public:
    static Coin epsilon(double eps);
    static Coin grover() { return epsilon(1.0); }

    double eps() const noexcept { return eps_; }
    const CoinMatrix& matrix() const noexcept { return m_; }
    double at(int row, int col) const noexcept { return m_[row * coin_dim + col]; }
    CoinVector fixed_vector() const { return build_coin_vector(eps_); }

private:
    Coin(double eps, const CoinMatrix& m) : eps_(eps), m_(m) {}

    double eps_;
    CoinMatrix m_;
};

/// State vector over (ancilla?, coin, vertex).
///
/// Layout is vertex-major with a contiguous 4-entry coin block per vertex;
/// with an ancilla the |0> slice precedes the |1> slice:
///   index = (ancilla * N + k) * 4 + a
class WalkerState {
public:
    WalkerState(int n, bool with_ancilla);

    static WalkerState initial(double epsilon, int n, bool with_ancilla);
    // axis (x) |u_P>, placed on ancilla |1> when with_ancilla.
    static WalkerState initial_from(const CoinVector& axis, int n, bool with_ancilla);

    int levels() const noexcept { return n_; }
    vertex_t vertices() const noexcept { return size_; }
    bool has_ancilla() const noexcept { return ancilla_; }
    int slices() const noexcept { return ancilla_ ? 2 : 1; }
    std::size_t slice_length() const noexcept { return coin_dim * static_cast<std::size_t>(size_); }

    std::span<amplitude> amplitudes() noexcept { return amp_; }
    std::span<const amplitude> amplitudes() const noexcept { return amp_; }
    std::span<amplitude> slice(int ancilla);
    std::span<const amplitude> slice(int ancilla) const;

    amplitude& at(int ancilla, int coin, vertex_t k);
    const amplitude& at(int ancilla, int coin, vertex_t k) const;

    long long time() const noexcept { return time_; }
    void advance_time() noexcept { ++time_; }

    double norm_squared() const;

    // Scratch for the out-of-place shift; swapped with the active slice.
    std::vector<amplitude>& scratch() { return scratch_; }

private:
    int n_;
    vertex_t size_;
    bool ancilla_;
    long long time_ = 0;
    std::vector<amplitude> amp_;
    std::vector<amplitude> scratch_;
};

// Every operator below acts as identity on the ancilla: with an ancilla
// present they are applied to both slices.
void apply_coin(WalkerState& state, const Coin& coin);
void apply_shift(WalkerState& state, const Topology& topo);
// C' = -I at k0, C elsewhere.
void apply_marked_coin(WalkerState& state, const Coin& coin, vertex_t k0);
// psi -> psi - 2 (axis . psi) axis on the coin block of k0 only.
void apply_reflection(WalkerState& state, const CoinVector& axis, vertex_t k0);
void apply_reflection(WalkerState& state, double epsilon, vertex_t k0);

// U' = S (C' (x) I); state must not carry an ancilla.
void step_search(WalkerState& state, const Topology& topo, const Coin& coin, vertex_t k0);

struct TulsiStep {
    double cos_delta = 1.0;
    double sin_delta = 0.0;
    CoinVector axis = uniform_coin_vector;  // reflection axis of R_k0

    static TulsiStep from_angle(double delta, const CoinVector& axis = uniform_coin_vector);
    static TulsiStep from_cosine(double cos_delta, const CoinVector& axis = uniform_coin_vector);
};

// U'' = (-Z) . C(U) . (X_delta^dagger) . C(R_k0) . X_delta, controls active on |1>.
void step_tulsi(WalkerState& state, const Topology& topo, const Coin& coin, vertex_t k0,
                const TulsiStep& tulsi);

// Sum over ancilla and all four coin ports at vertex k0.
double marked_probability(const WalkerState& state, vertex_t k0);
std::vector<double> position_distribution(const WalkerState& state);

void write_state_csv(std::ostream& out, const WalkerState& state);

}  // namespace hanoi
