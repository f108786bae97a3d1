#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanoi/topology.hpp"
#include "hanoi/walker.hpp"

namespace hanoi {

enum class Method { abstract, tulsi, modified };
enum class CosDeltaRule { explicit_angle, inv_log, inv_sqrt_log };

// Axis of the marked-vertex reflection inside Tulsi's controlled block.
// grover: uniform coin vector, start from |1> |u_C> |u_P>.
// coin:   v(eps) of the running coin, start from |1> v(eps) |u_P>.
enum class ReflectionAxis { grover, coin };

std::string_view to_string(Method method);
std::string_view to_string(CosDeltaRule rule);
std::string_view to_string(ReflectionAxis axis);
Method parse_method(std::string_view text);
CosDeltaRule parse_cos_delta_rule(std::string_view text);
ReflectionAxis parse_reflection_axis(std::string_view text);

struct TulsiParams {
    double delta = 0.0;  // radians, used by explicit_angle only
    CosDeltaRule rule = CosDeltaRule::inv_log;
    double c = 1.0;
    ReflectionAxis axis = ReflectionAxis::grover;

    double cos_delta(vertex_t size) const;
    TulsiStep step(vertex_t size, double epsilon) const;
};

struct PeakParams {
    int smooth_window = 0;        // 0: max(3, odd(ceil(t_max / 40)))
    double height_fraction = 0.7;
    int refine_radius = -1;       // -1: smooth_window / 2

    // Fills the automatic fields for a series of horizon t_max.
    PeakParams resolved(long long t_max) const;
};

inline constexpr std::uint64_t default_budget = std::uint64_t{1} << 36;

struct SearchConfig {
    Method method = Method::modified;
    int n = 10;
    vertex_t k0 = 3;
    double epsilon = 1.0;
    TulsiParams tulsi{};
    long long t_max = 0;  // 0: ceil(6 N^0.75)
    EdgeMode edge_mode = EdgeMode::paired;
    PeakParams peak{};
    std::uint64_t budget = default_budget;  // cap on slices * 4N * t_max

    vertex_t size() const { return vertex_t{1} << n; }
    long long horizon() const;
    bool uses_ancilla() const { return method == Method::tulsi; }
    // NaN unless method is tulsi.
    double cos_delta() const;

    void validate() const;
};

long long default_horizon(vertex_t size);

// p_k0(t) for t = 0..t_max. When final_state is given it receives the state
// after the last step.
std::vector<double> run_series(const SearchConfig& config, std::optional<WalkerState>* final_state = nullptr);

struct PeakReport {
    long long t_f = 0;
    double p_f = 0.0;
    double cost_single = 0.0;
    double cost_total = 0.0;
    double series_max = 0.0;
    long long t_global = 0;
};

// Throws NoPeak when the series never rises above 2/N or has no smoothed
// local maximum passing the height gate.
PeakReport detect_first_peak(std::span<const double> series, const PeakParams& peak, vertex_t size);

struct CostRecord {
    double cost_single = 0.0;
    double cost_total = 0.0;
    long long repetitions = 0;
};

CostRecord evaluate_cost(const PeakReport& report);

void write_series_csv(std::ostream& out, std::span<const double> series);

inline constexpr std::string_view report_header =
    "method,mode,n,N,k0,epsilon,cos_delta,t_f,p_f,cost_single,cost_total";

// One report row without header or newline; a missing report leaves the
// measured fields empty.
std::string report_row(const SearchConfig& config, const PeakReport* report);
void write_report_csv(std::ostream& out, const SearchConfig& config, const PeakReport& report);

}  // namespace hanoi
