#include "hanoi/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "hanoi/csv.hpp"
#include "hanoi/errors.hpp"

namespace hanoi {

std::string_view to_string(Method method)
{
    switch (method) {
        case Method::abstract: return "abstract";
        case Method::tulsi: return "tulsi";
        case Method::modified: return "modified";
    }
    return "?";
}

std::string_view to_string(CosDeltaRule rule)
{
    switch (rule) {
        case CosDeltaRule::explicit_angle: return "explicit";
        case CosDeltaRule::inv_log: return "inv_log";
        case CosDeltaRule::inv_sqrt_log: return "inv_sqrt_log";
    }
    return "?";
}

std::string_view to_string(ReflectionAxis axis)
{
    return axis == ReflectionAxis::grover ? "grover" : "coin";
}

Method parse_method(std::string_view text)
{
    if (text == "abstract") return Method::abstract;
    if (text == "tulsi") return Method::tulsi;
    if (text == "modified") return Method::modified;
    throw DomainError("unknown method '" + std::string(text) + "' (expected abstract|tulsi|modified)");
}

CosDeltaRule parse_cos_delta_rule(std::string_view text)
{
    if (text == "explicit") return CosDeltaRule::explicit_angle;
    if (text == "inv_log") return CosDeltaRule::inv_log;
    if (text == "inv_sqrt_log") return CosDeltaRule::inv_sqrt_log;
    throw DomainError("unknown cos(delta) rule '" + std::string(text) + "' (expected explicit|inv_log|inv_sqrt_log)");
}

ReflectionAxis parse_reflection_axis(std::string_view text)
{
    if (text == "grover") return ReflectionAxis::grover;
    if (text == "coin") return ReflectionAxis::coin;
    throw DomainError("unknown reflection axis '" + std::string(text) + "' (expected grover|coin)");
}

double TulsiParams::cos_delta(vertex_t size) const
{
    const double log_n = std::log2(static_cast<double>(size));
    switch (rule) {
        case CosDeltaRule::explicit_angle: return std::cos(delta);
        case CosDeltaRule::inv_log: return std::min(1.0, c / log_n);
        case CosDeltaRule::inv_sqrt_log: return std::min(1.0, c / std::sqrt(log_n));
    }
    return 1.0;
}

TulsiStep TulsiParams::step(vertex_t size, double epsilon) const
{
    const CoinVector v = axis == ReflectionAxis::grover ? uniform_coin_vector : build_coin_vector(epsilon);
    if (rule == CosDeltaRule::explicit_angle) return TulsiStep::from_angle(delta, v);
    return TulsiStep::from_cosine(cos_delta(size), v);
}

PeakParams PeakParams::resolved(long long t_max) const
{
    PeakParams out = *this;
    if (out.smooth_window == 0) {
        const long long w = std::max<long long>(3, (t_max + 39) / 40);
        out.smooth_window = static_cast<int>(w % 2 == 0 ? w + 1 : w);
    }
    if (out.refine_radius < 0) out.refine_radius = out.smooth_window / 2;
    return out;
}

long long default_horizon(vertex_t size)
{
    return static_cast<long long>(std::ceil(6.0 * std::pow(static_cast<double>(size), 0.75)));
}

long long SearchConfig::horizon() const
{
    return t_max > 0 ? t_max : default_horizon(size());
}

double SearchConfig::cos_delta() const
{
    if (method != Method::tulsi) return std::numeric_limits<double>::quiet_NaN();
    return tulsi.cos_delta(size());
}

void SearchConfig::validate() const
{
    if (n < min_levels || n > max_levels) {
        throw DomainError("level count n=" + std::to_string(n) + " outside [" + std::to_string(min_levels) + ", " +
                          std::to_string(max_levels) + "]");
    }
    if (k0 >= size()) {
        throw DomainError("marked vertex k0=" + std::to_string(k0) + " outside [0, " + std::to_string(size() - 1) +
                          "]");
    }
    if (!(epsilon > 0.0 && epsilon <= 2.0)) {
        throw DomainError("epsilon=" + format_number(epsilon) + " outside (0, 2]");
    }
    if (method == Method::abstract && epsilon != 1.0) {
        throw DomainError("the abstract method uses the Grover coin; epsilon must be 1, got " +
                          format_number(epsilon));
    }
    if (method == Method::tulsi) {
        if (tulsi.rule == CosDeltaRule::explicit_angle) {
            if (!std::isfinite(tulsi.delta)) throw DomainError("delta must be finite");
        } else if (!(tulsi.c > 0.0 && std::isfinite(tulsi.c))) {
            throw DomainError("cos(delta) scale c=" + format_number(tulsi.c) + " must be positive");
        }
    }
    if (t_max < 0) throw DomainError("t_max=" + std::to_string(t_max) + " must be positive (0 selects the default)");
    if (peak.smooth_window < 0 || (peak.smooth_window > 0 && peak.smooth_window % 2 == 0)) {
        throw DomainError("smooth_window=" + std::to_string(peak.smooth_window) + " must be odd (0 selects the default)");
    }
    if (!(peak.height_fraction > 0.0 && peak.height_fraction <= 1.0)) {
        throw DomainError("height_fraction=" + format_number(peak.height_fraction) + " outside (0, 1]");
    }
    if (peak.refine_radius < -1) {
        throw DomainError("refine_radius=" + std::to_string(peak.refine_radius) + " must be >= 0 (-1 selects the default)");
    }
}

std::vector<double> run_series(const SearchConfig& config, std::optional<WalkerState>* final_state)
{
    config.validate();
    const long long steps = config.horizon();
    const std::uint64_t work = static_cast<std::uint64_t>(config.uses_ancilla() ? 2 : 1) * coin_dim *
                               static_cast<std::uint64_t>(config.size()) * static_cast<std::uint64_t>(steps);
    if (work > config.budget) {
        throw ResourceError("run needs " + std::to_string(work) + " amplitude updates, budget is " +
                            std::to_string(config.budget));
    }

    const Topology topo(config.n, config.edge_mode);
    const Coin coin = Coin::epsilon(config.epsilon);
    std::vector<double> series;
    series.reserve(static_cast<std::size_t>(steps) + 1);

    if (config.method == Method::tulsi) {
        const TulsiStep step = config.tulsi.step(config.size(), config.epsilon);
        WalkerState state = WalkerState::initial_from(step.axis, config.n, true);
        series.push_back(marked_probability(state, config.k0));
        for (long long t = 0; t < steps; ++t) {
            step_tulsi(state, topo, coin, config.k0, step);
            series.push_back(marked_probability(state, config.k0));
        }
        if (final_state) final_state->emplace(std::move(state));
    } else {
        WalkerState state = WalkerState::initial(config.epsilon, config.n, false);
        series.push_back(marked_probability(state, config.k0));
        for (long long t = 0; t < steps; ++t) {
            step_search(state, topo, coin, config.k0);
            series.push_back(marked_probability(state, config.k0));
        }
        if (final_state) final_state->emplace(std::move(state));
    }
    return series;
}

PeakReport detect_first_peak(std::span<const double> series, const PeakParams& params, vertex_t size)
{
    if (series.empty()) throw DomainError("empty series");
    const PeakParams peak = params.resolved(static_cast<long long>(series.size()) - 1);
    if (peak.smooth_window % 2 == 0 || peak.smooth_window < 1) {
        throw DomainError("smooth_window=" + std::to_string(peak.smooth_window) + " must be odd and positive");
    }
    if (series.size() < static_cast<std::size_t>(peak.smooth_window)) {
        throw DomainError("series of length " + std::to_string(series.size()) + " shorter than smooth_window=" +
                          std::to_string(peak.smooth_window));
    }

    // Centered moving average, window truncated at both ends.
    const std::size_t len = series.size();
    const std::size_t half = static_cast<std::size_t>(peak.smooth_window / 2);
    std::vector<double> prefix(len + 1, 0.0);
    std::partial_sum(series.begin(), series.end(), prefix.begin() + 1);
    std::vector<double> smooth(len);
    for (std::size_t t = 0; t < len; ++t) {
        const std::size_t lo = t >= half ? t - half : 0;
        const std::size_t hi = std::min(len, t + half + 1);
        smooth[t] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
    }

    const double smooth_max = *std::max_element(smooth.begin(), smooth.end());
    if (!(smooth_max > 2.0 / static_cast<double>(size))) {
        throw NoPeak("smoothed series never exceeds 2/N; t_max too small or run degenerate");
    }
    const double gate = peak.height_fraction * smooth_max;

    std::size_t first = 0;
    for (std::size_t t = 1; t + 1 < len; ++t) {
        if (smooth[t] >= smooth[t - 1] && smooth[t] > smooth[t + 1] && smooth[t] >= gate) {
            first = t;
            break;
        }
    }
    if (first == 0) throw NoPeak("no smoothed local maximum reaches the height gate");

    const std::size_t radius = static_cast<std::size_t>(peak.refine_radius);
    const std::size_t lo = first >= radius ? first - radius : 0;
    const std::size_t hi = std::min(len, first + radius + 1);
    const auto t_f = static_cast<std::size_t>(std::max_element(series.begin() + lo, series.begin() + hi) -
                                              series.begin());
    const auto t_global =
        static_cast<std::size_t>(std::max_element(series.begin(), series.end()) - series.begin());

    PeakReport report;
    report.t_f = static_cast<long long>(t_f);
    report.p_f = series[t_f];
    report.series_max = series[t_global];
    report.t_global = static_cast<long long>(t_global);
    if (!(report.p_f > 0.0)) throw NoPeak("first peak has zero probability");
    const CostRecord cost = evaluate_cost(report);
    report.cost_single = cost.cost_single;
    report.cost_total = cost.cost_total;
    return report;
}

CostRecord evaluate_cost(const PeakReport& report)
{
    CostRecord out;
    out.cost_single = static_cast<double>(report.t_f);
    out.cost_total = out.cost_single / std::sqrt(report.p_f);
    // Tolerance keeps exact squares such as p_f = 1/4 from rounding up.
    out.repetitions = static_cast<long long>(std::ceil(1.0 / std::sqrt(report.p_f) - 1e-9));
    return out;
}

void write_series_csv(std::ostream& out, std::span<const double> series)
{
    out << "t,p_marked\n";
    for (std::size_t t = 0; t < series.size(); ++t) out << t << ',' << format_number(series[t]) << '\n';
}

std::string report_row(const SearchConfig& config, const PeakReport* report)
{
    std::string row;
    row += to_string(config.method);
    row += ',';
    row += to_string(config.edge_mode);
    row += ',' + std::to_string(config.n) + ',' + std::to_string(config.size()) + ',' + std::to_string(config.k0);
    row += ',' + format_number(config.epsilon) + ',';
    if (config.method == Method::tulsi) row += format_number(config.cos_delta());
    if (report) {
        row += ',' + std::to_string(report->t_f) + ',' + format_number(report->p_f) + ',' +
               format_number(report->cost_single) + ',' + format_number(report->cost_total);
    } else {
        row += ",,,,";
    }
    return row;
}

void write_report_csv(std::ostream& out, const SearchConfig& config, const PeakReport& report)
{
    out << report_header << '\n' << report_row(config, &report) << '\n';
}

}  // namespace hanoi
