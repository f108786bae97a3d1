#include "hanoi/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

#include "hanoi/errors.hpp"

namespace hanoi {

std::string_view to_string(SweepVariable variable)
{
    switch (variable) {
        case SweepVariable::size: return "size";
        case SweepVariable::epsilon: return "epsilon";
        case SweepVariable::delta: return "delta";
    }
    return "?";
}

SweepVariable parse_sweep_variable(std::string_view text)
{
    if (text == "size") return SweepVariable::size;
    if (text == "epsilon") return SweepVariable::epsilon;
    if (text == "delta") return SweepVariable::delta;
    throw DomainError("unknown sweep variable '" + std::string(text) + "' (expected size|epsilon|delta)");
}

std::vector<int> default_size_grid()
{
    return {5, 6, 7, 8, 9, 10, 11, 12};
}

std::vector<double> default_epsilon_grid()
{
    std::vector<double> grid;
    for (int i = 1; i <= 8; ++i) grid.push_back(0.25 * i);
    return grid;
}

std::vector<double> default_c_grid()
{
    return {0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5};
}

void SweepSpec::validate() const
{
    switch (variable) {
        case SweepVariable::size:
            if (n_values.empty()) throw DomainError("size grid is empty");
            break;
        case SweepVariable::epsilon:
            if (epsilon_grid.empty()) throw DomainError("epsilon grid is empty");
            for (double e : epsilon_grid) {
                if (!(e > 0.0 && e <= 2.0)) throw DomainError("epsilon grid value " + format_number(e) + " outside (0, 2]");
            }
            if (base.method == Method::abstract) throw DomainError("the abstract method has no epsilon to sweep");
            break;
        case SweepVariable::delta:
            if (c_grid.empty()) throw DomainError("c grid is empty");
            if (base.method != Method::tulsi) throw DomainError("a delta sweep needs the tulsi method");
            if (base.tulsi.rule == CosDeltaRule::explicit_angle) {
                throw DomainError("a delta sweep scales c and needs the inv_log or inv_sqrt_log rule");
            }
            break;
    }
    for (const SearchConfig& config : grid()) config.validate();
}

std::vector<SearchConfig> SweepSpec::grid() const
{
    std::vector<SearchConfig> out;
    switch (variable) {
        case SweepVariable::size:
            for (int n : n_values) {
                SearchConfig c = base;
                c.n = n;
                out.push_back(c);
            }
            break;
        case SweepVariable::epsilon:
            for (double e : epsilon_grid) {
                SearchConfig c = base;
                c.epsilon = e;
                out.push_back(c);
            }
            break;
        case SweepVariable::delta:
            for (double scale : c_grid) {
                SearchConfig c = base;
                c.tulsi.c = scale;
                out.push_back(c);
            }
            break;
    }
    return out;
}

namespace {

double swept_value(SweepVariable variable, const SearchConfig& config)
{
    switch (variable) {
        case SweepVariable::size: return config.n;
        case SweepVariable::epsilon: return config.epsilon;
        case SweepVariable::delta: return config.tulsi.c;
    }
    return 0.0;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec)
{
    spec.validate();
    const std::vector<SearchConfig> configs = spec.grid();
    std::vector<SweepRow> rows(configs.size());
    std::vector<std::exception_ptr> errors(configs.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            SweepRow& row = rows[i];
            row.variable = spec.variable;
            row.config = configs[i];
            row.value = swept_value(spec.variable, configs[i]);
            try {
                const std::vector<double> series = run_series(configs[i]);
                row.report = detect_first_peak(series, configs[i].peak, configs[i].size());
            } catch (const NoPeak&) {
                row.report.reset();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    unsigned jobs = spec.jobs ? spec.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, configs.size()));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.value < b.value; });
    return rows;
}

std::string sweep_header()
{
    return "sweep_variable,value," + std::string(report_header) + ",status";
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows)
{
    out << sweep_header() << '\n';
    for (const SweepRow& row : rows) {
        out << to_string(row.variable) << ',' << format_number(row.value) << ','
            << report_row(row.config, row.report ? &*row.report : nullptr) << ','
            << (row.report ? "ok" : "no_peak") << '\n';
    }
}

ScalingFit fit_powerlaw(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw DomainError("x and y differ in length");
    if (x.size() < 3) {
        throw DomainError("power-law fit needs at least 3 points, got " + std::to_string(x.size()));
    }
    const double count = static_cast<double>(x.size());
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw DomainError("power-law fit needs positive values, got (" + format_number(x[i]) + ", " +
                              format_number(y[i]) + ")");
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw DomainError("power-law fit needs at least two distinct x values");

    ScalingFit fit;
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (my + fit.exponent * (lx[i] - mx));
        ss_res += r * r;
    }
    // A perfectly flat y fits exactly.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    fit.points_used = static_cast<int>(x.size());
    return fit;
}

ScalingFit fit_table(const CsvTable& table, const FitSelection& selection)
{
    const std::size_t xi = table.column(selection.x_column);
    const std::size_t yi = table.column(selection.y_column);
    const bool has_status = table.has_column("status");
    const bool has_n = table.has_column("n");
    const std::size_t si = has_status ? table.column("status") : 0;
    const std::size_t ni = has_n ? table.column("n") : 0;

    std::vector<double> x, y;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = table.row_lines[r];
        if (has_status && row[si] != "ok") continue;
        if (has_n && parse_integer(row[ni], line) < selection.min_n) continue;
        x.push_back(parse_number(row[xi], line));
        y.push_back(parse_number(row[yi], line));
    }
    return fit_powerlaw(x, y);
}

void write_fit_csv(std::ostream& out, const ScalingFit& fit)
{
    out << "prefactor,exponent,r_squared,points_used\n"
        << format_number(fit.prefactor) << ',' << format_number(fit.exponent) << ','
        << format_number(fit.r_squared) << ',' << fit.points_used << '\n';
}

}  // namespace hanoi
