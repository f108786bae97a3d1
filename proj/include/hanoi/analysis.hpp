#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanoi/csv.hpp"
#include "hanoi/search.hpp"

namespace hanoi {

enum class SweepVariable { size, epsilon, delta };

std::string_view to_string(SweepVariable variable);
SweepVariable parse_sweep_variable(std::string_view text);

std::vector<int> default_size_grid();        // n = 5..12
std::vector<double> default_epsilon_grid();  // 0.25, 0.5, ..., 2.0
std::vector<double> default_c_grid();

struct SweepSpec {
    SweepVariable variable = SweepVariable::size;
    SearchConfig base{};  // everything not swept; t_max 0 stays automatic per point
    std::vector<int> n_values = default_size_grid();
    std::vector<double> epsilon_grid = default_epsilon_grid();
    std::vector<double> c_grid = default_c_grid();
    unsigned jobs = 0;  // 0: hardware concurrency

    void validate() const;
    std::vector<SearchConfig> grid() const;
};

struct SweepRow {
    SweepVariable variable = SweepVariable::size;
    double value = 0.0;
    SearchConfig config{};
    std::optional<PeakReport> report;  // empty on NoPeak
};

// Rows sorted by swept value. NoPeak is recorded per row; any other error
// aborts the sweep and is rethrown after the workers finish.
std::vector<SweepRow> sweep(const SweepSpec& spec);

std::string sweep_header();
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

struct ScalingFit {
    double prefactor = 0.0;
    double exponent = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

// Least squares on (log x, log y).
ScalingFit fit_powerlaw(std::span<const double> x, std::span<const double> y);

struct FitSelection {
    std::string x_column = "N";
    std::string y_column = "cost_total";
    int min_n = 5;  // rows with n below this are left out
};

// Fits a table such as the sweep CSV. Rows flagged with a status other than
// `ok` and rows below min_n are skipped.
ScalingFit fit_table(const CsvTable& table, const FitSelection& selection);

void write_fit_csv(std::ostream& out, const ScalingFit& fit);

}  // namespace hanoi
