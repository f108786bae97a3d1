#include "hanoi/hanoi.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "hanoi/analysis.hpp"
#include "hanoi/errors.hpp"

#ifndef HANOI_VERSION
#define HANOI_VERSION "0.0.0"
#endif

struct hn_topology {
    hanoi::Topology topo;
};

struct hn_run {
    hanoi::SearchConfig config;
    std::vector<double> series;
    std::optional<hanoi::WalkerState> state;
};

struct hn_sweep_spec {
    hanoi::SweepSpec spec;
};

struct hn_sweep_result {
    std::vector<hanoi::SweepRow> rows;
};

namespace {

thread_local std::string last_error;

struct InvalidArgument : hanoi::Error {
    using hanoi::Error::Error;
};

template <class F>
hn_status guard(F&& body) noexcept
{
    try {
        body();
        last_error.clear();
        return HN_OK;
    } catch (const hanoi::NoFactorization& e) {
        last_error = e.what();
        return HN_ERR_NO_FACTORIZATION;
    } catch (const hanoi::NoPeak& e) {
        last_error = e.what();
        return HN_ERR_NO_PEAK;
    } catch (const hanoi::ResourceError& e) {
        last_error = e.what();
        return HN_ERR_RESOURCE;
    } catch (const hanoi::ParseError& e) {
        last_error = e.what();
        return HN_ERR_PARSE;
    } catch (const hanoi::IoError& e) {
        last_error = e.what();
        return HN_ERR_IO;
    } catch (const InvalidArgument& e) {
        last_error = e.what();
        return HN_ERR_INVALID_ARGUMENT;
    } catch (const hanoi::DomainError& e) {
        last_error = e.what();
        return HN_ERR_DOMAIN;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return HN_ERR_RESOURCE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return HN_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return HN_ERR_INTERNAL;
    }
}

void require(const void* ptr, const char* name)
{
    if (!ptr) throw InvalidArgument(std::string(name) + " is null");
}

bool is_stdout(const char* path)
{
    return path == nullptr || std::strcmp(path, "-") == 0;
}

// Writes through `emit` to a file or stdout.
template <class F>
void write_to(const char* path, F&& emit)
{
    if (is_stdout(path)) {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hanoi::IoError(std::string("cannot open '") + path + "' for writing");
    emit(out);
    out.close();
    if (!out) throw hanoi::IoError(std::string("write to '") + path + "' failed");
}

hanoi::EdgeMode edge_mode_of(int mode)
{
    switch (mode) {
        case HN_MODE_PAIRED: return hanoi::EdgeMode::paired;
        case HN_MODE_CHAIN: return hanoi::EdgeMode::chain;
    }
    throw InvalidArgument("unknown edge mode " + std::to_string(mode));
}

hanoi::SearchConfig to_core(const hn_search_config& c)
{
    hanoi::SearchConfig out;
    switch (c.method) {
        case HN_METHOD_ABSTRACT: out.method = hanoi::Method::abstract; break;
        case HN_METHOD_TULSI: out.method = hanoi::Method::tulsi; break;
        case HN_METHOD_MODIFIED: out.method = hanoi::Method::modified; break;
        default: throw InvalidArgument("unknown method " + std::to_string(c.method));
    }
    switch (c.cos_delta_rule) {
        case HN_COS_DELTA_EXPLICIT: out.tulsi.rule = hanoi::CosDeltaRule::explicit_angle; break;
        case HN_COS_DELTA_INV_LOG: out.tulsi.rule = hanoi::CosDeltaRule::inv_log; break;
        case HN_COS_DELTA_INV_SQRT_LOG: out.tulsi.rule = hanoi::CosDeltaRule::inv_sqrt_log; break;
        default: throw InvalidArgument("unknown cos(delta) rule " + std::to_string(c.cos_delta_rule));
    }
    switch (c.reflection_axis) {
        case HN_AXIS_GROVER: out.tulsi.axis = hanoi::ReflectionAxis::grover; break;
        case HN_AXIS_COIN: out.tulsi.axis = hanoi::ReflectionAxis::coin; break;
        default: throw InvalidArgument("unknown reflection axis " + std::to_string(c.reflection_axis));
    }
    out.n = c.n;
    out.k0 = c.k0;
    out.epsilon = c.epsilon;
    out.tulsi.delta = c.delta;
    out.tulsi.c = c.c;
    out.t_max = c.t_max;
    out.edge_mode = edge_mode_of(c.edge_mode);
    out.peak.smooth_window = c.smooth_window;
    out.peak.height_fraction = c.height_fraction;
    out.peak.refine_radius = c.refine_radius;
    out.budget = c.budget;
    return out;
}

void fill_report(const hanoi::PeakReport& r, hn_peak_report* out)
{
    out->t_f = r.t_f;
    out->p_f = r.p_f;
    out->cost_single = r.cost_single;
    out->cost_total = r.cost_total;
    out->series_max = r.series_max;
    out->t_global = r.t_global;
    out->repetitions = hanoi::evaluate_cost(r).repetitions;
}

void fill_fit(const hanoi::ScalingFit& f, hn_scaling_fit* out)
{
    out->prefactor = f.prefactor;
    out->exponent = f.exponent;
    out->r_squared = f.r_squared;
    out->points_used = f.points_used;
}

hanoi::PeakReport peak_of(const hn_run& run)
{
    return hanoi::detect_first_peak(run.series, run.config.peak, run.config.size());
}

}  // namespace

extern "C" {

const char* hn_version(void)
{
    return HANOI_VERSION;
}

const char* hn_last_error(void)
{
    return last_error.c_str();
}

const char* hn_status_name(hn_status status)
{
    switch (status) {
        case HN_OK: return "ok";
        case HN_ERR_DOMAIN: return "domain error";
        case HN_ERR_NO_FACTORIZATION: return "no factorization";
        case HN_ERR_NO_PEAK: return "no peak";
        case HN_ERR_RESOURCE: return "resource limit";
        case HN_ERR_PARSE: return "parse error";
        case HN_ERR_IO: return "i/o error";
        case HN_ERR_INVALID_ARGUMENT: return "invalid argument";
        case HN_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

hn_status hn_factorize(uint32_t k, int n, int* level, uint32_t* index)
{
    return guard([&] {
        require(level, "level");
        require(index, "index");
        const hanoi::VertexLabel label = hanoi::factorize(k, n);
        *level = label.level;
        *index = label.index;
    });
}

hn_status hn_compose(int level, uint32_t index, int n, uint32_t* k)
{
    return guard([&] {
        require(k, "k");
        *k = hanoi::compose(level, index, n);
    });
}

hn_status hn_topology_create(int n, int edge_mode, hn_topology** out)
{
    return guard([&] {
        require(out, "out");
        *out = nullptr;
        *out = new hn_topology{hanoi::Topology(n, edge_mode_of(edge_mode))};
    });
}

void hn_topology_destroy(hn_topology* topo)
{
    delete topo;
}

hn_status hn_topology_size(const hn_topology* topo, uint32_t* size)
{
    return guard([&] {
        require(topo, "topology");
        require(size, "size");
        *size = topo->topo.size();
    });
}

hn_status hn_topology_shift_target(const hn_topology* topo, int port, uint32_t k, int* port_out, uint32_t* k_out)
{
    return guard([&] {
        require(topo, "topology");
        require(port_out, "port_out");
        require(k_out, "k_out");
        const hanoi::PortVertex t = topo->topo.shift_target(port, k);
        *port_out = t.port;
        *k_out = t.vertex;
    });
}

hn_status hn_topology_write_edges_csv(const hn_topology* topo, const char* path)
{
    return guard([&] {
        require(topo, "topology");
        write_to(path, [&](std::ostream& out) { hanoi::write_edges_csv(out, topo->topo); });
    });
}

void hn_search_config_init(hn_search_config* config)
{
    if (!config) return;
    const hanoi::SearchConfig d;
    config->method = HN_METHOD_MODIFIED;
    config->n = d.n;
    config->k0 = d.k0;
    config->epsilon = d.epsilon;
    config->cos_delta_rule = HN_COS_DELTA_INV_LOG;
    config->delta = d.tulsi.delta;
    config->c = d.tulsi.c;
    config->reflection_axis = HN_AXIS_GROVER;
    config->t_max = d.t_max;
    config->edge_mode = HN_MODE_PAIRED;
    config->smooth_window = d.peak.smooth_window;
    config->height_fraction = d.peak.height_fraction;
    config->refine_radius = d.peak.refine_radius;
    config->budget = d.budget;
}

hn_status hn_search_config_validate(const hn_search_config* config)
{
    return guard([&] {
        require(config, "config");
        to_core(*config).validate();
    });
}

hn_status hn_search_config_horizon(const hn_search_config* config, long long* t_max)
{
    return guard([&] {
        require(config, "config");
        require(t_max, "t_max");
        const hanoi::SearchConfig c = to_core(*config);
        c.validate();
        *t_max = c.horizon();
    });
}

hn_status hn_search_config_cos_delta(const hn_search_config* config, double* cos_delta)
{
    return guard([&] {
        require(config, "config");
        require(cos_delta, "cos_delta");
        const hanoi::SearchConfig c = to_core(*config);
        c.validate();
        *cos_delta = c.cos_delta();
    });
}

hn_status hn_run_create(const hn_search_config* config, hn_run** out)
{
    return guard([&] {
        require(config, "config");
        require(out, "out");
        *out = nullptr;
        auto run = std::make_unique<hn_run>();
        run->config = to_core(*config);
        run->series = hanoi::run_series(run->config, &run->state);
        *out = run.release();
    });
}

void hn_run_destroy(hn_run* run)
{
    delete run;
}

hn_status hn_run_series(const hn_run* run, const double** data, size_t* length)
{
    return guard([&] {
        require(run, "run");
        require(data, "data");
        require(length, "length");
        *data = run->series.data();
        *length = run->series.size();
    });
}

hn_status hn_run_peak(const hn_run* run, hn_peak_report* report)
{
    return guard([&] {
        require(run, "run");
        require(report, "report");
        *report = hn_peak_report{};
        fill_report(peak_of(*run), report);
    });
}

hn_status hn_run_final_norm(const hn_run* run, double* norm_squared)
{
    return guard([&] {
        require(run, "run");
        require(norm_squared, "norm_squared");
        *norm_squared = run->state->norm_squared();
    });
}

hn_status hn_run_write_series_csv(const hn_run* run, const char* path)
{
    return guard([&] {
        require(run, "run");
        write_to(path, [&](std::ostream& out) { hanoi::write_series_csv(out, run->series); });
    });
}

hn_status hn_run_write_report_csv(const hn_run* run, const char* path)
{
    return guard([&] {
        require(run, "run");
        const hanoi::PeakReport report = peak_of(*run);
        write_to(path, [&](std::ostream& out) { hanoi::write_report_csv(out, run->config, report); });
    });
}

hn_status hn_run_write_state_csv(const hn_run* run, const char* path)
{
    return guard([&] {
        require(run, "run");
        write_to(path, [&](std::ostream& out) { hanoi::write_state_csv(out, *run->state); });
    });
}

hn_status hn_detect_first_peak(const double* series, size_t length, int smooth_window, double height_fraction,
                               int refine_radius, uint32_t size, hn_peak_report* report)
{
    return guard([&] {
        require(series, "series");
        require(report, "report");
        *report = hn_peak_report{};
        if (smooth_window < 0 || (smooth_window > 0 && smooth_window % 2 == 0)) {
            throw hanoi::DomainError("smooth_window must be odd (0 selects the default)");
        }
        if (!(height_fraction > 0.0 && height_fraction <= 1.0)) {
            throw hanoi::DomainError("height_fraction outside (0, 1]");
        }
        if (size == 0) throw InvalidArgument("size must be positive");
        const hanoi::PeakParams params{smooth_window, height_fraction, refine_radius};
        fill_report(hanoi::detect_first_peak(std::span<const double>(series, length), params, size), report);
    });
}

hn_status hn_sweep_spec_create(const hn_search_config* base, int variable, hn_sweep_spec** out)
{
    return guard([&] {
        require(base, "base");
        require(out, "out");
        *out = nullptr;
        auto spec = std::make_unique<hn_sweep_spec>();
        spec->spec.base = to_core(*base);
        switch (variable) {
            case HN_SWEEP_SIZE: spec->spec.variable = hanoi::SweepVariable::size; break;
            case HN_SWEEP_EPSILON: spec->spec.variable = hanoi::SweepVariable::epsilon; break;
            case HN_SWEEP_DELTA: spec->spec.variable = hanoi::SweepVariable::delta; break;
            default: throw InvalidArgument("unknown sweep variable " + std::to_string(variable));
        }
        *out = spec.release();
    });
}

void hn_sweep_spec_destroy(hn_sweep_spec* spec)
{
    delete spec;
}

hn_status hn_sweep_spec_set_sizes(hn_sweep_spec* spec, const int* n_values, size_t count)
{
    return guard([&] {
        require(spec, "spec");
        if (count) require(n_values, "n_values");
        spec->spec.n_values.assign(n_values, n_values + count);
    });
}

hn_status hn_sweep_spec_set_epsilons(hn_sweep_spec* spec, const double* values, size_t count)
{
    return guard([&] {
        require(spec, "spec");
        if (count) require(values, "values");
        spec->spec.epsilon_grid.assign(values, values + count);
    });
}

hn_status hn_sweep_spec_set_c_values(hn_sweep_spec* spec, const double* values, size_t count)
{
    return guard([&] {
        require(spec, "spec");
        if (count) require(values, "values");
        spec->spec.c_grid.assign(values, values + count);
    });
}

hn_status hn_sweep_spec_set_jobs(hn_sweep_spec* spec, unsigned jobs)
{
    return guard([&] {
        require(spec, "spec");
        spec->spec.jobs = jobs;
    });
}

hn_status hn_sweep_run(const hn_sweep_spec* spec, hn_sweep_result** out)
{
    return guard([&] {
        require(spec, "spec");
        require(out, "out");
        *out = nullptr;
        auto result = std::make_unique<hn_sweep_result>();
        result->rows = hanoi::sweep(spec->spec);
        *out = result.release();
    });
}

void hn_sweep_result_destroy(hn_sweep_result* result)
{
    delete result;
}

hn_status hn_sweep_result_rows(const hn_sweep_result* result, size_t* count)
{
    return guard([&] {
        require(result, "result");
        require(count, "count");
        *count = result->rows.size();
    });
}

hn_status hn_sweep_result_row(const hn_sweep_result* result, size_t index, double* value, hn_peak_report* report,
                              int* ok)
{
    return guard([&] {
        require(result, "result");
        if (index >= result->rows.size()) {
            throw InvalidArgument("row " + std::to_string(index) + " out of range");
        }
        const hanoi::SweepRow& row = result->rows[index];
        if (value) *value = row.value;
        if (ok) *ok = row.report ? 1 : 0;
        if (report) {
            *report = hn_peak_report{};
            if (row.report) fill_report(*row.report, report);
        }
    });
}

hn_status hn_sweep_result_write_csv(const hn_sweep_result* result, const char* path)
{
    return guard([&] {
        require(result, "result");
        write_to(path, [&](std::ostream& out) { hanoi::write_sweep_csv(out, result->rows); });
    });
}

hn_status hn_fit_powerlaw(const double* x, const double* y, size_t count, hn_scaling_fit* fit)
{
    return guard([&] {
        require(fit, "fit");
        if (count) {
            require(x, "x");
            require(y, "y");
        }
        fill_fit(hanoi::fit_powerlaw(std::span<const double>(x, count), std::span<const double>(y, count)), fit);
    });
}

hn_status hn_fit_table_csv(const char* path, const char* x_column, const char* y_column, int min_n,
                           hn_scaling_fit* fit)
{
    return guard([&] {
        require(path, "path");
        require(x_column, "x_column");
        require(y_column, "y_column");
        require(fit, "fit");
        std::ifstream in(path, std::ios::binary);
        if (!in) throw hanoi::IoError(std::string("cannot open '") + path + "'");
        const hanoi::CsvTable table = hanoi::read_csv(in);
        fill_fit(hanoi::fit_table(table, hanoi::FitSelection{x_column, y_column, min_n}), fit);
    });
}

hn_status hn_fit_write_csv(const hn_scaling_fit* fit, const char* path)
{
    return guard([&] {
        require(fit, "fit");
        const hanoi::ScalingFit f{fit->prefactor, fit->exponent, fit->r_squared, fit->points_used};
        write_to(path, [&](std::ostream& out) { hanoi::write_fit_csv(out, f); });
    });
}

}  // extern "C"
