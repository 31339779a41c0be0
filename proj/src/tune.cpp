#include "tapline/tune.hpp"

#include "tapline/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tapline {

double detect_hump(const FrequencyResponse& resp, FreqWindow band, double ripple_db) {
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < resp.size(); ++i) {
        const double f = resp.freq_hz[i];
        if (f < band.first || f > band.second) continue;
        const double d = to_db(resp.s21[i]);
        hi = std::max(hi, d);
        lo = std::min(lo, d);
    }
    if (!(hi >= lo)) return 0.0;
    return std::max(0.0, (hi - lo) - ripple_db);
}

std::string_view to_string(TuneTermination t) {
    switch (t) {
        case TuneTermination::converged: return "converged";
        case TuneTermination::stalled: return "stalled";
        case TuneTermination::max_iter: return "max_iter";
    }
    return "?";
}

namespace {

struct Evaluation {
    double objective;
    double hump_db;
    std::vector<ProbeAttenuation> achieved;
};

class Objective {
public:
    Objective(const FilterLayout& layout, const TuneOptions& options)
        : layout_(layout), options_(options),
          grid_(options.grid_hz.empty() ? default_grid(layout.band.f0_hz) : options.grid_hz),
          band_(options.band.value_or(FreqWindow{layout.band.f1_hz, layout.band.f2_hz})) {}

    Evaluation operator()(double l_low, double l_high) {
        ++count_;
        FilterLayout trial = layout_;
        trial.set_zero_lengths(l_low, l_high);
        const FrequencyResponse resp = cascade_sweep(build_circuit(trial), grid_, layout_.band.z0_ohm);

        Evaluation e{0.0, detect_hump(resp, band_, layout_.band.ripple_db), {}};
        for (const auto& t : options_.targets) {
            const double a = attenuation_at(resp, t.f_hz);
            e.achieved.push_back({t.f_hz, a});
            const double shortfall = std::max(0.0, t.atten_db - a);
            e.objective += shortfall * shortfall;
        }
        e.objective += options_.hump_weight * e.hump_db * e.hump_db;
        return e;
    }

    int count() const { return count_; }

private:
    const FilterLayout& layout_;
    const TuneOptions& options_;
    std::vector<double> grid_;
    FreqWindow band_;
    int count_ = 0;
};

// Golden-section minimization of fn over [a, b]; the bracket ends are also
// considered so monotone objectives settle on the boundary.
template <class Fn>
std::pair<double, double> golden_section(Fn&& fn, double a, double b, int steps) {
    if (!(b > a)) return {a, fn(a)};
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = fn(x1);
    double f2 = fn(x2);
    for (int i = 0; i < steps; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = fn(x2);
        }
    }
    return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

TuneReport tune_zeros(const FilterLayout& layout, const TuneOptions& options) {
    if (!layout.zeros) throw PlanError("tune_zeros: layout has no zero plan");
    if (options.max_iter < 0) throw DomainError("tune_zeros: max_iter must be >= 0");
    for (const auto& t : options.targets) {
        if (t.f_hz >= layout.band.f1_hz && t.f_hz <= layout.band.f2_hz) {
            throw DomainError("tune_zeros: attenuation targets must lie in the stopband");
        }
    }

    const auto win_low = layout.zeros->length_window_low();
    const auto win_high = layout.zeros->length_window_high();
    Objective objective(layout, options);

    double l_low = std::clamp(layout.zeros->l_low_m, win_low.first, win_low.second);
    double l_high = std::clamp(layout.zeros->l_high_m, win_high.first, win_high.second);
    Evaluation best = objective(l_low, l_high);

    TuneReport report;
    report.trace.push_back({0, "initial", l_low, l_high, best.objective, true});
    report.termination = TuneTermination::converged;

    if (best.objective >= options.objective_tol) {
        report.termination = TuneTermination::max_iter;
        int stall = 0;
        for (int round = 1; round <= options.max_iter; ++round) {
            report.iterations = round;
            bool improved = false;
            for (int coord = 0; coord < 2 && best.objective >= options.objective_tol; ++coord) {
                const bool low = coord == 0;
                const auto [a, b] = low ? win_low : win_high;
                auto along = [&](double x) {
                    return low ? objective(x, l_high).objective : objective(l_low, x).objective;
                };
                const auto [x, fx] = golden_section(along, a, b, options.golden_steps);
                const bool accept = fx < best.objective;
                if (accept) {
                    (low ? l_low : l_high) = x;
                    best = objective(l_low, l_high);
                    improved = true;
                }
                report.trace.push_back({round, low ? "l_low" : "l_high", l_low, l_high, best.objective, accept});
            }
            if (best.objective < options.objective_tol) {
                report.termination = TuneTermination::converged;
                break;
            }
            stall = improved ? 0 : stall + 1;
            if (stall >= 3) {
                report.termination = TuneTermination::stalled;
                break;
            }
        }
    }

    FilterLayout tuned = layout;
    tuned.set_zero_lengths(l_low, l_high);
    report.l_low_m = l_low;
    report.l_high_m = l_high;
    report.f_zero_low_hz = tuned.zeros->f_zero_low_hz;
    report.f_zero_high_hz = tuned.zeros->f_zero_high_hz;
    report.hump_db = best.hump_db;
    report.objective = best.objective;
    report.achieved = best.achieved;
    report.evaluations = objective.count();
    report.infeasible = !(best.objective < options.objective_tol);

    const double qu = layout.substrate.qu.value_or(kUnboundedQ);
    report.qe_end = end_external_q(tuned);
    report.k_end = layout.coupling.k.front();
    report.k_critical = critical_coupling(report.qe_end, qu);
    report.coupling = classify_coupling(report.k_end, report.qe_end, qu, options.classify_tol);
    return report;
}

FilterLayout apply_tuning(const FilterLayout& layout, const TuneReport& report) {
    FilterLayout tuned = layout;
    tuned.set_zero_lengths(report.l_low_m, report.l_high_m);
    return tuned;
}

std::vector<ComparisonRow> compare_designs(const FrequencyResponse& resp_a, const FrequencyResponse& resp_b,
                                           std::span<const double> probes_hz) {
    std::vector<ComparisonRow> rows;
    rows.reserve(probes_hz.size());
    for (double f : probes_hz) {
        try {
            const double a = attenuation_at(resp_a, f);
            const double b = attenuation_at(resp_b, f);
            rows.push_back({f, a, b, b - a});
        } catch (const MetricsError&) {
            throw ComparisonError("compare_designs: probe " + std::to_string(f) + " Hz outside a response grid");
        }
    }
    return rows;
}

}  // namespace tapline
