#include "qbm/full_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qbm/errors.hpp"
#include "qbm/numeric.hpp"

namespace qbm::full {

namespace {

using cd = std::complex<double>;

void check_oscillator(double t, double omega, double omega_big, double m, double c) {
    require(t >= 0.0, "time must be >= 0");
    require(omega > 0.0 && m > 0.0 && c > 0.0, "oscillator omega, m, c must be positive");
    require(omega_big >= 0.0, "system omega must be >= 0");
    check_resonance(omega, omega_big);
}

// (e^{ixt} - 1) / x, written to avoid cancellation for small x t.
cd phase_ramp(double x, double t) {
    const double half = 0.5 * x * t;
    return cd(0.0, 2.0 * std::sin(half) / x) * std::polar(1.0, half);
}

// alpha / sqrt(hbar) without argument checks.
cd alpha_unchecked(double t, double omega, double omega_big, double m, double c, double hbar) {
    const double pre = -std::sqrt(c * c / (8.0 * m * omega * hbar));
    return pre * (phase_ramp(omega + omega_big, t) + phase_ramp(omega - omega_big, t));
}

// Online log-sum-exp accumulator.
struct LogSum {
    double top{-std::numeric_limits<double>::infinity()};
    double scaled{0.0};

    void add(double x) {
        if (x <= top) {
            scaled += std::exp(x - top);
        } else {
            scaled = scaled * std::exp(top - x) + 1.0;
            top = x;
        }
    }
    void merge(const LogSum& o) {
        if (o.scaled == 0.0) return;
        if (scaled == 0.0) {
            *this = o;
            return;
        }
        if (o.top <= top) {
            scaled += o.scaled * std::exp(o.top - top);
        } else {
            scaled = scaled * std::exp(top - o.top) + o.scaled;
            top = o.top;
        }
    }
    double log_mean(std::size_t n) const { return top + std::log(scaled / static_cast<double>(n)); }
};

constexpr std::size_t chunk_samples = 2048;

} // namespace

void check_resonance(double omega, double omega_big, double guard) {
    if (omega_big > 0.0 && std::fabs(omega - omega_big) / omega_big <= guard)
        throw NumericalGuardError("oscillator at omega=" + std::to_string(omega) +
                                  " is resonant with the system frequency " + std::to_string(omega_big));
}

double alpha_sq_full(double t, double omega, double omega_big, double m, double c, const UnitContext& units) {
    check_oscillator(t, omega, omega_big, m, c);
    const double w2 = omega * omega;
    const double d = w2 - omega_big * omega_big;
    const double pre = c * c * omega / (2.0 * m * d * d * units.hbar);
    const double re = std::cos(omega * t) - std::cos(omega_big * t);
    const double im = std::sin(omega * t) - (omega_big / omega) * std::sin(omega_big * t);
    return pre * (re * re + im * im);
}

double re_alpha_sq_full(double t, double omega, double omega_big, double m, double c, const UnitContext& units) {
    check_oscillator(t, omega, omega_big, m, c);
    const double a = omega + omega_big;
    const double b = omega - omega_big;
    const double ab = a * b;
    const double sum_group = (std::cos(2.0 * a * t) - 2.0 * std::cos(a * t)) / (2.0 * a * a);
    const double diff_group = (std::cos(2.0 * b * t) - 2.0 * std::cos(b * t)) / (2.0 * b * b);
    const double cross_group = (std::cos(2.0 * omega * t) - std::cos(b * t) - std::cos(a * t)) / ab;
    const double constant = 2.0 * omega * omega / (ab * ab);
    return c * c / (4.0 * m * omega * units.hbar) * (sum_group + diff_group + cross_group + constant);
}

std::complex<double> alpha_full(double t, double omega, double omega_big, double m, double c,
                                const UnitContext& units) {
    check_oscillator(t, omega, omega_big, m, c);
    return alpha_unchecked(t, omega, omega_big, m, c, units.hbar);
}

FullAmplitude full_amplitude(double t, double omega, double omega_big, double m, double c, double r,
                             const UnitContext& units) {
    require(std::isfinite(r), "squeezing r must be finite");
    const cd alpha = alpha_full(t, omega, omega_big, m, c, units);
    const double re = alpha.real();
    const double im = alpha.imag();
    FullAmplitude out;
    out.alpha_sq = re * re + im * im;
    out.re_alpha_sq = re * re - im * im;
    out.alpha_sq_squeezed = std::exp(2.0 * r) * im * im + std::exp(-2.0 * r) * re * re;
    return out;
}

double alpha_sq_squeezed(double t, double omega, double omega_big, double m, double c, double r,
                         const UnitContext& units) {
    return full_amplitude(t, omega, omega_big, m, c, r, units).alpha_sq_squeezed;
}

namespace {

double log_factor(Factor factor, double t, const BathSpec& bath, const SystemSpec& system,
                  const EnvInitState& env, std::span<const std::size_t> idx, const UnitContext& units) {
    validate(system);
    validate(env);
    validate(units);
    const double grow = std::exp(2.0 * env.squeezing_r);
    const double shrink = std::exp(-2.0 * env.squeezing_r);
    CompensatedSum acc;
    for (std::size_t k : idx) {
        const double w = bath.omega(k);
        const cd alpha = alpha_full(t, w, system.omega_big, bath.mass(k), bath.coupling(k), units);
        const double x = units.thermal_argument(w, env.temperature);
        const double thermal = factor == Factor::gamma ? coth(x) : std::tanh(x);
        acc += thermal * (grow * alpha.imag() * alpha.imag() + shrink * alpha.real() * alpha.real());
    }
    return -0.5 * system.separation_sq() * acc.value();
}

} // namespace

double log_gamma_full(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                      std::span<const std::size_t> idx, const UnitContext& units) {
    return log_factor(Factor::gamma, t, bath, system, env, idx, units);
}

double log_b_full(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                  std::span<const std::size_t> idx, const UnitContext& units) {
    return log_factor(Factor::b, t, bath, system, env, idx, units);
}

double gamma_full(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
                  std::span<const std::size_t> idx, const UnitContext& units) {
    return std::exp(log_gamma_full(t, bath, system, env, idx, units));
}

double b_full(double t, const BathSpec& bath, const SystemSpec& system, const EnvInitState& env,
              std::span<const std::size_t> idx, const UnitContext& units) {
    return std::exp(log_b_full(t, bath, system, env, idx, units));
}

FactorSeries make_series(std::span<const double> times, const std::function<double(double)>& gamma,
                         const std::function<double(double)>& b, std::string label) {
    FactorSeries s;
    s.label = std::move(label);
    s.times.assign(times.begin(), times.end());
    s.gamma.reserve(times.size());
    s.b.reserve(times.size());
    for (double t : times) {
        s.gamma.push_back(gamma(t));
        s.b.push_back(b(t));
    }
    return s;
}

GridAverage time_average_grid(Factor factor, const BathSpec& bath, const SystemSpec& system,
                              std::span<const std::size_t> idx, std::span<const double> temperatures,
                              std::span<const double> squeezings, double tau, std::size_t n_samples,
                              const UnitContext& units, unsigned threads) {
    validate(system);
    validate(units);
    require(tau > 0.0 && std::isfinite(tau), "averaging time tau must be positive");
    require(n_samples >= 1000, "time average needs at least 1000 samples");
    require(!temperatures.empty() && !squeezings.empty(), "empty temperature or squeezing axis");
    for (double temp : temperatures) require(temp > 0.0, "temperatures must be positive");
    for (double r : squeezings) require(std::isfinite(r), "squeezing values must be finite");

    const std::size_t n_osc = idx.size();
    const std::size_t rows = temperatures.size();
    const std::size_t cols = squeezings.size();
    const std::size_t cells = rows * cols;

    std::vector<double> omega(n_osc), mass(n_osc), coupling(n_osc);
    for (std::size_t j = 0; j < n_osc; ++j) {
        omega[j] = bath.omega(idx[j]);
        mass[j] = bath.mass(idx[j]);
        coupling[j] = bath.coupling(idx[j]);
        require(omega[j] > 0.0, "bath frequencies must be positive");
        check_resonance(omega[j], system.omega_big);
    }
    // thermal[row * n_osc + j]
    std::vector<double> thermal(rows * n_osc);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < n_osc; ++j) {
            const double x = units.thermal_argument(omega[j], temperatures[i]);
            thermal[i * n_osc + j] = factor == Factor::gamma ? coth(x) : std::tanh(x);
        }
    std::vector<double> grow(cols), shrink(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        grow[c] = std::exp(2.0 * squeezings[c]);
        shrink[c] = std::exp(-2.0 * squeezings[c]);
    }
    const double half_dx2 = 0.5 * system.separation_sq();
    const double dt = tau / static_cast<double>(n_samples);
    const std::size_t n_half = n_samples / 2;
    const std::size_t n_chunks = (n_samples + chunk_samples - 1) / chunk_samples;

    struct ChunkResult {
        std::vector<LogSum> first_half;
        std::vector<LogSum> second_half;
    };
    std::vector<ChunkResult> chunks(n_chunks);

    parallel_for(n_chunks, threads, [&](std::size_t ci) {
        ChunkResult res{std::vector<LogSum>(cells), std::vector<LogSum>(cells)};
        std::vector<double> re2(n_osc), im2(n_osc);
        const std::size_t begin = ci * chunk_samples;
        const std::size_t end = std::min(n_samples, begin + chunk_samples);
        for (std::size_t s = begin; s < end; ++s) {
            const double t = (static_cast<double>(s) + 0.5) * dt;
            for (std::size_t j = 0; j < n_osc; ++j) {
                const cd a = alpha_unchecked(t, omega[j], system.omega_big, mass[j], coupling[j], units.hbar);
                re2[j] = a.real() * a.real();
                im2[j] = a.imag() * a.imag();
            }
            auto& target = s < n_half ? res.first_half : res.second_half;
            for (std::size_t i = 0; i < rows; ++i) {
                const double* th = &thermal[i * n_osc];
                double sum_im = 0.0;
                double sum_re = 0.0;
                for (std::size_t j = 0; j < n_osc; ++j) {
                    sum_im += th[j] * im2[j];
                    sum_re += th[j] * re2[j];
                }
                for (std::size_t c = 0; c < cols; ++c)
                    target[i * cols + c].add(-half_dx2 * (grow[c] * sum_im + shrink[c] * sum_re));
            }
        }
        chunks[ci] = std::move(res);
    });

    GridAverage out;
    out.rows = rows;
    out.cols = cols;
    out.log_value.resize(cells);
    out.log_half_window.resize(cells);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        LogSum first, all;
        for (const auto& ch : chunks) first.merge(ch.first_half[cell]);
        all = first;
        for (const auto& ch : chunks) all.merge(ch.second_half[cell]);
        out.log_value[cell] = all.log_mean(n_samples);
        out.log_half_window[cell] = n_half > 0 ? first.log_mean(n_half) : out.log_value[cell];
    }
    return out;
}

TimeAverage time_average_numeric(Factor factor, const BathSpec& bath, const SystemSpec& system,
                                 const EnvInitState& env, std::span<const std::size_t> idx, double tau,
                                 std::size_t n_samples, const UnitContext& units, unsigned threads) {
    validate(env);
    const double temps[1] = {env.temperature};
    const double rs[1] = {env.squeezing_r};
    const auto grid = time_average_grid(factor, bath, system, idx, temps, rs, tau, n_samples, units, threads);
    TimeAverage avg;
    avg.log_value = grid.log_value[0];
    avg.value = std::exp(avg.log_value);
    avg.half_window_value = std::exp(grid.log_half_window[0]);
    avg.convergence = std::fabs(avg.value - avg.half_window_value);
    return avg;
}

double default_tau(const BathSpec& bath, std::span<const std::size_t> idx) {
    require(!idx.empty(), "default_tau needs a non-empty index set");
    double w_min = std::numeric_limits<double>::infinity();
    for (std::size_t k : idx) w_min = std::min(w_min, bath.omega(k));
    return 1e4 * 2.0 * std::numbers::pi / w_min;
}

std::size_t default_samples(const BathSpec& bath, std::span<const std::size_t> idx, double tau) {
    double w_max = 0.0;
    for (std::size_t k : idx) w_max = std::max(w_max, bath.omega(k));
    const double n = std::ceil(20.0 * tau * w_max / (2.0 * std::numbers::pi));
    return std::max<std::size_t>(1000, static_cast<std::size_t>(n));
}

} // namespace qbm::full
