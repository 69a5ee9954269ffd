#include "qbm/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "qbm/errors.hpp"
#include "qbm/units.hpp"

namespace qbm {

void validate(const UnitContext& units) {
    require(units.hbar > 0.0 && std::isfinite(units.hbar), "units.hbar must be positive");
    require(units.k_boltzmann > 0.0 && std::isfinite(units.k_boltzmann),
            "units.k_boltzmann must be positive");
}

double log_mean_exp(std::span<const double> xs) {
    require(!xs.empty(), "log_mean_exp of an empty sequence");
    const double top = *std::max_element(xs.begin(), xs.end());
    if (!std::isfinite(top)) return top;
    CompensatedSum acc;
    for (double x : xs) acc += std::exp(x - top);
    return top + std::log(acc.value() / static_cast<double>(xs.size()));
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && x.size() >= 2, "fit_line needs at least two paired points");
    const double n = static_cast<double>(x.size());
    CompensatedSum sx, sy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx.value() / n;
    const double my = sy.value() / n;
    CompensatedSum sxx, sxy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    require(sxx.value() > 0.0, "fit_line needs distinct abscissae");
    LinearFit fit;
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i)
        fit.max_abs_residual =
            std::max(fit.max_abs_residual, std::fabs(y[i] - (fit.slope * x[i] + fit.intercept)));
    return fit;
}

} // namespace qbm
