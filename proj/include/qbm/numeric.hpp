#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>

namespace qbm {

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_{0.0};
    double comp_{0.0};
};

// log( (1/n) * sum_i exp(x_i) ) without overflow or underflow.
double log_mean_exp(std::span<const double> xs);

// Resolves a requested thread count; 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested);

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
// visited exactly once; callers write results by index so the outcome does
// not depend on scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

struct LinearFit {
    double slope{0.0};
    double intercept{0.0};
    double max_abs_residual{0.0};
};

// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

} // namespace qbm
