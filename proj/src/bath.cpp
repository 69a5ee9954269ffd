#include "qbm/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "qbm/errors.hpp"

namespace qbm {

namespace {

void require_positive(std::span<const double> xs, const char* what) {
    for (std::size_t k = 0; k < xs.size(); ++k)
        require(xs[k] > 0.0 && std::isfinite(xs[k]),
                std::string(what) + "[" + std::to_string(k) + "] must be positive and finite");
}

void require_non_negative(std::span<const double> xs, const char* what) {
    for (std::size_t k = 0; k < xs.size(); ++k)
        require(xs[k] >= 0.0 && std::isfinite(xs[k]),
                std::string(what) + "[" + std::to_string(k) + "] must be non-negative and finite");
}

} // namespace

BathSpec::BathSpec(std::vector<double> omegas, std::vector<double> masses, std::vector<double> couplings)
    : omegas_(std::move(omegas)), masses_(std::move(masses)), couplings_(std::move(couplings)) {
    require(masses_.size() == omegas_.size() && couplings_.size() == omegas_.size(),
            "bath lists must all have length n");
    require_positive(omegas_, "omegas");
    require_positive(masses_, "masses");
    require_non_negative(couplings_, "couplings");  // zero: decoupled oscillator
}

double SystemSpec::separation() const { return std::fabs(x1 - x2); }

void validate(const SystemSpec& system) {
    require(system.mass > 0.0 && std::isfinite(system.mass), "system.mass must be positive");
    require(system.omega_big >= 0.0 && std::isfinite(system.omega_big), "system.omega must be >= 0");
    require(std::isfinite(system.x1) && std::isfinite(system.x2), "system positions must be finite");
}

EnvInitState EnvInitState::from_beta(double beta, const UnitContext& units, double r) {
    require(beta > 0.0 && std::isfinite(beta), "beta must be positive");
    return {1.0 / (units.k_boltzmann * beta), r};
}

void validate(const EnvInitState& env) {
    require(env.temperature > 0.0 && std::isfinite(env.temperature), "env.temperature must be positive");
    require(std::isfinite(env.squeezing_r), "env.squeezing_r must be finite");
}

Partition::Partition(IndexSet unobserved, std::vector<IndexSet> macrofractions)
    : unobserved_(std::move(unobserved)), macrofractions_(std::move(macrofractions)) {
    std::set<std::size_t> seen;
    auto claim = [&](const IndexSet& set) {
        for (std::size_t i : set) require(seen.insert(i).second, "partition index sets overlap at " + std::to_string(i));
    };
    claim(unobserved_);
    for (const auto& mac : macrofractions_) {
        require(!mac.empty(), "macrofractions must be non-empty");
        claim(mac);
    }
}

std::size_t Partition::max_index_bound() const {
    std::size_t bound = 0;
    for (std::size_t i : unobserved_) bound = std::max(bound, i + 1);
    for (const auto& mac : macrofractions_)
        for (std::size_t i : mac) bound = std::max(bound, i + 1);
    return bound;
}

void Partition::check_within(std::size_t n) const {
    require(max_index_bound() <= n, "partition refers to oscillator indices beyond the bath size");
}

std::vector<double> sample_frequencies(std::size_t n, double omega_bar, double delta, std::uint64_t seed) {
    require(delta >= 0.0 && std::isfinite(delta), "delta must be >= 0");
    const double lo = omega_bar - 0.5 * delta;
    require(lo > 0.0, "lower band edge omega_bar - delta/2 must be positive");
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (auto& w : out) w = lo + delta * std::generate_canonical<double, 53>(rng);
    return out;
}

std::vector<double> couplings_from_masses(std::span<const double> masses, double mass_M, double gamma0,
                                          CouplingPrefactor prefactor) {
    require_positive(masses, "masses");
    require(mass_M > 0.0, "mass_M must be positive");
    require(gamma0 > 0.0, "gamma0 must be positive");
    const double pre = static_cast<double>(static_cast<int>(prefactor));
    std::vector<double> out(masses.size());
    for (std::size_t k = 0; k < masses.size(); ++k)
        out[k] = pre * std::sqrt(mass_M * masses[k] * gamma0 / std::numbers::pi);
    return out;
}

Partition make_partition(std::size_t n, std::size_t unobserved_size, std::span<const std::size_t> mac_sizes) {
    std::size_t total = unobserved_size;
    for (std::size_t s : mac_sizes) total += s;
    require(total <= n, "partition needs " + std::to_string(total) + " oscillators but bath has " + std::to_string(n));
    std::size_t next = 0;
    auto take = [&](std::size_t count) {
        IndexSet set(count);
        for (auto& i : set) i = next++;
        return set;
    };
    IndexSet unobserved = take(unobserved_size);
    std::vector<IndexSet> macs;
    for (std::size_t s : mac_sizes) macs.push_back(take(s));
    return Partition(std::move(unobserved), std::move(macs));
}

bool validate_offresonance(std::span<const double> omegas, double omega_big, double margin) {
    require(margin > 1.0, "off-resonance margin must exceed 1");
    return std::all_of(omegas.begin(), omegas.end(), [&](double w) {
        return w >= margin * omega_big || w <= omega_big / margin;
    });
}

BathSpec build_bath(const BathRecipe& recipe, const SystemSpec& system, const Partition& partition) {
    require(recipe.n >= 1, "bath.n must be >= 1");
    require(recipe.mass > 0.0, "bath.mass must be positive");
    partition.check_within(recipe.n);

    std::vector<double> omegas;
    if (recipe.shared_spectrum) {
        std::vector<const IndexSet*> sets;
        if (!partition.unobserved().empty()) sets.push_back(&partition.unobserved());
        for (const auto& mac : partition.macrofractions()) sets.push_back(&mac);
        require(!sets.empty(), "shared_spectrum needs a non-empty partition");
        const std::size_t width = sets.front()->size();
        for (const auto* s : sets)
            require(s->size() == width, "shared_spectrum requires all partition sets to have equal size");
        const auto spectrum = sample_frequencies(width, recipe.omega_bar, recipe.delta, recipe.seed);
        omegas.resize(recipe.n);
        for (std::size_t i = 0; i < recipe.n; ++i) omegas[i] = spectrum[i % width];
        for (const auto* s : sets)
            for (std::size_t j = 0; j < s->size(); ++j) omegas[(*s)[j]] = spectrum[j];
    } else {
        omegas = sample_frequencies(recipe.n, recipe.omega_bar, recipe.delta, recipe.seed);
    }

    std::vector<double> masses(recipe.n, recipe.mass);
    std::vector<double> couplings;
    if (recipe.couplings) {
        couplings = *recipe.couplings;
        require(couplings.size() == recipe.n, "bath.couplings must have length n");
    } else {
        couplings = couplings_from_masses(masses, system.mass, recipe.gamma0, recipe.coupling_prefactor);
    }
    return BathSpec(std::move(omegas), std::move(masses), std::move(couplings));
}

} // namespace qbm

namespace qbm {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
}

} // namespace qbm
