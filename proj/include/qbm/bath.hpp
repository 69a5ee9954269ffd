#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qbm/units.hpp"

namespace qbm {

using IndexSet = std::vector<std::size_t>;

// N environmental oscillators. Immutable once constructed.
class BathSpec {
public:
    BathSpec() = default;
    BathSpec(std::vector<double> omegas, std::vector<double> masses, std::vector<double> couplings);

    std::size_t size() const { return omegas_.size(); }
    std::span<const double> omegas() const { return omegas_; }
    std::span<const double> masses() const { return masses_; }
    std::span<const double> couplings() const { return couplings_; }

    double omega(std::size_t k) const { return omegas_.at(k); }
    double mass(std::size_t k) const { return masses_.at(k); }
    double coupling(std::size_t k) const { return couplings_.at(k); }

    bool operator==(const BathSpec&) const = default;

private:
    std::vector<double> omegas_;     // 1/s
    std::vector<double> masses_;     // kg
    std::vector<double> couplings_;  // kg/s^2
};

// Central oscillator.
struct SystemSpec {
    double mass{1e-5};       // M [kg]
    double omega_big{3e8};   // Omega [1/s]; 0 selects the partial measurement limit
    double x1{0.0};          // X [m]
    double x2{1e-9};         // X' [m]

    double separation() const;
    double separation_sq() const { return (x1 - x2) * (x1 - x2); }

    bool operator==(const SystemSpec&) const = default;
};

void validate(const SystemSpec& system);

// Initial environment state: thermal at T, optionally squeezed by S(r).
struct EnvInitState {
    double temperature{1e-3};  // K
    double squeezing_r{0.0};

    static EnvInitState from_beta(double beta, const UnitContext& units, double r = 0.0);
    double beta(const UnitContext& units) const { return 1.0 / (units.k_boltzmann * temperature); }

    bool operator==(const EnvInitState&) const = default;
};

void validate(const EnvInitState& env);

// Unobserved fraction (1-f)E plus the observed macrofractions.
class Partition {
public:
    Partition() = default;
    Partition(IndexSet unobserved, std::vector<IndexSet> macrofractions);

    const IndexSet& unobserved() const { return unobserved_; }
    const std::vector<IndexSet>& macrofractions() const { return macrofractions_; }
    std::size_t max_index_bound() const;  // 1 + largest index in use, 0 if empty

    void check_within(std::size_t n) const;

private:
    IndexSet unobserved_;
    std::vector<IndexSet> macrofractions_;
};

// n i.i.d. draws uniform on [omega_bar - delta/2, omega_bar + delta/2].
std::vector<double> sample_frequencies(std::size_t n, double omega_bar, double delta, std::uint64_t seed);

enum class CouplingPrefactor { one = 1, two = 2 };

// C_k = prefactor * sqrt(M m_k gamma0 / pi)
std::vector<double> couplings_from_masses(std::span<const double> masses, double mass_M, double gamma0,
                                          CouplingPrefactor prefactor);

// Contiguous assignment: first `unobserved_size` indices, then each macrofraction in order.
Partition make_partition(std::size_t n, std::size_t unobserved_size, std::span<const std::size_t> mac_sizes);

// True iff every omega_k >= margin*Omega or omega_k <= Omega/margin.
bool validate_offresonance(std::span<const double> omegas, double omega_big, double margin);

// How a bath is drawn. Masses are a common placeholder; with mass-proportional
// couplings C_k^2/m_k does not depend on m_k.
struct BathRecipe {
    std::size_t n{20};
    double omega_bar{4.5e9};
    double delta{3e9};
    std::uint64_t seed{1};
    double mass{1.0};
    CouplingPrefactor coupling_prefactor{CouplingPrefactor::two};
    double gamma0{0.33e18};
    // Reuse one frequency draw for every partition set (requires equal set sizes).
    bool shared_spectrum{false};
    std::optional<std::vector<double>> couplings;  // overrides the mass-proportional rule

    bool operator==(const BathRecipe&) const = default;
};

BathSpec build_bath(const BathRecipe& recipe, const SystemSpec& system, const Partition& partition);

} // namespace qbm

namespace qbm {

// Seed for the i-th independent sub-stream of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

} // namespace qbm
