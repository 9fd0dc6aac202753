#pragma once

#include "netmosaic/netseries.hpp"
#include "netmosaic/statutil.hpp"
#include "netmosaic/symmat.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace netmosaic {

/// Mean-matrix designs of the simulation study.
///   NullRank2         Theta = rho 11^T + (rho/2) u u^T, u a random 0/1 vector of weight n/2
///   NullMisspecified  NullRank2 + 0.05 rho u^c (u^c)^T, u^c_i = (1 - u_i) v_i, v Rademacher
///   AltBlock          Theta1 = rho 11^T, Theta2 = Theta1 + delta sqrt(rho/s*) w w^T, w of weight s*
///   AltMisspecified   AltBlock with Theta2 += 0.1 rho w^c (w^c)^T
enum class Scenario { NullRank2, NullMisspecified, AltBlock, AltMisspecified };

std::string_view to_string(Scenario s);
Scenario scenario_from_string(std::string_view name);

struct MeanSpec {
    int n = 150;
    double rho = 0.01;
    Scenario scenario = Scenario::NullRank2;
    int s_star = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;  // support vectors and Rademacher signs
};

struct MeanPair {
    SymMatrix theta1;
    SymMatrix theta2;
};

/// Builds (Theta1, Theta2) with zero diagonals. Throws InvalidInput when the
/// spec is out of range or an entry leaves [0, 1].
MeanPair make_mean(const MeanSpec& spec);

struct SeriesSpec {
    SymMatrix theta1;
    SymMatrix theta2;
    int tau_star;  // last snapshot (1-based) drawn from theta1; tau_star == length means no change
    int length;
};

/// Independent Bernoulli draws of every upper-triangular entry, mirrored.
NetSeries sample_series(const SeriesSpec& spec, RngStream& rng);

}  // namespace netmosaic
