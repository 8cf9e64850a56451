#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "netrewire/graph.hpp"

namespace netrewire {

enum class CoreBasis { Degree, Closeness };

struct CorePartition {
    std::vector<std::size_t> core_index;
    std::size_t main_core_index = 0; // highest index assigned
    CoreBasis basis = CoreBasis::Degree;
    // Closeness basis only.
    std::size_t num_cores = 0; // numCore, the degree-based main core
    double interval = 0.0;     // CI
    bool degenerate = false;   // all closeness values equal: one core

    std::vector<NodeId> innermost() const;
};

// Iterative pruning (bucket order), O(N + |E|).
CorePartition kcore_degree(const Graph& g);

// Cores from closeness: numCore = main core of the degree decomposition,
// CI = (max C - min C) / numCore, index = floor((C(i) - min C) / CI). The
// maximum-closeness node lands on numCore and is folded into core numCore-1,
// so there are exactly numCore closeness cores (two when numCore is 1). Equal
// closeness everywhere gives a single degenerate core.
CorePartition kcore_closeness(const Graph& g);
CorePartition kcore_closeness(std::span<const double> closeness, std::size_t num_cores);

struct RichClubProfile {
    // (k, phi(k)) for each distinct degree k with N_{>k} >= 2, ascending k.
    std::vector<std::pair<std::size_t, double>> phi;
    // (1/N) sum_i k_i phi(k_i) over nodes whose phi(k_i) is defined.
    double rc = 0.0;

    std::optional<double> at(std::size_t k) const;
};

RichClubProfile rich_club_profile(const Graph& g);
// phi(k) for any threshold k; empty when fewer than two nodes have degree > k.
std::optional<double> rich_club_coefficient(const Graph& g, std::size_t k);

// Pearson correlation over unordered pairs i<j between A_ij and the ideal
// pattern [i in core or j in core]. Throws UndefinedCorrelationError when
// either indicator is constant.
double core_periphery_coefficient(const Graph& g, std::span<const bool> in_core);

struct CorePeripheryFit {
    double coefficient = 0.0;
    std::vector<bool> in_core;
};

// Best pattern correlation over core sets made of the top-t nodes by degree
// (ties broken by index), t = 1..N-1.
CorePeripheryFit fit_core_periphery(const Graph& g);
double core_periphery_coefficient(const Graph& g);

// node,core_degree,core_closeness
void write_cores_csv(std::ostream& out, const Graph& g, const CorePartition& degree_cores,
                     const CorePartition& closeness_cores);
// k,phi_k
void write_rich_club_csv(std::ostream& out, const RichClubProfile& profile);

} // namespace netrewire
