#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netclass/graph.hpp"
#include "netclass/rng.hpp"

namespace netclass {

enum class Mechanism {
  ErdosRenyi,              // attachment probability p in [0, 1]
  DuplicationDivergence,   // divergence probability q in [0, 1]
  Niche,                   // target connectance C in (0, 0.5]
  PreferentialAttachment,  // attachment power alpha in [0, 4]
  SmallWorld,              // rewiring probability beta in [0, 1]
};

inline constexpr std::array<Mechanism, 5> kAllMechanisms = {
    Mechanism::ErdosRenyi, Mechanism::DuplicationDivergence, Mechanism::Niche,
    Mechanism::PreferentialAttachment, Mechanism::SmallWorld};

/// Short lowercase name: er, dd, niche, pa, sw.
std::string_view to_string(Mechanism kind);
/// Inverse of to_string; throws ValidationError on unknown names.
Mechanism parse_mechanism(std::string_view name);
/// Position of `kind` in kAllMechanisms.
std::size_t mechanism_index(Mechanism kind);

struct ParamRange {
  double lower;
  double upper;
  bool lower_open;  // (lower, upper] instead of [lower, upper]

  bool contains(double x) const {
    return (lower_open ? x > lower : x >= lower) && x <= upper;
  }
};

ParamRange param_range(Mechanism kind);

/// `count` evenly spaced values covering the range. Closed ranges include
/// both ends; the open lower end of the niche range is excluded, giving
/// upper * (i + 1) / count.
std::vector<double> param_grid(Mechanism kind, std::size_t count);

struct MechanismSpec {
  Mechanism kind;
  double param;

  friend bool operator==(const MechanismSpec&, const MechanismSpec&) = default;
};

/// Throws ValidationError when spec.param lies outside its mechanism's range.
void validate(const MechanismSpec& spec);

/// Per-node mechanisms; entry i governs how node i attaches.
using MixtureAssignment = std::vector<MechanismSpec>;

struct GrowthOptions {
  std::size_t pa_out_edges = 2;      // PA: out-edges per new node
  std::size_t sw_lattice_degree = 2;  // SW: ring predecessors per node
  double stir_initial_density = 0.2;  // stir_mixture: ER density of the start graph
};

inline constexpr std::size_t kDefaultNodes = 50;

/// Grows an n-node network (n >= 3) from the directed 3-cycle seed, each new
/// node attaching by `spec`'s rule. ER seed nodes take no cycle edge and
/// attach to the seed nodes before them by the ER rule.
Graph grow(const MechanismSpec& spec, std::size_t n, const SeededRng& rng,
           const GrowthOptions& options = {});

/// Grows a network in which node i attaches by assignment[i]'s rule.
Graph grow_mixture(const MixtureAssignment& assignment, const SeededRng& rng,
                   const GrowthOptions& options = {});

/// Starts from an ER network of the same size, then visits every node once
/// in random order, replacing its out-edges by ones drawn from its assigned
/// mechanism against the whole current network.
Graph stir_mixture(const MixtureAssignment& assignment, const SeededRng& rng,
                   const GrowthOptions& options = {});

/// Node-level assignment realizing `proportions` (one entry per mechanism
/// in kAllMechanisms order, summing to 1) with per-mechanism parameters.
/// Counts use largest-remainder rounding; nodes are shuffled by `rng`.
MixtureAssignment assignment_from_proportions(const std::array<double, 5>& proportions,
                                              const std::array<double, 5>& params, std::size_t n,
                                              const SeededRng& rng);

}  // namespace netclass
