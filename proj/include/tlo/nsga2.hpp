#pragma once

// NSGA-II over mixed genomes: real genes in [0, 1] and categorical link
// choices. Designs whose LPs are infeasible are pruned by giving them
// sentinel objectives that every feasible design dominates.

#include "tlo/arrangement.hpp"
#include "tlo/feasibility.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tlo {

struct Objectives {
  double force = 0.0;
  double velocity = 0.0;

  bool operator==(const Objectives&) const = default;
};

/// Minimization dominance: no worse in both and better in one.
inline bool dominates(const Objectives& a, const Objectives& b) {
  return a.force <= b.force && a.velocity <= b.velocity && (a.force < b.force || a.velocity < b.velocity);
}

struct Individual {
  Genome genome;
  Objectives objectives;
  bool feasible = false;
  int rank = 0;
  double crowding = 0.0;
  std::size_t eval_index = 0; // position in the sample stream
};

struct ParetoArchive {
  GenomeLayout layout;
  std::vector<Individual> samples; // every evaluation, in order
  std::vector<std::size_t> front;  // indices into samples, feasible and non-dominated
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
};

/// Fronts of indices; front 0 holds the non-dominated points.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const Objectives> points);

/// NSGA-II crowding distance of one front; boundary points get +inf.
std::vector<double> crowding_distance(std::span<const Objectives> front);

/// Area dominated by the points and bounded by `ref` (minimization).
double hypervolume_2d(std::span<const Objectives> points, const Objectives& ref);

/// Indices of feasible, mutually non-dominated samples; of several samples
/// with identical objectives only the earliest is kept.
std::vector<std::size_t> pareto_front(const std::vector<Individual>& samples);

struct NsgaOptions {
  int population = 100;
  std::size_t budget = 10000;
  std::uint64_t seed = 1;
  double crossover_rate = 0.9;
  double eta_crossover = 15.0;
  double eta_mutation = 20.0;
  /// Evaluation workers; 0 reads TLO_THREADS, else hardware concurrency.
  int threads = 0;
};

struct GenerationRecord {
  int generation = 0;
  std::size_t evaluations = 0;
  std::size_t front_size = 0; // archive front
  Objectives best_force;      // archive front member with least E_force
  Objectives best_velocity;   // archive front member with least E_velocity
};

using ProgressCallback = std::function<void(const GenerationRecord&)>;

/// Objectives of one genome; sentinel (max+1, max+1) when pruned.
Individual evaluate_genome(const Scenario& scenario, const GenomeLayout& layout, Genome genome);

/// Evaluates genomes in parallel; results follow input order.
std::vector<Individual> evaluate_batch(const Scenario& scenario, const GenomeLayout& layout,
                                       std::vector<Genome> genomes, int threads);

/// Runs floor(budget / P) generations of P evaluations each, plus one
/// partial offspring batch for any remainder, so exactly `budget` designs
/// are evaluated. Deterministic for a fixed seed and any thread count.
ParetoArchive evolve(const Scenario& scenario, const GenomeLayout& layout, const NsgaOptions& options,
                     const ProgressCallback& progress = {});

/// Uniform random sampling with the same evaluation budget.
ParetoArchive random_search(const Scenario& scenario, const GenomeLayout& layout, std::size_t budget,
                            std::uint64_t seed, int threads = 0);

/// Worker count from TLO_THREADS, else hardware concurrency (at least 1).
int default_threads();

} // namespace tlo
