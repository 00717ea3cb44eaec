#include "tlo/nsga2.hpp"

#include "tlo/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace tlo {

namespace {

// Uniform draws built directly on the 64-bit engine so that streams are the
// same on every standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  bool chance(double p) { return uniform() < p; }

private:
  std::mt19937_64 engine_;
};

Genome random_genome(const GenomeLayout& layout, Rng& rng) {
  Genome g;
  g.reals.resize(layout.n_reals());
  g.categoricals.resize(layout.n_categoricals());
  for (auto& r : g.reals) r = rng.uniform();
  for (auto& c : g.categoricals) c = static_cast<int>(rng.index(layout.cardinality()));
  return g;
}

// Simulated binary crossover on one gene pair, bounded to [0, 1].
std::pair<double, double> sbx_pair(double x1, double x2, double eta, Rng& rng) {
  if (std::abs(x1 - x2) <= 1e-14) return {x1, x2};
  const double y1 = std::min(x1, x2), y2 = std::max(x1, x2);
  const double lo = 0.0, hi = 1.0;
  const double r = rng.uniform();

  auto child = [&](double beta) {
    const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
    const double betaq = r <= 1.0 / alpha ? std::pow(r * alpha, 1.0 / (eta + 1.0))
                                          : std::pow(1.0 / (2.0 - r * alpha), 1.0 / (eta + 1.0));
    return betaq;
  };
  const double bq1 = child(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
  const double bq2 = child(1.0 + 2.0 * (hi - y2) / (y2 - y1));
  double c1 = std::clamp(0.5 * ((y1 + y2) - bq1 * (y2 - y1)), lo, hi);
  double c2 = std::clamp(0.5 * ((y1 + y2) + bq2 * (y2 - y1)), lo, hi);
  if (rng.chance(0.5)) std::swap(c1, c2);
  return {c1, c2};
}

double polynomial_mutation(double x, double eta, Rng& rng) {
  const double d1 = x, d2 = 1.0 - x;
  const double r = rng.uniform();
  const double power = 1.0 / (eta + 1.0);
  double dq;
  if (r < 0.5) {
    const double v = 2.0 * r + (1.0 - 2.0 * r) * std::pow(1.0 - d1, eta + 1.0);
    dq = std::pow(v, power) - 1.0;
  } else {
    const double v = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * std::pow(1.0 - d2, eta + 1.0);
    dq = 1.0 - std::pow(v, power);
  }
  return std::clamp(x + dq, 0.0, 1.0);
}

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, const NsgaOptions& opt, Rng& rng) {
  Genome c1 = a, c2 = b;
  if (!rng.chance(opt.crossover_rate)) return {c1, c2};
  for (std::size_t j = 0; j < a.reals.size(); ++j) {
    if (rng.chance(0.5)) std::tie(c1.reals[j], c2.reals[j]) = sbx_pair(a.reals[j], b.reals[j], opt.eta_crossover, rng);
  }
  for (std::size_t j = 0; j < a.categoricals.size(); ++j) {
    if (rng.chance(0.5)) std::swap(c1.categoricals[j], c2.categoricals[j]);
  }
  return {c1, c2};
}

void mutate(Genome& g, const GenomeLayout& layout, const NsgaOptions& opt, Rng& rng) {
  const double rate = 1.0 / static_cast<double>(layout.n_genes());
  for (auto& r : g.reals)
    if (rng.chance(rate)) r = polynomial_mutation(r, opt.eta_mutation, rng);
  for (auto& c : g.categoricals)
    if (rng.chance(rate)) c = static_cast<int>(rng.index(layout.cardinality()));
}

bool crowded_less(const Individual& a, const Individual& b) {
  return a.rank < b.rank || (a.rank == b.rank && a.crowding > b.crowding);
}

std::vector<Objectives> objectives_of(const std::vector<Individual>& pop) {
  std::vector<Objectives> obj;
  obj.reserve(pop.size());
  for (const auto& ind : pop) obj.push_back(ind.objectives);
  return obj;
}

// Sets rank and crowding for every member; returns the fronts.
std::vector<std::vector<std::size_t>> rank_population(std::vector<Individual>& pop) {
  const auto obj = objectives_of(pop);
  auto fronts = non_dominated_sort(obj);
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    std::vector<Objectives> fo;
    for (auto i : fronts[r]) fo.push_back(obj[i]);
    const auto cd = crowding_distance(fo);
    for (std::size_t k = 0; k < fronts[r].size(); ++k) {
      pop[fronts[r][k]].rank = static_cast<int>(r);
      pop[fronts[r][k]].crowding = cd[k];
    }
  }
  return fronts;
}

std::vector<Individual> select_survivors(std::vector<Individual> combined, std::size_t size) {
  const auto fronts = rank_population(combined);
  std::vector<Individual> next;
  next.reserve(size);
  for (const auto& front : fronts) {
    if (next.size() + front.size() <= size) {
      for (auto i : front) next.push_back(combined[i]);
      continue;
    }
    std::vector<std::size_t> order = front;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return combined[a].crowding > combined[b].crowding; });
    for (std::size_t k = 0; next.size() < size; ++k) next.push_back(combined[order[k]]);
    break;
  }
  return next;
}

const Individual& tournament(const std::vector<Individual>& pop, Rng& rng) {
  const auto& a = pop[rng.index(pop.size())];
  const auto& b = pop[rng.index(pop.size())];
  return crowded_less(b, a) ? b : a;
}

class Recorder {
public:
  Recorder(ParetoArchive& archive, const ProgressCallback& cb) : archive_(archive), cb_(cb) {}

  void add(std::vector<Individual> batch) {
    for (auto& ind : batch) {
      ind.eval_index = archive_.samples.size();
      archive_.samples.push_back(std::move(ind));
    }
    archive_.evaluations = archive_.samples.size();
  }

  void generation_done(int generation) {
    if (!cb_) return;
    GenerationRecord rec;
    rec.generation = generation;
    rec.evaluations = archive_.evaluations;
    const auto front = pareto_front(archive_.samples);
    rec.front_size = front.size();
    if (!front.empty()) {
      auto by = [&](auto key) {
        return archive_.samples[*std::min_element(front.begin(), front.end(), [&](std::size_t a, std::size_t b) {
                 return key(archive_.samples[a].objectives) < key(archive_.samples[b].objectives);
               })].objectives;
      };
      rec.best_force = by([](const Objectives& o) { return std::make_pair(o.force, o.velocity); });
      rec.best_velocity = by([](const Objectives& o) { return std::make_pair(o.velocity, o.force); });
    }
    cb_(rec);
  }

private:
  ParetoArchive& archive_;
  const ProgressCallback& cb_;
};

} // namespace

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const Objectives> points) {
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> remaining(points.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<double> xs, ys;

  // Peel one front at a time: a point belongs to the current front when no
  // remaining point dominates it.
  while (!remaining.empty()) {
    xs.clear();
    ys.clear();
    for (auto i : remaining) {
      xs.push_back(points[i].force);
      ys.push_back(points[i].velocity);
    }
    std::vector<std::size_t> front, rest;
    for (auto i : remaining) {
      if (kernels::count_dominators(xs, ys, points[i].force, points[i].velocity) == 0)
        front.push_back(i);
      else
        rest.push_back(i);
    }
    fronts.push_back(std::move(front));
    remaining = std::move(rest);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const Objectives> front) {
  const std::size_t n = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), inf);
    return dist;
  }
  std::vector<std::size_t> order(n);
  for (int obj = 0; obj < 2; ++obj) {
    auto key = [&](std::size_t i) {
      return obj == 0 ? std::make_pair(front[i].force, front[i].velocity)
                      : std::make_pair(front[i].velocity, front[i].force);
    };
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    const double lo = key(order.front()).first, hi = key(order.back()).first;
    dist[order.front()] = inf;
    dist[order.back()] = inf;
    if (hi - lo <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < n; ++k)
      dist[order[k]] += (key(order[k + 1]).first - key(order[k - 1]).first) / (hi - lo);
  }
  return dist;
}

std::vector<std::size_t> pareto_front(const std::vector<Individual>& samples) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (samples[i].feasible) order.push_back(i);
  auto obj = [&](std::size_t i) { return std::make_pair(samples[i].objectives.force, samples[i].objectives.velocity); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return obj(a) < obj(b); });

  // Sweep by increasing E_force; within a tie group only the least E_velocity
  // survives, and only if it beats everything with smaller E_force. Exact
  // objective duplicates collapse onto the earliest evaluation.
  std::vector<std::size_t> front;
  double best_velocity = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < order.size();) {
    std::size_t end = g;
    while (end < order.size() && obj(order[end]).first == obj(order[g]).first) ++end;
    const double group_min = obj(order[g]).second;
    if (group_min < best_velocity) {
      front.push_back(order[g]);
      best_velocity = group_min;
    }
    g = end;
  }
  std::sort(front.begin(), front.end());
  return front;
}

int default_threads() {
  if (const char* env = std::getenv("TLO_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Individual evaluate_genome(const Scenario& scenario, const GenomeLayout& layout, Genome genome) {
  Individual ind;
  const WireArrangement design = genome_decode(genome, layout);
  ind.genome = std::move(genome);
  const EvaluationResult r = evaluate(design, scenario);
  ind.feasible = r.feasible;
  if (r.feasible) {
    ind.objectives = {r.e_force, r.e_velocity};
  } else {
    const double sentinel = scenario.max_objective() + 1.0;
    ind.objectives = {sentinel, sentinel};
  }
  return ind;
}

std::vector<Individual> evaluate_batch(const Scenario& scenario, const GenomeLayout& layout,
                                       std::vector<Genome> genomes, int threads) {
  std::vector<Individual> out(genomes.size());
  const std::size_t workers =
      std::min<std::size_t>(genomes.size(), static_cast<std::size_t>(threads > 0 ? threads : default_threads()));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < genomes.size(); i += workers)
      out[i] = evaluate_genome(scenario, layout, std::move(genomes[i]));
  };
  if (workers <= 1) {
    if (!genomes.empty()) work(0);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  return out;
}

ParetoArchive evolve(const Scenario& scenario, const GenomeLayout& layout, const NsgaOptions& opt,
                     const ProgressCallback& progress) {
  if (opt.population < 2 || opt.population % 2 != 0) throw std::invalid_argument("population must be even and >= 2");
  const auto P = static_cast<std::size_t>(opt.population);
  if (opt.budget < P) throw std::invalid_argument("budget must be at least the population size");
  scenario.validate();

  ParetoArchive archive;
  archive.layout = layout;
  archive.seed = opt.seed;
  Recorder recorder(archive, progress);
  Rng rng(opt.seed);

  std::vector<Genome> init;
  init.reserve(P);
  for (std::size_t k = 0; k < P; ++k) init.push_back(random_genome(layout, rng));
  std::vector<Individual> pop = evaluate_batch(scenario, layout, std::move(init), opt.threads);
  recorder.add(pop);
  rank_population(pop);
  recorder.generation_done(0);

  const std::size_t generations = opt.budget / P;
  const std::size_t remainder = opt.budget % P;
  for (std::size_t gen = 1; gen < generations || (gen == generations && remainder > 0); ++gen) {
    const std::size_t batch = gen < generations ? P : remainder;
    std::vector<Genome> kids;
    kids.reserve(batch + 1);
    while (kids.size() < batch) {
      const Individual& a = tournament(pop, rng);
      const Individual& b = tournament(pop, rng);
      auto [c1, c2] = crossover(a.genome, b.genome, opt, rng);
      mutate(c1, layout, opt, rng);
      mutate(c2, layout, opt, rng);
      kids.push_back(std::move(c1));
      if (kids.size() < batch) kids.push_back(std::move(c2));
    }
    std::vector<Individual> offspring = evaluate_batch(scenario, layout, std::move(kids), opt.threads);
    recorder.add(offspring);

    std::vector<Individual> combined = std::move(pop);
    combined.insert(combined.end(), offspring.begin(), offspring.end());
    pop = select_survivors(std::move(combined), P);
    recorder.generation_done(static_cast<int>(gen));
  }

  archive.front = pareto_front(archive.samples);
  return archive;
}

ParetoArchive random_search(const Scenario& scenario, const GenomeLayout& layout, std::size_t budget,
                            std::uint64_t seed, int threads) {
  scenario.validate();
  ParetoArchive archive;
  archive.layout = layout;
  archive.seed = seed;
  Rng rng(seed);
  std::vector<Genome> genomes;
  genomes.reserve(budget);
  for (std::size_t k = 0; k < budget; ++k) genomes.push_back(random_genome(layout, rng));
  archive.samples = evaluate_batch(scenario, layout, std::move(genomes), threads);
  for (std::size_t i = 0; i < archive.samples.size(); ++i) archive.samples[i].eval_index = i;
  archive.evaluations = archive.samples.size();
  archive.front = pareto_front(archive.samples);
  return archive;
}

} // namespace tlo
