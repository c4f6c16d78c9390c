#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "halfzero/field.hpp"
#include "halfzero/poly.hpp"
#include "halfzero/zeta.hpp"

namespace hz {

enum class CensusMode { kExhaustive, kSampled };

std::string to_string(CensusMode mode);

/// Vanishing count for the monic squarefree D of one degree over F_q.
struct CensusRecord {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::uint64_t q = 0;
  unsigned degree = 0;
  /// Number of monic squarefree D of this degree.
  std::uint64_t total = 0;
  /// Exhaustive: exact count. Sampled: hits scaled to the population, rounded.
  std::uint64_t vanishing_count = 0;
  /// log(vanishing_count) / log(total), when the count is positive.
  std::optional<double> exponent;
  bool list_collected = false;
  /// Vanishing D in canonical order, as canonical text.
  std::vector<std::string> list;
  CensusMode mode = CensusMode::kExhaustive;
  std::uint64_t sample_size = 0;
  std::uint64_t seed = 0;
  std::uint64_t hits = 0;
  /// Set when a sampled request covered the whole population and was run
  /// exhaustively instead.
  bool fallback_exhaustive = false;
};

/// Character evaluations for a census: total * sum_{k<=g} q^k.
double census_cost_estimate(std::uint64_t q, unsigned degree);

struct CensusOptions {
  bool collect_list = false;
  unsigned jobs = 1;
  /// Checkpoint file; empty disables checkpointing. An existing file for the
  /// same census is resumed.
  std::string checkpoint;
  /// Minimum time between periodic checkpoint writes.
  std::chrono::milliseconds checkpoint_interval{2000};
  /// Maximum census_cost_estimate without force.
  double budget = 2e9;
  bool force = false;
  /// Monic indices per enumeration block.
  std::uint64_t block_size = 4096;
  /// Test hook: stop with CensusInterrupted once this many blocks are done
  /// (the checkpoint is written first).
  std::optional<std::uint64_t> stop_after_blocks;
  /// Called with (blocks done, blocks total) as the completed prefix grows.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

class CensusInterrupted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive census over every monic squarefree D of degree exactly d.
/// Throws BudgetError when the estimate exceeds options.budget and force is
/// off.
CensusRecord census(const FieldDesc& field, unsigned degree, const CensusOptions& options);

/// SplitMix64: state += 0x9E3779B97F4A7C15, then the output mix
/// z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB;
/// z ^ z>>31.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, n) by rejecting draws >= 2^64 - (2^64 mod n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

/// Draws sample_size monic squarefree D of degree d uniformly with
/// replacement (uniform monic index, rejected unless squarefree). Falls back
/// to an exhaustive census when sample_size >= the population.
CensusRecord sample_census(const FieldDesc& field, unsigned degree, std::uint64_t sample_size, std::uint64_t seed,
                           unsigned jobs = 1);

/// Two-sided binomial interval [lo, hi] for the hit count of n draws at rate
/// rate, using the normal approximation with z = 2.5758 (99%).
std::pair<double, double> binomial_interval(std::uint64_t n, double rate, double z = 2.5758293035489);

struct CumulativeRow {
  unsigned degree;
  /// |P(q^(d+1))|: monic squarefree D of degree 1..d.
  std::uint64_t population;
  /// |g(q^(d+1))|: vanishing D of degree <= d.
  std::uint64_t vanishing;
  std::uint64_t vanishing_odd_degree;
  std::uint64_t vanishing_even_degree;
};

/// Running sums over records sorted by degree (records of one field).
std::vector<CumulativeRow> cumulative(const std::vector<CensusRecord>& records);

struct CrossCheckOptions {
  /// Fraction of the non-listed D (of the population) also rechecked.
  double fraction = 0.0;
  std::uint64_t seed = 1;
  /// Test hook applied to each P(u) before comparison (mutation testing).
  std::function<void(LPolynomial&)> mutate;
};

struct CrossCheckReport {
  std::uint64_t vanishing_checked = 0;
  std::uint64_t other_checked = 0;
  std::uint64_t passed = 0;
};

class CrossCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recomputes L*(u) from character sums for every listed D and a random
/// fraction of the others, checking L* = (1 - u)^lambda P(u) and that the
/// vanishing flag agrees with the record. Throws CrossCheckError naming the
/// first offending D.
CrossCheckReport cross_check(const CensusRecord& record, const CrossCheckOptions& options);

}  // namespace hz
