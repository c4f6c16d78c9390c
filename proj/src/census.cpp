#include "halfzero/census.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>

#include "halfzero/parallel.hpp"
#include "halfzero/vanishing.hpp"
#include "json.hpp"

namespace hz {

namespace {

constexpr int kCheckpointSchema = 1;

struct BlockResult {
  std::uint64_t total = 0;
  std::vector<std::string> vanishing;
};

bool d_vanishes(const Poly& D) { return vanishes(l_polynomial(curve_new(D))); }

BlockResult run_block(const FieldPtr& F, unsigned degree, std::uint64_t begin, std::uint64_t end) {
  BlockResult r;
  MonicEnumerator en(F, degree, true, begin, end);
  while (auto D = en.next()) {
    ++r.total;
    if (d_vanishes(*D)) r.vanishing.push_back(D->to_text());
  }
  return r;
}

std::optional<double> exponent_of(std::uint64_t count, std::uint64_t total) {
  if (count == 0 || total < 2) return std::nullopt;
  return std::log(static_cast<double>(count)) / std::log(static_cast<double>(total));
}

// Resumable state of an exhaustive census: the first next_block blocks are
// folded into total / list.
struct Progress {
  std::uint64_t next_block = 0;
  std::uint64_t total = 0;
  std::vector<std::string> list;
};

nlohmann::json checkpoint_identity(const FieldDesc& field, unsigned degree, std::uint64_t block_size) {
  return {{"p", field.p()},
          {"e", field.e()},
          {"q", field.q()},
          {"degree", degree},
          {"mode", "exhaustive"},
          {"seed", nullptr},
          {"block_size", block_size}};
}

void write_checkpoint(const std::string& path, const nlohmann::json& identity, std::uint64_t blocks_total,
                      const Progress& pr) {
  nlohmann::json j;
  j["schema"] = kCheckpointSchema;
  j["kind"] = "census-checkpoint";
  j["census"] = identity;
  j["blocks_total"] = blocks_total;
  j["next_block"] = pr.next_block;
  j["total"] = pr.total;
  j["vanishing_count"] = pr.list.size();
  j["list"] = pr.list;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << j.dump(1) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("failed writing checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Progress> read_checkpoint(const std::string& path, const nlohmann::json& identity,
                                        std::uint64_t blocks_total) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw std::runtime_error("checkpoint " + path + " is not valid JSON: " + ex.what());
  }
  if (j.value("schema", 0) != kCheckpointSchema || j.value("kind", "") != "census-checkpoint") {
    throw std::runtime_error("checkpoint " + path + " has an unsupported schema");
  }
  if (j.at("census") != identity || j.at("blocks_total").get<std::uint64_t>() != blocks_total) {
    throw std::runtime_error("checkpoint " + path + " belongs to a different census: " + j.at("census").dump());
  }
  Progress pr;
  pr.next_block = j.at("next_block").get<std::uint64_t>();
  pr.total = j.at("total").get<std::uint64_t>();
  pr.list = j.at("list").get<std::vector<std::string>>();
  if (pr.next_block > blocks_total || pr.list.size() != j.at("vanishing_count").get<std::size_t>()) {
    throw std::runtime_error("checkpoint " + path + " is inconsistent");
  }
  return pr;
}

}  // namespace

std::string to_string(CensusMode mode) { return mode == CensusMode::kExhaustive ? "exhaustive" : "sampled"; }

double census_cost_estimate(std::uint64_t q, unsigned degree) {
  const int g = degree >= 1 ? static_cast<int>((degree - 1) / 2) : 0;
  double per = 0.0;
  for (int k = 1; k <= g; ++k) per += std::pow(static_cast<double>(q), k);
  return static_cast<double>(monic_squarefree_count(q, degree)) * per;
}

CensusRecord census(const FieldDesc& field, unsigned degree, const CensusOptions& options) {
  if (degree < 1) throw ArithmeticError("census degree must be at least 1");
  if (options.block_size < 1) throw ArithmeticError("block size must be positive");
  const double cost = census_cost_estimate(field.q(), degree);
  if (cost > options.budget && !options.force) {
    throw BudgetError("census q=" + std::to_string(field.q()) + " d=" + std::to_string(degree) + " needs about " +
                      std::to_string(static_cast<std::uint64_t>(cost)) +
                      " character evaluations, over the budget; pass --force to run it anyway");
  }
  const FieldPtr& F = field.field();
  const std::uint64_t population = ipow(field.q(), degree);
  const std::uint64_t blocks_total = (population + options.block_size - 1) / options.block_size;
  const nlohmann::json identity = checkpoint_identity(field, degree, options.block_size);

  Progress pr;
  if (!options.checkpoint.empty()) {
    if (auto saved = read_checkpoint(options.checkpoint, identity, blocks_total)) pr = std::move(*saved);
  }

  // Blocks finish out of order; the prefix [0, next_block) is folded in order
  // by whichever worker completes the block at its front.
  std::mutex mu;
  std::map<std::uint64_t, BlockResult> pending;
  auto last_write = std::chrono::steady_clock::now();
  bool stopped = false;
  auto fold = [&](std::uint64_t b, BlockResult r) {
    std::lock_guard<std::mutex> lock(mu);
    pending.emplace(b, std::move(r));
    bool advanced = false;
    while (!pending.empty() && pending.begin()->first == pr.next_block) {
      auto& front = pending.begin()->second;
      pr.total += front.total;
      pr.list.insert(pr.list.end(), front.vanishing.begin(), front.vanishing.end());
      pending.erase(pending.begin());
      ++pr.next_block;
      advanced = true;
      if (options.stop_after_blocks && pr.next_block == *options.stop_after_blocks) {
        if (!options.checkpoint.empty()) write_checkpoint(options.checkpoint, identity, blocks_total, pr);
        stopped = true;
        throw CensusInterrupted("census stopped after " + std::to_string(pr.next_block) + " blocks");
      }
    }
    if (!advanced) return;
    if (options.progress) options.progress(pr.next_block, blocks_total);
    auto now = std::chrono::steady_clock::now();
    if (!options.checkpoint.empty() && now - last_write >= options.checkpoint_interval) {
      write_checkpoint(options.checkpoint, identity, blocks_total, pr);
      last_write = now;
    }
  };

  const std::uint64_t start = pr.next_block;
  parallel_blocks(start, blocks_total, options.jobs, [&](std::uint64_t b) {
    {
      std::lock_guard<std::mutex> lock(mu);
      if (stopped) return;
    }
    const std::uint64_t lo = b * options.block_size;
    const std::uint64_t hi = std::min(population, lo + options.block_size);
    fold(b, run_block(F, degree, lo, hi));
  });
  if (pr.next_block != blocks_total) throw InternalAssertion("census finished with unfolded blocks");
  if (!options.checkpoint.empty()) write_checkpoint(options.checkpoint, identity, blocks_total, pr);

  CensusRecord rec;
  rec.p = field.p();
  rec.e = field.e();
  rec.q = field.q();
  rec.degree = degree;
  rec.total = pr.total;
  if (rec.total != monic_squarefree_count(field.q(), degree)) {
    throw InternalAssertion("census enumerated " + std::to_string(rec.total) + " D, expected " +
                            std::to_string(monic_squarefree_count(field.q(), degree)));
  }
  rec.vanishing_count = pr.list.size();
  rec.exponent = exponent_of(rec.vanishing_count, rec.total);
  rec.list_collected = options.collect_list;
  if (options.collect_list) rec.list = std::move(pr.list);
  rec.mode = CensusMode::kExhaustive;
  return rec;
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw ArithmeticError("below(0)");
  // 2^64 mod n computed as (2^64 - n) mod n.
  const std::uint64_t reject = (0 - n) % n;
  const std::uint64_t limit = 0 - reject;  // 2^64 - reject, with 0 meaning 2^64
  for (;;) {
    std::uint64_t x = next();
    if (reject == 0 || x < limit) return x % n;
  }
}

CensusRecord sample_census(const FieldDesc& field, unsigned degree, std::uint64_t sample_size, std::uint64_t seed,
                           unsigned jobs) {
  if (sample_size < 1) throw ArithmeticError("sample size must be at least 1");
  if (degree < 1) throw ArithmeticError("census degree must be at least 1");
  const std::uint64_t total = monic_squarefree_count(field.q(), degree);
  if (sample_size >= total) {
    CensusOptions opts;
    opts.jobs = jobs;
    opts.force = true;
    CensusRecord rec = census(field, degree, opts);
    rec.fallback_exhaustive = true;
    rec.sample_size = sample_size;
    rec.seed = seed;
    return rec;
  }
  const FieldPtr& F = field.field();
  const std::uint64_t population = ipow(field.q(), degree);
  SplitMix64 rng(seed);

  // Candidates are drawn sequentially; squarefreeness and vanishing are
  // evaluated in parallel, then accepted in draw order.
  constexpr std::uint64_t kChunk = 1 << 15;
  constexpr std::uint64_t kSub = 1 << 10;
  std::uint64_t accepted = 0;
  std::uint64_t hits = 0;
  std::vector<std::uint64_t> cand(kChunk);
  std::vector<signed char> verdict(kChunk);  // -1 not squarefree, 0/1 vanishing
  while (accepted < sample_size) {
    for (auto& c : cand) c = rng.below(population);
    parallel_blocks(0, kChunk / kSub, jobs, [&](std::uint64_t b) {
      for (std::uint64_t i = b * kSub; i < (b + 1) * kSub; ++i) {
        Poly D = monic_from_index(F, degree, cand[i]);
        verdict[i] = !is_squarefree(D) ? -1 : (d_vanishes(D) ? 1 : 0);
      }
    });
    for (std::uint64_t i = 0; i < kChunk && accepted < sample_size; ++i) {
      if (verdict[i] < 0) continue;
      ++accepted;
      hits += static_cast<std::uint64_t>(verdict[i]);
    }
  }

  CensusRecord rec;
  rec.p = field.p();
  rec.e = field.e();
  rec.q = field.q();
  rec.degree = degree;
  rec.total = total;
  rec.mode = CensusMode::kSampled;
  rec.sample_size = sample_size;
  rec.seed = seed;
  rec.hits = hits;
  rec.vanishing_count = static_cast<std::uint64_t>(
      std::llround(static_cast<double>(hits) / static_cast<double>(sample_size) * static_cast<double>(total)));
  rec.exponent = exponent_of(rec.vanishing_count, total);
  return rec;
}

std::pair<double, double> binomial_interval(std::uint64_t n, double rate, double z) {
  const double mean = static_cast<double>(n) * rate;
  const double sd = std::sqrt(static_cast<double>(n) * rate * (1.0 - rate));
  return {mean - z * sd, mean + z * sd};
}

std::vector<CumulativeRow> cumulative(const std::vector<CensusRecord>& records) {
  std::vector<const CensusRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->degree < b->degree; });
  std::vector<CumulativeRow> out;
  CumulativeRow acc{0, 0, 0, 0, 0};
  for (const auto* r : sorted) {
    if (!out.empty() && r->q != sorted.front()->q) throw ArithmeticError("cumulative view mixes fields");
    if (!out.empty() && r->degree == acc.degree) throw ArithmeticError("duplicate degree in cumulative view");
    acc.degree = r->degree;
    acc.population += r->total;
    acc.vanishing += r->vanishing_count;
    (r->degree % 2 ? acc.vanishing_odd_degree : acc.vanishing_even_degree) += r->vanishing_count;
    out.push_back(acc);
  }
  return out;
}

CrossCheckReport cross_check(const CensusRecord& record, const CrossCheckOptions& options) {
  if (!record.list_collected) throw ArithmeticError("cross_check needs a record with its vanishing list");
  FieldPtr F = make_field(record.p, record.e);
  CrossCheckReport rep;
  auto check = [&](const Poly& D, bool expect_vanish) {
    Curve C = curve_new(D);
    LPolynomial L = l_polynomial(C);
    if (options.mutate) options.mutate(L);
    CharSumL Lstar = char_sum_lpoly(D);
    if (!dual_identity_holds(Lstar, L, C.lambda)) {
      throw CrossCheckError("character-sum L-series disagrees with P(u) for D = " + D.to_text() + " (" +
                            D.to_pretty() + ")");
    }
    if (vanishes(L) != expect_vanish) {
      throw CrossCheckError("vanishing flag of D = " + D.to_text() + " (" + D.to_pretty() +
                            ") disagrees with the census record");
    }
    ++rep.passed;
  };
  std::set<std::string> listed(record.list.begin(), record.list.end());
  for (const auto& text : record.list) {
    check(Poly::parse(F, text), true);
    ++rep.vanishing_checked;
  }
  if (options.fraction > 0.0) {
    const auto want = static_cast<std::uint64_t>(std::ceil(options.fraction * static_cast<double>(record.total)));
    const std::uint64_t population = ipow(record.q, record.degree);
    SplitMix64 rng(options.seed);
    std::uint64_t done = 0;
    while (done < want) {
      Poly D = monic_from_index(F, record.degree, rng.below(population));
      if (!is_squarefree(D) || listed.count(D.to_text())) continue;
      check(D, false);
      ++rep.other_checked;
      ++done;
    }
  }
  return rep;
}

}  // namespace hz
