#ifndef LAMCOUNT_SAMPLING_HPP_
#define LAMCOUNT_SAMPLING_HPP_

#include <cstdint>
#include <optional>
#include <random>

#include "lamcount/counting.hpp"
#include "lamcount/ranking.hpp"
#include "lamcount/term.hpp"

namespace lamcount {

/// Deterministic 64-bit generator. Distinct (seed, stream) pairs give
/// independent sequences, so workers and individual samples can each own a
/// stream and results do not depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Uniform over [1..total] by rejection on bit blocks as wide as `total`.
/// Throws DomainError when total < 1.
BigInt random_rank(const BigInt& total, Rng& rng);

struct SamplerConfig {
  std::uint64_t seed = 0;
  Family family = Family::Terms;
  Size n = 0;
  Size m = 0;
  std::uint64_t max_attempts = 1'000'000;
  bool log_attempts = false;
};

Term random_term(const SamplerConfig& cfg, Rng& rng);
Term random_nf(const SamplerConfig& cfg, Rng& rng);
/// Dispatches on cfg.family.
Term random_member(const SamplerConfig& cfg, Rng& rng);

struct TypableDraw {
  /// Empty when max_attempts draws were all untypable.
  std::optional<Term> term;
  std::uint64_t attempts = 0;

  bool gave_up() const { return !term.has_value(); }
};

/// Draws uniform members of cfg.family until one is simply typable, so the
/// result is uniform over the typable members. Requires m = 0.
TypableDraw random_typable(const SamplerConfig& cfg, Rng& rng);

}  // namespace lamcount

#endif  // LAMCOUNT_SAMPLING_HPP_
