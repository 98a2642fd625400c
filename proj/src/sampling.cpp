#include "lamcount/sampling.hpp"

#include "lamcount/typecheck.hpp"

namespace lamcount {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

BigInt random_rank(const BigInt& total, Rng& rng) {
  if (total < 1) throw DomainError("cannot draw a rank from an empty domain");
  const std::size_t bits = boost::multiprecision::msb(total) + 1;
  const std::size_t words = (bits + 63) / 64;
  const std::size_t top_bits = bits - (words - 1) * 64;
  const std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << top_bits) - 1;
  for (;;) {
    BigInt candidate = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = rng.next();
      if (w == 0) word &= top_mask;
      candidate <<= 64;
      candidate |= word;
    }
    if (candidate < total) return candidate + 1;
  }
}

Term random_term(const SamplerConfig& cfg, Rng& rng) {
  return unrank_term(cfg.n, cfg.m, random_rank(count_terms(cfg.n, cfg.m), rng));
}

Term random_nf(const SamplerConfig& cfg, Rng& rng) {
  return unrank_nf(cfg.n, cfg.m, random_rank(count_nf(cfg.n, cfg.m), rng));
}

Term random_member(const SamplerConfig& cfg, Rng& rng) {
  return cfg.family == Family::Terms ? random_term(cfg, rng) : random_nf(cfg, rng);
}

TypableDraw random_typable(const SamplerConfig& cfg, Rng& rng) {
  if (cfg.m != 0) throw DomainError("typability is decided for closed terms only (m = 0)");
  if (cfg.max_attempts < 1) throw std::invalid_argument("max_attempts must be at least 1");
  const BigInt total = family_count(cfg.family, cfg.n, 0);
  if (total == 0) throw DomainError("empty domain");
  TypableDraw draw;
  while (draw.attempts < cfg.max_attempts) {
    ++draw.attempts;
    Term candidate = unrank(cfg.family, cfg.n, 0, random_rank(total, rng));
    if (is_typable(candidate)) {
      draw.term = std::move(candidate);
      return draw;
    }
  }
  return draw;
}

}  // namespace lamcount
