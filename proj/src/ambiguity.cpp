#include "binpr/ambiguity.hpp"

#include "binpr/autocorr.hpp"
#include "binpr/errors.hpp"
#include "binpr/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace binpr {

namespace {

using Mask = std::uint64_t;

Mask full_mask(std::size_t n) { return n == 64 ? ~0ull : ((1ull << n) - 1); }

// Bit k of the result is bit (k + shift) mod N of u.
Mask rotate(Mask u, std::size_t shift, std::size_t n) {
  shift %= n;
  if (shift == 0) return u;
  return ((u >> shift) | (u << (n - shift))) & full_mask(n);
}

// Bit k of the result is bit (−k) mod N of u.
Mask reflect(Mask u, std::size_t n) {
  Mask out = u & 1u;
  for (std::size_t k = 1; k < n; ++k) out |= ((u >> (n - k)) & 1u) << k;
  return out;
}

// Bit k of the result is bit (len − 1 − k) of u.
Mask reverse_prefix(Mask u, std::size_t len) {
  Mask out = 0;
  for (std::size_t k = 0; k < len; ++k) out |= ((u >> (len - 1 - k)) & 1u) << k;
  return out;
}

Mask canonical_cyclic(Mask u, std::size_t n) {
  Mask best = u;
  const Mask r = reflect(u, n);
  for (std::size_t s = 0; s < n; ++s) {
    best = std::min({best, rotate(u, s, n), rotate(r, s, n)});
  }
  return best;
}

Mask canonical_windowed(Mask u) {
  if (u == 0) return 0;
  const Mask v = u >> std::countr_zero(u);
  const auto len = static_cast<std::size_t>(64 - std::countl_zero(v));
  return std::min(v, reverse_prefix(v, len));
}

// Class key including the flip merge used by the classic relation.
Mask classic_key(Mask u, std::size_t n) {
  const Mask c = canonical_cyclic(u, n);
  if (2 * static_cast<std::size_t>(std::popcount(u)) != n) return c;
  return std::min(c, canonical_cyclic(~u & full_mask(n), n));
}

constexpr std::size_t kMaxSignature = 32;
using Signature = std::array<std::uint8_t, kMaxSignature>;

Signature signature(Mask u, std::size_t n, MeasurementMode mode) {
  Signature sig{};
  for (std::size_t k = 0; k < n; ++k) {
    const Mask partner =
        mode == MeasurementMode::classic ? rotate(u, k, n) : (u >> k);
    sig[k] = static_cast<std::uint8_t>(std::popcount(u & partner));
  }
  return sig;
}

void check_cap(std::size_t n, const EnumerationOptions &opts, const char *what) {
  const std::size_t cap = std::min<std::size_t>(opts.max_length, kMaxSignature);
  if (n > cap) {
    throw CapExceededError(std::string(what) + ": N = " + std::to_string(n) +
                           " exceeds the enumeration cap of " +
                           std::to_string(cap));
  }
}

} // namespace

TrivialAmbiguity TrivialAmbiguity::compose(const TrivialAmbiguity &first,
                                           const TrivialAmbiguity &second,
                                           std::size_t n) {
  if (n == 0) throw DimensionError("compose: N must be >= 1");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  TrivialAmbiguity out;
  out.reflect = first.reflect != second.reflect;
  if (second.reflect) {
    out.phase = std::fmod(second.phase - first.phase + two_pi, two_pi);
    out.shift = (second.shift % n + n - first.shift % n) % n;
  } else {
    out.phase = std::fmod(second.phase + first.phase, two_pi);
    out.shift = (second.shift + first.shift) % n;
  }
  return out;
}

ComplexSignal apply_trivial(const ComplexSignal &x, const TrivialAmbiguity &t) {
  const ComplexSignal base = t.reflect ? conjugate_reverse(x) : x;
  const ComplexSignal shifted =
      cyclic_shift(base, static_cast<long long>(t.shift % x.size()));
  return std::polar(1.0, t.phase) * shifted;
}

BinarySignal apply_trivial(const BinarySignal &x, std::size_t shift,
                           bool reflect_first) {
  const std::size_t n = x.size();
  std::vector<std::uint8_t> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (k + shift) % n;
    out[k] = reflect_first ? x[(n - j) % n] : x[j];
  }
  return BinarySignal(std::move(out));
}

ComplementAmbiguity complement_ambiguity(const ComplexSignal &x, double theta) {
  Complex total{};
  for (const auto &v : x.samples()) total += v;
  const Complex c = (1.0 + std::polar(1.0, -theta)) * total /
                    static_cast<double>(x.size());
  return {c, c * ComplexSignal::ones(x.size()) - x};
}

EquivalenceClass canonicalize(const BinarySignal &x) {
  const std::size_t n = x.size();
  if (n > 64) throw DimensionError("canonicalize: N must be <= 64");
  const Mask u = x.mask();
  std::set<Mask> orbit;
  const Mask r = reflect(u, n);
  for (std::size_t s = 0; s < n; ++s) {
    orbit.insert(rotate(u, s, n));
    orbit.insert(rotate(r, s, n));
  }
  return {BinarySignal::from_mask(*orbit.begin(), n), orbit.size()};
}

EquivalenceClass canonicalize_windowed(const BinarySignal &x) {
  const std::size_t n = x.size();
  if (n > 64) throw DimensionError("canonicalize_windowed: N must be <= 64");
  const Mask u = x.mask();
  if (u == 0) return {x, 1};
  const Mask v = u >> std::countr_zero(u);
  const auto len = static_cast<std::size_t>(64 - std::countl_zero(v));
  const Mask rev = reverse_prefix(v, len);
  const std::size_t placements = n - len + 1;
  return {BinarySignal::from_mask(std::min(v, rev), n),
          placements * (rev == v ? 1 : 2)};
}

std::vector<BinarySignal> trivial_orbit(const BinarySignal &x) {
  const std::size_t n = x.size();
  std::set<BinarySignal> orbit;
  for (std::size_t s = 0; s < n; ++s) {
    orbit.insert(apply_trivial(x, s, false));
    orbit.insert(apply_trivial(x, s, true));
  }
  return {orbit.begin(), orbit.end()};
}

std::vector<BinarySignal> enumerate_matching(const BinarySignal &x,
                                             const EnumerationOptions &opts) {
  const std::size_t n = x.size();
  check_cap(n, opts, "enumerate_matching");
  const Mask target_mask = x.mask();
  const Signature target = signature(target_mask, n, opts.mode);
  const int support = std::popcount(target_mask);

  const Mask total = Mask{1} << n;
  const std::size_t chunks = std::max<std::size_t>(1, resolve_threads(opts.threads) * 4);
  const Mask chunk_size = (total + chunks - 1) / chunks;
  std::vector<std::vector<Mask>> found(chunks);
  parallel_for(chunks, opts.threads, [&](std::size_t c) {
    const Mask begin = c * chunk_size;
    const Mask end = std::min(total, begin + chunk_size);
    for (Mask u = begin; u < end; ++u) {
      if (std::popcount(u) != support) continue;
      if (signature(u, n, opts.mode) == target) found[c].push_back(u);
    }
  });

  std::vector<BinarySignal> out;
  for (const auto &chunk : found) {
    for (Mask u : chunk) out.push_back(BinarySignal::from_mask(u, n));
  }
  return out;
}

std::vector<UniquenessRow> uniqueness_report(std::size_t n,
                                             const EnumerationOptions &opts) {
  if (n == 0) throw DimensionError("uniqueness_report: N must be >= 1");
  check_cap(n, opts, "uniqueness_report");
  const Mask total = Mask{1} << n;

  std::vector<std::pair<Signature, Mask>> entries(total);
  parallel_for(static_cast<std::size_t>(total), opts.threads, [&](std::size_t i) {
    entries[i] = {signature(i, n, opts.mode), i};
  });
  std::sort(entries.begin(), entries.end());

  auto key_of = [&](Mask u) {
    return opts.mode == MeasurementMode::classic ? classic_key(u, n)
                                                 : canonical_windowed(u);
  };
  auto class_of = [&](Mask u) {
    return opts.mode == MeasurementMode::classic ? canonical_cyclic(u, n)
                                                 : canonical_windowed(u);
  };

  std::vector<UniquenessRow> rows(n + 1);
  for (std::size_t s = 0; s <= n; ++s) rows[s].support_count = s;

  std::size_t begin = 0;
  while (begin < entries.size()) {
    std::size_t end = begin;
    std::set<Mask> keys;
    std::set<Mask> classes;
    while (end < entries.size() && entries[end].first == entries[begin].first) {
      keys.insert(key_of(entries[end].second));
      classes.insert(class_of(entries[end].second));
      ++end;
    }
    const bool unique = keys.size() == 1;
    for (Mask c : classes) {
      auto &row = rows[static_cast<std::size_t>(std::popcount(c))];
      ++row.num_classes;
      if (unique) {
        ++row.num_unique_classes;
      } else if (row.example_nonunique.empty() ||
                 c < BinarySignal::parse(row.example_nonunique).mask()) {
        row.example_nonunique = BinarySignal::from_mask(c, n).to_string();
      }
    }
    begin = end;
  }
  return rows;
}

bool is_palindrome(const BinarySignal &x) {
  const std::size_t n = x.size();
  for (std::size_t k = 0; k < n / 2; ++k) {
    if (x[k] != x[n - 1 - k]) return false;
  }
  return true;
}

} // namespace binpr
