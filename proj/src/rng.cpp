#include "onebit/rng.hpp"

namespace onebit {

std::uint64_t mix64(std::uint64_t x) noexcept {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_tag(std::string_view purpose) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng::Rng(std::uint64_t key) : key_(key), engine_(mix64(key)) {}

Rng Rng::derive(std::uint64_t tag) const { return Rng(mix64(key_ ^ mix64(tag + 0x632be59bd9b4e019ULL))); }

Rng Rng::derive(std::string_view purpose) const { return derive(hash_tag(purpose)); }

Rng Rng::derive(std::string_view purpose, std::uint64_t index) const { return derive(purpose).derive(index); }

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

int Rng::rademacher() { return (engine_() >> 63) ? 1 : -1; }

}  // namespace onebit
