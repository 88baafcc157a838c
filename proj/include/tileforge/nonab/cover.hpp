#pragma once
// Sampled exact-cover checks for tiling equations A (+) F = E in groups far
// too large to list. A and E are membership oracles; F has a small listed
// factor. For a sampled e, the representations e = a + f are counted by
// running over f and testing a = e - f for membership in A; the count must be
// 1 on E and 0 off it.
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tileforge/error.hpp"
#include "tileforge/groups/group.hpp"
#include "tileforge/nonab/perm16.hpp"

namespace tileforge {

inline constexpr std::size_t kMaxListedFactor = 10000;

template <class T>
struct OracleSet {
  std::string name;
  std::function<bool(const T&)> contains;
  std::optional<std::vector<T>> factor;  // full listing, when small
};

// Sampling and right subtraction in the ambient group.
template <class T>
struct Ambient {
  std::function<T(Rng&)> sample;
  std::function<T(const T&, const T&)> sub;  // e - f
  std::function<std::string(const T&)> show;
};

struct CoverWitness {
  std::string element;
  std::uint64_t count = 0;
  bool in_target = false;
};

struct CoverStats {
  std::string family;
  std::uint64_t samples = 0;
  std::uint64_t in_target = 0;
  std::uint64_t violations = 0;
  std::vector<CoverWitness> witnesses;  // first few, in sample order
};

namespace detail {

struct SampleOutcome {
  bool in_target = false;
  std::uint64_t count = 0;
  std::function<std::string()> show;  // only called on violations
};

// Samples are processed in fixed-size chunks, chunk c seeded from (seed, c),
// spread over worker threads; results do not depend on the thread count.
CoverStats run_samples(std::string family, std::uint64_t samples, std::uint64_t seed,
                       const std::function<SampleOutcome(Rng&)>& one);

}  // namespace detail

template <class T>
std::uint64_t count_representations(const Ambient<T>& G, const OracleSet<T>& A, const OracleSet<T>& F, const T& e) {
  if (!F.factor) throw CostExceeded("sampled_cover_check", F.name + " has no listed factor");
  std::uint64_t k = 0;
  for (const auto& f : *F.factor) k += A.contains(G.sub(e, f));
  return k;
}

template <class T>
CoverStats sampled_cover_check(const Ambient<T>& G, const OracleSet<T>& A, const OracleSet<T>& F,
                               const OracleSet<T>& E, std::uint64_t samples, std::uint64_t seed) {
  if (!F.factor) throw CostExceeded("sampled_cover_check", F.name + " has no listed factor");
  if (F.factor->size() > kMaxListedFactor)
    throw CostExceeded("sampled_cover_check", F.name + " lists " + std::to_string(F.factor->size()) + " elements");
  return detail::run_samples(A.name + " (+) " + F.name + " = " + E.name, samples, seed, [&](Rng& rng) {
    T e = G.sample(rng);
    const auto k = count_representations(G, A, F, e);
    return detail::SampleOutcome{E.contains(e), k, [&G, e] { return G.show(e); }};
  });
}

// S_16 alone, and S_16 x Z_4^2 for the graph form of the encoding.
struct PermPoint {
  Perm16 alpha;
  Cell y = 0;
  friend bool operator==(const PermPoint&, const PermPoint&) = default;
};

Ambient<Perm16> perm_ambient();
Ambient<PermPoint> perm_point_ambient();
Ambient<GroupElement> finite_ambient(const ExplicitGroup& g);  // finite abelian groups

template <class T>
OracleSet<T> unite(const OracleSet<T>& a, const OracleSet<T>& b) {
  return {a.name + " u " + b.name, [a, b](const T& x) { return a.contains(x) || b.contains(x); }, std::nullopt};
}

// Encoding of the cube point y: A = pi^{-1}(y) is the unique kind of solution
// of A (+) tau((2Z_4)^2) = B together with A (+) {phi, sigma, ..., 15 sigma} =
// S_16 for all cycles sigma and stabilizers phi.
struct LemmaOracles {
  Cell y = 0;
  OracleSet<Perm16> A, B, F_tau, all;
  OracleSet<Perm16> F_cycle(const Perm16& sigma, const Perm16& phi) const;  // PreconditionFailed
};
LemmaOracles lemma_oracles(Cell y);  // NotInCube

// Same in S_16 x Z_4^2: A = pi^{-1}(y) x {y}.
struct GraphOracles {
  Cell y = 0;
  OracleSet<PermPoint> A, F_tau, E_tau, all;
  OracleSet<PermPoint> F_cycle(const Perm16& sigma, const Perm16& phi) const;
};
GraphOracles graph_oracles(Cell y);  // NotInCube

// {a : pi(a) = y', a(0,0) = c}: a defect of density 1/240 in S_16, used to
// confirm that sampling does see wrong solutions.
OracleSet<Perm16> fiber_defect(Cell y_prime, Cell c);

}  // namespace tileforge
