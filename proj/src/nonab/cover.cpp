#include "tileforge/nonab/cover.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace tileforge {

namespace detail {

namespace {
constexpr std::uint64_t kChunk = 1024;
constexpr std::size_t kMaxWitnesses = 8;
}  // namespace

CoverStats run_samples(std::string family, std::uint64_t samples, std::uint64_t seed,
                       const std::function<SampleOutcome(Rng&)>& one) {
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<CoverStats> part(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::uint64_t c; (c = next++) < chunks;) {
      try {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        Rng rng(ss);
        auto& st = part[c];
        const auto n = std::min(kChunk, samples - c * kChunk);
        for (std::uint64_t i = 0; i < n; ++i) {
          auto o = one(rng);
          ++st.samples;
          st.in_target += o.in_target;
          if (o.count != (o.in_target ? 1u : 0u)) {
            ++st.violations;
            if (st.witnesses.size() < kMaxWitnesses) st.witnesses.push_back({o.show(), o.count, o.in_target});
          }
        }
      } catch (...) {
        std::lock_guard lk(failure_mu);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    }
  };
  const auto threads = std::clamp<std::uint64_t>(std::thread::hardware_concurrency(), 1, std::max<std::uint64_t>(chunks, 1));
  std::vector<std::thread> pool;
  for (std::uint64_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  CoverStats out;
  out.family = std::move(family);
  for (auto& st : part) {
    out.samples += st.samples;
    out.in_target += st.in_target;
    out.violations += st.violations;
    for (auto& w : st.witnesses)
      if (out.witnesses.size() < kMaxWitnesses) out.witnesses.push_back(std::move(w));
  }
  return out;
}

}  // namespace detail

Ambient<Perm16> perm_ambient() {
  return {[](Rng& r) { return random_perm(r); }, [](const Perm16& e, const Perm16& f) { return e - f; },
          [](const Perm16& e) { return e.str(); }};
}

Ambient<PermPoint> perm_point_ambient() {
  return {[](Rng& r) {
            auto a = random_perm(r);
            return PermPoint{a, static_cast<Cell>(r() % 16)};
          },
          [](const PermPoint& e, const PermPoint& f) { return PermPoint{e.alpha - f.alpha, cell_sub(e.y, f.y)}; },
          [](const PermPoint& e) { return "(" + e.alpha.str() + ", " + cell_str(e.y) + ")"; }};
}

Ambient<GroupElement> finite_ambient(const ExplicitGroup& g) {
  if (!g.is_finite()) throw NotFinite("sampling needs a finite group");
  return {[g](Rng& r) { return g.element_at(static_cast<std::size_t>(r() % g.order())); },
          [g](const GroupElement& e, const GroupElement& f) { return g.sub(e, f); },
          [](const GroupElement& e) { return to_string(e); }};
}

namespace {

void require_cube(Cell y) {
  if (y >= 16 || !in_cube(y)) throw NotInCube(cell_str(y) + " is not in {-1,1}^2");
}

std::vector<Perm16> cycle_list(const Perm16& sigma, const Perm16& phi) {
  if (!is_cycle(sigma)) throw PreconditionFailed("sigma is not a 16-cycle");
  if (!is_stabilizer(phi)) throw PreconditionFailed("phi does not fix {-1,1}^2");
  std::vector<Perm16> out{phi};
  Perm16 s = sigma;
  for (int i = 1; i < 16; ++i, s = s + sigma) out.push_back(s);
  return out;
}

}  // namespace

LemmaOracles lemma_oracles(Cell y) {
  require_cube(y);
  LemmaOracles o;
  o.y = y;
  o.A = {"pi^-1" + cell_str(y), [y](const Perm16& a) { return a(y) == 0; }, std::nullopt};
  o.B = {"B", [](const Perm16& a) { return in_cube(pi(a)); }, std::nullopt};
  std::vector<Perm16> t;
  for (auto h : kEvenCells) t.push_back(tau(h));
  o.F_tau = {"tau((2Z4)^2)", [t](const Perm16& a) { return std::find(t.begin(), t.end(), a) != t.end(); }, t};
  o.all = {"S16", [](const Perm16&) { return true; }, std::nullopt};
  return o;
}

OracleSet<Perm16> LemmaOracles::F_cycle(const Perm16& sigma, const Perm16& phi) const {
  auto l = cycle_list(sigma, phi);
  return {"{phi,sigma,..,15sigma}", [l](const Perm16& a) { return std::find(l.begin(), l.end(), a) != l.end(); }, l};
}

GraphOracles graph_oracles(Cell y) {
  require_cube(y);
  GraphOracles o;
  o.y = y;
  o.A = {"pi^-1" + cell_str(y) + "x{y}", [y](const PermPoint& p) { return p.y == y && p.alpha(y) == 0; },
         std::nullopt};
  std::vector<PermPoint> t;
  for (auto h : kEvenCells) t.push_back({tau(h), h});
  o.F_tau = {"{(tau(h),h)}", [t](const PermPoint& p) { return std::find(t.begin(), t.end(), p) != t.end(); }, t};
  o.E_tau = {"graph(B)", [](const PermPoint& p) { return in_cube(pi(p.alpha)) && p.y == pi(p.alpha); },
             std::nullopt};
  o.all = {"S16xZ4^2", [](const PermPoint&) { return true; }, std::nullopt};
  return o;
}

OracleSet<PermPoint> GraphOracles::F_cycle(const Perm16& sigma, const Perm16& phi) const {
  auto l = cycle_list(sigma, phi);
  std::vector<PermPoint> f;
  for (const auto& a : l)
    for (Cell h = 0; h < 16; ++h) f.push_back({a, h});
  return {"{phi,sigma,..,15sigma}xZ4^2",
          [l](const PermPoint& p) { return std::find(l.begin(), l.end(), p.alpha) != l.end(); }, f};
}

OracleSet<Perm16> fiber_defect(Cell y_prime, Cell c) {
  if (c == 0 || y_prime == 0) throw PreconditionFailed("defect must avoid (0,0)");
  return {"defect", [=](const Perm16& a) { return a(y_prime) == 0 && a(0) == c; }, std::nullopt};
}

}  // namespace tileforge
