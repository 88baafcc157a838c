#include "tileforge/solver/sat.hpp"

#include <algorithm>
#include <stdexcept>

namespace tileforge {
namespace {

// Luby sequence 1,1,2,1,1,2,4,...
std::uint64_t luby(std::uint64_t x) {
  std::uint64_t size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return 1ull << seq;
}

constexpr int kNoReason = -1;

}  // namespace

SatSolver::SatSolver(int num_vars, std::uint64_t seed)
    : num_vars_(num_vars),
      watches_(2 * static_cast<std::size_t>(num_vars)),
      assign_(num_vars, 2),
      level_(num_vars, 0),
      reason_(num_vars, kNoReason),
      phase_(num_vars, 0),
      activity_(num_vars, 0.0),
      seen_(num_vars, 0) {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1e-3);
    for (int v = 0; v < num_vars; ++v) {
      phase_[v] = static_cast<std::uint8_t>(rng() & 1u);
      activity_[v] = u(rng);
    }
  }
}

void SatSolver::add_clause(std::span<const int> lits) {
  originals_.emplace_back();
  for (int l : lits) {
    if (l == 0 || std::abs(l) > num_vars_) throw std::invalid_argument("literal out of range");
    originals_.back().push_back(from_dimacs(l));
  }
  if (unsat_) return;
  cancel_until(0);
  std::vector<Lit> c = originals_.back();
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i + 1 < c.size() && c[i + 1] == neg(c[i])) return;  // tautology
    auto v = value(c[i]);
    if (v == 1) return;
    if (v == 2) kept.push_back(c[i]);
  }
  if (kept.empty()) {
    unsat_ = true;
  } else if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != -1) unsat_ = true;
  } else {
    attach(std::move(kept));
  }
}

int SatSolver::attach(std::vector<Lit> c) {
  int ci = static_cast<int>(clauses_.size());
  watches_[c[0]].push_back(ci);
  watches_[c[1]].push_back(ci);
  clauses_.push_back(std::move(c));
  return ci;
}

void SatSolver::enqueue(Lit l, int reason) {
  auto v = var(l);
  assign_[v] = static_cast<std::uint8_t>((l & 1u) ^ 1u);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = neg(p);
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      int ci = ws[i++];
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k)
        if (value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void SatSolver::bump(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
}

void SatSolver::analyze(int confl, std::vector<Lit>& learnt, int& bt_level) {
  learnt.assign(1, 0);
  int path = 0;
  bool first = true;
  Lit p = 0;
  std::size_t idx = trail_.size();
  do {
    const auto& c = clauses_[confl];
    for (std::size_t k = first ? 0 : 1; k < c.size(); ++k) {
      Lit q = c[k];
      auto v = var(q);
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        bump(v);
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    first = false;
    while (!seen_[var(trail_[--idx])]) {
    }
    p = trail_[idx];
    confl = reason_[var(p)];
    seen_[var(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = neg(p);
  bt_level = 0;
  std::size_t max_i = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i)
    if (level_[var(learnt[i])] > bt_level) {
      bt_level = level_[var(learnt[i])];
      max_i = i;
    }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (auto l : learnt) seen_[var(l)] = 0;
}

void SatSolver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[level]);) {
    auto v = var(trail_[i]);
    phase_[v] = assign_[v];
    assign_[v] = 2;
    reason_[v] = kNoReason;
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

std::optional<SatSolver::Lit> SatSolver::pick_branch() {
  int best = -1;
  for (int v = 0; v < num_vars_; ++v)
    if (assign_[v] == 2 && (best < 0 || activity_[v] > activity_[best])) best = v;
  if (best < 0) return std::nullopt;
  return 2u * static_cast<Lit>(best) + (phase_[best] ? 0u : 1u);
}

bool SatSolver::check_model() const {
  for (const auto& c : originals_) {
    bool sat = false;
    for (auto l : c) sat = sat || value(l) == 1;
    if (!sat) return false;
  }
  return true;
}

std::optional<std::vector<bool>> SatSolver::solve() {
  if (unsat_) return std::nullopt;
  cancel_until(0);
  if (propagate() != -1) {
    unsat_ = true;
    return std::nullopt;
  }
  std::vector<Lit> learnt;
  std::uint64_t restart_no = 0, budget = 100 * luby(0), since_restart = 0;
  while (true) {
    int confl = propagate();
    if (confl != -1) {
      ++conflicts_;
      ++since_restart;
      if (decision_level() == 0) {
        unsat_ = true;
        return std::nullopt;
      }
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        int ci = attach(learnt);
        enqueue(learnt[0], ci);
      }
      var_inc_ /= 0.95;
      continue;
    }
    if (since_restart >= budget) {
      since_restart = 0;
      budget = 100 * luby(++restart_no);
      cancel_until(0);
      continue;
    }
    auto next = pick_branch();
    if (!next) {
      if (!check_model()) throw std::logic_error("SAT model fails self-check");
      std::vector<bool> model(num_vars_ + 1, false);
      for (int v = 0; v < num_vars_; ++v) model[v + 1] = assign_[v] == 1;
      cancel_until(0);
      return model;
    }
    ++decisions_;
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(*next, kNoReason);
  }
}

}  // namespace tileforge
