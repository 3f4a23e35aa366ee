#include "kepler/linalg.hpp"

#include <algorithm>

namespace kepler {

SparseRow canonicalRow(std::vector<std::pair<std::size_t, GaussianRational>> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  for (auto& [c, v] : entries) {
    if (!out.empty() && out.back().first == c) {
      out.back().second += v;
      if (out.back().second.isZero()) out.pop_back();
    } else if (!v.isZero()) {
      out.emplace_back(c, std::move(v));
    }
  }
  return out;
}

SparseRow combineRows(const GaussianRational& alpha, const SparseRow& x,
                      const GaussianRational& beta, const SparseRow& y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      if (!alpha.isZero()) out.emplace_back(i->first, alpha * i->second);
      ++i;
    } else if (i == x.end() || j->first < i->first) {
      if (!beta.isZero()) out.emplace_back(j->first, beta * j->second);
      ++j;
    } else {
      GaussianRational v = alpha * i->second + beta * j->second;
      if (!v.isZero()) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

namespace {

void clearDenominators(SparseRow& row) {
  mpz_class l = 1;
  for (const auto& [c, v] : row) l = lcm(l, v.denominator());
  if (l == 1) return;
  const GaussianRational s{mpq_class(l)};
  for (auto& [c, v] : row) v *= s;
}

}  // namespace

std::size_t bareissRank(std::vector<SparseRow> rows) {
  for (auto& r : rows) clearDenominators(r);
  GaussianRational prev = 1;
  std::size_t rank = 0;
  for (;;) {
    std::erase_if(rows, [](const SparseRow& r) { return r.empty(); });
    if (rows.empty()) return rank;
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].front().first < rows[best].front().first) best = i;
    }
    SparseRow pivot = std::move(rows[best]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
    const std::size_t col = pivot.front().first;
    const GaussianRational p = pivot.front().second;
    const GaussianRational inv = GaussianRational(1) / prev;
    for (auto& r : rows) {
      GaussianRational b = 0;
      if (r.front().first == col) b = r.front().second;
      r = combineRows(p * inv, r, -(b * inv), pivot);
    }
    prev = p;
    ++rank;
  }
}

SparseRow IncrementalBasis::reduce(const SparseRow& v) const {
  std::map<std::size_t, GaussianRational> work(v.begin(), v.end());
  auto it = work.begin();
  while (it != work.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    const GaussianRational f = it->second;
    for (const auto& [c, x] : p->second) {
      auto [w, inserted] = work.try_emplace(c, 0);
      w->second -= f * x;
      if (w->second.isZero() && c != col) work.erase(w);
    }
    work.erase(col);
    it = work.upper_bound(col);
  }
  return {work.begin(), work.end()};
}

bool IncrementalBasis::add(const SparseRow& v) {
  SparseRow r = reduce(v);
  if (r.empty()) return false;
  const GaussianRational inv = GaussianRational(1) / r.front().second;
  for (auto& [c, x] : r) x *= inv;
  pivots_.emplace(r.front().first, std::move(r));
  return true;
}

}  // namespace kepler
