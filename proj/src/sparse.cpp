#include <rht/sparse.hpp>

#include <algorithm>
#include <map>

namespace rht {

namespace {

// a -= c * b
SparseRow axpy(const SparseRow& a, const Rational& c, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -c * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - c * b[j].second;
      if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

const Rational* find(const SparseRow& r, Index col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, Index c) { return e.first < c; });
  if (it == r.end() || it->first != col) return nullptr;
  return &it->second;
}

}  // namespace

SparseRow make_sparse_row(std::vector<std::pair<Index, Rational>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  for (auto& e : entries) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(std::move(e));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return is_zero(e.second); }), out.end());
  return out;
}

Vector SparseKernel::coordinates(const Vector& v) const {
  Vector c(static_cast<Index>(free_columns.size()));
  for (size_t k = 0; k < free_columns.size(); ++k) c(static_cast<Index>(k)) = v(free_columns[k]);
  return c;
}

SparseKernel sparse_kernel(const std::vector<SparseRow>& rows, Index ncols) {
  // Pivot rows kept fully reduced against each other (RREF), keyed by pivot.
  std::map<Index, SparseRow> piv;
  for (const SparseRow& input : rows) {
    SparseRow r = input;
    // pivot rows contain no other pivot columns, so one pass suffices
    std::vector<std::pair<Index, Rational>> hits;
    for (const auto& [c, v] : r)
      if (piv.count(c)) hits.emplace_back(c, v);
    for (const auto& [c, v] : hits) r = axpy(r, v, piv.at(c));
    if (r.empty()) continue;
    const Index p = r.front().first;
    const Rational inv = Rational(1) / r.front().second;
    for (auto& e : r) e.second *= inv;
    for (auto& [q, row] : piv) {
      const Rational* c = find(row, p);
      if (c) row = axpy(row, Rational(*c), r);
    }
    piv.emplace(p, std::move(r));
  }
  SparseKernel k;
  std::vector<Index> slot(static_cast<size_t>(ncols), -1);
  for (Index c = 0; c < ncols; ++c) {
    if (piv.count(c)) {
      k.pivot_columns.push_back(c);
    } else {
      slot[static_cast<size_t>(c)] = static_cast<Index>(k.free_columns.size());
      k.free_columns.push_back(c);
    }
  }
  k.basis = Matrix::Zero(ncols, static_cast<Index>(k.free_columns.size()));
  for (size_t f = 0; f < k.free_columns.size(); ++f) k.basis(k.free_columns[f], static_cast<Index>(f)) = 1;
  for (const auto& [p, row] : piv)
    for (const auto& [c, v] : row)
      if (c != p) k.basis(p, slot[static_cast<size_t>(c)]) = -v;
  return k;
}

}  // namespace rht
