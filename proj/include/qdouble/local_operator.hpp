// Copyright 2026 The qdouble Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCore>

#include "qdouble/linalg.hpp"
#include "qdouble/state_vector.hpp"

namespace qdouble {

using SparseC = Eigen::SparseMatrix<Cplx>;

/// Operator acting on a finite set of edges, identity elsewhere.
///
/// The matrix lives on the local space of `support()` (sorted), with local index
/// Σ_k x_{support[k]} · base^k.
class LocalOperator {
 public:
  /// Called with the local digits of a column; rewrites them to the row and returns the amplitude.
  using MonomialFn = std::function<Cplx(std::vector<int>&)>;

  LocalOperator() : LocalOperator(1) {}
  explicit LocalOperator(int base, Cplx scalar = 1.0) : base_(base), m_(1, 1) {
    if (scalar != Cplx(0)) m_.insert(0, 0) = scalar;
  }
  LocalOperator(int base, std::vector<int> support, SparseC m)
      : base_(base), support_(std::move(support)), m_(std::move(m)) {
    if (!std::is_sorted(support_.begin(), support_.end()) ||
        std::adjacent_find(support_.begin(), support_.end()) != support_.end())
      throw std::invalid_argument("LocalOperator support must be sorted and distinct");
    if (m_.rows() != static_cast<Eigen::Index>(local_dim(base_, support_.size())))
      throw std::invalid_argument("LocalOperator matrix size does not match its support");
  }

  static LocalOperator identity(int base) { return LocalOperator(base); }

  /// Builds an operator that maps each basis configuration to at most one configuration.
  static LocalOperator monomial(int base, std::vector<int> support, const MonomialFn& fn) {
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const std::uint64_t dim = local_dim(base, support.size());
    std::vector<Eigen::Triplet<Cplx>> trips;
    trips.reserve(dim);
    std::vector<int> digits(support.size());
    for (std::uint64_t c = 0; c < dim; ++c) {
      decode(c, base, digits);
      const Cplx v = fn(digits);
      if (v != Cplx(0)) trips.emplace_back(static_cast<int>(encode(digits, base)), static_cast<int>(c), v);
    }
    SparseC m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    return LocalOperator(base, std::move(support), std::move(m));
  }

  int base() const { return base_; }
  const std::vector<int>& support() const { return support_; }
  const SparseC& matrix() const { return m_; }
  std::uint64_t dim() const { return static_cast<std::uint64_t>(m_.rows()); }
  Eigen::Index nonzeros() const { return m_.nonZeros(); }

  /// Same operator on a superset of the support.
  LocalOperator extend(const std::vector<int>& target) const {
    if (target == support_) return *this;
    std::vector<int> pos(support_.size());
    std::vector<int> rest;
    for (std::size_t t = 0, k = 0; t < target.size(); ++t) {
      if (k < support_.size() && target[t] == support_[k]) {
        pos[k++] = static_cast<int>(t);
      } else {
        rest.push_back(static_cast<int>(t));
      }
    }
    if (target.size() - rest.size() != support_.size())
      throw std::invalid_argument("extend: target is not a superset of the support");
    const auto offsets = digit_offsets(base_, pos, dim());
    const auto comp = digit_offsets(base_, rest, local_dim(base_, rest.size()));
    const std::uint64_t big = local_dim(base_, target.size());
    std::vector<Eigen::Triplet<Cplx>> trips;
    trips.reserve(static_cast<std::size_t>(m_.nonZeros()) * comp.size());
    for (int col = 0; col < m_.outerSize(); ++col)
      for (SparseC::InnerIterator it(m_, col); it; ++it)
        for (std::uint64_t c : comp)
          trips.emplace_back(static_cast<int>(offsets[it.row()] + c), static_cast<int>(offsets[col] + c), it.value());
    SparseC m(big, big);
    m.setFromTriplets(trips.begin(), trips.end());
    return LocalOperator(base_, target, std::move(m));
  }

  LocalOperator adjoint() const { return LocalOperator(base_, support_, SparseC(m_.adjoint())); }

  friend LocalOperator operator*(const LocalOperator& a, const LocalOperator& b) {
    auto u = merged_support(a, b);
    SparseC m = (a.extend(u).m_ * b.extend(u).m_).pruned();
    return LocalOperator(a.base_, u, std::move(m));
  }
  friend LocalOperator operator+(const LocalOperator& a, const LocalOperator& b) {
    auto u = merged_support(a, b);
    return LocalOperator(a.base_, u, SparseC((a.extend(u).m_ + b.extend(u).m_).pruned()));
  }
  friend LocalOperator operator-(const LocalOperator& a, const LocalOperator& b) {
    auto u = merged_support(a, b);
    return LocalOperator(a.base_, u, SparseC((a.extend(u).m_ - b.extend(u).m_).pruned()));
  }
  friend LocalOperator operator*(Cplx c, const LocalOperator& a) {
    return LocalOperator(a.base_, a.support_, SparseC(c * a.m_));
  }
  LocalOperator& operator+=(const LocalOperator& b) { return *this = *this + b; }

  /// Largest matrix entry of a − b on the union of supports.
  friend double distance(const LocalOperator& a, const LocalOperator& b) {
    auto u = merged_support(a, b);
    SparseC d = a.extend(u).m_ - b.extend(u).m_;
    double worst = 0.0;
    for (int col = 0; col < d.outerSize(); ++col)
      for (SparseC::InnerIterator it(d, col); it; ++it) worst = std::max(worst, std::abs(it.value()));
    return worst;
  }

  bool overlaps(const std::vector<int>& edges) const {
    for (int e : edges)
      if (std::binary_search(support_.begin(), support_.end(), e)) return true;
    return false;
  }

  /// Applies the operator to a full register where digit e belongs to edge e.
  StateVector apply(const StateVector& in) const {
    if (in.base() != base_) throw std::invalid_argument("apply: group order mismatch");
    if (!support_.empty() && support_.back() >= in.num_digits())
      throw std::invalid_argument("apply: support exceeds register");
    std::vector<int> pos(support_.begin(), support_.end());
    std::vector<int> rest;
    for (int e = 0, k = 0; e < in.num_digits(); ++e) {
      if (k < static_cast<int>(support_.size()) && support_[k] == e) {
        ++k;
      } else {
        rest.push_back(e);
      }
    }
    const auto offsets = digit_offsets(base_, pos, dim());
    const auto comp = digit_offsets(base_, rest, local_dim(base_, rest.size()));
    StateVector out(base_, in.num_digits());
    auto& o = out.data();
    const auto& x = in.data();
    for (int col = 0; col < m_.outerSize(); ++col)
      for (SparseC::InnerIterator it(m_, col); it; ++it) {
        const std::uint64_t ro = offsets[it.row()], co = offsets[col];
        const Cplx v = it.value();
        for (std::uint64_t c : comp) o[ro + c] += v * x[co + c];
      }
    return out;
  }

  static std::uint64_t local_dim(int base, std::size_t digits) {
    std::uint64_t d = 1;
    for (std::size_t k = 0; k < digits; ++k) d *= static_cast<std::uint64_t>(base);
    return d;
  }

  static void decode(std::uint64_t index, int base, std::vector<int>& digits) {
    for (auto& d : digits) {
      d = static_cast<int>(index % base);
      index /= base;
    }
  }

  static std::uint64_t encode(const std::vector<int>& digits, int base) {
    std::uint64_t index = 0;
    for (std::size_t k = digits.size(); k-- > 0;) index = index * base + digits[k];
    return index;
  }

  static std::vector<int> merged_support(const LocalOperator& a, const LocalOperator& b) {
    if (a.base_ != b.base_) throw std::invalid_argument("LocalOperator: group order mismatch");
    std::vector<int> u;
    std::set_union(a.support_.begin(), a.support_.end(), b.support_.begin(), b.support_.end(),
                   std::back_inserter(u));
    return u;
  }

 private:
  // For each local index over `count` digits, Σ_k digit_k · base^{positions[k]}.
  static std::vector<std::uint64_t> digit_offsets(int base, const std::vector<int>& positions, std::uint64_t count) {
    std::vector<std::uint64_t> stride(positions.size());
    for (std::size_t k = 0; k < positions.size(); ++k) stride[k] = local_dim(base, positions[k]);
    std::vector<std::uint64_t> out(count, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t rem = i, off = 0;
      for (std::size_t k = 0; k < positions.size(); ++k) {
        off += (rem % base) * stride[k];
        rem /= base;
      }
      out[i] = off;
    }
    return out;
  }

  int base_;
  std::vector<int> support_;
  SparseC m_;
};

/// Sum of local operators, each paired with a coefficient, applied term by term.
class OperatorSum {
 public:
  void add(Cplx coeff, LocalOperator op) { terms_.push_back({coeff, std::move(op)}); }

  StateVector apply(const StateVector& in) const {
    StateVector out(in.base(), in.num_digits());
    for (const auto& [c, op] : terms_) {
      StateVector t = op.apply(in);
      t *= c;
      out += t;
    }
    return out;
  }

  OperatorSum adjoint() const {
    OperatorSum s;
    for (const auto& [c, op] : terms_) s.add(std::conj(c), op.adjoint());
    return s;
  }

  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<std::pair<Cplx, LocalOperator>> terms_;
};

}  // namespace qdouble
