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

#include <cstdint>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdouble/linalg.hpp"

namespace qdouble {

/// Largest register the simulator will allocate, in configurations.
inline constexpr std::uint64_t kMaxConfigurations = std::uint64_t{1} << 26;

/// Raised when a register would exceed `kMaxConfigurations`.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, double required, std::uint64_t limit)
      : std::runtime_error(what), required_(required), limit_(limit) {}
  double required() const { return required_; }
  std::uint64_t limit() const { return limit_; }

 private:
  double required_;
  std::uint64_t limit_;
};

/// base^digits, or throws ResourceError if it exceeds the configuration guard.
inline std::uint64_t checked_register_size(int base, int digits) {
  double required = 1.0;
  std::uint64_t size = 1;
  for (int k = 0; k < digits; ++k) {
    required *= base;
    if (size <= kMaxConfigurations) size *= static_cast<std::uint64_t>(base);
  }
  if (size > kMaxConfigurations)
    throw ResourceError("register needs " + std::to_string(base) + "^" + std::to_string(digits) + " = " +
                            std::to_string(required) + " configurations, limit is " +
                            std::to_string(kMaxConfigurations),
                        required, kMaxConfigurations);
  return size;
}

/// Dense amplitudes over G^E; configuration index Σ_e x_e · base^e.
class StateVector {
 public:
  StateVector(int base, int num_digits)
      : base_(base), digits_(num_digits), amps_(checked_register_size(base, num_digits), Cplx(0)) {}

  static StateVector basis(int base, int num_digits, std::uint64_t index) {
    StateVector s(base, num_digits);
    s.amps_.at(index) = 1.0;
    return s;
  }

  /// Gaussian random normalized state.
  static StateVector random(int base, int num_digits, std::uint64_t seed) {
    StateVector s(base, num_digits);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (auto& a : s.amps_) a = Cplx(normal(rng), normal(rng));
    s.normalize();
    return s;
  }

  int base() const { return base_; }
  int num_digits() const { return digits_; }
  std::uint64_t size() const { return amps_.size(); }
  std::vector<Cplx>& data() { return amps_; }
  const std::vector<Cplx>& data() const { return amps_; }
  Cplx& operator[](std::uint64_t i) { return amps_[i]; }
  const Cplx& operator[](std::uint64_t i) const { return amps_[i]; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  void normalize() {
    const double n = norm();
    if (n == 0.0) throw std::logic_error("cannot normalize the zero vector");
    for (auto& a : amps_) a /= n;
  }

  /// ⟨this, other⟩, antilinear in this.
  Cplx inner(const StateVector& other) const {
    Cplx s = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
  }

  double distance(const StateVector& other) const {
    double s = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::norm(amps_[i] - other.amps_[i]);
    return std::sqrt(s);
  }

  StateVector& operator+=(const StateVector& o) {
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += o.amps_[i];
    return *this;
  }
  StateVector& operator-=(const StateVector& o) {
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= o.amps_[i];
    return *this;
  }
  StateVector& operator*=(Cplx c) {
    for (auto& a : amps_) a *= c;
    return *this;
  }

  /// Writes the 8-byte magic `QDBLSTV1` followed by little-endian float32 (re, im) pairs.
  void dump(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write("QDBLSTV1", 8);
    std::vector<unsigned char> buf(8 * amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      const float parts[2] = {static_cast<float>(amps_[i].real()), static_cast<float>(amps_[i].imag())};
      for (int p = 0; p < 2; ++p) {
        std::uint32_t bits;
        std::memcpy(&bits, &parts[p], 4);
        for (int b = 0; b < 4; ++b) buf[8 * i + 4 * p + b] = static_cast<unsigned char>(bits >> (8 * b));
      }
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("failed writing " + path);
  }

 private:
  int base_;
  int digits_;
  std::vector<Cplx> amps_;
};

}  // namespace qdouble
