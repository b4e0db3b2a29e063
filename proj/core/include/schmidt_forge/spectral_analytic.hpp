#pragma once

// Closed-form spectrum of the partial transpose of
//   sigma_0(d, p) = p |psi_0A><psi_0A| + (1-p) P_S / d_S
// and the determinant of the d x d "paired" block that produces part of it.
//
// Everything is templated on the scalar so the same formulas run in double
// precision and in exact rational arithmetic (Rational below).

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "schmidt_forge/errors.hpp"

namespace schmidt_forge {

using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline void require_even_dim(int d, const char* what) {
  if (d < 2 || d % 2 != 0) {
    std::ostringstream msg;
    msg << what << ": dimension must be even and >= 2, got " << d;
    throw DomainError(msg.str());
  }
}

template <class T>
T pow_int(T base, int exponent) {
  T out(1);
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

}  // namespace detail

template <class T>
struct SpectralFamily {
  T value;
  int multiplicity = 0;
};

template <class T>
struct BasicClosedFormSpectrum {
  // Always three families, in the order
  //   (1 + p d) / [d(d+1)]          multiplicity d(d+1)/2
  //   [1 - (d+2) p] / [d(d+1)]      multiplicity (d+1)(d-2)/2  (0 for d = 2)
  //   (1 - 2p) / d                  multiplicity 1
  std::vector<SpectralFamily<T>> families;
  int total_dim = 0;

  /// All eigenvalues with multiplicity, ascending.
  std::vector<T> expanded() const {
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(total_dim));
    for (const auto& f : families) {
      for (int k = 0; k < f.multiplicity; ++k) out.push_back(f.value);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  T trace() const {
    T sum(0);
    for (const auto& f : families) sum += f.value * T(f.multiplicity);
    return sum;
  }

  T min_value() const {
    T m = families.front().value;
    for (const auto& f : families) {
      if (f.multiplicity > 0 && f.value < m) m = f.value;
    }
    return m;
  }
};

using ClosedFormSpectrum = BasicClosedFormSpectrum<double>;
using ExactClosedFormSpectrum = BasicClosedFormSpectrum<Rational>;

/// Spectrum of partial_transpose(sigma_0(d, p)) in closed form.
///
/// The third family is the root of a + (d-2) b + c = 0 in the block
/// determinant; with the block entries below it simplifies to (1 - 2p)/d.
template <class T>
BasicClosedFormSpectrum<T> closed_form_spectrum(int d, const T& p) {
  detail::require_even_dim(d, "closed_form_spectrum");
  if (p < T(0) || p > T(1)) throw DomainError("closed_form_spectrum: p must lie in [0, 1]");
  const T dd(d);
  const T denom = dd * (dd + T(1));
  BasicClosedFormSpectrum<T> out;
  out.total_dim = d * d;
  out.families.push_back({(T(1) + p * dd) / denom, d * (d + 1) / 2});
  out.families.push_back({(T(1) - (dd + T(2)) * p) / denom, (d + 1) * (d - 2) / 2});
  out.families.push_back({(T(1) + dd - T(2) * (dd + T(1)) * p) / denom, 1});
  return out;
}

/// Largest p with partial_transpose(sigma_0(d, p)) PSD: 1/(d+2), or 1/2 for d = 2.
double ppt_threshold_analytic(int d);
Rational ppt_threshold_exact(int d);

/// Entries of the d x d block: diagonal a, c on the paired off-diagonal
/// positions (2k, 2k+1), b everywhere else.
template <class T>
struct DeterminantSymbols {
  T a, b, c;

  T e() const { return a - b; }
  T f() const { return a - c; }

  /// a = 2(1-p)/[d(d+1)] - lambda, b = (1-p)/[d(d+1)], c = b - p/d.
  static DeterminantSymbols from_state(int d, const T& p, const T& lambda) {
    const T dd(d);
    const T b = (T(1) - p) / (dd * (dd + T(1)));
    return {T(2) * b - lambda, b, b - p / dd};
  }
};

/// The block matrix itself, row-major, d*d entries.
template <class T>
std::vector<T> paired_block_matrix(int d, const T& a, const T& b, const T& c) {
  std::vector<T> m(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), b);
  for (int i = 0; i < d; ++i) {
    m[static_cast<std::size_t>(i * d + i)] = a;
    const int partner = (i % 2 == 0) ? i + 1 : i - 1;
    if (partner < d) m[static_cast<std::size_t>(i * d + partner)] = c;
  }
  return m;
}

/// Determinant by Gaussian elimination with partial pivoting.
template <class T>
T elimination_determinant(std::vector<T> m, int n) {
  using std::abs;
  T det(1);
  auto at = [&](int r, int c) -> T& { return m[static_cast<std::size_t>(r * n + c)]; };
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    T best = abs(at(col, col));
    for (int r = col + 1; r < n; ++r) {
      T cand = abs(at(r, col));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best == T(0)) return T(0);
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(at(pivot, c), at(col, c));
      det = -det;
    }
    const T diag = at(col, col);
    det *= diag;
    for (int r = col + 1; r < n; ++r) {
      const T factor = at(r, col) / diag;
      if (factor == T(0)) continue;
      for (int c = col; c < n; ++c) at(r, c) -= factor * at(col, c);
    }
  }
  return det;
}

/// Dense elimination on the explicit block; 2 <= d <= 12.
template <class T>
T determinant_direct(int d, const T& a, const T& b, const T& c) {
  detail::require_even_dim(d, "determinant_direct");
  if (d > 12) throw DomainError("determinant_direct: dimension must be <= 12");
  return elimination_determinant(paired_block_matrix(d, a, b, c), d);
}

/// D_{d+4} = (a-c)(a-2b+c) [2 D_{d+2} - (a-c)(a-2b+c) D_d], seeded with
/// D_2 and D_4 from direct elimination. Loses accuracy when a ~ c; prefer
/// determinant_closed_form there.
template <class T>
T determinant_recurrence(int d, const T& a, const T& b, const T& c) {
  detail::require_even_dim(d, "determinant_recurrence");
  T prev = determinant_direct(2, a, b, c);
  if (d == 2) return prev;
  T curr = determinant_direct(4, a, b, c);
  const T fg = (a - c) * (a - T(2) * b + c);
  for (int n = 6; n <= d; n += 2) {
    T next = fg * (T(2) * curr - fg * prev);
    prev = std::move(curr);
    curr = std::move(next);
  }
  return curr;
}

/// D_d = (a-c)^{d/2} (a-2b+c)^{d/2-1} [a + (d-2) b + c]
template <class T>
T determinant_closed_form(int d, const T& a, const T& b, const T& c) {
  detail::require_even_dim(d, "determinant_closed_form");
  const int half = d / 2;
  return detail::pow_int(T(a - c), half) * detail::pow_int(T(a - T(2) * b + c), half - 1) *
         (a + T(d - 2) * b + c);
}

/// Eigenvalues of [[(1-p)/(d(d+1)), p/d], [p/d, (1-p)/(d(d+1))]]:
/// ((1 + p d)/[d(d+1)], [1 - (d+2) p]/[d(d+1)]). Requires d >= 4.
template <class T>
std::pair<T, T> two_by_two_block_eigs(int d, const T& p) {
  if (d < 4) throw DomainError("two_by_two_block_eigs: the 2x2 blocks exist only for d >= 4");
  const T dd(d);
  const T diag = (T(1) - p) / (dd * (dd + T(1)));
  const T off = p / dd;
  return {diag + off, diag - off};
}

}  // namespace schmidt_forge
