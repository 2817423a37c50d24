#pragma once

// Reference computations for the tests, written directly from the defining
// formulas and independent of the library's evaluation paths.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using LC = std::complex<long double>;
using Mat = std::vector<std::vector<LC>>;

// H_n for the Gribov family: diagonal mu k, off-diagonal i lambda k sqrt(k+1).
inline Mat gribov_matrix(std::complex<double> mu, std::complex<double> lambda, int n) {
  Mat h(static_cast<std::size_t>(n), std::vector<LC>(static_cast<std::size_t>(n)));
  const LC m(mu.real(), mu.imag());
  const LC l(lambda.real(), lambda.imag());
  const LC i(0, 1);
  for (int k = 1; k <= n; ++k) {
    h[k - 1][k - 1] = m * static_cast<long double>(k);
    if (k < n) {
      const long double d = k * std::sqrt(static_cast<long double>(k + 1));
      h[k - 1][k] = h[k][k - 1] = i * l * d;
    }
  }
  return h;
}

// det(A) by Gaussian elimination with partial pivoting.
inline LC det(Mat a) {
  const std::size_t n = a.size();
  LC d(1, 0);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    if (a[p][c] == LC(0, 0)) return LC(0, 0);
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const LC f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return d;
}

inline LC det_shifted(const Mat& h, LC z) {
  Mat a = h;
  for (std::size_t k = 0; k < a.size(); ++k) a[k][k] -= z;
  return det(a);
}

// Coefficients c_0..c_n of det(H - z I) by Faddeev-LeVerrier.
inline std::vector<LC> char_poly(const Mat& h) {
  const std::size_t n = h.size();
  // p(z) = det(zI - H) = z^n + a_{n-1} z^{n-1} + ... + a_0
  std::vector<LC> a(n + 1);
  a[n] = 1;
  Mat m(n, std::vector<LC>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = H M_{k-1} + a_{n-k+1} I, M_0 = 0
    Mat next(n, std::vector<LC>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        LC s = 0;
        for (std::size_t l = 0; l < n; ++l) s += h[i][l] * m[l][j];
        next[i][j] = s;
      }
      next[i][i] += a[n - k + 1];
    }
    m = next;
    LC tr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) tr += h[i][l] * m[l][i];
    }
    a[n - k] = -tr / static_cast<long double>(k);
  }
  // det(H - zI) = (-1)^n det(zI - H)
  if (n % 2 == 1) {
    for (auto& c : a) c = -c;
  }
  return a;
}

inline LC horner(const std::vector<LC>& c, LC z) {
  LC s = 0;
  for (std::size_t i = c.size(); i-- > 0;) s = s * z + c[i];
  return s;
}

// All roots of sum c_j z^j by Durand-Kerner.
inline std::vector<LC> roots(std::vector<LC> c) {
  const std::size_t n = c.size() - 1;
  const LC lead = c[n];
  for (auto& x : c) x /= lead;
  long double radius = 0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
  radius = 1 + radius;
  std::vector<LC> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(radius, 0.4L + 6.283185307179586L * k / n);
  for (int it = 0; it < 5000; ++it) {
    long double move = 0;
    for (std::size_t k = 0; k < n; ++k) {
      LC den = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) den *= z[k] - z[j];
      }
      const LC step = horner(c, z[k]) / den;
      z[k] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-18L * radius) break;
  }
  return z;
}

// Largest distance from each of a to its nearest b and back.
template <typename A, typename B>
double set_distance(const std::vector<A>& a, const std::vector<B>& b) {
  double worst = 0;
  auto one_way = [&](const auto& x, const auto& y) {
    for (const auto& p : x) {
      double best = INFINITY;
      for (const auto& q : y) {
        best = std::min(best, std::abs(std::complex<double>(static_cast<double>(p.real()), static_cast<double>(p.imag())) -
                                       std::complex<double>(static_cast<double>(q.real()), static_cast<double>(q.imag()))));
      }
      worst = std::max(worst, best);
    }
  };
  one_way(a, b);
  one_way(b, a);
  return worst;
}

// Roots of z^2 - 3 mu z + 2 mu^2 + 2 lambda^2, i.e. the spectrum of H_2.
inline std::pair<std::complex<double>, std::complex<double>> spectrum2(std::complex<double> mu,
                                                                       std::complex<double> lambda) {
  const std::complex<double> b = -3.0 * mu;
  const std::complex<double> c = 2.0 * mu * mu + 2.0 * lambda * lambda;
  const std::complex<double> s = std::sqrt(b * b - 4.0 * c);
  return {(-b - s) / 2.0, (-b + s) / 2.0};
}

}  // namespace oracle
