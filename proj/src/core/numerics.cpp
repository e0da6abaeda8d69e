// Copyright 2026 The ptdilate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ptdilate {

namespace {

void require_square(const ComplexMatrix& a, const char* who) {
  if (!a.square()) throw_contract(std::string(who) + " requires a square matrix");
  if (!a.all_finite()) throw_contract(std::string(who) + " requires finite entries");
}

// Deterministic output phase: rotate each column so its largest-magnitude
// component is real and positive.
void normalize_column_phases(ComplexMatrix& v) {
  for (std::size_t k = 0; k < v.cols(); ++k) {
    std::size_t imax = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      double m = std::abs(v(i, k));
      if (m > best) {
        best = m;
        imax = i;
      }
    }
    if (best == 0.0) continue;
    cx phase = std::conj(v(imax, k)) / best;
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, k) *= phase;
  }
}

void sort_pairs_ascending(EigenDecomposition& e) {
  std::size_t n = e.values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (e.values[i].real() != e.values[j].real()) return e.values[i].real() < e.values[j].real();
    return e.values[i].imag() < e.values[j].imag();
  });
  std::vector<cx> values(n);
  ComplexMatrix vectors(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = e.values[order[k]];
    for (std::size_t i = 0; i < n; ++i) vectors(i, k) = e.vectors(i, order[k]);
  }
  e.values = std::move(values);
  e.vectors = std::move(vectors);
}

// Largest off-diagonal magnitude of a Hermitian working matrix.
double off_diag_max(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

// One complex Jacobi rotation in the (p, q) plane, zeroing A(p, q).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  cx apq = a(p, q);
  double mag = std::abs(apq);
  if (mag == 0.0) return;
  cx w = apq / mag;
  double app = a(p, p).real();
  double aqq = a(q, q).real();
  double tau = (aqq - app) / (2.0 * mag);
  double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                        : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
  double c = 1.0 / std::sqrt(1.0 + t * t);
  double s = t * c;

  std::size_t n = a.rows();
  // Column update B = A * G with G(p,p)=c, G(q,p)=-s*conj(w), G(p,q)=s*w, G(q,q)=c.
  for (std::size_t k = 0; k < n; ++k) {
    cx akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp - s * std::conj(w) * akq;
    a(k, q) = s * w * akp + c * akq;
  }
  // Row update A' = G^dagger * B.
  for (std::size_t k = 0; k < n; ++k) {
    cx apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk - s * w * aqk;
    a(q, k) = s * std::conj(w) * apk + c * aqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    cx vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp - s * std::conj(w) * vkq;
    v(k, q) = s * w * vkp + c * vkq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

// ---- general eigensolver helpers (n >= 3) ---------------------------------

struct Givens {
  double c = 1.0;
  cx s = 0.0;
};

// Rotation with G * [f; g] = [r; 0].
Givens make_givens(cx f, cx g) {
  Givens gv;
  double gf = std::abs(f), gg = std::abs(g);
  if (gg == 0.0) return gv;
  if (gf == 0.0) {
    gv.c = 0.0;
    gv.s = std::conj(g) / gg;
    return gv;
  }
  double r = std::hypot(gf, gg);
  gv.c = gf / r;
  gv.s = (f / gf) * (std::conj(g) / r);
  return gv;
}

void hessenberg(ComplexMatrix& a, ComplexMatrix& q) {
  std::size_t n = a.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Householder vector for column k, rows k+1..n-1.
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    cx x0 = a(k + 1, k);
    cx phase = std::abs(x0) == 0.0 ? cx{1.0, 0.0} : x0 / std::abs(x0);
    cx alpha = -phase * xnorm;
    CVec v(n, cx{0.0, 0.0});
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (const auto& e : v) vnorm2 += std::norm(e);
    if (vnorm2 == 0.0) continue;
    double beta = 2.0 / vnorm2;
    // A <- H A, H = I - beta v v^dagger.
    for (std::size_t j = 0; j < n; ++j) {
      cx dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= beta;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
    }
    // A <- A H.
    for (std::size_t i = 0; i < n; ++i) {
      cx dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
    }
    // Q <- Q H.
    for (std::size_t i = 0; i < n; ++i) {
      cx dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += q(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) q(i, j) -= dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    a(k + 1, k) = alpha;
  }
}

cx wilkinson_shift(const ComplexMatrix& t, std::size_t hi) {
  cx a = t(hi - 1, hi - 1), b = t(hi - 1, hi);
  cx c = t(hi, hi - 1), d = t(hi, hi);
  cx tr = a + d;
  cx det = a * d - b * c;
  cx disc = std::sqrt(tr * tr * 0.25 - det);
  cx l1 = tr * 0.5 + disc;
  cx l2 = tr * 0.5 - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

// Shifted QR on a Hessenberg matrix, Schur vectors accumulated into q.
void schur_decompose(ComplexMatrix& t, ComplexMatrix& q) {
  std::size_t n = t.rows();
  if (n < 3) return;
  hessenberg(t, q);
  double scale = std::max(t.norm_max(), 1e-300);
  const double eps = 1e-15;
  std::size_t hi = n - 1;
  int iter = 0;
  const int max_iter_total = 60 * static_cast<int>(n);
  while (hi > 0) {
    // Deflate converged subdiagonals.
    bool deflated = false;
    for (std::size_t i = hi; i > 0; --i) {
      double sub = std::abs(t(i, i - 1));
      double local = std::abs(t(i, i)) + std::abs(t(i - 1, i - 1));
      if (sub <= eps * std::max(local, scale * 1e-3)) {
        t(i, i - 1) = 0.0;
        if (i == hi) {
          --hi;
          deflated = true;
          break;
        }
      }
    }
    if (deflated) continue;
    if (++iter > max_iter_total)
      throw Error(ErrorKind::internal, "QR iteration failed to converge");
    // Active block [lo, hi].
    std::size_t lo = hi;
    while (lo > 0 && std::abs(t(lo, lo - 1)) != 0.0) --lo;
    cx mu = wilkinson_shift(t, hi);
    // Occasional exceptional shift against stagnation.
    if (iter % 17 == 0) mu += cx{std::abs(t(hi, hi - 1)), 0.0};
    for (std::size_t i = lo; i <= hi; ++i) t(i, i) -= mu;
    std::vector<Givens> rots(hi);
    for (std::size_t i = lo; i < hi; ++i) {
      Givens g = make_givens(t(i, i), t(i + 1, i));
      rots[i] = g;
      for (std::size_t j = i; j < n; ++j) {
        cx ti = t(i, j), tj = t(i + 1, j);
        t(i, j) = g.c * ti + g.s * tj;
        t(i + 1, j) = -std::conj(g.s) * ti + g.c * tj;
      }
      t(i + 1, i) = 0.0;
    }
    for (std::size_t i = lo; i < hi; ++i) {
      Givens g = rots[i];
      for (std::size_t k = 0; k <= std::min(i + 1 + 1, n - 1); ++k) {
        // Column update T <- T G^dagger (rows 0..min(i+2, n-1)).
        cx tki = t(k, i), tkj = t(k, i + 1);
        t(k, i) = tki * g.c + tkj * std::conj(g.s);
        t(k, i + 1) = -tki * g.s + tkj * g.c;
      }
      for (std::size_t k = 0; k < n; ++k) {
        cx qki = q(k, i), qkj = q(k, i + 1);
        q(k, i) = qki * g.c + qkj * std::conj(g.s);
        q(k, i + 1) = -qki * g.s + qkj * g.c;
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) t(i, i) += mu;
  }
  // Clean the strictly lower triangle.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 <= i && j < n; ++j) t(i, j) = 0.0;
}

EigenDecomposition eig_general_2x2(const ComplexMatrix& m) {
  EigenDecomposition e;
  cx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  cx tr = a + d;
  cx det = a * d - b * c;
  cx disc = std::sqrt(tr * tr * 0.25 - det);
  cx l1 = tr * 0.5 - disc;
  cx l2 = tr * 0.5 + disc;
  e.values = {l1, l2};
  e.vectors = ComplexMatrix(2, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    cx lam = e.values[k];
    // Null vector of [[a-lam, b], [c, d-lam]]; take the better-conditioned row.
    CVec v(2);
    double r0 = std::abs(a - lam) + std::abs(b);
    double r1 = std::abs(c) + std::abs(d - lam);
    if (r0 >= r1 && r0 > 0.0) {
      v = {b, lam - a};
    } else if (r1 > 0.0) {
      v = {lam - d, c};
    } else {
      v = {k == 0 ? cx{1.0, 0.0} : cx{0.0, 0.0}, k == 0 ? cx{0.0, 0.0} : cx{1.0, 0.0}};
    }
    double nv = norm(v);
    if (nv == 0.0) {
      v = {cx{1.0, 0.0}, cx{0.0, 0.0}};
      nv = 1.0;
    }
    e.vectors(0, k) = v[0] / nv;
    e.vectors(1, k) = v[1] / nv;
  }
  normalize_column_phases(e.vectors);
  sort_pairs_ascending(e);
  e.condition = condition_number(e.vectors);
  return e;
}

}  // namespace

double hermitian_defect(const ComplexMatrix& a) {
  require_square(a, "hermitian_defect");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

EigenDecomposition eig_hermitian(const ComplexMatrix& a) {
  require_square(a, "eig_hermitian");
  if (hermitian_defect(a) >= kEigHermitianInputTol)
    throw_contract("eig_hermitian requires Hermitian input");
  std::size_t n = a.rows();
  ComplexMatrix work = a;
  // Symmetrize so rounding in the input cannot bias the iteration.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      cx m = 0.5 * (work(i, j) + std::conj(work(j, i)));
      work(i, j) = m;
      work(j, i) = std::conj(m);
    }
    work(i, i) = cx{work(i, i).real(), 0.0};
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  double scale = std::max(work.norm_max(), 1e-300);
  for (int sweep = 0; sweep < 60; ++sweep) {
    if (off_diag_max(work) <= 1e-15 * scale) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(work(p, q)) > 1e-18 * scale) jacobi_rotate(work, v, p, q);
  }
  EigenDecomposition e;
  e.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) e.values[i] = cx{work(i, i).real(), 0.0};
  e.vectors = std::move(v);
  normalize_column_phases(e.vectors);
  sort_pairs_ascending(e);
  e.condition = 1.0;
  return e;
}

EigenDecomposition eig_general(const ComplexMatrix& a) {
  require_square(a, "eig_general");
  std::size_t n = a.rows();
  if (n == 1) {
    EigenDecomposition e;
    e.values = {a(0, 0)};
    e.vectors = ComplexMatrix::identity(1);
    e.condition = 1.0;
    return e;
  }
  if (n == 2) return eig_general_2x2(a);

  ComplexMatrix t = a;
  ComplexMatrix q = ComplexMatrix::identity(n);
  schur_decompose(t, q);
  EigenDecomposition e;
  e.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) e.values[i] = t(i, i);
  // Right eigenvectors of the triangular factor by back substitution.
  ComplexMatrix y(n, n);
  double scale = std::max(t.norm_max(), 1e-300);
  for (std::size_t k = 0; k < n; ++k) {
    y(k, k) = 1.0;
    for (std::size_t ii = k; ii > 0; --ii) {
      std::size_t i = ii - 1;
      cx rhs = 0.0;
      for (std::size_t j = i + 1; j <= k; ++j) rhs += t(i, j) * y(j, k);
      cx denom = t(i, i) - t(k, k);
      if (std::abs(denom) < 1e-15 * scale) denom = cx{1e-15 * scale, 0.0};
      y(i, k) = -rhs / denom;
    }
  }
  e.vectors = q * y;
  for (std::size_t k = 0; k < n; ++k) {
    double nk = 0.0;
    for (std::size_t i = 0; i < n; ++i) nk += std::norm(e.vectors(i, k));
    nk = std::sqrt(nk);
    if (nk > 0.0)
      for (std::size_t i = 0; i < n; ++i) e.vectors(i, k) /= nk;
  }
  normalize_column_phases(e.vectors);
  sort_pairs_ascending(e);
  e.condition = condition_number(e.vectors);
  return e;
}

ComplexMatrix exp_raw(const ComplexMatrix& m) {
  require_square(m, "exp_raw");
  std::size_t n = m.rows();
  // Pade 13 with scaling and squaring.
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const double theta13 = 5.371920351148152;
  double nrm = m.norm_one();
  int squarings = 0;
  ComplexMatrix a = m;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    squarings = std::min(squarings, 64);
    a *= cx{std::ldexp(1.0, -squarings), 0.0};
  }
  ComplexMatrix ident = ComplexMatrix::identity(n);
  ComplexMatrix a2 = a * a;
  ComplexMatrix a4 = a2 * a2;
  ComplexMatrix a6 = a2 * a4;
  ComplexMatrix u = a * (a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] + a4 * b[5] +
                         a2 * b[3] + ident * b[1]);
  ComplexMatrix v = a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) + a6 * b[6] + a4 * b[4] +
                    a2 * b[2] + ident * b[0];
  ComplexMatrix x = inverse(v - u) * (v + u);
  for (int i = 0; i < squarings; ++i) x = x * x;
  return x;
}

ComplexMatrix mat_exp(const ComplexMatrix& a, double t) {
  require_square(a, "mat_exp");
  if (!std::isfinite(t)) throw_contract("mat_exp requires finite t");
  if (t == 0.0) return ComplexMatrix::identity(a.rows());
  if (hermitian_defect(a) <= kHermitianTol) {
    EigenDecomposition e = eig_hermitian(a);
    std::size_t n = a.rows();
    ComplexMatrix phases(n, n);
    for (std::size_t i = 0; i < n; ++i)
      phases(i, i) = std::exp(cx{0.0, -t * e.values[i].real()});
    return e.vectors * phases * e.vectors.adjoint();
  }
  return exp_raw(a * cx{0.0, -t});
}

ComplexMatrix herm_sqrt_psd(const ComplexMatrix& a) {
  require_square(a, "herm_sqrt_psd");
  EigenDecomposition e = eig_hermitian(a);
  std::size_t n = a.rows();
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double lam = e.values[i].real();
    if (lam < -1e-12)
      throw_contract("herm_sqrt_psd: matrix has a negative eigenvalue beyond tolerance");
    d(i, i) = std::sqrt(std::max(lam, 0.0));
  }
  return e.vectors * d * e.vectors.adjoint();
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  require_square(a, "inverse");
  std::size_t n = a.rows();
  ComplexMatrix work = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  double scale = std::max(work.norm_max(), 1e-300);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(work(r, col)) > std::abs(work(pivot, col))) pivot = r;
    if (std::abs(work(pivot, col)) < 1e-14 * scale)
      throw_contract("inverse: matrix is singular to working precision");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    cx p = work(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      cx f = work(r, col);
      if (f == cx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        work(r, j) -= f * work(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

double condition_number(const ComplexMatrix& a) {
  require_square(a, "condition_number");
  EigenDecomposition g = eig_hermitian(a.adjoint() * a);
  double lo = g.values.front().real();
  double hi = g.values.back().real();
  if (lo <= 0.0 || hi <= 0.0) return 1e300;
  return std::sqrt(hi / lo);
}

}  // namespace ptdilate
