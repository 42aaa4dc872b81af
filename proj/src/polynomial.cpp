#include "rifscatter/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "rifscatter/errors.hpp"

namespace rif {

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      r.c[i + j] += a.c[i] * b.c[j];
    }
  }
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    r.c[i] += a.c[i];
  }
  for (std::size_t i = 0; i < b.c.size(); ++i) {
    r.c[i] += b.c[i];
  }
  return r;
}

Poly poly_scaled(const Poly& a, double s) {
  Poly r = a;
  for (double& x : r.c) {
    x *= s;
  }
  return r;
}

Poly poly_derivative(const Poly& a) {
  Poly r;
  if (a.c.size() <= 1) {
    r.c = {0.0};
    return r;
  }
  r.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    r.c[i - 1] = a.c[i] * static_cast<double>(i);
  }
  return r;
}

std::complex<double> poly_eval(const Poly& p, std::complex<double> x) {
  std::complex<double> v = 0.0;
  for (std::size_t i = p.c.size(); i-- > 0;) {
    v = v * x + p.c[i];
  }
  return v;
}

double poly_eval_scale(const Poly& p, std::complex<double> x) {
  const double ax = std::abs(x);
  double v = 0.0;
  for (std::size_t i = p.c.size(); i-- > 0;) {
    v = v * ax + std::abs(p.c[i]);
  }
  return v;
}

namespace {

// Parlett-Reinsch balancing in powers of two, preserving eigenvalues exactly.
void balance(Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  bool converged = false;
  while (!converged) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) {
          r += std::abs(a(i, j));
          c += std::abs(a(j, i));
        }
      }
      if (r == 0.0 || c == 0.0) {
        continue;
      }
      double f = 1.0;
      const double s = r + c;
      while (c < r / 2.0) {
        f *= 2.0;
        c *= 4.0;
      }
      while (c > r * 2.0) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((r / f + c * f) < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const Poly& p, double residual_tol) {
  Poly q = p;
  while (q.c.size() > 1 && q.c.back() == 0.0) {
    q.c.pop_back();
  }
  const int n = q.degree();
  if (n < 1) {
    return {};
  }
  const double lead = q.c.back();

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    comp(i, i - 1) = 1.0;
  }
  for (int i = 0; i < n; ++i) {
    comp(i, n - 1) = -q.c[i] / lead;
  }
  balance(comp);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
  if (solver.info() != Eigen::Success) {
    throw RootCountError("companion eigensolve failed to converge");
  }

  std::vector<std::complex<double>> raw(n);
  for (int i = 0; i < n; ++i) {
    raw[i] = solver.eigenvalues()[i];
  }

  const Poly dq = poly_derivative(q);
  std::vector<std::complex<double>> roots = raw;
  for (auto& z : roots) {
    for (int it = 0; it < 60; ++it) {
      const std::complex<double> f = poly_eval(q, z);
      if (std::abs(f) <= 1e-16 * poly_eval_scale(q, z)) {
        break;
      }
      const std::complex<double> fp = poly_eval(dq, z);
      if (fp == 0.0) {
        break;
      }
      const std::complex<double> step = f / fp;
      z -= step;
      if (std::abs(step) <= 1e-17 * (1.0 + std::abs(z))) {
        break;
      }
    }
  }

  // Newton can merge close roots into one basin; keep the companion value for
  // any root that collapsed onto an earlier one.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double sep = std::abs(roots[i] - roots[j]);
      if (sep < 1e-10 * std::max({1e-300, std::abs(roots[i]), std::abs(roots[j])})) {
        roots[i] = raw[i];
        break;
      }
    }
  }

  for (const auto& z : roots) {
    const double res = std::abs(poly_eval(q, z));
    const double scale = poly_eval_scale(q, z);
    if (res > residual_tol * scale) {
      std::ostringstream msg;
      msg << "root " << z << " has relative residual " << res / scale;
      throw RootCountError(msg.str());
    }
  }
  return roots;
}

}  // namespace rif
