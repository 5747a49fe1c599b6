#include "green/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace green {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, std::size_t max_evals, double tol) {
  const std::size_t n = x0.size();
  NelderMeadResult res;
  res.x = x0;
  if (max_evals == 0) {
    res.f = std::numeric_limits<double>::infinity();
    return res;
  }
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    ++res.evals;
    if (res.evals == 1 || v < res.f) {
      res.f = v;
      res.x = x;
    }
    return v;
  };
  eval(x0);
  if (n == 0) return res;

  std::vector<std::vector<double>> s(n + 1);
  std::vector<double> fv(n + 1);
  std::vector<std::size_t> idx(n + 1);

  while (res.evals < max_evals) {
    // (re)build the simplex around the incumbent
    s[0] = res.x;
    fv[0] = res.f;
    for (std::size_t i = 0; i < n && res.evals < max_evals; ++i) {
      s[i + 1] = res.x;
      s[i + 1][i] += step;
      fv[i + 1] = eval(s[i + 1]);
    }
    if (res.evals >= max_evals) break;

    while (res.evals < max_evals) {
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];

      double size = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j < n; ++j) size = std::max(size, std::abs(s[i][j] - s[best][j]));
      }
      if (size < tol || std::abs(fv[worst] - fv[best]) < tol * (1.0 + std::abs(fv[best]))) break;

      std::vector<double> c(n, 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t j = 0; j < n; ++j) c[j] += s[i][j] / static_cast<double>(n);
      }
      auto along = [&](double t) {
        std::vector<double> p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = c[j] + t * (s[worst][j] - c[j]);
        return p;
      };

      auto xr = along(-1.0);
      const double fr = eval(xr);
      if (fr < fv[best]) {
        if (res.evals >= max_evals) break;
        auto xe = along(-2.0);
        const double fe = eval(xe);
        if (fe < fr) {
          s[worst] = std::move(xe);
          fv[worst] = fe;
        } else {
          s[worst] = std::move(xr);
          fv[worst] = fr;
        }
        continue;
      }
      if (fr < fv[second]) {
        s[worst] = std::move(xr);
        fv[worst] = fr;
        continue;
      }
      if (res.evals >= max_evals) break;
      const bool outside = fr < fv[worst];
      auto xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, fv[worst])) {
        s[worst] = std::move(xc);
        fv[worst] = fc;
        continue;
      }
      // shrink toward the best vertex
      for (std::size_t i = 0; i <= n && res.evals < max_evals; ++i) {
        if (i == best) continue;
        for (std::size_t j = 0; j < n; ++j) s[i][j] = s[best][j] + 0.5 * (s[i][j] - s[best][j]);
        fv[i] = eval(s[i]);
      }
    }
    ++res.restarts;
  }
  return res;
}

}  // namespace green
