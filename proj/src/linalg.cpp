#include "oklam/linalg.hpp"

#include <algorithm>

namespace oklam {

Vec3 sym_eigenvalues(const Mat3& input) {
  Mat3 a = symmetrize(input);
  // 30 cyclic sweeps is far past convergence for 3x3; loop exits early on
  // a clean off-diagonal.
  for (int sweep = 0; sweep < 30; ++sweep) {
    double off = std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2));
    double diag = std::abs(a(0, 0)) + std::abs(a(1, 1)) + std::abs(a(2, 2));
    if (off <= 1e-300 || off <= 1e-16 * (diag + off)) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        Mat3 r = Mat3::identity();
        r(p, p) = c;
        r(q, q) = c;
        r(p, q) = s;
        r(q, p) = -s;
        a = matmul(transpose(r), matmul(a, r));
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  Vec3 ev{a(0, 0), a(1, 1), a(2, 2)};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace oklam
