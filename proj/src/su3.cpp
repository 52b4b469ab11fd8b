#include "qutrit/su3.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qutrit/errors.hpp"

namespace qutrit::su3 {
namespace {

constexpr double kTableTolerance = 1e-13;

std::array<Mat3, 9> make_basis() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  const Complex i = kI;
  std::array<Mat3, 9> C;
  C[0] = std::sqrt(2.0 / 3.0) * Mat3::Identity();
  C[1] << 0, r2, 0,  //
      r2, 0, r2,     //
      0, r2, 0;
  C[2] << 0, -i * r2, 0,  //
      i * r2, 0, -i * r2,  //
      0, i * r2, 0;
  C[3] << 1, 0, 0,  //
      0, 0, 0,      //
      0, 0, -1;
  C[4] << 0, 0, -i,  //
      0, 0, 0,       //
      i, 0, 0;
  C[5] << 0, -i * r2, 0,  //
      i * r2, 0, i * r2,   //
      0, -i * r2, 0;
  C[6] << r3, 0, 0,  //
      0, -2 * r3, 0,  //
      0, 0, r3;
  C[7] << 0, r2, 0,  //
      r2, 0, -r2,    //
      0, -r2, 0;
  C[8] << 0, 0, 1,  //
      0, 0, 0,      //
      1, 0, 0;
  return C;
}

std::array<Mat3, 9> make_gellmann() {
  const Complex i = kI;
  const double r3 = 1.0 / std::sqrt(3.0);
  std::array<Mat3, 9> L;
  L[0] = Mat3::Zero();
  L[1] << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  L[2] << 0, -i, 0, i, 0, 0, 0, 0, 0;
  L[3] << 1, 0, 0, 0, -1, 0, 0, 0, 0;
  L[4] << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  L[5] << 0, 0, -i, 0, 0, 0, i, 0, 0;
  L[6] << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  L[7] << 0, 0, 0, 0, 0, -i, 0, i, 0;
  L[8] << r3, 0, 0, 0, r3, 0, 0, 0, -2 * r3;
  return L;
}

// Independent values e_abc and g_abc, one index ordering each.
std::vector<Entry> make_tabulated_e() {
  const double h = 0.5;
  const double s = std::sqrt(3.0) / 2.0;
  return {{1, 2, 3, h},  {1, 4, 7, h}, {1, 5, 8, h}, {2, 4, 5, -h},
          {2, 7, 8, h},  {3, 5, 7, -h}, {1, 5, 6, s}, {2, 6, 7, s},
          {3, 4, 8, -1.0}};
}

std::vector<Entry> make_tabulated_g() {
  const double a = 1.0 / std::sqrt(3.0);
  const double b = 1.0 / (2.0 * std::sqrt(3.0));
  const double h = 0.5;
  return {{3, 3, 6, a},  {4, 4, 6, a},  {6, 6, 6, -a}, {6, 8, 8, a},
          {1, 1, 6, -b}, {2, 2, 6, -b}, {5, 5, 6, -b}, {6, 7, 7, -b},
          {1, 1, 8, h},  {1, 2, 4, h},  {1, 3, 7, h},  {2, 2, 8, -h},
          {2, 3, 5, h},  {4, 5, 7, -h}, {5, 5, 8, h},  {7, 7, 8, -h}};
}

struct Tables {
  std::array<Mat3, 9> basis = make_basis();
  std::array<Mat3, 9> gm = make_gellmann();
  // Dense [a][b][c] over 1..8, slot 0 unused.
  double e[9][9][9] = {};
  double g[9][9][9] = {};
  std::vector<Entry> e_nonzero, g_nonzero;
  std::vector<Entry> e_tab = make_tabulated_e();
  std::vector<Entry> g_tab = make_tabulated_g();
  double tabulated_mismatch = 0.0;

  Tables() {
    for (int a = 1; a < 9; ++a) {
      for (int b = 1; b < 9; ++b) {
        const Mat3 comm = basis[a] * basis[b] - basis[b] * basis[a];
        const Mat3 anti = basis[a] * basis[b] + basis[b] * basis[a];
        for (int c = 1; c < 9; ++c) {
          double ev = ((comm * basis[c]).trace() / (4.0 * kI)).real();
          double gv = ((anti * basis[c]).trace() / 4.0).real();
          if (std::abs(ev) < kTableTolerance) ev = 0.0;
          if (std::abs(gv) < kTableTolerance) gv = 0.0;
          e[a][b][c] = ev;
          g[a][b][c] = gv;
          if (ev != 0.0) e_nonzero.push_back({a, b, c, ev});
          if (gv != 0.0) g_nonzero.push_back({a, b, c, gv});
        }
      }
    }
    tabulated_mismatch = std::max(compare(e, e_tab, -1.0), compare(g, g_tab, 1.0));
    if (tabulated_mismatch > kTableTolerance) {
      throw std::logic_error("su3: structure constants disagree with tabulated values");
    }
  }

  // Expands the hand list over all index permutations (odd permutations
  // pick up swap_sign) and compares against the dense table.
  static double compare(const double (&dense)[9][9][9], const std::vector<Entry>& list,
                        double swap_sign) {
    static constexpr int kPerms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                         {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    double expanded[9][9][9] = {};
    for (const Entry& t : list) {
      const int idx[3] = {t.a, t.b, t.c};
      for (int p = 0; p < 6; ++p) {
        const double sign = p < 3 ? 1.0 : swap_sign;
        expanded[idx[kPerms[p][0]]][idx[kPerms[p][1]]][idx[kPerms[p][2]]] = sign * t.value;
      }
    }
    double worst = 0.0;
    for (int a = 1; a < 9; ++a)
      for (int b = 1; b < 9; ++b)
        for (int c = 1; c < 9; ++c)
          worst = std::max(worst, std::abs(expanded[a][b][c] - dense[a][b][c]));
    return worst;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

void check_range(int v, int lo, int hi, const char* what) {
  if (v < lo || v > hi) {
    throw DomainError(std::string("su3: ") + what + " index " + std::to_string(v) +
                      " outside " + std::to_string(lo) + ".." + std::to_string(hi));
  }
}

}  // namespace

const Mat3& basis_matrix(int index) {
  check_range(index, 0, 8, "basis");
  return tables().basis[static_cast<std::size_t>(index)];
}

double structure_e(int a, int b, int c) {
  check_range(a, 1, 8, "e");
  check_range(b, 1, 8, "e");
  check_range(c, 1, 8, "e");
  return tables().e[a][b][c];
}

double structure_g(int a, int b, int c) {
  check_range(a, 1, 8, "g");
  check_range(b, 1, 8, "g");
  check_range(c, 1, 8, "g");
  return tables().g[a][b][c];
}

std::span<const Entry> nonzero_e() { return tables().e_nonzero; }
std::span<const Entry> nonzero_g() { return tables().g_nonzero; }
std::span<const Entry> tabulated_e() { return tables().e_tab; }
std::span<const Entry> tabulated_g() { return tables().g_tab; }

double AlgebraReport::worst() const {
  return std::max({product_identity, orthogonality, tracelessness, hermiticity,
                   e_trace_formula, g_trace_formula, tabulated_mismatch});
}

AlgebraReport verify_algebra() {
  const Tables& T = tables();
  AlgebraReport r;
  r.tabulated_mismatch = T.tabulated_mismatch;
  for (int a = 1; a < 9; ++a) {
    r.tracelessness = std::max(r.tracelessness, std::abs(T.basis[a].trace()));
    r.hermiticity = std::max(r.hermiticity, (T.basis[a] - T.basis[a].adjoint()).cwiseAbs().maxCoeff());
    for (int b = 1; b < 9; ++b) {
      const Mat3 prod = T.basis[a] * T.basis[b];
      Mat3 expected = (a == b ? 2.0 / 3.0 : 0.0) * Mat3::Identity();
      for (int c = 1; c < 9; ++c) expected += Complex(T.g[a][b][c], T.e[a][b][c]) * T.basis[c];
      r.product_identity = std::max(r.product_identity, (prod - expected).cwiseAbs().maxCoeff());
      r.orthogonality = std::max(r.orthogonality, std::abs(prod.trace() - (a == b ? 2.0 : 0.0)));

      const Mat3 comm = prod - T.basis[b] * T.basis[a];
      const Mat3 anti = prod + T.basis[b] * T.basis[a];
      for (int c = 1; c < 9; ++c) {
        const Complex ef = (comm * T.basis[c]).trace() / (4.0 * kI);
        const Complex gf = (anti * T.basis[c]).trace() / 4.0;
        r.e_trace_formula = std::max(r.e_trace_formula, std::abs(ef - T.e[a][b][c]));
        r.g_trace_formula = std::max(r.g_trace_formula, std::abs(gf - T.g[a][b][c]));
      }
    }
  }
  return r;
}

const Mat3& gellmann(int a) {
  check_range(a, 1, 8, "Gell-Mann");
  return tables().gm[static_cast<std::size_t>(a)];
}

std::array<double, 9> gellmann_decompose(int index) {
  check_range(index, 1, 8, "basis");
  const double r2 = 1.0 / std::sqrt(2.0);
  const double s3 = std::sqrt(3.0) / 2.0;
  std::array<double, 9> x{};
  switch (index) {
    case 1: x[1] = r2; x[6] = r2; break;
    case 2: x[2] = r2; x[7] = r2; break;
    case 3: x[3] = 0.5; x[8] = s3; break;
    case 4: x[5] = 1.0; break;
    case 5: x[2] = r2; x[7] = -r2; break;
    case 6: x[3] = s3; x[8] = -0.5; break;
    case 7: x[1] = r2; x[6] = -r2; break;
    case 8: x[4] = 1.0; break;
  }
  return x;
}

}  // namespace qutrit::su3
