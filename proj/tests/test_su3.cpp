#include <cmath>

#include "support.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/su3.hpp"

using namespace qutrit;
using testing::max_abs;

namespace {

// Spin-1 matrices written out independently of the library.
Mat3 ref_spin(int i) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex I = kI;
  Mat3 m;
  if (i == 1) m << 0, r, 0, r, 0, r, 0, r, 0;
  if (i == 2) m << 0, -I * r, 0, I * r, 0, -I * r, 0, I * r, 0;
  if (i == 3) m << 1, 0, 0, 0, 0, 0, 0, 0, -1;
  return m;
}

}  // namespace

TEST_CASE("basis matrices match the spin-1 definitions") {
  for (int i = 1; i <= 3; ++i) CHECK(max_abs(su3::basis_matrix(i) - ref_spin(i)) < 1e-15);

  Mat3 c0 = std::sqrt(2.0 / 3.0) * Mat3::Identity();
  CHECK(max_abs(su3::basis_matrix(0) - c0) < 1e-15);

  Mat3 c8 = Mat3::Zero();
  c8(0, 2) = c8(2, 0) = 1.0;
  CHECK(max_abs(su3::basis_matrix(8) - c8) < 1e-15);

  const Mat3 S1 = ref_spin(1), S2 = ref_spin(2), S3 = ref_spin(3);
  CHECK(max_abs(su3::basis_matrix(8) - (S1 * S1 - S2 * S2)) < 1e-15);
  CHECK(max_abs(su3::basis_matrix(6) - std::sqrt(3.0) * (S3 * S3 - 2.0 / 3.0 * Mat3::Identity())) < 1e-15);
}

TEST_CASE("basis index out of range") {
  CHECK_THROWS_AS(su3::basis_matrix(9), DomainError);
  CHECK_THROWS_AS(su3::basis_matrix(-1), DomainError);
  CHECK_THROWS_AS(su3::structure_e(0, 1, 2), DomainError);
  CHECK_THROWS_AS(su3::structure_g(1, 9, 2), DomainError);
}

TEST_CASE("orthogonality, tracelessness and hermiticity") {
  CHECK(std::abs(su3::basis_matrix(0).trace() - std::sqrt(6.0)) < 1e-14);
  for (int a = 1; a <= 8; ++a) {
    const Mat3& A = su3::basis_matrix(a);
    CHECK(std::abs(A.trace()) < 1e-13);
    CHECK(max_abs(A - A.adjoint()) < 1e-15);
    for (int b = 1; b <= 8; ++b) {
      const Complex tr = (A * su3::basis_matrix(b)).trace();
      CHECK(std::abs(tr - (a == b ? 2.0 : 0.0)) < 1e-13);
    }
  }
}

TEST_CASE("spin commutation relations") {
  const Complex I = kI;
  const Mat3& S1 = su3::spin(1);
  const Mat3& S2 = su3::spin(2);
  const Mat3& S3 = su3::spin(3);
  CHECK(max_abs(S1 * S2 - S2 * S1 - I * S3) < 1e-15);
  CHECK(max_abs(S2 * S3 - S3 * S2 - I * S1) < 1e-15);
  CHECK(max_abs(S3 * S1 - S1 * S3 - I * S2) < 1e-15);
}

TEST_CASE("structure constant examples") {
  CHECK(su3::structure_e(1, 2, 3) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(su3::structure_e(3, 4, 8) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(su3::structure_e(1, 1, 5) == 0.0);
  CHECK(su3::structure_g(6, 6, 6) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(su3::structure_g(1, 1, 8) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(su3::structure_g(1, 2, 3)) < 1e-15);
}

TEST_CASE("tables equal the trace formulas for all 512 triples") {
  double worst_e = 0.0, worst_g = 0.0;
  for (int a = 1; a <= 8; ++a)
    for (int b = 1; b <= 8; ++b) {
      const Mat3& A = su3::basis_matrix(a);
      const Mat3& B = su3::basis_matrix(b);
      for (int c = 1; c <= 8; ++c) {
        const Mat3& C = su3::basis_matrix(c);
        const Complex e = ((A * B - B * A) * C).trace() / (4.0 * kI);
        const Complex g = ((A * B + B * A) * C).trace() / 4.0;
        worst_e = std::max(worst_e, std::abs(e - su3::structure_e(a, b, c)));
        worst_g = std::max(worst_g, std::abs(g - su3::structure_g(a, b, c)));
      }
    }
  CHECK(worst_e < 1e-13);
  CHECK(worst_g < 1e-13);
}

TEST_CASE("symmetry of the tables under index swaps") {
  for (int a = 1; a <= 8; ++a)
    for (int b = 1; b <= 8; ++b)
      for (int c = 1; c <= 8; ++c) {
        const double e = su3::structure_e(a, b, c);
        CHECK(std::abs(su3::structure_e(b, a, c) + e) < 1e-14);
        CHECK(std::abs(su3::structure_e(a, c, b) + e) < 1e-14);
        const double g = su3::structure_g(a, b, c);
        CHECK(std::abs(su3::structure_g(b, a, c) - g) < 1e-14);
        CHECK(std::abs(su3::structure_g(c, b, a) - g) < 1e-14);
      }
}

TEST_CASE("hand-listed values agree with the computed tables") {
  for (const auto& t : su3::tabulated_e()) CHECK(su3::structure_e(t.a, t.b, t.c) == doctest::Approx(t.value).epsilon(1e-13));
  for (const auto& t : su3::tabulated_g()) CHECK(su3::structure_g(t.a, t.b, t.c) == doctest::Approx(t.value).epsilon(1e-13));
  // Every nonzero dense entry is a permutation of a listed one.
  CHECK(su3::nonzero_e().size() == 6 * su3::tabulated_e().size());
}

TEST_CASE("product identity and commutator/anticommutator examples") {
  const auto report = su3::verify_algebra();
  CHECK(report.worst() < 1e-13);

  const Mat3& C1 = su3::basis_matrix(1);
  const Mat3& C2 = su3::basis_matrix(2);
  const Mat3& C3 = su3::basis_matrix(3);
  // [C1, C2] = 2i e_123 C3
  CHECK(max_abs(C1 * C2 - C2 * C1 - 2.0 * kI * su3::structure_e(1, 2, 3) * C3) < 1e-14);
  // {C3, C3} = (4/3) E + 2 g_336 C6
  const Mat3 anti = 2.0 * C3 * C3;
  CHECK(max_abs(anti - (4.0 / 3.0) * Mat3::Identity() - 2.0 * su3::structure_g(3, 3, 6) * su3::basis_matrix(6)) < 1e-14);
}

TEST_CASE("Gell-Mann decomposition") {
  // Standard Gell-Mann matrices, written independently.
  const Complex I = kI;
  std::array<Mat3, 9> L;
  L[1] << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  L[2] << 0, -I, 0, I, 0, 0, 0, 0, 0;
  L[3] << 1, 0, 0, 0, -1, 0, 0, 0, 0;
  L[4] << 0, 0, 1, 0, 0, 0, 1, 0, 0;
  L[5] << 0, 0, -I, 0, 0, 0, I, 0, 0;
  L[6] << 0, 0, 0, 0, 0, 1, 0, 1, 0;
  L[7] << 0, 0, 0, 0, 0, -I, 0, I, 0;
  L[8] << 1, 0, 0, 0, 1, 0, 0, 0, -2;
  L[8] /= std::sqrt(3.0);

  for (int a = 1; a <= 8; ++a) CHECK(max_abs(su3::gellmann(a) - L[a]) < 1e-15);

  const auto c4 = su3::gellmann_decompose(4);
  for (int a = 1; a <= 8; ++a) CHECK(std::abs(c4[a] - (a == 5 ? 1.0 : 0.0)) < 1e-14);

  const auto c1 = su3::gellmann_decompose(1);
  CHECK(c1[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(c1[6] == doctest::Approx(1 / std::sqrt(2.0)));

  for (int idx = 1; idx <= 8; ++idx) {
    const auto c = su3::gellmann_decompose(idx);
    Mat3 sum = Mat3::Zero();
    for (int a = 1; a <= 8; ++a) sum += c[a] * L[a];
    CHECK(max_abs(sum - su3::basis_matrix(idx)) < 1e-14);
  }
}
