#pragma once

#include <array>
#include <span>

#include "qutrit/types.hpp"

/// Spin-1 operator basis C_0..C_8 and its SU(3) structure constants.
///
/// C_1..C_3 are the spin matrices S_1, S_2, S_3 in the ordered basis
/// |1>, |0>, |-1>; C_6 = sqrt3 (S_3^2 - 2/3 E), C_8 = S_1^2 - S_2^2 and
/// C_0 = sqrt(2/3) E. The traceless members satisfy Tr C_a C_b = 2 delta_ab
/// and multiply as
///
///   C_a C_b = (2/3) delta_ab E + (g_abc + i e_abc) C_c.
namespace qutrit::su3 {

/// One nonzero entry of a rank-3 structure table (indices 1..8).
struct Entry {
  int a, b, c;
  double value;
};

/// Basis matrix C_index, index in 0..8. Throws DomainError otherwise.
const Mat3& basis_matrix(int index);

/// Spin matrix S_i = C_i for i in 1..3.
inline const Mat3& spin(int i) { return basis_matrix(i); }

/// e_abc = Tr([C_a, C_b] C_c) / 4i, indices in 1..8.
double structure_e(int a, int b, int c);

/// g_abc = Tr({C_a, C_b} C_c) / 4, indices in 1..8.
double structure_g(int a, int b, int c);

/// All nonzero entries of the dense tables (every index permutation).
std::span<const Entry> nonzero_e();
std::span<const Entry> nonzero_g();

/// The independent nonzero values as enumerated by hand (one ordering each).
std::span<const Entry> tabulated_e();
std::span<const Entry> tabulated_g();

/// Max residuals of the algebra identities over all index pairs/triples.
struct AlgebraReport {
  double product_identity = 0.0;  // C_a C_b vs (2/3)E d_ab + (g + ie) C_c
  double orthogonality = 0.0;     // Tr C_a C_b - 2 d_ab
  double tracelessness = 0.0;     // Tr C_a
  double hermiticity = 0.0;       // C_a - C_a^H
  double e_trace_formula = 0.0;   // table vs trace of commutator
  double g_trace_formula = 0.0;   // table vs trace of anticommutator
  double tabulated_mismatch = 0.0;

  double worst() const;
};

AlgebraReport verify_algebra();

/// Gell-Mann matrix lambda_a, a in 1..8.
const Mat3& gellmann(int a);

/// Coefficients x_1..x_8 (slot 0 unused) with C_index = sum_a x_a lambda_a.
std::array<double, 9> gellmann_decompose(int index);

}  // namespace qutrit::su3
