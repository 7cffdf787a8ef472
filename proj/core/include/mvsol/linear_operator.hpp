#pragma once

#include "mvsol/common.hpp"
#include "mvsol/states.hpp"

#include <vector>

namespace mvsol {

// Constant-coefficient first-order operator A z = sum_i A^(i) d z / d y_i,
// with N independent variables, l equations, and state dimension d.
struct FirstOrderOperator {
    int N = 0;
    int l = 0;
    int d = 0;
    // A[i] is the l x d coefficient matrix of d/d y_i, stored row-major.
    std::vector<std::vector<std::vector<double>>> A;
};

// The l x N matrix Z[j][i] = sum_k A^(i)[j][k] z[k]; plane waves z h(n y.xi)
// satisfy the operator identically iff Z xi = 0.
struct SymbolMatrix {
    int l = 0;
    int N = 0;
    std::vector<std::vector<double>> Z; // l rows of length N
    std::vector<double> source_state;
};

// The operator of the extended Euler system: N = 3 (t, x1, x2), l = 4
// equations, d = 8 state components (rho, m1, m2, U11, U12, E, r1, r2).
FirstOrderOperator euler_operator();

void validate(const FirstOrderOperator& op);

SymbolMatrix assemble_symbol(const FirstOrderOperator& op, const std::vector<double>& z);

// Symbol of the Euler operator at za.z - zb.z. Row 1 carries the density
// difference, rows 2-3 the momentum/stress block, row 4 the energy flux.
SymbolMatrix difference_symbol_euler(const ExtendedState& za, const ExtendedState& zb);

// Exact cofactor expansion of the 3x3 submatrix on the given rows (0-based);
// requires N == 3 columns.
double submatrix_determinant(const SymbolMatrix& Z, const std::array<int, 3>& rows);

// Z * xi for an N-vector xi.
std::vector<double> apply_symbol(const SymbolMatrix& Z, const std::vector<double>& xi);

double frobenius_norm(const SymbolMatrix& Z);

} // namespace mvsol
