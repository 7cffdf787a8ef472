#include "mvsol/linear_operator.hpp"

#include <cmath>

namespace mvsol {

FirstOrderOperator euler_operator() {
    FirstOrderOperator op;
    op.N = 3;
    op.l = 4;
    op.d = 8;
    op.A.assign(3, std::vector<std::vector<double>>(4, std::vector<double>(8, 0.0)));

    // d/dt: the time derivatives of (rho, m1, m2, E).
    op.A[0][0][0] = 1.0;
    op.A[0][1][1] = 1.0;
    op.A[0][2][2] = 1.0;
    op.A[0][3][5] = 1.0;

    // d/dx1: mass row carries m1; momentum rows carry (U11 + E, U12);
    // energy row carries r1.
    op.A[1][0][1] = 1.0;
    op.A[1][1][3] = 1.0;
    op.A[1][1][5] = 1.0;
    op.A[1][2][4] = 1.0;
    op.A[1][3][6] = 1.0;

    // d/dx2: mass row carries m2; momentum rows carry (U12, -U11 + E);
    // energy row carries r2.
    op.A[2][0][2] = 1.0;
    op.A[2][1][4] = 1.0;
    op.A[2][2][3] = -1.0;
    op.A[2][2][5] = 1.0;
    op.A[2][3][7] = 1.0;

    return op;
}

void validate(const FirstOrderOperator& op) {
    if (op.N < 1 || op.l < 1 || op.d < 1) {
        throw DimensionMismatch("FirstOrderOperator: N, l, d must be positive");
    }
    if (static_cast<int>(op.A.size()) != op.N) {
        throw DimensionMismatch("FirstOrderOperator: need one matrix per variable");
    }
    for (const auto& M : op.A) {
        if (static_cast<int>(M.size()) != op.l) {
            throw DimensionMismatch("FirstOrderOperator: matrix row count != l");
        }
        for (const auto& row : M) {
            if (static_cast<int>(row.size()) != op.d) {
                throw DimensionMismatch("FirstOrderOperator: matrix column count != d");
            }
        }
    }
}

SymbolMatrix assemble_symbol(const FirstOrderOperator& op, const std::vector<double>& z) {
    validate(op);
    if (static_cast<int>(z.size()) != op.d) {
        throw DimensionMismatch("assemble_symbol: state length != operator dimension d");
    }
    SymbolMatrix s;
    s.l = op.l;
    s.N = op.N;
    s.source_state = z;
    s.Z.assign(op.l, std::vector<double>(op.N, 0.0));
    for (int i = 0; i < op.N; ++i) {
        for (int j = 0; j < op.l; ++j) {
            double acc = 0.0;
            for (int k = 0; k < op.d; ++k) {
                acc += op.A[i][j][k] * z[k];
            }
            s.Z[j][i] = acc;
        }
    }
    return s;
}

SymbolMatrix difference_symbol_euler(const ExtendedState& za, const ExtendedState& zb) {
    std::vector<double> diff(8);
    for (int k = 0; k < 8; ++k) {
        diff[k] = za.z[k] - zb.z[k];
    }
    return assemble_symbol(euler_operator(), diff);
}

double submatrix_determinant(const SymbolMatrix& Z, const std::array<int, 3>& rows) {
    if (Z.N != 3) {
        throw DimensionMismatch("submatrix_determinant: symbol must have 3 columns");
    }
    for (int r : rows) {
        if (r < 0 || r >= Z.l) {
            throw IndexOutOfRange("submatrix_determinant: row index out of range");
        }
    }
    if (rows[0] == rows[1] || rows[0] == rows[2] || rows[1] == rows[2]) {
        throw IndexOutOfRange("submatrix_determinant: row indices must be distinct");
    }
    const auto& a = Z.Z[rows[0]];
    const auto& b = Z.Z[rows[1]];
    const auto& c = Z.Z[rows[2]];
    return a[0] * (b[1] * c[2] - b[2] * c[1])
         - a[1] * (b[0] * c[2] - b[2] * c[0])
         + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

std::vector<double> apply_symbol(const SymbolMatrix& Z, const std::vector<double>& xi) {
    if (static_cast<int>(xi.size()) != Z.N) {
        throw DimensionMismatch("apply_symbol: direction length != N");
    }
    std::vector<double> out(Z.l, 0.0);
    for (int j = 0; j < Z.l; ++j) {
        double acc = 0.0;
        for (int i = 0; i < Z.N; ++i) {
            acc += Z.Z[j][i] * xi[i];
        }
        out[j] = acc;
    }
    return out;
}

double frobenius_norm(const SymbolMatrix& Z) {
    double acc = 0.0;
    for (const auto& row : Z.Z) {
        for (double v : row) {
            acc += v * v;
        }
    }
    return std::sqrt(acc);
}

} // namespace mvsol
