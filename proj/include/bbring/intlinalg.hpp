#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

// Exact integer linear algebra over arbitrary-precision integers.
namespace bbring::intlinalg {

using Int = mpz_class;
using IntVector = std::vector<Int>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
    static IntMatrix diagonal(const IntVector& entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    IntVector col(std::size_t c) const;
    IntMatrix transposed() const;
    bool is_zero() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row dst += k * row src
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& k);
    // col dst += k * col src
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& k);
    void negate_row(std::size_t r);

    std::string to_string() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntVector operator*(const IntMatrix& a, const IntVector& x);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

IntVector row_times(const IntVector& row, const IntMatrix& m);
Int dot(const IntVector& a, const IntVector& b);

/// U * A * V == D with U, V unimodular and D diagonal with d_1 | d_2 | ... | d_r.
struct SNFResult {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    IntMatrix V_inverse;
    std::size_t rank = 0;

    IntVector diagonal() const;
};

/// Pivoting always moves the smallest nonzero absolute entry of the active
/// block into place (ties: lowest row, then lowest column).
SNFResult smith_normal_form(const IntMatrix& A);

/// Row-style Hermite normal form of the lattice spanned by the rows of A.
/// Zero rows are dropped; pivots are positive and entries above a pivot lie in [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& A);

/// Basis (as columns collected into vectors) of {y : A y = 0}.
std::vector<IntVector> integer_kernel(const IntMatrix& A);

/// Proof of unsolvability: row * A == 0 (mod modulus) while row * b != 0 (mod modulus).
/// modulus == 0 means exact equality.
struct Certificate {
    IntVector row;
    Int modulus;
};

struct DiophantineSolution {
    IntVector particular;
    std::vector<IntVector> kernel;
};

struct DiophantineResult {
    std::optional<DiophantineSolution> solution;
    std::optional<Certificate> certificate;

    explicit operator bool() const noexcept { return solution.has_value(); }
};

DiophantineResult solve_diophantine(const IntMatrix& A, const IntVector& b);

/// Solves sum_j A_ij x_j == b_i (mod moduli_i) by appending one slack unknown per
/// row and handing the integer system to solve_diophantine. Each x_j is reduced into
/// [0, lcm(moduli)).
std::optional<IntVector> solve_modular(const IntMatrix& A, const IntVector& b, const IntVector& moduli);

/// A subgroup of Z_{m_1} x ... x Z_{m_t}, stored as the full-rank lattice of its
/// integer preimages (always containing every m_i e_i) in Hermite normal form.
class SubgroupLattice {
public:
    SubgroupLattice() = default;
    SubgroupLattice(IntVector moduli, const std::vector<IntVector>& generators);

    static SubgroupLattice whole(IntVector moduli);
    static SubgroupLattice trivial(IntVector moduli);

    const IntVector& moduli() const noexcept { return moduli_; }
    std::size_t dimension() const noexcept { return moduli_.size(); }
    /// Upper-triangular HNF basis, one row per coordinate.
    const IntMatrix& basis() const noexcept { return basis_; }

    Int order() const;
    /// Index of the subgroup in the ambient group.
    Int index() const;

    /// Canonical coset representative: coordinate i lands in [0, basis(i, i)).
    IntVector reduce(IntVector x) const;
    bool contains(const IntVector& x) const;

    SubgroupLattice join(const SubgroupLattice& other) const;
    SubgroupLattice intersect(const SubgroupLattice& other) const;

    /// Annihilator under the pairing <y, h> = sum_j y_j h_j / m_j (mod 1).
    SubgroupLattice dual() const;

    struct Factor {
        IntVector generator;
        Int order;
    };
    /// Invariant-factor generators (orders > 1, each dividing the next), reduced mod m.
    std::vector<Factor> invariant_factors() const;

    friend bool operator==(const SubgroupLattice& a, const SubgroupLattice& b) {
        return a.moduli_ == b.moduli_ && a.basis_ == b.basis_;
    }

private:
    IntVector moduli_;
    IntMatrix basis_;
};

std::vector<std::uint64_t> to_u64(const IntVector& v);
IntVector to_int(std::span<const std::uint64_t> v);
std::uint64_t to_u64(const Int& x);

}  // namespace bbring::intlinalg
