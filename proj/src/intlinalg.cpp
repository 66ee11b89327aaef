#include "bbring/intlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bbring::intlinalg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: row width mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& entries) {
    IntMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t c) const {
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return sgn(v) == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& k) {
    if (sgn(k) == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& k) {
    if (sgn(k) == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

std::string IntMatrix::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) out << "; ";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) out << ' ';
            out << (*this)(r, c).get_str();
        }
    }
    out << ']';
    return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix product: dimension mismatch");
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Int& aik = a(i, k);
            if (sgn(aik) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
        }
    return p;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("IntMatrix * vector: dimension mismatch");
    IntVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntVector row_times(const IntVector& row, const IntMatrix& m) {
    if (row.size() != m.rows()) throw std::invalid_argument("row_times: dimension mismatch");
    IntVector out(m.cols());
    for (std::size_t k = 0; k < m.rows(); ++k) {
        if (sgn(row[k]) == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += row[k] * m(k, j);
    }
    return out;
}

Int dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVector SNFResult::diagonal() const {
    IntVector d(std::min(D.rows(), D.cols()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = D(i, i);
    return d;
}

namespace {

Int trunc_quotient(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_quotient(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool divides(const Int& d, const Int& x) { return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0; }

}  // namespace

SNFResult smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    SNFResult res{IntMatrix::identity(m), A, IntMatrix::identity(n), IntMatrix::identity(n), 0};
    IntMatrix& D = res.D;

    auto col_op = [&](std::size_t dst, std::size_t src, const Int& k) {
        D.add_col_multiple(dst, src, k);
        res.V.add_col_multiple(dst, src, k);
        res.V_inverse.add_row_multiple(src, dst, -k);
    };
    auto row_op = [&](std::size_t dst, std::size_t src, const Int& k) {
        D.add_row_multiple(dst, src, k);
        res.U.add_row_multiple(dst, src, k);
    };

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest nonzero |entry| in the active block
            std::size_t pr = m, pc = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (sgn(D(i, j)) == 0) continue;
                    if (pr == m || mpz_cmpabs(D(i, j).get_mpz_t(), D(pr, pc).get_mpz_t()) < 0) {
                        pr = i;
                        pc = j;
                    }
                }
            if (pr == m) break;

            D.swap_rows(t, pr);
            res.U.swap_rows(t, pr);
            D.swap_cols(t, pc);
            res.V.swap_cols(t, pc);
            res.V_inverse.swap_rows(t, pc);

            const Int pivot = D(t, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(D(i, t)) == 0) continue;
                row_op(i, t, -trunc_quotient(D(i, t), pivot));
                if (sgn(D(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(D(t, j)) == 0) continue;
                col_op(j, t, -trunc_quotient(D(t, j), pivot));
                if (sgn(D(t, j)) != 0) clean = false;
            }
            if (!clean) continue;

            // Row and column are clear; enforce d_t | every remaining entry.
            bool chain_ok = true;
            for (std::size_t i = t + 1; i < m && chain_ok; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!divides(pivot, D(i, j))) {
                        row_op(t, i, Int(1));
                        chain_ok = false;
                        break;
                    }
            if (chain_ok) break;
        }
        if (sgn(D(t, t)) == 0) break;
        if (sgn(D(t, t)) < 0) {
            D.negate_row(t);
            res.U.negate_row(t);
        }
    }
    res.rank = t;
    return res;
}

IntMatrix hermite_normal_form(const IntMatrix& A) {
    IntMatrix H = A;
    const std::size_t m = H.rows();
    const std::size_t n = H.cols();
    std::size_t pr = 0;
    for (std::size_t col = 0; col < n && pr < m; ++col) {
        for (std::size_t i = pr + 1; i < m; ++i) {
            if (sgn(H(i, col)) == 0) continue;
            if (sgn(H(pr, col)) == 0) {
                H.swap_rows(pr, i);
                continue;
            }
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), H(pr, col).get_mpz_t(), H(i, col).get_mpz_t());
            const Int a_g = H(pr, col) / g;
            const Int b_g = H(i, col) / g;
            for (std::size_t c = col; c < n; ++c) {
                const Int top = H(pr, c);
                const Int bottom = H(i, c);
                H(pr, c) = x * top + y * bottom;
                H(i, c) = a_g * bottom - b_g * top;
            }
        }
        if (sgn(H(pr, col)) == 0) continue;
        if (sgn(H(pr, col)) < 0) H.negate_row(pr);
        for (std::size_t i = 0; i < pr; ++i) {
            if (sgn(H(i, col)) == 0) continue;
            H.add_row_multiple(i, pr, -floor_quotient(H(i, col), H(pr, col)));
        }
        ++pr;
    }
    IntMatrix out(pr, n);
    for (std::size_t r = 0; r < pr; ++r)
        for (std::size_t c = 0; c < n; ++c) out(r, c) = H(r, c);
    return out;
}

std::vector<IntVector> integer_kernel(const IntMatrix& A) {
    SNFResult snf = smith_normal_form(A);
    std::vector<IntVector> basis;
    for (std::size_t j = snf.rank; j < A.cols(); ++j) basis.push_back(snf.V.col(j));
    return basis;
}

DiophantineResult solve_diophantine(const IntMatrix& A, const IntVector& b) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve_diophantine: dimension mismatch");
    SNFResult snf = smith_normal_form(A);
    const IntVector c = snf.U * b;
    IntVector y(A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        if (i < snf.rank) {
            const Int& d = snf.D(i, i);
            if (!divides(d, c[i])) return {std::nullopt, Certificate{snf.U.row(i), d}};
            y[i] = c[i] / d;
        } else if (sgn(c[i]) != 0) {
            return {std::nullopt, Certificate{snf.U.row(i), Int(0)}};
        }
    }
    DiophantineSolution sol;
    sol.particular = snf.V * y;
    for (std::size_t j = snf.rank; j < A.cols(); ++j) sol.kernel.push_back(snf.V.col(j));
    return {std::move(sol), std::nullopt};
}

std::optional<IntVector> solve_modular(const IntMatrix& A, const IntVector& b, const IntVector& moduli) {
    const std::size_t rows = A.rows();
    const std::size_t n = A.cols();
    if (b.size() != rows || moduli.size() != rows) throw std::invalid_argument("solve_modular: dimension mismatch");
    Int lcm = 1;
    for (const Int& s : moduli) {
        if (sgn(s) <= 0) throw std::invalid_argument("solve_modular: moduli must be positive");
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), s.get_mpz_t());
    }
    IntMatrix augmented(rows, n + rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) augmented(i, j) = A(i, j);
        augmented(i, n + i) = moduli[i];
    }
    DiophantineResult r = solve_diophantine(augmented, b);
    if (!r) return std::nullopt;
    IntVector x(r.solution->particular.begin(), r.solution->particular.begin() + static_cast<std::ptrdiff_t>(n));
    for (Int& v : x) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), lcm.get_mpz_t());
    return x;
}

// ---------------------------------------------------------------------------

SubgroupLattice::SubgroupLattice(IntVector moduli, const std::vector<IntVector>& generators)
    : moduli_(std::move(moduli)) {
    const std::size_t t = moduli_.size();
    for (const Int& m : moduli_)
        if (sgn(m) <= 0) throw std::invalid_argument("SubgroupLattice: moduli must be positive");
    IntMatrix rows(generators.size() + t, t);
    for (std::size_t g = 0; g < generators.size(); ++g) {
        if (generators[g].size() != t) throw std::invalid_argument("SubgroupLattice: generator dimension mismatch");
        for (std::size_t c = 0; c < t; ++c) mpz_fdiv_r(rows(g, c).get_mpz_t(), generators[g][c].get_mpz_t(), moduli_[c].get_mpz_t());
    }
    for (std::size_t i = 0; i < t; ++i) rows(generators.size() + i, i) = moduli_[i];
    basis_ = hermite_normal_form(rows);
}

SubgroupLattice SubgroupLattice::whole(IntVector moduli) {
    const std::size_t t = moduli.size();
    std::vector<IntVector> units;
    for (std::size_t i = 0; i < t; ++i) {
        IntVector e(t);
        e[i] = 1;
        units.push_back(std::move(e));
    }
    return SubgroupLattice(std::move(moduli), units);
}

SubgroupLattice SubgroupLattice::trivial(IntVector moduli) { return SubgroupLattice(std::move(moduli), {}); }

Int SubgroupLattice::index() const {
    Int idx = 1;
    for (std::size_t i = 0; i < dimension(); ++i) idx *= basis_(i, i);
    return idx;
}

Int SubgroupLattice::order() const {
    Int total = 1;
    for (const Int& m : moduli_) total *= m;
    return total / index();
}

IntVector SubgroupLattice::reduce(IntVector x) const {
    if (x.size() != dimension()) throw std::invalid_argument("SubgroupLattice::reduce: dimension mismatch");
    for (std::size_t i = 0; i < dimension(); ++i) {
        const Int q = floor_quotient(x[i], basis_(i, i));
        if (sgn(q) == 0) continue;
        for (std::size_t c = i; c < dimension(); ++c) x[c] -= q * basis_(i, c);
    }
    return x;
}

bool SubgroupLattice::contains(const IntVector& x) const {
    IntVector r = reduce(x);
    return std::all_of(r.begin(), r.end(), [](const Int& v) { return sgn(v) == 0; });
}

SubgroupLattice SubgroupLattice::join(const SubgroupLattice& other) const {
    if (moduli_ != other.moduli_) throw std::invalid_argument("SubgroupLattice::join: ambient mismatch");
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < dimension(); ++i) {
        gens.push_back(basis_.row(i));
        gens.push_back(other.basis_.row(i));
    }
    return SubgroupLattice(moduli_, gens);
}

SubgroupLattice SubgroupLattice::intersect(const SubgroupLattice& other) const {
    if (moduli_ != other.moduli_) throw std::invalid_argument("SubgroupLattice::intersect: ambient mismatch");
    const std::size_t t = dimension();
    // u B1 = v B2  <=>  [B1^T | -B2^T] (u, v) = 0
    IntMatrix stacked(t, 2 * t);
    for (std::size_t r = 0; r < t; ++r)
        for (std::size_t c = 0; c < t; ++c) {
            stacked(c, r) = basis_(r, c);
            stacked(c, t + r) = -other.basis_(r, c);
        }
    std::vector<IntVector> gens;
    for (const IntVector& k : integer_kernel(stacked)) {
        IntVector u(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(t));
        gens.push_back(row_times(u, basis_));
    }
    return SubgroupLattice(moduli_, gens);
}

SubgroupLattice SubgroupLattice::dual() const {
    const std::size_t t = dimension();
    Int lcm = 1;
    for (const Int& m : moduli_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.get_mpz_t());
    // y is in the dual iff  sum_j y_j (lcm / m_j) h_j == 0 (mod lcm) for every basis row h
    IntMatrix system(t, 2 * t);
    for (std::size_t r = 0; r < t; ++r) {
        for (std::size_t c = 0; c < t; ++c) system(r, c) = basis_(r, c) * (lcm / moduli_[c]);
        system(r, t + r) = lcm;
    }
    std::vector<IntVector> gens;
    for (const IntVector& k : integer_kernel(system)) gens.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(t));
    return SubgroupLattice(moduli_, gens);
}

std::vector<SubgroupLattice::Factor> SubgroupLattice::invariant_factors() const {
    const std::size_t t = dimension();
    // Relations of the basis rows: C * B = diag(m), with B upper triangular.
    IntMatrix C(t, t);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < t; ++j) {
            Int acc = (i == j) ? moduli_[i] : Int(0);
            for (std::size_t k = 0; k < j; ++k) acc -= C(i, k) * basis_(k, j);
            C(i, j) = acc / basis_(j, j);
        }
    }
    SNFResult snf = smith_normal_form(C);
    std::vector<Factor> out;
    for (std::size_t i = 0; i < t; ++i) {
        const Int& d = snf.D(i, i);
        if (d == 1) continue;
        IntVector g = row_times(snf.V_inverse.row(i), basis_);
        for (std::size_t c = 0; c < t; ++c) mpz_fdiv_r(g[c].get_mpz_t(), g[c].get_mpz_t(), moduli_[c].get_mpz_t());
        out.push_back({std::move(g), d});
    }
    return out;
}

std::uint64_t to_u64(const Int& x) {
    if (sgn(x) < 0 || !x.fits_ulong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + x.get_str());
    return x.get_ui();
}

std::vector<std::uint64_t> to_u64(const IntVector& v) {
    std::vector<std::uint64_t> out;
    out.reserve(v.size());
    for (const Int& x : v) out.push_back(to_u64(x));
    return out;
}

IntVector to_int(std::span<const std::uint64_t> v) {
    IntVector out;
    out.reserve(v.size());
    for (std::uint64_t x : v) out.emplace_back(static_cast<unsigned long>(x));
    return out;
}

}  // namespace bbring::intlinalg
