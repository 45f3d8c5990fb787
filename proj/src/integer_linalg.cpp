#include "ahg/integer_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ahg {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// floor quotient, exact for GMP integers
Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int tdiv(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// column operation: col[j] -= q * col[jsrc], applied to H and U in lockstep
void col_axpy(IntMatrix& m, std::size_t j, const Int& q, std::size_t jsrc) {
    for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) -= q * m.at(i, jsrc);
}

void col_swap(IntMatrix& m, std::size_t j1, std::size_t j2) {
    if (j1 == j2) return;
    for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, j1), m.at(i, j2));
}

void col_negate(IntMatrix& m, std::size_t j) {
    for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) = -m.at(i, j);
}

bool is_diagonal(const IntMatrix& d) {
    for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t j = 0; j < d.cols; ++j)
            if (i != j && d.at(i, j) != 0) return false;
    return true;
}

// divisibility chain on the diagonal, zeros only at the end
bool divisor_chain_ok(const IntMatrix& d) {
    std::size_t k = std::min(d.rows, d.cols);
    for (std::size_t i = 0; i + 1 < k; ++i) {
        const Int& a = d.at(i, i);
        const Int& b = d.at(i + 1, i + 1);
        if (a == 0) {
            if (b != 0) return false;
        } else if (b % a != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
    require(!rows.empty(), "from_rows: empty");
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require(rows[i].size() == m.cols, "from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<IntVec>& cols) {
    require(!cols.empty(), "from_cols: empty");
    IntMatrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        require(cols[j].size() == m.rows, "from_cols: ragged columns");
        for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

IntVec IntMatrix::row(std::size_t i) const {
    IntVec v(cols);
    for (std::size_t j = 0; j < cols; ++j) v[j] = at(i, j);
    return v;
}

IntVec IntMatrix::col(std::size_t j) const {
    IntVec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
    require(a.cols == b.rows, "mul: shape mismatch");
    IntMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

IntVec mul(const IntMatrix& a, const IntVec& v) {
    require(a.cols == v.size(), "mul: shape mismatch");
    IntVec r(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) r[i] += a.at(i, j) * v[j];
    return r;
}

Int determinant(const IntMatrix& m) {
    require(m.rows == m.cols, "determinant: square matrix required");
    std::size_t n = m.rows;
    if (n == 0) return 1;
    IntMatrix w = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

bool is_unimodular(const IntMatrix& m) {
    if (m.rows != m.cols) return false;
    Int d = determinant(m);
    return d == 1 || d == -1;
}

HnfResult hermite_normal_form(const IntMatrix& m) {
    require(m.rows > 0 && m.cols > 0, "hermite_normal_form: empty matrix");
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.cols);
    std::size_t pivot_col = 0;
    for (std::size_t row = 0; row < h.rows && pivot_col < h.cols; ++row) {
        // Euclid across the active columns until one nonzero entry remains
        for (;;) {
            std::size_t jmin = h.cols;
            for (std::size_t j = pivot_col; j < h.cols; ++j) {
                if (h.at(row, j) == 0) continue;
                if (jmin == h.cols || abs(h.at(row, j)) < abs(h.at(row, jmin))) jmin = j;
            }
            if (jmin == h.cols) break;  // row has no pivot among active columns
            bool others = false;
            for (std::size_t j = pivot_col; j < h.cols; ++j) {
                if (j == jmin || h.at(row, j) == 0) continue;
                others = true;
                Int q = tdiv(h.at(row, j), h.at(row, jmin));
                if (q != 0) {
                    col_axpy(h, j, q, jmin);
                    col_axpy(u, j, q, jmin);
                }
            }
            if (!others) {
                col_swap(h, jmin, pivot_col);
                col_swap(u, jmin, pivot_col);
                if (h.at(row, pivot_col) < 0) {
                    col_negate(h, pivot_col);
                    col_negate(u, pivot_col);
                }
                const Int& p = h.at(row, pivot_col);
                for (std::size_t l = 0; l < pivot_col; ++l) {
                    Int q = fdiv(h.at(row, l), p);
                    if (q != 0) {
                        col_axpy(h, l, q, pivot_col);
                        col_axpy(u, l, q, pivot_col);
                    }
                }
                ++pivot_col;
                break;
            }
        }
    }
    if (!is_unimodular(u)) throw std::logic_error("hermite_normal_form: transform not unimodular");
    return {std::move(h), std::move(u)};
}

HnfResult hermite_normal_form_rows(const IntMatrix& m) {
    HnfResult t = hermite_normal_form(m.transposed());
    return {t.H.transposed(), t.U.transposed()};
}

std::size_t SnfResult::rank() const {
    std::size_t r = 0;
    for (const Int& d : divisors)
        if (d != 0) ++r;
    return r;
}

SnfResult smith_normal_form(const IntMatrix& m) {
    require(m.rows > 0 && m.cols > 0, "smith_normal_form: empty matrix");
    IntMatrix d = m;
    IntMatrix u = IntMatrix::identity(m.rows);
    IntMatrix v = IntMatrix::identity(m.cols);
    // Alternate row/column Hermite passes until diagonal, then repair the
    // divisibility chain and re-run. Each repair strictly shrinks a pivot,
    // so the loop terminates; the cap is a safety net only.
    for (int iter = 0; iter < 10000; ++iter) {
        if (is_diagonal(d)) {
            if (divisor_chain_ok(d)) {
                std::vector<Int> divisors(std::min(d.rows, d.cols));
                for (std::size_t i = 0; i < divisors.size(); ++i) divisors[i] = d.at(i, i);
                if (mul(mul(u, m), v) != d)
                    throw std::logic_error("smith_normal_form: transform check failed");
                return {std::move(divisors), std::move(u), std::move(v)};
            }
            std::size_t k = std::min(d.rows, d.cols);
            for (std::size_t i = 0; i + 1 < k; ++i) {
                const Int a = d.at(i, i);
                const Int b = d.at(i + 1, i + 1);
                bool bad = (a == 0) ? (b != 0) : (b % a != 0);
                if (bad) {
                    // fold row i+1 into row i; the column pass below puts
                    // gcd(a, b) at position i (strictly smaller than a)
                    for (std::size_t j = 0; j < d.cols; ++j) d.at(i, j) += d.at(i + 1, j);
                    for (std::size_t j = 0; j < u.cols; ++j) u.at(i, j) += u.at(i + 1, j);
                    break;
                }
            }
            HnfResult c = hermite_normal_form(d);
            d = c.H;
            v = mul(v, c.U);
            continue;
        }
        HnfResult r = hermite_normal_form_rows(d);
        d = r.H;
        u = mul(r.U, u);
        if (is_diagonal(d)) continue;
        HnfResult c = hermite_normal_form(d);
        d = c.H;
        v = mul(v, c.U);
    }
    throw std::logic_error("smith_normal_form: did not converge");
}

IntVec primitive_vector(const IntVec& v) {
    require(!v.empty(), "primitive_vector: empty vector");
    Int g = 0;
    for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) throw std::invalid_argument("primitive_vector: zero vector");
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        mpz_divexact(r[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
    return r;
}

namespace {

// canonical form of a list of lattice vectors: column HNF of the matrix
// whose columns are the vectors
std::vector<IntVec> canonical_basis(const std::vector<IntVec>& vecs) {
    if (vecs.empty()) return {};
    HnfResult r = hermite_normal_form(IntMatrix::from_cols(vecs));
    std::vector<IntVec> out;
    for (std::size_t j = 0; j < r.H.cols; ++j) {
        IntVec c = r.H.col(j);
        if (!is_zero(c)) out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::vector<IntVec> integer_kernel(const IntMatrix& m) {
    if (m.rows == 0) {
        std::vector<IntVec> basis;
        for (std::size_t j = 0; j < m.cols; ++j) {
            IntVec e(m.cols);
            e[j] = 1;
            basis.push_back(std::move(e));
        }
        return basis;
    }
    HnfResult r = hermite_normal_form(m);
    std::vector<IntVec> basis;
    for (std::size_t j = 0; j < r.H.cols; ++j)
        if (is_zero(r.H.col(j))) basis.push_back(r.U.col(j));
    return canonical_basis(basis);
}

std::vector<IntVec> lattice_basis_of_span(const std::vector<IntVec>& vectors,
                                          std::size_t ambient_dim) {
    std::vector<IntVec> nonzero;
    for (const IntVec& v : vectors) {
        require(v.size() == ambient_dim, "lattice_basis_of_span: wrong vector length");
        if (!is_zero(v)) nonzero.push_back(v);
    }
    if (nonzero.empty()) return {};
    // orthogonal complement W of the span (saturated, as an integer kernel),
    // then the saturation of the span is the integer kernel of W^T
    IntMatrix b = IntMatrix::from_cols(nonzero);
    std::vector<IntVec> w = integer_kernel(b.transposed());
    if (w.empty()) {
        std::vector<IntVec> full;
        for (std::size_t j = 0; j < ambient_dim; ++j) {
            IntVec e(ambient_dim);
            e[j] = 1;
            full.push_back(std::move(e));
        }
        return full;
    }
    return canonical_basis(integer_kernel(IntMatrix::from_rows(w)));
}

std::optional<std::vector<Rat>> solve_rational(const IntMatrix& b, const IntVec& y) {
    require(b.rows == y.size(), "solve_rational: shape mismatch");
    std::size_t n = b.rows, d = b.cols;
    // Gauss-Jordan over Q on the augmented matrix
    std::vector<std::vector<Rat>> w(n, std::vector<Rat>(d + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) w[i][j] = Rat(b.at(i, j));
        w[i][d] = Rat(y[i]);
    }
    std::vector<std::size_t> pivot_of_col(d, n);
    std::size_t r = 0;
    for (std::size_t j = 0; j < d && r < n; ++j) {
        std::size_t p = r;
        while (p < n && w[p][j] == 0) ++p;
        if (p == n) continue;
        std::swap(w[p], w[r]);
        Rat inv = w[r][j];
        for (std::size_t k = j; k <= d; ++k) w[r][k] /= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || w[i][j] == 0) continue;
            Rat f = w[i][j];
            for (std::size_t k = j; k <= d; ++k) w[i][k] -= f * w[r][k];
        }
        pivot_of_col[j] = r;
        ++r;
    }
    for (std::size_t i = r; i < n; ++i)
        if (w[i][d] != 0) return std::nullopt;  // inconsistent
    for (std::size_t j = 0; j < d; ++j)
        if (pivot_of_col[j] == n) return std::nullopt;  // rank-deficient
    std::vector<Rat> x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = w[pivot_of_col[j]][d];
    return x;
}

std::optional<IntVec> solve_integer(const IntMatrix& b, const IntVec& y) {
    auto q = solve_rational(b, y);
    if (!q) return std::nullopt;
    IntVec x(q->size());
    for (std::size_t i = 0; i < q->size(); ++i) {
        if ((*q)[i].get_den() != 1) return std::nullopt;
        x[i] = (*q)[i].get_num();
    }
    return x;
}

double rat_to_double(const Rat& q) {
    double num = q.get_num().get_d();
    double den = q.get_den().get_d();
    if (std::abs(num) < 9.007199254740992e15 && std::abs(den) < 9.007199254740992e15)
        return num / den;
    return q.get_d();
}

Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: length mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec neg(const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

bool is_zero(const IntVec& a) {
    for (const Int& x : a)
        if (x != 0) return false;
    return true;
}

std::string to_string(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << ")";
    return os.str();
}

}  // namespace ahg
