#ifndef QLAP_EXACT_HPP
#define QLAP_EXACT_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qlap/graph.hpp"

namespace qlap {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

inline int sign_of(const Int& x) { return x == 0 ? 0 : (x < 0 ? -1 : 1); }

// ---------------------------------------------------------------------------
// Dense matrix, row major.
// ---------------------------------------------------------------------------

template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative dimension");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[index(i, j)]; }
    const T& operator()(int i, int j) const { return data_[index(i, j)]; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
    }

    int rows_, cols_;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix: shape mismatch in product");
    Matrix<T> out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

template <class T>
std::vector<T> matvec(const Matrix<T>& m, const std::vector<T>& x) {
    if (m.cols() != static_cast<int>(x.size())) throw std::invalid_argument("matrix: shape mismatch in apply");
    std::vector<T> out(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        T acc = 0;
        for (int j = 0; j < m.cols(); ++j) acc += m(i, j) * x[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = std::move(acc);
    }
    return out;
}

template <class T>
Matrix<T> stack_vertically(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("matrix: shape mismatch in stack");
    Matrix<T> out(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
    return out;
}

inline IntMatrix a_matrix(const Graph& g) {
    const int n = g.order();
    IntMatrix m(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.has_edge(u, v)) {
                m(u, v) = 1;
                m(v, u) = 1;
            }
    return m;
}

/// Signless Laplacian: degree diagonal plus adjacency.
inline IntMatrix q_matrix(const Graph& g) {
    IntMatrix m = a_matrix(g);
    for (int v = 0; v < g.order(); ++v) m(v, v) = g.degree(v);
    return m;
}

inline IntMatrix shifted(IntMatrix m, const Int& lambda) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix: shift needs a square matrix");
    for (int i = 0; i < m.rows(); ++i) m(i, i) -= lambda;
    return m;
}

// ---------------------------------------------------------------------------
// Fraction-free (Bareiss) elimination: rank and determinant.
// ---------------------------------------------------------------------------

inline int rank(IntMatrix m) {
    const int rows = m.rows(), cols = m.cols();
    Int prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (m(i, c) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = c; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
            m(i, c) = 0;
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

inline Int determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix: determinant needs a square matrix");
    const int n = m.rows();
    Int prev = 1;
    int sign = 1;
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int i = c; i < n; ++i)
            if (m(i, c) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != c) {
            for (int j = c; j < n; ++j) std::swap(m(pivot, j), m(c, j));
            sign = -sign;
        }
        for (int i = c + 1; i < n; ++i) {
            for (int j = c + 1; j < n; ++j)
                m(i, j) = (m(c, c) * m(i, j) - m(i, c) * m(c, j)) / prev;
            m(i, c) = 0;
        }
        prev = m(c, c);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Exact kernel basis.
// ---------------------------------------------------------------------------

/// Scale a rational vector to a primitive integer vector (coprime entries,
/// first nonzero entry positive). The zero vector is rejected.
inline IntVector primitive_vector(const RatVector& x) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Int lcm_den = 1;
    for (const Rat& v : x) {
        const Int d = denominator(v);
        lcm_den = lcm_den / gcd(lcm_den, d) * d;
    }
    IntVector out(x.size());
    Int content = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = numerator(x[i]) * (lcm_den / denominator(x[i]));
        content = gcd(content, out[i]);
    }
    if (content == 0) throw std::invalid_argument("primitive_vector: zero vector");
    int lead = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] /= content;
        if (lead == 0) lead = sign_of(out[i]);
    }
    if (lead < 0)
        for (Int& v : out) v = -v;
    return out;
}

inline IntVector primitive_vector(const IntVector& x) {
    RatVector q(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) q[i] = Rat(x[i]);
    return primitive_vector(q);
}

/// Basis of { x : m x = 0 } as primitive integer vectors, one per free column
/// of the reduced row echelon form, in ascending free-column order.
inline std::vector<IntVector> kernel_basis(const IntMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    RatMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = Rat(m(i, j));

    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (a(i, c) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != r)
            for (int j = c; j < cols; ++j) std::swap(a(pivot, j), a(r, j));
        const Rat inv = a(r, c);
        for (int j = c; j < cols; ++j) a(r, j) /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rat f = a(i, c);
            for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<IntVector> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[static_cast<std::size_t>(fc)]) continue;
        RatVector x(static_cast<std::size_t>(cols), Rat(0));
        x[static_cast<std::size_t>(fc)] = 1;
        for (std::size_t row = 0; row < pivot_col.size(); ++row)
            x[static_cast<std::size_t>(pivot_col[row])] = -a(static_cast<int>(row), fc);
        basis.push_back(primitive_vector(x));
    }

    for (const IntVector& y : basis)
        for (const Int& entry : matvec(m, y))
            if (entry != 0) throw std::logic_error("kernel_basis: residual check failed");
    return basis;
}

// ---------------------------------------------------------------------------
// Integer polynomials, ascending coefficient order (coeff[i] multiplies x^i).
// ---------------------------------------------------------------------------

struct IntPolynomial {
    std::vector<Int> coeff{Int(0)};

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> c) : coeff(std::move(c)) {
        if (coeff.empty()) coeff.assign(1, Int(0));
        trim();
    }

    void trim() {
        while (coeff.size() > 1 && coeff.back() == 0) coeff.pop_back();
    }

    bool is_zero() const { return coeff.size() == 1 && coeff[0] == 0; }
    int degree() const { return static_cast<int>(coeff.size()) - 1; }
    const Int& leading() const { return coeff.back(); }

    Int eval(const Int& x) const {
        Int acc = 0;
        for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * x + coeff[i];
        return acc;
    }

    bool operator==(const IntPolynomial&) const = default;
};

inline IntPolynomial derivative(const IntPolynomial& p) {
    if (p.degree() == 0) return IntPolynomial{};
    std::vector<Int> d(static_cast<std::size_t>(p.degree()));
    for (int i = 1; i <= p.degree(); ++i) d[static_cast<std::size_t>(i - 1)] = p.coeff[static_cast<std::size_t>(i)] * i;
    return IntPolynomial(std::move(d));
}

inline Int content(const IntPolynomial& p) {
    Int c = 0;
    for (const Int& a : p.coeff) c = gcd(c, a);
    return c;  // zero for the zero polynomial
}

inline IntPolynomial primitive_part(IntPolynomial p) {
    const Int c = content(p);
    if (c == 0 || c == 1) return p;
    for (Int& a : p.coeff) a /= c;
    return p;
}

/// Exact quotient p / d; throws if the division leaves a remainder.
inline IntPolynomial exact_divide(const IntPolynomial& p, const IntPolynomial& d) {
    if (d.is_zero()) throw std::invalid_argument("polynomial: division by zero");
    if (p.is_zero()) return IntPolynomial{};
    if (p.degree() < d.degree()) throw std::logic_error("polynomial: division not exact");
    std::vector<Int> rem = p.coeff;
    std::vector<Int> quot(static_cast<std::size_t>(p.degree() - d.degree() + 1));
    for (int k = p.degree() - d.degree(); k >= 0; --k) {
        const Int& top = rem[static_cast<std::size_t>(k + d.degree())];
        if (top % d.leading() != 0) throw std::logic_error("polynomial: division not exact");
        const Int q = top / d.leading();
        quot[static_cast<std::size_t>(k)] = q;
        if (q != 0)
            for (int i = 0; i <= d.degree(); ++i)
                rem[static_cast<std::size_t>(k + i)] -= q * d.coeff[static_cast<std::size_t>(i)];
    }
    for (const Int& a : rem)
        if (a != 0) throw std::logic_error("polynomial: division not exact");
    return IntPolynomial(std::move(quot));
}

/// Pseudo-remainder of f by g, i.e. the remainder of lc(g)^(deg f - deg g + 1) * f.
inline IntPolynomial pseudo_remainder(const IntPolynomial& f, const IntPolynomial& g) {
    if (g.is_zero()) throw std::invalid_argument("polynomial: pseudo-remainder by zero");
    IntPolynomial r = f;
    int steps = f.degree() - g.degree() + 1;
    while (!r.is_zero() && r.degree() >= g.degree()) {
        const Int s = r.leading();
        const int shift = r.degree() - g.degree();
        std::vector<Int> next(r.coeff.size());
        for (int i = 0; i <= r.degree(); ++i) next[static_cast<std::size_t>(i)] = r.coeff[static_cast<std::size_t>(i)] * g.leading();
        for (int i = 0; i <= g.degree(); ++i)
            next[static_cast<std::size_t>(i + shift)] -= s * g.coeff[static_cast<std::size_t>(i)];
        r = IntPolynomial(std::move(next));
        --steps;
    }
    // pad the multiplier so every branch uses exactly lc(g)^(deg f - deg g + 1)
    if (steps > 0) {
        Int scale = 1;
        for (int i = 0; i < steps; ++i) scale *= g.leading();
        for (Int& a : r.coeff) a *= scale;
        r.trim();
    }
    return r;
}

/// Primitive gcd in Z[x] (content stripped, positive leading coefficient).
inline IntPolynomial polynomial_gcd(IntPolynomial a, IntPolynomial b) {
    a = primitive_part(std::move(a));
    b = primitive_part(std::move(b));
    if (a.is_zero()) std::swap(a, b);
    while (!b.is_zero()) {
        if (a.degree() < b.degree()) std::swap(a, b);
        IntPolynomial r = primitive_part(pseudo_remainder(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    if (sign_of(a.leading()) < 0)
        for (Int& c : a.coeff) c = -c;
    return a;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial by the Faddeev-LeVerrier recurrence. All the
// divisions are exact; intermediates stay polynomial in the entries, so no
// rational arithmetic is needed.
// ---------------------------------------------------------------------------

inline constexpr int kMaxCharPolyOrder = 16;

inline IntPolynomial char_poly(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: matrix not square");
    const int n = m.rows();
    if (n > kMaxCharPolyOrder) throw std::invalid_argument("char_poly: order above supported bound (16)");
    std::vector<Int> coeff(static_cast<std::size_t>(n + 1));
    coeff[static_cast<std::size_t>(n)] = 1;
    IntMatrix work = IntMatrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        work = m * work;
        Int trace = 0;
        for (int i = 0; i < n; ++i) trace += work(i, i);
        const Int a = -trace / k;
        if (a * k != -trace) throw std::logic_error("char_poly: inexact division");
        coeff[static_cast<std::size_t>(n - k)] = a;
        for (int i = 0; i < n; ++i) work(i, i) += a;
    }
    return IntPolynomial(std::move(coeff));
}

// ---------------------------------------------------------------------------
// Exact root counting above a rational threshold, with multiplicity, via
// Sturm chains on the squarefree tower p, gcd(p,p'), gcd of that with its
// derivative, ... (a root of multiplicity m shows up in exactly m layers).
// ---------------------------------------------------------------------------

namespace detail {

/// Sign of p(a/b) for b > 0, from the homogenized value sum c_i a^i b^(d-i).
inline int sign_at(const IntPolynomial& p, const Int& num, const Int& den) {
    Int acc = p.coeff.back();
    for (std::size_t i = p.coeff.size() - 1; i-- > 0;) {
        acc = acc * num + p.coeff[i] * boost::multiprecision::pow(den, static_cast<unsigned>(p.coeff.size() - 1 - i));
    }
    return sign_of(acc);
}

class SturmChain {
public:
    explicit SturmChain(IntPolynomial squarefree) {
        chain_.push_back(std::move(squarefree));
        if (chain_[0].degree() >= 1) {
            chain_.push_back(primitive_part(derivative(chain_[0])));
            while (chain_.back().degree() >= 1) {
                const IntPolynomial& f = chain_[chain_.size() - 2];
                const IntPolynomial& g = chain_.back();
                IntPolynomial r = pseudo_remainder(f, g);
                if (r.is_zero()) break;
                // the chain needs -remainder up to a positive factor; the
                // pseudo-multiplier lc(g)^(deg f - deg g + 1) may be negative
                const bool multiplier_negative =
                    sign_of(g.leading()) < 0 && ((f.degree() - g.degree() + 1) % 2 != 0);
                if (!multiplier_negative)
                    for (Int& c : r.coeff) c = -c;
                chain_.push_back(primitive_part(std::move(r)));
            }
        }
    }

    /// Distinct real roots strictly greater than num/den (den > 0).
    int count_above(const Int& num, const Int& den) const {
        return variations_at(num, den) - variations_at_infinity();
    }

private:
    int variations_at(const Int& num, const Int& den) const {
        int variations = 0, prev = 0;
        for (const IntPolynomial& p : chain_) {
            const int s = sign_at(p, num, den);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++variations;
            prev = s;
        }
        return variations;
    }

    int variations_at_infinity() const {
        int variations = 0, prev = 0;
        for (const IntPolynomial& p : chain_) {
            const int s = sign_of(p.leading());
            if (prev != 0 && s != prev) ++variations;
            prev = s;
        }
        return variations;
    }

    std::vector<IntPolynomial> chain_;
};

} // namespace detail

/// Counts real roots of an integer polynomial above rational thresholds,
/// with multiplicity, and reports exact root multiplicities at rationals.
class RealRootCounter {
public:
    explicit RealRootCounter(const IntPolynomial& p) {
        if (p.is_zero()) throw std::invalid_argument("root counter: zero polynomial");
        IntPolynomial layer = primitive_part(p);
        while (layer.degree() >= 1) {
            IntPolynomial g = polynomial_gcd(layer, derivative(layer));
            IntPolynomial squarefree = exact_divide(layer, g);
            layers_.push_back(squarefree);
            chains_.emplace_back(std::move(squarefree));
            layer = std::move(g);
        }
    }

    /// Roots strictly greater than t, counted with multiplicity.
    int count_above(const Rat& t) const {
        const auto [num, den] = split(t);
        int total = 0;
        for (const auto& chain : chains_) total += chain.count_above(num, den);
        return total;
    }

    /// Multiplicity of t as a root (0 when t is not a root).
    int multiplicity_at(const Rat& t) const {
        const auto [num, den] = split(t);
        int total = 0;
        for (const IntPolynomial& layer : layers_)
            if (detail::sign_at(layer, num, den) == 0) ++total;
        return total;
    }

private:
    static std::pair<Int, Int> split(const Rat& t) {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        return {Int(numerator(t)), Int(denominator(t))};
    }

    std::vector<IntPolynomial> layers_;
    std::vector<detail::SturmChain> chains_;
};

inline int count_roots_above(const IntPolynomial& p, const Rat& t) {
    return RealRootCounter(p).count_above(t);
}

/// Dimension of the lambda-eigenspace of an integer matrix.
inline int int_eigen_multiplicity(const IntMatrix& m, const Int& lambda) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigen multiplicity: matrix not square");
    return m.rows() - rank(shifted(m, lambda));
}

} // namespace qlap

#endif // QLAP_EXACT_HPP
