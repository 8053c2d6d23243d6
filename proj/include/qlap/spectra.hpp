#ifndef QLAP_SPECTRA_HPP
#define QLAP_SPECTRA_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qlap/exact.hpp"
#include "qlap/graph.hpp"

namespace qlap {

using RealMatrix = Matrix<double>;

class JacobiError : public std::runtime_error {
public:
    JacobiError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

struct SpectrumReport {
    std::vector<double> values;  // descending
    RealMatrix vectors;          // column k pairs with values[k]
    double residual = 0.0;       // max_k ||M v_k - values[k] v_k||_2
};

namespace detail {

inline double frobenius_norm(const RealMatrix& m) {
    double acc = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) acc += m(i, j) * m(i, j);
    return std::sqrt(acc);
}

inline double off_diagonal_norm(const RealMatrix& m) {
    double acc = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j) acc += m(i, j) * m(i, j);
    return std::sqrt(acc);
}

} // namespace detail

/// Cyclic Jacobi eigensolver for symmetric matrices. Deterministic sweep
/// order; throws JacobiError if the off-diagonal mass has not dropped below
/// 1e-12 * ||M||_F after 100 sweeps.
inline SpectrumReport sym_eigen(const RealMatrix& input) {
    if (input.rows() != input.cols()) throw std::invalid_argument("sym_eigen: matrix not square");
    const int n = input.rows();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (input(i, j) != input(j, i)) throw std::invalid_argument("sym_eigen: matrix not symmetric");

    RealMatrix a = input;
    RealMatrix v = RealMatrix::identity(n);
    const double scale = detail::frobenius_norm(input);
    const double target = 1e-12 * (scale > 0.0 ? scale : 1.0);

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (detail::off_diagonal_norm(a) <= target) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= target / (n * n + 1)) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    const double off = detail::off_diagonal_norm(a);
    if (off > target)
        throw JacobiError("sym_eigen: no convergence after 100 sweeps (off-diagonal " +
                              std::to_string(off) + ", target " + std::to_string(target) + ")",
                          off);

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });

    SpectrumReport report;
    report.values.resize(static_cast<std::size_t>(n));
    report.vectors = RealMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        report.values[static_cast<std::size_t>(k)] = a(src, src);
        for (int i = 0; i < n; ++i) report.vectors(i, k) = v(i, src);
    }

    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = -report.values[static_cast<std::size_t>(k)] * report.vectors(i, k);
            for (int j = 0; j < n; ++j) r += input(i, j) * report.vectors(j, k);
            acc += r * r;
        }
        worst = std::max(worst, std::sqrt(acc));
    }
    report.residual = worst;
    return report;
}

inline RealMatrix to_real(const IntMatrix& m) {
    RealMatrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).convert_to<double>();
    return out;
}

/// Descending signless Laplacian spectrum of a graph.
inline SpectrumReport q_spectrum(const Graph& g) { return sym_eigen(to_real(q_matrix(g))); }

/// The quadratic form of the signless Laplacian: sum over edges of
/// (x_u + x_v)^2. Works for any ring-like scalar.
template <class T>
T quadratic_form_q(const Graph& g, const std::vector<T>& x) {
    if (static_cast<int>(x.size()) != g.order())
        throw std::invalid_argument("quadratic_form_q: vector length mismatch");
    T acc{};
    for (auto [u, v] : g.edges()) {
        const T s = x[static_cast<std::size_t>(u)] + x[static_cast<std::size_t>(v)];
        acc += s * s;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Combined exact/floating view of one symmetric integer matrix's spectrum:
// integer eigenvalues are pinned down exactly (position and multiplicity via
// Sturm counts), everything else falls back to the Jacobi values.
// ---------------------------------------------------------------------------

class ExactEigenProfile {
public:
    explicit ExactEigenProfile(IntMatrix m) : ExactEigenProfile(std::move(m), nullptr) {}

    /// Variant for callers that already computed the characteristic polynomial.
    ExactEigenProfile(IntMatrix m, IntPolynomial poly)
        : ExactEigenProfile(std::move(m), &poly) {}

private:
    ExactEigenProfile(IntMatrix m, IntPolynomial* poly)
        : matrix_(std::move(m)), poly_(poly ? std::move(*poly) : char_poly(matrix_)), counter_(poly_) {
        const int n = matrix_.rows();
        Int lo = 0, hi = 0;
        for (int i = 0; i < n; ++i) {
            Int radius = 0;
            for (int j = 0; j < n; ++j)
                if (i != j) radius += abs(matrix_(i, j));
            lo = std::min(lo, Int(matrix_(i, i) - radius));
            hi = std::max(hi, Int(matrix_(i, i) + radius));
        }
        for (Int k = lo; k <= hi; ++k) {
            const int mult = counter_.multiplicity_at(Rat(k));
            if (mult == 0) continue;
            const int above = counter_.count_above(Rat(k));
            integer_roots_.push_back({k, above, mult});
        }
    }

public:
    int order() const { return matrix_.rows(); }
    const IntMatrix& matrix() const { return matrix_; }
    const IntPolynomial& poly() const { return poly_; }
    const RealRootCounter& counter() const { return counter_; }

    /// Exact value of the k-th largest eigenvalue (1-based) when it is an
    /// integer, nullopt when it is irrational.
    std::optional<Int> exact_value_at(int k) const {
        if (k < 1 || k > order()) throw std::out_of_range("eigen profile: index out of range");
        for (const auto& root : integer_roots_)
            if (root.above < k && k <= root.above + root.multiplicity) return root.value;
        return std::nullopt;
    }

    /// Jacobi approximation of the k-th largest eigenvalue (1-based).
    double float_value_at(int k) const {
        if (k < 1 || k > order()) throw std::out_of_range("eigen profile: index out of range");
        if (!floats_) floats_ = sym_eigen(to_real(matrix_)).values;
        return (*floats_)[static_cast<std::size_t>(k - 1)];
    }

private:
    struct IntegerRoot {
        Int value;
        int above;         // eigenvalues strictly greater than value
        int multiplicity;
    };

    IntMatrix matrix_;
    IntPolynomial poly_;
    RealRootCounter counter_;
    std::vector<IntegerRoot> integer_roots_;
    mutable std::optional<std::vector<double>> floats_;
};

// ---------------------------------------------------------------------------
// Weyl inequalities for C = A + B. For indices with i + j - n >= 1 the sum
// bound lambda_i(A) + lambda_j(B) <= lambda_{i+j-n}(C) applies; for indices
// with i + j - 1 <= n the bound lambda_i(A) + lambda_j(B) >= lambda_{i+j-1}(C)
// applies. Equality is only ever asserted on the exact (integer) path, where
// it comes with a common-eigenvector certificate when one exists.
// ---------------------------------------------------------------------------

enum class WeylSide { upper_bound, lower_bound };

inline std::string_view weyl_side_name(WeylSide side) {
    return side == WeylSide::upper_bound ? "upper" : "lower";
}

struct WeylVerdict {
    WeylSide side = WeylSide::upper_bound;
    int i = 0, j = 0, k = 0;
    bool exact = false;        // all three eigenvalues integer, decided exactly
    bool holds = false;
    bool equality = false;     // meaningful only when exact
    bool undecided = false;    // float path, |lhs - rhs| below tolerance
    double lhs = 0.0, rhs = 0.0;
    std::optional<Int> exact_lhs, exact_rhs;
    std::optional<IntVector> certificate;  // common eigenvector at equality
    std::string note;
};

inline constexpr double kWeylFloatTolerance = 1e-9;

namespace detail {

/// Primitive common eigenvector of A (value la) and B (value lb), if any.
inline std::optional<IntVector> common_eigenvector(const IntMatrix& a, const Int& la,
                                                   const IntMatrix& b, const Int& lb) {
    const auto basis = kernel_basis(stack_vertically(shifted(a, la), shifted(b, lb)));
    if (basis.empty()) return std::nullopt;
    IntVector y = basis.front();
    const IntVector ay = matvec(a, y);
    const IntVector by = matvec(b, y);
    for (std::size_t t = 0; t < y.size(); ++t)
        if (ay[t] != la * y[t] || by[t] != lb * y[t])
            throw std::logic_error("weyl: certificate verification failed");
    return y;
}

inline WeylVerdict weyl_one_side(const ExactEigenProfile& pa, const ExactEigenProfile& pb,
                                 const ExactEigenProfile& pc, WeylSide side, int i, int j) {
    const int n = pa.order();
    WeylVerdict v;
    v.side = side;
    v.i = i;
    v.j = j;
    v.k = side == WeylSide::upper_bound ? i + j - n : i + j - 1;

    const auto ea = pa.exact_value_at(i);
    const auto eb = pb.exact_value_at(j);
    const auto ec = pc.exact_value_at(v.k);
    if (ea && eb && ec) {
        v.exact = true;
        v.exact_lhs = *ea + *eb;
        v.exact_rhs = *ec;
        v.lhs = v.exact_lhs->convert_to<double>();
        v.rhs = v.exact_rhs->convert_to<double>();
        const int cmp = *v.exact_lhs < *v.exact_rhs ? -1 : (*v.exact_lhs == *v.exact_rhs ? 0 : 1);
        v.holds = side == WeylSide::upper_bound ? cmp <= 0 : cmp >= 0;
        v.equality = cmp == 0;
        if (v.equality) {
            v.certificate = common_eigenvector(pa.matrix(), *ea, pb.matrix(), *eb);
            if (!v.certificate) v.note = "equality without a common eigenvector";
        }
        return v;
    }

    v.lhs = pa.float_value_at(i) + pb.float_value_at(j);
    v.rhs = pc.float_value_at(v.k);
    if (std::abs(v.lhs - v.rhs) <= kWeylFloatTolerance) {
        v.undecided = true;
        v.holds = true;
        v.note = "within float tolerance of equality; not decided exactly";
    } else {
        v.holds = side == WeylSide::upper_bound ? v.lhs < v.rhs : v.lhs > v.rhs;
    }
    return v;
}

} // namespace detail

/// Checks every Weyl inequality applicable to the index pair (i, j), in the
/// order upper bound then lower bound. A and B must be symmetric and of equal
/// order; eigenvalue indices are 1-based.
inline std::vector<WeylVerdict> weyl_check(const ExactEigenProfile& pa, const ExactEigenProfile& pb,
                                           const ExactEigenProfile& pc, int i, int j) {
    const int n = pa.order();
    if (pb.order() != n || pc.order() != n) throw std::invalid_argument("weyl: order mismatch");
    if (i < 1 || i > n || j < 1 || j > n) throw std::invalid_argument("weyl: index out of range");
    std::vector<WeylVerdict> out;
    if (i + j - n >= 1) out.push_back(detail::weyl_one_side(pa, pb, pc, WeylSide::upper_bound, i, j));
    if (i + j - 1 <= n) out.push_back(detail::weyl_one_side(pa, pb, pc, WeylSide::lower_bound, i, j));
    return out;
}

inline std::vector<WeylVerdict> weyl_check(const IntMatrix& a, const IntMatrix& b, int i, int j) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw std::invalid_argument("weyl: matrices must be square and of equal order");
    IntMatrix c(a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int s = 0; s < a.cols(); ++s) c(r, s) = a(r, s) + b(r, s);
    const ExactEigenProfile pa(a), pb(b), pc(std::move(c));
    return weyl_check(pa, pb, pc, i, j);
}

} // namespace qlap

#endif // QLAP_SPECTRA_HPP
