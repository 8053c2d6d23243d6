#ifndef QLAP_THEOREMS_HPP
#define QLAP_THEOREMS_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlap/exact.hpp"
#include "qlap/graph.hpp"
#include "qlap/graph_analysis.hpp"
#include "qlap/spectra.hpp"

namespace qlap {

// ---------------------------------------------------------------------------
// Exact bookkeeping around the eigenvalue n-2: how many Q-eigenvalues lie
// strictly above it (a), its multiplicity (m), and the count m2 of indices
// i >= 2 with q_i = n-2. The two ingredients deliberately travel different
// routes (Sturm count vs. rank deficiency) so they cross-check each other.
// ---------------------------------------------------------------------------

struct SpectralIndexCount {
    int above = 0;         // a: eigenvalues strictly greater than n-2
    int multiplicity = 0;  // m: multiplicity of n-2
    int m2 = 0;            // # of indices i >= 2 with q_i = n-2

    bool operator==(const SpectralIndexCount&) const = default;
};

namespace detail {

inline int m2_from_counts(int above, int multiplicity) {
    return std::max(0, above + multiplicity - std::max(above, 1));
}

inline SpectralIndexCount spectral_index_count_from(const IntMatrix& q, const RealRootCounter& counter) {
    const int n = q.rows();
    SpectralIndexCount out;
    out.above = counter.count_above(Rat(n - 2));
    out.multiplicity = int_eigen_multiplicity(q, Int(n - 2));
    out.m2 = m2_from_counts(out.above, out.multiplicity);
    return out;
}

} // namespace detail

inline SpectralIndexCount spectral_index_count(const Graph& g) {
    if (g.order() < 2) throw std::invalid_argument("spectral_index_count: needs n >= 2");
    const IntMatrix q = q_matrix(g);
    const RealRootCounter counter(char_poly(q));
    return detail::spectral_index_count_from(q, counter);
}

/// Largest k for which the complement has k balanced bipartite components or
/// k+1 bipartite components; equivalently max(bb, b-1, 0) over the complement.
inline int structural_m2(const Graph& g) {
    if (g.order() < 2) throw std::invalid_argument("structural_m2: needs n >= 2");
    const BipartiteProfile profile = bipartite_profile(complement(g));
    return std::max({profile.balanced_count, profile.bipartite_count - 1, 0});
}

// ---------------------------------------------------------------------------
// Certificate vectors: for each solution a of the hyperplane equation
// sum_i p_i a_i = 0 over the complement's bipartite components (p_i the class
// imbalance, -1 for an isolated vertex), the vertex vector taking a_i on one
// class and -a_i on the other is an exact (n-2)-eigenvector of Q(g).
// ---------------------------------------------------------------------------

class NoCertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::vector<IntVector> certificate_vectors(const Graph& g, const BipartiteProfile& complement_profile) {
    const int n = g.order();
    if (n < 2) throw std::invalid_argument("certificate_vectors: needs n >= 2");

    std::vector<const ComponentRecord*> bip;
    for (const ComponentRecord& comp : complement_profile.components)
        if (comp.bipartite) bip.push_back(&comp);
    const int b = static_cast<int>(bip.size());
    const int k = std::max({complement_profile.balanced_count, b - 1, 0});
    if (k == 0) throw NoCertificateError("complement has no qualifying bipartite components");

    // Basis of { a : sum p_i a_i = 0 }: unit vectors when every p_i vanishes,
    // otherwise p_j e_i - p_i e_j against the first component with p_j != 0.
    int pivot = -1;
    for (int i = 0; i < b; ++i)
        if (bip[static_cast<std::size_t>(i)]->imbalance != 0) {
            pivot = i;
            break;
        }

    std::vector<IntVector> coefficient_basis;
    for (int i = 0; i < b; ++i) {
        if (i == pivot) continue;
        IntVector a(static_cast<std::size_t>(b), Int(0));
        if (pivot < 0) {
            a[static_cast<std::size_t>(i)] = 1;
        } else {
            a[static_cast<std::size_t>(i)] = bip[static_cast<std::size_t>(pivot)]->imbalance;
            a[static_cast<std::size_t>(pivot)] = -bip[static_cast<std::size_t>(i)]->imbalance;
        }
        coefficient_basis.push_back(primitive_vector(a));
    }
    if (static_cast<int>(coefficient_basis.size()) != k)
        throw std::logic_error("certificate_vectors: basis dimension mismatch");

    const IntMatrix q = q_matrix(g);
    const Graph cg = complement(g);
    std::vector<IntVector> certificates;
    for (const IntVector& a : coefficient_basis) {
        IntVector y(static_cast<std::size_t>(n), Int(0));
        for (int i = 0; i < b; ++i) {
            for (int v : bip[static_cast<std::size_t>(i)]->class_u) y[static_cast<std::size_t>(v)] = a[static_cast<std::size_t>(i)];
            for (int v : bip[static_cast<std::size_t>(i)]->class_w) y[static_cast<std::size_t>(v)] = -a[static_cast<std::size_t>(i)];
        }
        Int total = 0;
        for (const Int& v : y) total += v;
        if (total != 0) throw std::logic_error("certificate_vectors: entries do not sum to zero");
        if (quadratic_form_q(cg, y) != 0)
            throw std::logic_error("certificate_vectors: nonzero complement quadratic form");
        const IntVector qy = matvec(q, y);
        for (std::size_t v = 0; v < y.size(); ++v)
            if (qy[v] != Int(n - 2) * y[v])
                throw std::logic_error("certificate_vectors: eigenvector verification failed");
        certificates.push_back(primitive_vector(y));
    }
    return certificates;
}

inline std::vector<IntVector> certificate_vectors(const Graph& g) {
    return certificate_vectors(g, bipartite_profile(complement(g)));
}

// ---------------------------------------------------------------------------
// Verdicts for the three structural-vs-spectral theorems.
// ---------------------------------------------------------------------------

enum class TheoremTag { th1, th2, th3 };

struct TheoremVerdict {
    TheoremTag theorem = TheoremTag::th1;
    int k = 1;  // meaningful for th2
    bool structural = false;
    bool spectral = false;
    bool agree = false;
    std::vector<IntVector> certificates;
    std::vector<std::string> notes;
};

namespace detail {

inline TheoremVerdict make_th1_verdict(const SpectralIndexCount& sic, int structural_k) {
    TheoremVerdict v;
    v.theorem = TheoremTag::th1;
    v.k = 1;
    v.structural = structural_k >= 1;
    v.spectral = sic.m2 >= 1;
    v.agree = v.structural == v.spectral;
    return v;
}

inline TheoremVerdict make_th2_verdict(const SpectralIndexCount& sic, const BipartiteProfile& complement_profile,
                                       int k) {
    TheoremVerdict v;
    v.theorem = TheoremTag::th2;
    v.k = k;
    const int b = complement_profile.bipartite_count;
    const int bb = complement_profile.balanced_count;
    v.structural = bb >= k || b >= k + 1;
    v.spectral = sic.above <= k && sic.above + sic.multiplicity >= k + 1;
    v.agree = v.structural == v.spectral;
    return v;
}

} // namespace detail

inline TheoremVerdict check_th1(const Graph& g) {
    if (g.order() < 2) throw std::invalid_argument("check_th1: needs n >= 2");
    const BipartiteProfile complement_profile = bipartite_profile(complement(g));
    const int structural_k =
        std::max({complement_profile.balanced_count, complement_profile.bipartite_count - 1, 0});
    TheoremVerdict v = detail::make_th1_verdict(spectral_index_count(g), structural_k);
    if (v.structural) v.certificates = certificate_vectors(g, complement_profile);
    return v;
}

inline TheoremVerdict check_th2(const Graph& g, int k) {
    if (g.order() < 2) throw std::invalid_argument("check_th2: needs n >= 2");
    if (k < 1 || k >= g.order()) throw std::invalid_argument("check_th2: k out of range");
    return detail::make_th2_verdict(spectral_index_count(g), bipartite_profile(complement(g)), k);
}

// ---------------------------------------------------------------------------
// q_2 >= delta: exact decision plus classification of the equality graphs.
// ---------------------------------------------------------------------------

enum class EqualityClass {
    star,
    complete_regular_multipartite,
    k133,
    ones_and_twos,
    not_equality,
    paper_exception,  // delta = 0 equality graphs, outside the published list
};

inline std::string_view equality_class_name(EqualityClass c) {
    switch (c) {
        case EqualityClass::star: return "Star";
        case EqualityClass::complete_regular_multipartite: return "CompleteRegularMultipartite";
        case EqualityClass::k133: return "K133";
        case EqualityClass::ones_and_twos: return "OnesAndTwos";
        case EqualityClass::not_equality: return "NotEquality";
        case EqualityClass::paper_exception: return "PaperException";
    }
    return "?";
}

namespace detail {

/// Purely structural membership in the published equality families.
inline std::optional<EqualityClass> equality_family_match(const Graph& g) {
    const auto parts_opt = is_complete_multipartite(g);
    if (!parts_opt) return std::nullopt;
    const std::vector<int>& parts = *parts_opt;
    const int n = g.order();
    if (static_cast<int>(parts.size()) == n) return std::nullopt;  // complete graph
    if (parts.size() < 2) return std::nullopt;                     // edgeless
    if (parts.size() == 2 && parts[0] == 1 && parts[1] >= 2) return EqualityClass::star;
    if (parts == std::vector<int>{1, 3, 3}) return EqualityClass::k133;
    if (parts.front() == parts.back() && parts.front() >= 2)
        return EqualityClass::complete_regular_multipartite;
    if (parts.back() == 2) return EqualityClass::ones_and_twos;  // all parts 1 or 2, a 2 present
    return std::nullopt;
}

} // namespace detail

/// Classification of a graph known to satisfy q_2 = delta (see check_th3).
inline EqualityClass classify_equality_graph(const Graph& g) {
    if (degree_stats(g).min_degree == 0) return EqualityClass::paper_exception;
    const auto match = detail::equality_family_match(g);
    return match ? *match : EqualityClass::not_equality;
}

struct Th3Outcome {
    TheoremVerdict verdict;       // structural: in a published family; spectral: q_2 = delta
    EqualityClass eq_class = EqualityClass::not_equality;
    int min_degree = 0;
    bool equality = false;
    bool exception = false;  // delta = 0 equality, recorded but not a violation
    bool violation = false;  // q_2 < delta, or either direction of the characterization fails
};

namespace detail {

inline Th3Outcome make_th3_outcome(const Graph& g, const IntMatrix& q, const RealRootCounter& counter) {
    const int delta = degree_stats(g).min_degree;
    const int above = counter.count_above(Rat(delta));
    Th3Outcome out;
    out.min_degree = delta;
    if (above >= 2) {
        out.equality = false;
    } else {
        const int mult = int_eigen_multiplicity(q, Int(delta));
        out.equality = above + mult >= 2;  // together with above <= 1: q_2 = delta
        out.violation = above + mult <= 1; // q_2 < delta; must never happen
        if (out.violation) out.verdict.notes.push_back("second eigenvalue below minimum degree");
    }

    const auto family = equality_family_match(g);
    if (out.equality) {
        out.eq_class = delta == 0 ? EqualityClass::paper_exception
                                  : (family ? *family : EqualityClass::not_equality);
        out.exception = out.eq_class == EqualityClass::paper_exception;
        if (!out.exception && out.eq_class == EqualityClass::not_equality) {
            out.violation = true;
            out.verdict.notes.push_back("equality graph outside the published families");
        }
    } else if (family) {
        out.violation = true;
        out.eq_class = *family;
        out.verdict.notes.push_back("published family member without equality");
    }

    out.verdict.theorem = TheoremTag::th3;
    out.verdict.structural = family.has_value();
    out.verdict.spectral = out.equality;
    out.verdict.agree = out.verdict.structural == out.verdict.spectral;
    return out;
}

} // namespace detail

inline Th3Outcome check_th3(const Graph& g) {
    if (g.order() < 2) throw std::invalid_argument("check_th3: needs n >= 2");
    if (is_complete(g)) throw std::invalid_argument("check_th3: complete graph out of scope");
    const IntMatrix q = q_matrix(g);
    const RealRootCounter counter(char_poly(q));
    return detail::make_th3_outcome(g, q, counter);
}

// ---------------------------------------------------------------------------
// Closed forms for K_{1,t,...,t}.
// ---------------------------------------------------------------------------

struct K1tSpec {
    int t = 2;
    int r = 2;

    int order() const { return t * r + 1; }
};

namespace detail {

inline IntPolynomial poly_multiply(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Int> c(static_cast<std::size_t>(a.degree() + b.degree() + 1));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j)
            c[static_cast<std::size_t>(i + j)] += a.coeff[static_cast<std::size_t>(i)] * b.coeff[static_cast<std::size_t>(j)];
    return IntPolynomial(std::move(c));
}

inline IntPolynomial linear_factor_power(const Int& root, int e) {
    IntPolynomial p(std::vector<Int>{Int(1)});
    const IntPolynomial lin(std::vector<Int>{-root, Int(1)});
    for (int i = 0; i < e; ++i) p = poly_multiply(p, lin);
    return p;
}

inline void check_k1t(const K1tSpec& spec) {
    if (spec.t < 2 || spec.r < 2) throw std::invalid_argument("k1t: needs t >= 2 and r >= 2");
}

} // namespace detail

/// Characteristic polynomial of Q(K_{1,t,...,t}):
/// (x - (tr-t+1))^(r(t-1)) * (x - (tr-2t+1))^(r-1) * (x^2 - (3tr-2t+1)x + 2t^2 r(r-1)).
inline IntPolynomial k1t_charpoly(const K1tSpec& spec) {
    detail::check_k1t(spec);
    const Int t = spec.t, r = spec.r;
    IntPolynomial p = detail::linear_factor_power(t * r - t + 1, spec.r * (spec.t - 1));
    p = detail::poly_multiply(p, detail::linear_factor_power(t * r - 2 * t + 1, spec.r - 1));
    const IntPolynomial quad(
        std::vector<Int>{2 * t * t * r * (r - 1), -(3 * t * r - 2 * t + 1), Int(1)});
    return detail::poly_multiply(p, quad);
}

struct K1tValues {
    double q1 = 0.0;
    double q2 = 0.0;
    bool q2_is_delta = false;
};

/// The two largest Q-eigenvalues of K_{1,t,...,t}. q_2 equals the minimum
/// degree tr-t+1 exactly when (t-2)(r-1) <= 1, i.e. t <= 2 + 1/(r-1).
inline K1tValues k1t_q1_q2(const K1tSpec& spec) {
    detail::check_k1t(spec);
    const double t = spec.t, r = spec.r;
    const double b = 3 * t * r - 2 * t + 1;
    const double disc = t * t * (r - 2) * (r - 2) + 2 * t * (3 * r - 2) + 1;
    K1tValues out;
    out.q1 = (b + std::sqrt(disc)) / 2.0;
    out.q2_is_delta = (spec.t - 2) * (spec.r - 1) <= 1;
    out.q2 = out.q2_is_delta ? (t * r - t + 1) : (b - std::sqrt(disc)) / 2.0;
    return out;
}

// ---------------------------------------------------------------------------
// Lower bounds on q_2 in terms of average and second-largest degree.
// ---------------------------------------------------------------------------

struct DasBounds {
    bool holds_average = false;     // q_2 >= dbar - 1
    bool holds_second_max = false;  // q_2 >= Delta_2 - 1
    Rat average_threshold;          // dbar - 1
    Rat second_max_threshold;       // Delta_2 - 1
};

namespace detail {

/// Exact test for q_2 >= threshold: at least two eigenvalues weakly above.
inline bool second_eigenvalue_at_least(const RealRootCounter& counter, const Rat& threshold) {
    return counter.count_above(threshold) + counter.multiplicity_at(threshold) >= 2;
}

inline DasBounds das_bounds_from(const Graph& g, const RealRootCounter& counter) {
    const DegreeStats stats = degree_stats(g);
    DasBounds out;
    out.average_threshold = Rat(Int(stats.average.num - stats.average.den), Int(stats.average.den));
    out.second_max_threshold = Rat(stats.second_max_degree - 1);
    out.holds_average = second_eigenvalue_at_least(counter, out.average_threshold);
    out.holds_second_max = second_eigenvalue_at_least(counter, out.second_max_threshold);
    return out;
}

} // namespace detail

inline DasBounds das_lower_bounds(const Graph& g) {
    if (g.order() < 2) throw std::invalid_argument("das_lower_bounds: needs n >= 2");
    return detail::das_bounds_from(g, RealRootCounter(char_poly(q_matrix(g))));
}

// ---------------------------------------------------------------------------
// Adjacency second-eigenvalue dichotomy backing the equality analysis: the
// graphs with lambda_2(A) <= 0 are exactly the complete multipartite graphs
// plus isolated vertices. Checked with the float eigensolver (1e-9 slack).
// ---------------------------------------------------------------------------

struct SmithCheck {
    bool spectral = false;    // lambda_2(adjacency) <= 1e-9
    bool structural = false;  // complete multipartite after dropping isolated vertices
    bool agree = false;
};

inline SmithCheck smith_multipartite_check(const Graph& g) {
    SmithCheck out;
    if (g.order() < 2) {
        out.spectral = true;
        out.structural = true;
        out.agree = true;
        return out;
    }
    const SpectrumReport spec = sym_eigen(to_real(a_matrix(g)));
    out.spectral = spec.values[1] <= 1e-9;
    std::vector<int> supported;
    for (int v = 0; v < g.order(); ++v)
        if (g.degree(v) > 0) supported.push_back(v);
    out.structural = supported.empty() || is_complete_multipartite(induced_subgraph(g, supported)).has_value();
    out.agree = out.spectral == out.structural;
    return out;
}

} // namespace qlap

#endif // QLAP_THEOREMS_HPP
