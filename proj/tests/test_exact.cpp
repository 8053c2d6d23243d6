#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include <qlap/exact.hpp>
#include <qlap/graph.hpp>

using namespace qlap;

namespace {

IntMatrix make_matrix(int rows, int cols, std::initializer_list<int> entries) {
    IntMatrix m(rows, cols);
    auto it = entries.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = *it++;
    return m;
}

// Cofactor expansion, used as an independent oracle for the Bareiss routines.
Int naive_determinant(const IntMatrix& m) {
    const int n = m.rows();
    if (n == 1) return m(0, 0);
    Int acc = 0;
    for (int c = 0; c < n; ++c) {
        if (m(0, c) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int jj = 0;
            for (int j = 0; j < n; ++j) {
                if (j == c) continue;
                minor(i - 1, jj++) = m(i, j);
            }
        }
        const Int term = m(0, c) * naive_determinant(minor);
        acc += (c % 2 == 0) ? term : -term;
    }
    return acc;
}

IntMatrix random_int_matrix(std::mt19937& rng, int rows, int cols) {
    std::uniform_int_distribution<int> entry(-4, 4);
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = entry(rng);
    return m;
}

Graph random_graph(std::mt19937& rng, int n) {
    std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << pair_count(n)) - 1);
    return graph_from_edge_mask(n, dist(rng));
}

IntPolynomial poly(std::initializer_list<int> ascending) {
    std::vector<Int> c;
    for (int v : ascending) c.emplace_back(v);
    return IntPolynomial(std::move(c));
}

} // namespace

TEST_CASE("matrix product and matvec", "[exact]") {
    const IntMatrix a = make_matrix(2, 3, {1, 2, 3, 4, 5, 6});
    const IntMatrix b = make_matrix(3, 2, {7, 8, 9, 10, 11, 12});
    REQUIRE(a * b == make_matrix(2, 2, {58, 64, 139, 154}));
    REQUIRE(IntMatrix::identity(3) * b == b);
    REQUIRE_THROWS_AS(a * a, std::invalid_argument);

    REQUIRE(matvec(a, IntVector{Int(1), Int(0), Int(-1)}) == IntVector{Int(-2), Int(-2)});
    REQUIRE_THROWS_AS(matvec(a, IntVector{Int(1)}), std::invalid_argument);

    const IntMatrix stacked = stack_vertically(a, make_matrix(1, 3, {0, 0, 1}));
    REQUIRE(stacked.rows() == 3);
    REQUIRE(stacked(2, 2) == 1);
    REQUIRE(stacked(1, 0) == 4);
}

TEST_CASE("adjacency and signless Laplacian matrices", "[exact]") {
    const IntMatrix q = q_matrix(path_graph(3));
    REQUIRE(q == make_matrix(3, 3, {1, 1, 0, 1, 2, 1, 0, 1, 1}));
    const IntMatrix a = a_matrix(path_graph(3));
    REQUIRE(a(0, 0) == 0);
    REQUIRE(a(0, 1) == 1);
    REQUIRE(a(1, 0) == 1);
    REQUIRE(a(0, 2) == 0);

    const IntMatrix s = shifted(q, Int(1));
    REQUIRE(s(0, 0) == 0);
    REQUIRE(s(1, 1) == 1);
    REQUIRE(s(0, 1) == 1);
}

TEST_CASE("fraction-free rank", "[exact]") {
    REQUIRE(rank(IntMatrix::identity(3)) == 3);
    REQUIRE(rank(IntMatrix(3, 3)) == 0);
    REQUIRE(rank(make_matrix(2, 2, {1, 2, 2, 4})) == 1);
    REQUIRE(rank(make_matrix(2, 3, {1, 2, 3, 2, 4, 6})) == 1);
    // Q(K_3) - I is the all-ones matrix
    REQUIRE(rank(shifted(q_matrix(complete_graph(3)), Int(1))) == 1);

    // rank + kernel dimension = cols, with exact residual checks inside
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int rows = 1 + static_cast<int>(rng() % 5);
        const int cols = 1 + static_cast<int>(rng() % 5);
        const IntMatrix m = random_int_matrix(rng, rows, cols);
        REQUIRE(rank(m) + static_cast<int>(kernel_basis(m).size()) == cols);
    }
}

TEST_CASE("fraction-free determinant", "[exact]") {
    REQUIRE(determinant(make_matrix(2, 2, {1, 2, 3, 4})) == -2);
    REQUIRE(determinant(make_matrix(2, 2, {0, 1, 1, 0})) == -1);
    REQUIRE(determinant(IntMatrix::identity(4)) == 1);
    REQUIRE(determinant(q_matrix(path_graph(3))) == 0);      // bipartite
    REQUIRE(determinant(q_matrix(complete_graph(3))) == 4);  // 4 * 1 * 1
    REQUIRE_THROWS_AS(determinant(IntMatrix(2, 3)), std::invalid_argument);

    std::mt19937 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const IntMatrix m = random_int_matrix(rng, n, n);
        REQUIRE(determinant(m) == naive_determinant(m));
    }
}

TEST_CASE("primitive vectors", "[exact]") {
    REQUIRE(primitive_vector(RatVector{Rat(2, 3), Rat(-4, 3)}) == IntVector{Int(1), Int(-2)});
    REQUIRE(primitive_vector(IntVector{Int(-2), Int(4)}) == IntVector{Int(1), Int(-2)});
    REQUIRE(primitive_vector(IntVector{Int(0), Int(-3), Int(6)}) == IntVector{Int(0), Int(1), Int(-2)});
    REQUIRE(primitive_vector(IntVector{Int(5)}) == IntVector{Int(1)});
    REQUIRE_THROWS_AS(primitive_vector(IntVector{Int(0), Int(0)}), std::invalid_argument);
}

TEST_CASE("kernel basis", "[exact]") {
    const auto ones = kernel_basis(make_matrix(1, 3, {1, 1, 1}));
    REQUIRE(ones.size() == 2);
    REQUIRE(ones[0] == IntVector{Int(1), Int(-1), Int(0)});
    REQUIRE(ones[1] == IntVector{Int(1), Int(0), Int(-1)});

    REQUIRE(kernel_basis(IntMatrix::identity(3)).empty());

    // Q of a connected bipartite graph has the signed-class null vector
    const auto null_c4 = kernel_basis(q_matrix(cycle_graph(4)));
    REQUIRE(null_c4.size() == 1);
    REQUIRE(null_c4[0] == IntVector{Int(1), Int(-1), Int(1), Int(-1)});
}

TEST_CASE("integer polynomial basics", "[exact]") {
    const IntPolynomial p = poly({-4, 9, -6, 1});  // (x-4)(x-1)^2
    REQUIRE(p.degree() == 3);
    REQUIRE(p.leading() == 1);
    REQUIRE(p.eval(Int(0)) == -4);
    REQUIRE(p.eval(Int(1)) == 0);
    REQUIRE(p.eval(Int(4)) == 0);
    REQUIRE(p.eval(Int(2)) == -2);

    REQUIRE(IntPolynomial{}.is_zero());
    REQUIRE(poly({0, 0, 0}).degree() == 0);  // trimmed
    REQUIRE(derivative(p) == poly({9, -12, 3}));
    REQUIRE(derivative(poly({7})).is_zero());

    REQUIRE(content(poly({6, -9, 3})) == 3);
    REQUIRE(primitive_part(poly({6, -9, 3})) == poly({2, -3, 1}));
    REQUIRE(content(IntPolynomial{}) == 0);
}

TEST_CASE("polynomial division", "[exact]") {
    REQUIRE(exact_divide(poly({-1, 0, 1}), poly({-1, 1})) == poly({1, 1}));  // (x^2-1)/(x-1)
    REQUIRE(exact_divide(poly({-4, 9, -6, 1}), poly({-1, 1})) == poly({4, -5, 1}));
    REQUIRE_THROWS_AS(exact_divide(poly({1, 0, 1}), poly({-1, 1})), std::logic_error);
    REQUIRE_THROWS_AS(exact_divide(poly({1, 1}), IntPolynomial{}), std::invalid_argument);

    REQUIRE(pseudo_remainder(poly({1, 0, 1}), poly({1, 2})) == poly({5}));
    REQUIRE(pseudo_remainder(poly({-1, 0, 1}), poly({-1, 1})).is_zero());
    // early-exit branch still multiplies by the full lc power: 4(x^2+3) = 2x*2x + 12
    REQUIRE(pseudo_remainder(poly({3, 0, 1}), poly({0, 2})) == poly({12}));
}

TEST_CASE("polynomial gcd", "[exact]") {
    REQUIRE(polynomial_gcd(poly({-1, 0, 1}), poly({1, -2, 1})) == poly({-1, 1}));
    REQUIRE(polynomial_gcd(poly({-2, 2}), poly({-3, 3})) == poly({-1, 1}));
    REQUIRE(polynomial_gcd(poly({1, 1}), poly({2, 1})) == poly({1}));
    REQUIRE(polynomial_gcd(poly({2, -3, 1}), IntPolynomial{}) == poly({2, -3, 1}));
    // sign normalization: positive leading coefficient
    REQUIRE(polynomial_gcd(poly({1, -1}), poly({2, -2})) == poly({-1, 1}));
}

TEST_CASE("characteristic polynomials", "[exact]") {
    REQUIRE(char_poly(IntMatrix::identity(3)) == poly({-1, 3, -3, 1}));

    IntMatrix d(3, 3);
    d(0, 0) = 1;
    d(1, 1) = 2;
    d(2, 2) = 3;
    REQUIRE(char_poly(d) == poly({-6, 11, -6, 1}));

    REQUIRE(char_poly(q_matrix(complete_graph(3))) == poly({-4, 9, -6, 1}));
    REQUIRE(char_poly(q_matrix(cycle_graph(4))) == poly({0, -16, 20, -8, 1}));
    REQUIRE(char_poly(q_matrix(path_graph(4))) == poly({0, -4, 10, -6, 1}));
    // (x-8)(x-3)^4
    REQUIRE(char_poly(q_matrix(complete_graph(5))) == poly({-648, 945, -540, 150, -20, 1}));

    REQUIRE_THROWS_AS(char_poly(IntMatrix(2, 3)), std::invalid_argument);
    REQUIRE_THROWS_AS(char_poly(IntMatrix::identity(17)), std::invalid_argument);

    // trace and determinant read off the coefficients
    std::mt19937 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const IntMatrix q = q_matrix(random_graph(rng, n));
        const IntPolynomial p = char_poly(q);
        Int trace = 0;
        for (int i = 0; i < n; ++i) trace += q(i, i);
        REQUIRE(p.coeff[static_cast<std::size_t>(n - 1)] == -trace);
        const Int det = determinant(q);
        REQUIRE(p.coeff[0] == (n % 2 == 0 ? det : -det));
    }
}

TEST_CASE("root counting with multiplicity", "[exact]") {
    // (x-1)^2 (x-3)
    const RealRootCounter counter(poly({-3, 7, -5, 1}));
    REQUIRE(counter.count_above(Rat(0)) == 3);
    REQUIRE(counter.count_above(Rat(1)) == 1);
    REQUIRE(counter.count_above(Rat(2)) == 1);
    REQUIRE(counter.count_above(Rat(3)) == 0);
    REQUIRE(counter.count_above(Rat(1, 2)) == 3);
    REQUIRE(counter.multiplicity_at(Rat(1)) == 2);
    REQUIRE(counter.multiplicity_at(Rat(3)) == 1);
    REQUIRE(counter.multiplicity_at(Rat(2)) == 0);

    // (2x-1)(x-1): a rational root at 1/2
    const RealRootCounter halves(poly({1, -3, 2}));
    REQUIRE(halves.count_above(Rat(1, 2)) == 1);
    REQUIRE(halves.multiplicity_at(Rat(1, 2)) == 1);
    REQUIRE(halves.count_above(Rat(0)) == 2);

    // x^2 + 1: no real roots
    REQUIRE(RealRootCounter(poly({1, 0, 1})).count_above(Rat(-10)) == 0);

    const RealRootCounter c4(char_poly(q_matrix(cycle_graph(4))));  // roots 4, 2, 2, 0
    REQUIRE(c4.count_above(Rat(0)) == 3);
    REQUIRE(c4.count_above(Rat(3, 2)) == 3);
    REQUIRE(c4.count_above(Rat(2)) == 1);
    REQUIRE(c4.count_above(Rat(4)) == 0);
    REQUIRE(c4.multiplicity_at(Rat(2)) == 2);
    REQUIRE(c4.multiplicity_at(Rat(0)) == 1);

    REQUIRE_THROWS_AS(RealRootCounter(IntPolynomial{}), std::invalid_argument);
    REQUIRE(count_roots_above(poly({-3, 7, -5, 1}), Rat(0)) == 3);
}

TEST_CASE("eigen multiplicity agrees across the two exact routes", "[exact]") {
    REQUIRE(int_eigen_multiplicity(q_matrix(complete_graph(4)), Int(2)) == 3);
    REQUIRE(int_eigen_multiplicity(q_matrix(complete_graph(4)), Int(6)) == 1);
    REQUIRE(int_eigen_multiplicity(q_matrix(complete_graph(4)), Int(0)) == 0);
    REQUIRE(int_eigen_multiplicity(q_matrix(star_graph(4)), Int(1)) == 2);
    REQUIRE(int_eigen_multiplicity(q_matrix(star_graph(4)), Int(0)) == 1);

    // rank deficiency and Sturm multiplicity must agree on every integer in
    // the Gershgorin range
    std::mt19937 rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const IntMatrix q = q_matrix(random_graph(rng, n));
        const RealRootCounter counter(char_poly(q));
        for (int lambda = -1; lambda <= 2 * n; ++lambda)
            REQUIRE(int_eigen_multiplicity(q, Int(lambda)) == counter.multiplicity_at(Rat(lambda)));
    }
}
