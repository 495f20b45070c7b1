#include "doctest.h"
#include "gma/algebra.hpp"
#include "gma/errors.hpp"
#include "test_util.hpp"

using namespace gma;
using namespace gma::testing;

namespace {

// Oracle: span of all words of length <= max_len in {g, g^dagger}, plus 1.
Eigen::Index brute_force_span_dim(const std::vector<ComplexMatrix>& gens, Eigen::Index n, int max_len) {
  std::vector<ComplexMatrix> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.adjoint());
  }
  std::vector<ComplexMatrix> words{eye(n)}, frontier{eye(n)};
  for (int len = 0; len < max_len; ++len) {
    std::vector<ComplexMatrix> next;
    for (const auto& w : frontier)
      for (const auto& l : letters) next.push_back(l * w);
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  ComplexMatrix stacked(n * n, static_cast<Eigen::Index>(words.size()));
  for (std::size_t i = 0; i < words.size(); ++i) stacked.col(static_cast<Eigen::Index>(i)) = flatten(words[i]);
  return numerical_rank(stacked, 1e-10);
}

// Oracle: kernel of X -> ([X, B_i])_i as a stacked linear map.
std::vector<ComplexVector> commutation_kernel(const OperatorAlgebra& a) {
  const Eigen::Index n = a.dim_hilbert();
  ComplexMatrix map(n * n * a.dim(), n * n);
  Eigen::Index row = 0;
  for (const auto& b : a.basis()) {
    // vec(X B - B X) = (B^T (x) 1 - 1 (x) B) vec X
    map.block(row, 0, n * n, n * n) = kron(b.transpose(), eye(n)) - kron(eye(n), b);
    row += n * n;
  }
  return kernel_basis(map, 1e-9);
}

OperatorAlgebra algebra_from_vectors(const std::vector<ComplexVector>& vs, Eigen::Index n) {
  std::vector<ComplexMatrix> basis;
  for (const auto& v : vs) basis.push_back(unflatten(v, n));
  return OperatorAlgebra(n, basis);
}

OperatorAlgebra m2_tensor_one() { return close_star_algebra({kron(unit(2, 0, 1), eye(2))}, 4); }
OperatorAlgebra one_tensor_m2() { return close_star_algebra({kron(eye(2), unit(2, 0, 1))}, 4); }

OperatorAlgebra m2_plus_m3() {
  std::vector<ComplexMatrix> gens;
  ComplexMatrix a = ComplexMatrix::Zero(5, 5), b = ComplexMatrix::Zero(5, 5);
  a.block(0, 0, 2, 2) = unit(2, 0, 1);
  b.block(2, 2, 3, 3) = unit(3, 0, 1) + unit(3, 1, 2);
  return close_star_algebra({a, b}, 5);
}

OperatorAlgebra diagonal_algebra(Eigen::Index n) {
  std::vector<ComplexMatrix> gens;
  for (Eigen::Index i = 0; i < n; ++i) gens.push_back(unit(n, i, i));
  return close_star_algebra(gens, n);
}

} // namespace

TEST_CASE("close_star_algebra examples") {
  CHECK(close_star_algebra({}, 2).dim() == 1);
  CHECK(close_star_algebra({pauli_x(), pauli_z()}).dim() == 4);

  const ComplexMatrix g = kron(unit(2, 0, 1), eye(2));
  OperatorAlgebra a = close_star_algebra({g}, 4);
  CHECK(a.dim() == brute_force_span_dim({g}, 4, 4));
  CHECK(a.dim() == 4);
  CHECK(a.contains_element(kron(pauli_y(), eye(2))));
  CHECK_FALSE(a.contains_element(kron(eye(2), pauli_x())));
}

TEST_CASE("close_star_algebra basis is orthonormal and closed") {
  std::mt19937_64 rng(10);
  auto gens = block_algebra_generators(rng, {{2, 1}, {1, 2}});
  OperatorAlgebra a = close_star_algebra({gens[0] + gens[3], gens[1], gens[4]}, 4);
  const ComplexMatrix& q = a.stacked();
  CHECK(max_norm(ComplexMatrix(q.adjoint() * q - eye(a.dim()))) <= 1e-12);
  for (const auto& x : a.basis()) {
    CHECK(a.membership_residual(x.adjoint()) <= 1e-9);
    for (const auto& y : a.basis()) CHECK(a.membership_residual(x * y) <= 1e-9);
  }
}

TEST_CASE("close_star_algebra rejects dimension mismatch") {
  CHECK_THROWS_AS(close_star_algebra({eye(2), eye(3)}), ValidationError);
}

TEST_CASE("commutant examples") {
  CHECK(commutant(full_matrix_algebra(2)).dim() == 1);
  OperatorAlgebra diag = diagonal_algebra(2);
  CHECK(algebra_equal(commutant(diag), diag));

  OperatorAlgebra a = m2_tensor_one();
  OperatorAlgebra c = commutant(a);
  OperatorAlgebra oracle = algebra_from_vectors(commutation_kernel(a), 4);
  CHECK(oracle.dim() == 4);
  CHECK(algebra_equal(c, oracle));
  CHECK(algebra_equal(c, one_tensor_m2()));
}

TEST_CASE("center examples") {
  CHECK(center(full_matrix_algebra(2)).dim() == 1);
  OperatorAlgebra a = m2_plus_m3();
  CHECK(a.dim() == 13);
  OperatorAlgebra z = center(a);
  CHECK(z.dim() == 2);
  // oracle: intersect span(A) with the kernel of the commutation map
  auto ker = commutation_kernel(a);
  Eigen::Index inside = 0;
  for (const auto& v : ker) inside += a.membership_residual(unflatten(v, 5)) <= 1e-9 ? 1 : 0;
  CHECK(inside == 2);
  ComplexMatrix p1 = ComplexMatrix::Zero(5, 5);
  p1.block(0, 0, 2, 2) = eye(2);
  CHECK(z.contains_element(p1));
  CHECK(z.contains_element(eye(5) - p1));

  OperatorAlgebra diag = diagonal_algebra(3);
  CHECK(algebra_equal(center(diag), diag));
}

TEST_CASE("minimal_central_projections examples") {
  auto one = minimal_central_projections(scalars(3));
  REQUIRE(one.size() == 1);
  CHECK(max_norm(ComplexMatrix(one[0] - eye(3))) <= 1e-12);

  auto two = minimal_central_projections(diagonal_algebra(2));
  REQUIRE(two.size() == 2);
  ComplexMatrix sum = two[0] + two[1];
  CHECK(max_norm(ComplexMatrix(sum - eye(2))) <= 1e-12);
  for (const auto& p : two) {
    const bool first = std::abs(p(0, 0) - 1.0) <= 1e-12 && std::abs(p(1, 1)) <= 1e-12;
    const bool second = std::abs(p(1, 1) - 1.0) <= 1e-12 && std::abs(p(0, 0)) <= 1e-12;
    CHECK((first || second));
  }

  auto blocks = minimal_central_projections(center(m2_plus_m3()));
  REQUIRE(blocks.size() == 2);
  // oracle: joint diagonalisation of the center basis puts the block
  // identities at traces 2 and 3
  std::vector<double> traces{blocks[0].trace().real(), blocks[1].trace().real()};
  std::sort(traces.begin(), traces.end());
  CHECK(traces[0] == doctest::Approx(2.0));
  CHECK(traces[1] == doctest::Approx(3.0));
  CHECK(max_norm(ComplexMatrix(blocks[0] * blocks[1])) <= 1e-10);
}

TEST_CASE("minimal_central_projections rejects non-abelian input") {
  CHECK_THROWS_AS(minimal_central_projections(full_matrix_algebra(2)), ValidationError);
}

TEST_CASE("cyclic and separating examples") {
  ComplexVector bell = schmidt_vector({0.5, 0.5});
  OperatorAlgebra a = m2_tensor_one();
  CHECK(is_cyclic(a, bell));
  CHECK(is_separating(a, bell));

  ComplexVector v(2);
  v << 0.6, cplx(0.0, 0.8);
  CHECK(is_cyclic(full_matrix_algebra(2), v));
  CHECK_FALSE(is_separating(full_matrix_algebra(2), v));

  CHECK_FALSE(is_cyclic(scalars(2), ComplexVector::Unit(2, 0)));
  CHECK_THROWS_AS(is_cyclic(a, ComplexVector::Zero(4)), ValidationError);

  ComplexVector product = ComplexVector::Unit(4, 0);
  CHECK_FALSE(is_separating(a, product));
}

TEST_CASE("algebra_equal and algebra_contains") {
  CHECK(algebra_equal(full_matrix_algebra(2), full_matrix_algebra(2)));
  CHECK(algebra_contains(full_matrix_algebra(2), scalars(2)));
  CHECK_FALSE(algebra_contains(scalars(2), full_matrix_algebra(2)));
  CHECK_FALSE(algebra_equal(m2_tensor_one(), one_tensor_m2()));
  CHECK_THROWS_AS(algebra_equal(scalars(2), scalars(3)), ValidationError);
}

TEST_CASE("double commutant on random block algebras") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> small(1, 3);
  int tested = 0;
  while (tested < 12) {
    std::vector<BlockSpec> blocks;
    Eigen::Index n = 0;
    const int nb = small(rng);
    for (int i = 0; i < nb; ++i) {
      BlockSpec b{small(rng), small(rng)};
      blocks.push_back(b);
      n += b.d * b.m;
    }
    if (n > 16) continue;
    ++tested;
    auto gens = block_algebra_generators(rng, blocks);
    // two generic elements generate the algebra
    ComplexMatrix g1 = ComplexMatrix::Zero(n, n), g2 = ComplexMatrix::Zero(n, n);
    std::normal_distribution<double> gauss;
    for (const auto& g : gens) {
      g1 += cplx(gauss(rng), gauss(rng)) * g;
      g2 += cplx(gauss(rng), gauss(rng)) * g;
    }
    OperatorAlgebra a = close_star_algebra({g1, g2}, n);
    Eigen::Index expected = 0;
    for (const auto& b : blocks) expected += b.d * b.d;
    CHECK(a.dim() == expected);
    OperatorAlgebra cc = commutant(commutant(a));
    CHECK(algebra_equal(a, cc));
    CHECK(containment_residual(a, cc) <= 1e-9);
    OperatorAlgebra z = center(a);
    CHECK(z.dim() == static_cast<Eigen::Index>(blocks.size()));
    CHECK(z.is_abelian());
  }
}

TEST_CASE("cyclic and separating vector forces dim(A) = n") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 8; ++trial) {
    const Eigen::Index k = 2 + trial % 2;
    auto gens = block_algebra_generators(rng, {{k, k}});
    OperatorAlgebra a = close_star_algebra(gens, k * k);
    ComplexVector v = random_vector(rng, k * k);
    REQUIRE(is_cyclic(a, v));
    REQUIRE(is_separating(a, v));
    CHECK(a.dim() == k * k);
  }
}
