#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "splitproj/bifunctions.hpp"
#include "splitproj/generators.hpp"
#include "splitproj/instance.hpp"
#include "splitproj/qp.hpp"
#include "splitproj/rng.hpp"
#include "splitproj/sets.hpp"

using namespace splitproj;

namespace {

BoxSet random_box(std::size_t dim, Rng& rng) {
  Vector lo(dim), hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = rng.uniform(-5.0, 1.0);
    hi[i] = lo[i] + rng.uniform(0.5, 4.0);
  }
  return BoxSet(lo, hi);
}

Vector point_in(const BoxSet& b, Rng& rng) {
  Vector v(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) v[i] = rng.uniform(b.lo()[i], b.hi()[i]);
  return v;
}

}  // namespace

// Box sets

TEST(BoxSet, RejectsInvertedBounds) {
  EXPECT_THROW(BoxSet(Vector{1.0}, Vector{0.0}), std::invalid_argument);
  EXPECT_THROW(BoxSet(Vector{0.0, 0.0}, Vector{1.0}), DimensionError);
}

TEST(ProjectBox, InteriorPointFixed) {
  EXPECT_EQ(project_box(Vector{0.0, 0.0}, BoxSet::cube(2, -1.0, 5.0)), (Vector{0.0, 0.0}));
}

TEST(ProjectBox, ClampsPerCoordinate) {
  EXPECT_EQ(project_box(Vector{7.0, -3.0}, BoxSet::cube(2, -1.0, 5.0)), (Vector{5.0, -1.0}));
}

TEST(ProjectBox, MatchesGridAndKktOracles) {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const BoxSet box = random_box(1 + t % 4, rng);
    const Vector x = uniform_vector(box.dim(), -8.0, 8.0, rng);
    const Vector z = project_box(x, box);
    EXPECT_LE(max_abs(z - oracle::grid_box_projection(x, box, 1e-4)), 1e-3);
    EXPECT_TRUE(oracle::box_projection_kkt(x, z, box, 1e-12));
  }
}

TEST(ProjectBox, FirmlyNonexpansive) {
  Rng rng(32);
  for (int t = 0; t < 500; ++t) {
    const BoxSet box = random_box(5, rng);
    const Vector x = uniform_vector(5, -10.0, 10.0, rng);
    const Vector y = uniform_vector(5, -10.0, 10.0, rng);
    const Vector d = project_box(x, box) - project_box(y, box);
    EXPECT_GE(dot(d, x - y) + 1e-10, squared_norm(d));
  }
}

TEST(ProjectBox, ObtuseAngleInequality) {
  Rng rng(33);
  for (int t = 0; t < 500; ++t) {
    const BoxSet box = random_box(4, rng);
    const Vector x = point_in(box, rng);
    const Vector y = uniform_vector(4, -10.0, 10.0, rng);
    const Vector py = project_box(y, box);
    EXPECT_LE(squared_norm(x - py) + squared_norm(py - y), squared_norm(x - y) + 1e-10);
  }
}

TEST(ProjectBox, Idempotent) {
  Rng rng(34);
  for (int t = 0; t < 200; ++t) {
    const BoxSet box = random_box(3, rng);
    const Vector p = project_box(uniform_vector(3, -10.0, 10.0, rng), box);
    EXPECT_TRUE(bitwise_equal(project_box(p, box), p));
  }
}

// The counterexample sets

TEST(UnitRaySet, ProjectionClosedForm) {
  const UnitRaySet c;
  EXPECT_EQ(c.project(Vector{3.0, -2.0}), (Vector{3.0, 0.0}));
  EXPECT_EQ(c.project(Vector{-4.0, 7.0}), (Vector{1.0, 0.0}));
  EXPECT_TRUE(c.contains(Vector{1.0, 0.0}));
  EXPECT_FALSE(c.contains(Vector{1.0, 0.1}));
}

TEST(SqrtRegion, AtOneExceedsQuarterStep) {
  const Vector p = project_onto_sqrt_region(Vector{1.0, 0.0});
  EXPECT_GT(p[0], 1.25);
  EXPECT_LT(p[0], 1.5);
  EXPECT_LE(std::abs(sqrt_region_derivative(p[0], 1.0)), 1e-12);
  EXPECT_DOUBLE_EQ(p[1], 1.0 / std::sqrt(p[0]));
}

TEST(SqrtRegion, AtFourExceedsBound) {
  EXPECT_GT(project_onto_sqrt_region(Vector{4.0, 0.0})[0], 4.0 + 1.0 / 64.0);
}

TEST(SqrtRegion, MatchesGridAtTwo) {
  const double t = project_onto_sqrt_region(Vector{2.0, 0.0})[0];
  EXPECT_NEAR(t, oracle::grid_sqrt_region(2.0, 1e-6), 1e-5);
}

TEST(SqrtRegion, OutputSatisfiesConstraints) {
  for (double x : {1.0, 1.5, 3.0, 10.0, 100.0}) {
    const Vector p = project_onto_sqrt_region(Vector{x, 0.0});
    EXPECT_GE(p[0], 1.0);
    EXPECT_GE(p[1], 1.0 / std::sqrt(p[0]) - 1e-10);
    EXPECT_TRUE(SqrtRegionSet().contains(p, 1e-10));
  }
}

TEST(SqrtRegion, UnsupportedInputThrows) {
  EXPECT_THROW((void)project_onto_sqrt_region(Vector{0.5, 0.0}), std::domain_error);
  EXPECT_THROW((void)project_onto_sqrt_region(Vector{2.0, 0.3}), std::domain_error);
}

TEST(EmptySolutionSets, Disjoint) {
  const UnitRaySet c;
  const SqrtRegionSet q;
  for (double x : {1.0, 2.0, 50.0}) EXPECT_FALSE(q.contains(c.project(Vector{x, 0.0})));
}

// Bifunctions

TEST(QuadraticBifunction, HandEvaluation) {
  const Matrix id = Matrix::identity(2);
  const QuadraticBifunction f(id, id, Vector(2, 0.0));
  EXPECT_DOUBLE_EQ(eval_bifunction(f, Vector{1.0, 0.0}, Vector{0.0, 1.0}), 0.0);
}

TEST(QuadraticBifunction, VanishesOnDiagonal) {
  Rng rng(40);
  const QuadraticBifunction f(uniform_matrix(3, 3, -1.0, 1.0, rng),
                              uniform_matrix(3, 3, -1.0, 1.0, rng),
                              uniform_vector(3, -1.0, 1.0, rng));
  const Vector x = uniform_vector(3, -2.0, 2.0, rng);
  EXPECT_DOUBLE_EQ(f.value(x, x), 0.0);
}

TEST(QuadraticBifunction, SubgradientIsGradientAtDiagonal) {
  Rng rng(41);
  const Matrix p = uniform_matrix(3, 3, -1.0, 1.0, rng);
  const Matrix r = symmetric_part(uniform_matrix(3, 3, -1.0, 1.0, rng));
  const Vector c = uniform_vector(3, -1.0, 1.0, rng);
  const QuadraticBifunction f(p, r, c);
  const Vector z = uniform_vector(3, -2.0, 2.0, rng);
  const Vector g = diagonal_subgradient(f, z, 0.0);
  EXPECT_LE(max_abs(g - ((p + r).apply(z) + c)), 1e-14);
  // Finite differences of y ↦ f(z, y) at y = z.
  for (std::size_t i = 0; i < 3; ++i) {
    Vector e(3, 0.0);
    e[i] = 1e-6;
    const double fd = (f.value(z, z + e) - f.value(z, z - e)) / 2e-6;
    EXPECT_NEAR(fd, g[i], 1e-6);
  }
}

TEST(QuadraticBifunction, RejectsBadShapes) {
  EXPECT_THROW(QuadraticBifunction(Matrix(2, 3), Matrix(2, 2), Vector(2)), DimensionError);
  EXPECT_THROW(QuadraticBifunction(Matrix(2, 2), Matrix(2, 2), Vector(3)), DimensionError);
}

TEST(DiagonalSubgradient, NegativeEpsThrows) {
  const RotationBifunction f;
  EXPECT_THROW((void)diagonal_subgradient(f, Vector{1.0, 0.0}, -1.0), std::invalid_argument);
}

TEST(RotationBifunction, Values) {
  const RotationBifunction f;
  EXPECT_DOUBLE_EQ(eval_bifunction(f, Vector{1.0, 0.0}, Vector{0.0, 1.0}), 1.0);
  EXPECT_EQ(diagonal_subgradient(f, Vector{1.0, 0.0}, 0.0), (Vector{0.0, 1.0}));
  Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    const Vector x = uniform_vector(2, -3.0, 3.0, rng);
    const Vector y = uniform_vector(2, -3.0, 3.0, rng);
    EXPECT_DOUBLE_EQ(f.value(x, x), 0.0);
    EXPECT_DOUBLE_EQ(f.value(x, y), -f.value(y, x));
    EXPECT_DOUBLE_EQ(f.value(y, Vector{0.0, 0.0}), 0.0);
  }
}

TEST(EvalBifunction, DimensionMismatchThrows) {
  const RotationBifunction f;
  EXPECT_THROW((void)eval_bifunction(f, Vector(3), Vector(2)), DimensionError);
}

TEST(IndicatorBifunction, ZeroOnSetAndThrowsOff) {
  const IndicatorBifunction f(std::make_shared<UnitRaySet>());
  EXPECT_DOUBLE_EQ(f.value(Vector{1.0, 0.0}, Vector{3.0, 0.0}), 0.0);
  EXPECT_EQ(f.value(Vector{1.0, 0.0}, Vector{0.0, 0.0}), std::numeric_limits<double>::infinity());
  EXPECT_EQ(diagonal_subgradient(f, Vector{2.0, 0.0}, 0.0), (Vector{0.0, 0.0}));
  EXPECT_THROW((void)diagonal_subgradient(f, Vector{0.0, 1.0}, 0.0), std::domain_error);
}

// Box QP and resolvent

TEST(BoxQp, InteriorMinimum) {
  const auto r = solve_box_qp(Matrix::identity(4), Vector(4, 0.0), BoxSet::cube(4, -1.0, 5.0), 1e-12);
  EXPECT_LE(max_abs(r.solution), 1e-10);
}

TEST(BoxQp, ClippedToCorner) {
  const auto r = solve_box_qp(Matrix::identity(4), Vector(4, -20.0), BoxSet::cube(4, -1.0, 5.0), 1e-12);
  EXPECT_LE(max_abs(r.solution - Vector(4, 5.0)), 1e-10);
}

TEST(BoxQp, MatchesGridOracleIn3d) {
  Rng rng(50);
  for (int t = 0; t < 10; ++t) {
    const Matrix b = uniform_matrix(3, 3, -1.0, 1.0, rng);
    const Matrix m = b.transpose() * b + 0.1 * Matrix::identity(3);
    const Vector c = uniform_vector(3, -4.0, 4.0, rng);
    const BoxSet box = BoxSet::cube(3, -1.0, 1.0);
    const Vector ours = solve_box_qp(m, c, box, 1e-12).solution;
    EXPECT_LE(max_abs(ours - oracle::grid_box_qp_3d(m, c, box, 1e-4)), 1e-3) << "case " << t;
  }
}

TEST(BoxQp, NonconvexRejected) {
  EXPECT_THROW((void)solve_box_qp(-1.0 * Matrix::identity(2), Vector(2, 0.0),
                                  BoxSet::cube(2, -1.0, 1.0), 1e-10),
               NonconvexQpError);
}

TEST(BoxQp, IterationCapReportsResidual) {
  Rng rng(51);
  const Matrix b = uniform_matrix(6, 6, -1.0, 1.0, rng);
  try {
    (void)solve_box_qp(b.transpose() * b, uniform_vector(6, -5.0, 5.0, rng),
                       BoxSet::cube(6, -10.0, 10.0), 1e-15, 1);
    FAIL() << "expected QpNotConvergedError";
  } catch (const QpNotConvergedError& e) {
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(Resolvent, ZeroMatrixIsProjection) {
  const QuadraticBifunction f(Matrix(2, 2, 0.0), Matrix(2, 2, 0.0), Vector(2, 0.0));
  const BoxSet q = BoxSet::cube(2, -2.0, 5.0);
  const Vector u{7.0, -3.0};
  EXPECT_LE(max_abs(solve_resolvent(f, 1.0, u, q, 1e-12) - project_box(u, q)), 1e-10);
}

TEST(Resolvent, SmallParameterApproachesProjection) {
  Rng rng(52);
  const Matrix b = uniform_matrix(3, 3, -1.0, 1.0, rng);
  const Matrix m = b.transpose() * b;
  const QuadraticBifunction f(m, m, Vector(3, 0.0));
  const BoxSet q = BoxSet::cube(3, -2.0, 5.0);
  const Vector u{1.0, 0.5, -1.0};
  EXPECT_LE(max_abs(solve_resolvent(f, 1e-6, u, q, 1e-12) - project_box(u, q)), 1e-3);
}

TEST(Resolvent, IdentityClosedForm) {
  const Matrix id = Matrix::identity(2);
  const QuadraticBifunction f(id, id, Vector(2, 0.0));
  const Vector z = solve_resolvent(f, 1.0, Vector{2.0, 2.0}, BoxSet::cube(2, -2.0, 5.0), 1e-12);
  EXPECT_LE(max_abs(z - Vector{1.0, 1.0}), 1e-6);
}

TEST(Resolvent, InequalityHoldsAtHalfParameter) {
  Rng rng(53);
  for (int t = 0; t < 5; ++t) {
    const Matrix b = uniform_matrix(4, 4, -1.0, 1.0, rng);
    const Matrix m = symmetric_part(b.transpose() * b);
    const QuadraticBifunction f(m, m, Vector(4, 0.0));
    const BoxSet q = BoxSet::cube(4, -2.0, 5.0);
    const Vector u = uniform_vector(4, -6.0, 6.0, rng);
    const double r = 0.7;
    const Vector z = solve_resolvent(f, r, u, q, 1e-12);
    std::vector<Vector> samples;
    for (int s = 0; s < 100; ++s) samples.push_back(point_in(q, rng));
    EXPECT_GE(resolvent_inequality_margin(f, r / 2.0, u, z, samples), -1e-6);
  }
}

TEST(Resolvent, RequiresEqualCoefficients) {
  const QuadraticBifunction f(Matrix::identity(2), 2.0 * Matrix::identity(2), Vector(2, 0.0));
  EXPECT_THROW((void)solve_resolvent(f, 1.0, Vector(2, 0.0), BoxSet::cube(2, -1.0, 1.0), 1e-10),
               std::invalid_argument);
}

// Instances

TEST(SepInstance, ValidateChecksDimensions) {
  SepInstance inst = make_rotation_instance();
  EXPECT_NO_THROW(inst.validate());
  inst.a = Matrix::identity(3);
  EXPECT_THROW(inst.validate(), std::invalid_argument);
}

TEST(ScepInstance, NeedsComponents) {
  ScepInstance inst;
  inst.c = std::make_shared<WholeSpace>(2);
  inst.q = std::make_shared<WholeSpace>(2);
  inst.a = Matrix::identity(2);
  EXPECT_THROW(inst.validate(), std::invalid_argument);
}
