#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <filesystem>
#include <fstream>

#include "splitproj/generators.hpp"
#include "splitproj/io.hpp"

using namespace splitproj;

namespace {

double min_eig(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (e + e.transpose()))
      .eigenvalues()
      .minCoeff();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("splitproj_test_" + name);
}

}  // namespace

TEST(SpectralPair, ScalarCase) {
  const SpectralPair p = spectral_pair_from(Vector{-3.0}, Vector{2.0}, Matrix{{1.0}}, Matrix{{1.0}});
  EXPECT_DOUBLE_EQ(p.r(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(p.p(0, 0), 5.0);
}

TEST(SpectralPair, DefiniteParts) {
  Rng rng(60);
  for (std::size_t dim : {1u, 3u, 8u, 20u}) {
    const SpectralPair p = generate_spectral_pair(dim, rng);
    EXPECT_GE(min_eig(p.r), -1e-8);
    EXPECT_GE(min_eig(p.p - p.r), -1e-8);  // R − P negative semidefinite
    EXPECT_EQ(p.r, p.r.transpose());
  }
}

TEST(SpectralPair, SampledMonotonicity) {
  Rng rng(61);
  const SpectralPair p = generate_spectral_pair(5, rng);
  const QuadraticBifunction f(p.p, p.r, Vector(5, 0.0));
  for (int t = 0; t < 200; ++t) {
    const Vector x = uniform_vector(5, -3.0, 3.0, rng);
    const Vector y = uniform_vector(5, -3.0, 3.0, rng);
    EXPECT_LE(f.value(x, y) + f.value(y, x), 1e-8 * squared_norm(y - x));
  }
}

TEST(GenerateInstance, ShapesAndDefaults) {
  const GeneratedInstance g = generate_instance(InstanceSpec{});
  EXPECT_EQ(g.a.rows(), 20u);
  EXPECT_EQ(g.a.cols(), 30u);
  EXPECT_EQ(g.c, BoxSet::cube(30, -1.0, 5.0));
  EXPECT_EQ(g.q, BoxSet::cube(20, -2.0, 5.0));
  EXPECT_EQ(g.known_solution, Vector(30, 0.0));
  for (double v : g.a.row_major()) {
    EXPECT_GE(v, -10.0);
    EXPECT_LE(v, 10.0);
  }
}

TEST(GenerateInstance, Deterministic) {
  InstanceSpec spec;
  spec.m = 7;
  spec.k = 5;
  spec.seed = 123;
  EXPECT_EQ(generate_instance(spec), generate_instance(spec));
  spec.seed = 124;
  InstanceSpec other = spec;
  other.seed = 123;
  EXPECT_FALSE(generate_instance(spec) == generate_instance(other));
}

TEST(GenerateInstance, StreamOrder) {
  InstanceSpec spec;
  spec.m = 3;
  spec.k = 2;
  spec.seed = 9;
  const GeneratedInstance g = generate_instance(spec);
  Rng rng(9);
  const SpectralPair f = generate_spectral_pair(3, rng);
  const SpectralPair big_f = generate_spectral_pair(2, rng);
  const Matrix a = uniform_matrix(2, 3, -10.0, 10.0, rng);
  EXPECT_EQ(g.f[0].x_coefficient(), f.p);
  EXPECT_EQ(g.f[0].y_coefficient(), f.r);
  EXPECT_EQ(g.big_f[0].x_coefficient(), big_f.p);
  EXPECT_EQ(g.a, a);
}

TEST(GenerateInstance, VerifiedSolution) {
  for (Variant v : {Variant::kGeneral, Variant::kResolventFriendly}) {
    InstanceSpec spec;
    spec.m = 10;
    spec.k = 6;
    spec.variant = v;
    const InstanceCheck check = verify_instance(generate_instance(spec), 5, 1000);
    EXPECT_TRUE(check.ok) << to_string(v);
    EXPECT_TRUE(check.solution_in_sets);
  }
}

TEST(GenerateInstance, ResolventFriendlyHasEqualCoefficients) {
  InstanceSpec spec;
  spec.m = 5;
  spec.k = 4;
  spec.variant = Variant::kResolventFriendly;
  const GeneratedInstance g = generate_instance(spec);
  EXPECT_EQ(g.big_f[0].x_coefficient(), g.big_f[0].y_coefficient());
  EXPECT_GE(min_eig(g.big_f[0].y_coefficient()), -1e-8);
  spec.variant = Variant::kGeneral;
  const GeneratedInstance h = generate_instance(spec);
  EXPECT_FALSE(h.big_f[0].x_coefficient() == h.big_f[0].y_coefficient());
}

TEST(GenerateInstance, ScepComponents) {
  InstanceSpec spec;
  spec.m = 6;
  spec.k = 4;
  spec.variant = Variant::kScep;
  spec.n_f = 3;
  spec.n_big_f = 2;
  const GeneratedInstance g = generate_instance(spec);
  ASSERT_EQ(g.f.size(), 3u);
  ASSERT_EQ(g.big_f.size(), 2u);
  const Vector zero(6, 0.0);
  for (const auto& f : g.f) EXPECT_EQ(f.value(zero, zero), 0.0);
  EXPECT_TRUE(verify_instance(g, 6, 300).ok);
  EXPECT_NO_THROW(g.scep().validate());
}

TEST(GenerateInstance, ScepWithOneComponentMatchesGeneral) {
  InstanceSpec a;
  a.m = 5;
  a.k = 3;
  InstanceSpec b = a;
  b.variant = Variant::kScep;
  const GeneratedInstance ga = generate_instance(a), gb = generate_instance(b);
  EXPECT_EQ(ga.f, gb.f);
  EXPECT_EQ(ga.big_f, gb.big_f);
  EXPECT_EQ(ga.a, gb.a);
}

TEST(InstanceSpec, Validation) {
  InstanceSpec s;
  s.m = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = InstanceSpec{};
  s.n_f = 2;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = InstanceSpec{};
  s.c_lo = 1.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  EXPECT_EQ(parse_variant("resolvent"), Variant::kResolventFriendly);
  EXPECT_THROW((void)parse_variant("nope"), std::invalid_argument);
}

TEST(RotationInstance, Properties) {
  const SepInstance inst = make_rotation_instance();
  EXPECT_EQ(inst.known_solution, (Vector{0.0, 0.0}));
  Rng rng(62);
  for (int t = 0; t < 50; ++t) {
    const Vector y = uniform_vector(2, -4.0, 4.0, rng);
    EXPECT_EQ(inst.f->value(y, Vector{0.0, 0.0}), 0.0);
    EXPECT_EQ(inst.c->project(y), y);
  }
}

TEST(EmptySolutionInstance, Properties) {
  const SepInstance inst = make_empty_solution_instance();
  EXPECT_FALSE(inst.known_solution.has_value());
  EXPECT_EQ(inst.c->project(Vector{-2.0, 3.0}), (Vector{1.0, 0.0}));
  EXPECT_EQ(inst.f->diagonal_subgradient(Vector{2.0, 0.0}, 0.0), (Vector{0.0, 0.0}));
  EXPECT_EQ(inst.big_f->diagonal_subgradient(Vector{4.0, 1.0}, 0.0), (Vector{0.0, 0.0}));
}

// Serialization

TEST(InstanceIo, RoundTrip) {
  InstanceSpec spec;
  spec.m = 6;
  spec.k = 4;
  spec.seed = 77;
  spec.variant = Variant::kScep;
  spec.n_f = 2;
  const GeneratedInstance g = generate_instance(spec);
  const auto path = temp_file("roundtrip.json");
  save_instance(g, path);
  EXPECT_EQ(load_instance(path), g);
  EXPECT_EQ(load_instance(path), generate_instance(spec));
  std::filesystem::remove(path);
}

TEST(InstanceIo, MalformedFieldNamed) {
  json j = instance_to_json(generate_instance(InstanceSpec{4, 3}));
  j["A"]["data"][2] = "x";
  try {
    (void)instance_from_json(j);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("instance.A.data[2]"), std::string::npos) << e.what();
  }
  j = instance_to_json(generate_instance(InstanceSpec{4, 3}));
  j.erase("Q");
  try {
    (void)instance_from_json(j);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("instance.Q"), std::string::npos) << e.what();
  }
  j = instance_to_json(generate_instance(InstanceSpec{4, 3}));
  j["spec"]["variant"] = "weird";
  EXPECT_THROW((void)instance_from_json(j), SchemaError);
}

TEST(InstanceIo, NotJson) {
  const auto path = temp_file("garbage.json");
  std::ofstream(path) << "{ not json";
  EXPECT_THROW((void)load_instance(path), SchemaError);
  std::filesystem::remove(path);
  EXPECT_THROW((void)load_instance(temp_file("missing.json")), std::runtime_error);
}

TEST(FormatDouble, RoundTrips) {
  Rng rng(63);
  for (int t = 0; t < 1000; ++t) {
    const double v = rng.uniform(-1e6, 1e6) * std::pow(10.0, rng.uniform(-30.0, 30.0));
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(30.0), "30");
}
