#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "mulhopf/extension.hpp"

namespace mulhopf {

using Rng = std::mt19937_64;

/// The same algebra in the basis f_i = Σ_j p[j][i] e_j of a finite algebra.
struct BasisChange {
  Algebra algebra;
  std::function<Element(const Element&)> to_new;
  std::function<Element(const Element&)> to_old;
};

/// Throws InputError if p is singular.
BasisChange change_basis(const Algebra& a, const std::vector<std::vector<Scalar>>& p, std::string name);

/// Invertible n×n matrix with entries in [-2, 2].
std::vector<std::vector<Scalar>> random_invertible(Rng& rng, const Field& f, std::size_t n);

struct RandomInstance {
  Algebra algebra;
  // The right regular module and, when A has a commutative block, a character module.
  std::vector<ModuleStructure> modules;
};

/// A direct sum of copies of k and M_2(k) of total dimension ≤ max_dim, in a
/// random basis. No unit is stored.
RandomInstance random_instance(std::uint64_t seed, const Field& f = Field::rationals(), std::size_t max_dim = 4);

/// Pullback B = K(p) → M(K(q)) along a random map of points, with both
/// algebras in random bases.
Extension random_extension(std::uint64_t seed, const Field& f = Field::rationals());

}  // namespace mulhopf
