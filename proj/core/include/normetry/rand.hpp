#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "normetry/matrix.hpp"

namespace normetry {

enum class GenKind { PSD, PD, Hermitian, Normal, Unitary, Contraction, Expansive, GeneralComplex };

std::string to_string(GenKind k);
/// "psd", "pd", "hermitian", "normal", "unitary", "contraction",
/// "expansive", "general". Throws BadSpec otherwise.
GenKind parse_gen_kind(const std::string& s);

struct GenSpec {
  GenKind kind = GenKind::GeneralComplex;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  /// Spectral radius (operator norm for non-normal kinds) of the output.
  /// Unitary and Contraction ignore it.
  double scale = 1.0;
  /// Smallest eigenvalue for PD, 0 < min_eig <= scale.
  double min_eig = 0.1;
};

/// Deterministic random source built only on fully specified pieces
/// (mt19937_64, explicit Box-Muller) so outputs are reproducible
/// bit-for-bit across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double gaussian();
  /// Independent unit-variance real and imaginary parts.
  cplx complex_gaussian();

private:
  std::mt19937_64 engine_;
};

Matrix gaussian_matrix(Rng& rng, std::size_t n);
/// Gram-Schmidt of a Gaussian matrix; the triangular factor has a
/// positive diagonal, which fixes the phases.
Matrix random_unitary(Rng& rng, std::size_t n);

/// Identical specs yield bit-identical matrices.
Matrix generate(const GenSpec& spec);

/// Per-trial seed: a bijective 64-bit mix of the root and the index, so
/// seeds from one root never collide.
std::uint64_t derive_stream(std::uint64_t root_seed, std::uint64_t trial_index);

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

}  // namespace normetry
