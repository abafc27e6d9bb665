#include "normetry/rand.hpp"

#include <cmath>
#include <numbers>

#include "normetry/errors.hpp"
#include "normetry/linalg.hpp"

namespace normetry {

std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::PSD: return "psd";
    case GenKind::PD: return "pd";
    case GenKind::Hermitian: return "hermitian";
    case GenKind::Normal: return "normal";
    case GenKind::Unitary: return "unitary";
    case GenKind::Contraction: return "contraction";
    case GenKind::Expansive: return "expansive";
    case GenKind::GeneralComplex: return "general";
  }
  return "?";
}

GenKind parse_gen_kind(const std::string& s) {
  for (GenKind k : {GenKind::PSD, GenKind::PD, GenKind::Hermitian, GenKind::Normal, GenKind::Unitary,
                    GenKind::Contraction, GenKind::Expansive, GenKind::GeneralComplex}) {
    if (to_string(k) == s) return k;
  }
  throw BadSpec("unknown matrix kind '" + s + "'");
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

Matrix gaussian_matrix(Rng& rng, std::size_t n) {
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
  return g;
}

Matrix random_unitary(Rng& rng, std::size_t n) {
  Matrix q = gaussian_matrix(rng, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t h = 0; h < j; ++h) {
        cplx dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += std::conj(q(k, h)) * q(k, j);
        for (std::size_t k = 0; k < n; ++k) q(k, j) -= dot * q(k, h);
      }
    }
    double nrm = 0.0;
    for (std::size_t k = 0; k < n; ++k) nrm += std::norm(q(k, j));
    nrm = std::sqrt(nrm);
    for (std::size_t k = 0; k < n; ++k) q(k, j) /= nrm;
  }
  return q;
}

namespace {

Matrix psd_with_radius(Rng& rng, std::size_t n, double radius) {
  const Matrix g = gaussian_matrix(rng, n);
  const HermitianMatrix w(g.adjoint() * g);
  const double top = lambda_max(w);
  return (radius / top) * w.matrix();
}

}  // namespace

Matrix generate(const GenSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 1) throw BadSpec("dimension must be >= 1");
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) throw BadSpec("scale must be positive");
  Rng rng(spec.seed);

  switch (spec.kind) {
    case GenKind::PSD:
      return HermitianMatrix(psd_with_radius(rng, n, spec.scale)).matrix();
    case GenKind::PD: {
      if (!(spec.min_eig > 0.0 && spec.min_eig <= spec.scale))
        throw BadSpec("PD needs 0 < min_eig <= scale");
      Matrix m = psd_with_radius(rng, n, spec.scale - spec.min_eig);
      m += spec.min_eig * Matrix::identity(n);
      return HermitianMatrix(m).matrix();
    }
    case GenKind::Hermitian: {
      const Matrix g = gaussian_matrix(rng, n);
      const HermitianMatrix h(g + g.adjoint());
      return HermitianMatrix((spec.scale / operator_norm(h)) * h.matrix()).matrix();
    }
    case GenKind::Normal: {
      const Matrix u = random_unitary(rng, n);
      std::vector<cplx> d(n);
      double top = 0.0;
      for (auto& z : d) {
        z = rng.complex_gaussian();
        top = std::max(top, std::abs(z));
      }
      for (auto& z : d) z *= spec.scale / top;
      return u * Matrix::diagonal(std::span<const cplx>(d)) * u.adjoint();
    }
    case GenKind::Unitary:
      return random_unitary(rng, n);
    case GenKind::Contraction: {
      const Matrix g = gaussian_matrix(rng, n);
      const double u = rng.uniform();
      return (1.0 / (operator_norm(g) * (1.0 + u))) * g;
    }
    case GenKind::Expansive: {
      const Matrix u = random_unitary(rng, n);
      const Matrix w = psd_with_radius(rng, n, spec.scale);
      return u * (Matrix::identity(n) + w);
    }
    case GenKind::GeneralComplex: {
      const Matrix g = gaussian_matrix(rng, n);
      return (spec.scale / operator_norm(g)) * g;
    }
  }
  throw BadSpec("unknown matrix kind");
}

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream(std::uint64_t root_seed, std::uint64_t trial_index) {
  return mix64(mix64(root_seed) + 0x9e3779b97f4a7c15ULL * (trial_index + 1));
}

}  // namespace normetry
