#include "swinf/geometry.hpp"

#include <cmath>
#include <string>

#include "swinf/error.hpp"
#include "swinf/rng.hpp"

namespace swinf {

SampleMatrix::SampleMatrix(std::size_t n, std::size_t d, std::vector<double> data)
    : n_(n), d_(d), data_(std::move(data)) {
  if (n_ < 2) throw InvalidArgument("SampleMatrix: need at least 2 observations");
  if (d_ < 1) throw InvalidArgument("SampleMatrix: dimension must be positive");
  if (data_.size() != n_ * d_) {
    throw InvalidArgument("SampleMatrix: data has " + std::to_string(data_.size()) +
                          " entries, expected " + std::to_string(n_ * d_));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw InvalidArgument("SampleMatrix: non-finite entry");
  }
}

DirectionSet sample_directions(std::size_t d, std::size_t k, std::uint64_t seed,
                               std::uint64_t stream_id) {
  if (d == 0 || k == 0) throw InvalidArgument("sample_directions: d and k must be positive");
  DirectionSet set;
  set.k_ = k;
  set.d_ = d;
  set.seed_ = seed;
  set.stream_id_ = stream_id;
  set.dirs_.resize(k * d);
  for (std::size_t l = 0; l < k; ++l) {
    RandomStream rng(derive_seed(seed, static_cast<std::uint64_t>(StreamRole::kDirections),
                                 stream_id, l));
    std::span<double> row(set.dirs_.data() + l * d, d);
    double norm2 = 0.0;
    // A zero vector has probability zero; redraw if it ever happens.
    while (norm2 == 0.0) {
      for (double& v : row) {
        v = rng.normal();
        norm2 += v * v;
      }
    }
    const double norm = std::sqrt(norm2);
    for (double& v : row) v /= norm;
  }
  return set;
}

void project_into(const SampleMatrix& samples, std::span<const double> direction,
                  std::span<double> out) {
  if (direction.size() != samples.d()) {
    throw InvalidArgument("project: direction has dimension " + std::to_string(direction.size()) +
                          ", samples have " + std::to_string(samples.d()));
  }
  if (out.size() != samples.n()) throw InvalidArgument("project: output length mismatch");
  const std::size_t d = samples.d();
  const double* x = samples.data().data();
  for (std::size_t i = 0; i < samples.n(); ++i, x += d) {
    double acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) acc += direction[c] * x[c];
    out[i] = acc;
  }
}

std::vector<double> project(const SampleMatrix& samples, std::span<const double> direction) {
  std::vector<double> out(samples.n());
  project_into(samples, direction, out);
  return out;
}

}  // namespace swinf
