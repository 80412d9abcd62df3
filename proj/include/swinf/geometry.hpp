#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace swinf {

/// n observations in R^d, stored row-major.
class SampleMatrix {
 public:
  /// Throws InvalidArgument unless n >= 2, d >= 1, data.size() == n*d and all
  /// entries are finite.
  SampleMatrix(std::size_t n, std::size_t d, std::vector<double> data);

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * d_, d_}; }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> data_;
};

/// k unit vectors in R^d together with the key that regenerates them.
class DirectionSet {
 public:
  std::size_t k() const noexcept { return k_; }
  std::size_t d() const noexcept { return d_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::span<const double> direction(std::size_t l) const { return {dirs_.data() + l * d_, d_}; }
  std::span<const double> data() const noexcept { return dirs_; }

 private:
  friend DirectionSet sample_directions(std::size_t, std::size_t, std::uint64_t, std::uint64_t);
  DirectionSet() = default;

  std::size_t k_ = 0;
  std::size_t d_ = 0;
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::vector<double> dirs_;
};

/// Draws k directions uniformly on S^{d-1} by normalizing standard Gaussian
/// vectors. Direction l uses its own substream keyed by (seed, stream_id, l),
/// so the result does not depend on generation order.
DirectionSet sample_directions(std::size_t d, std::size_t k, std::uint64_t seed,
                               std::uint64_t stream_id);

/// <direction, x_i> for every row. Only the length of `direction` is checked;
/// the map is linear in it.
std::vector<double> project(const SampleMatrix& samples, std::span<const double> direction);

/// Same as project() into caller-owned storage of length n.
void project_into(const SampleMatrix& samples, std::span<const double> direction,
                  std::span<double> out);

}  // namespace swinf
