#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "wblab/models.hpp"

namespace wblab {

/// Named initial-data families.
///
///   gaussian(a, w)                        eta = a exp(-|x - c|^2 / w^2), c the box centre
///   cosine(k, a)                          eta = a cos(k x_1), k must lie on the lattice
///   raised_cosine(k, a)                   eta = a (1 + cos(k x_1)) / 2; WB: v_1 = eta - a / 2
///   random_band(lmin, lmax, seed, a)      random phases on lmin <= |xi| <= lmax, sup norm a
///   potential_gradient(seed, lmin, lmax, a)   eta and v = grad phi from random band phi
///   zero
///
/// For the WB models eta-only families start with v = 0. potential_gradient and
/// raised_cosine fill v in every model that has one; in 2D both are curl-free.
struct DataSpec {
  std::string family = "gaussian";
  std::vector<double> args;

  static DataSpec parse(std::string_view text);
  std::string str() const;
  bool makes_velocity() const { return family == "potential_gradient" || family == "raised_cosine"; }
};

State make_initial_state(const Grid& g, const ModelParams& p, const DataSpec& spec);

Field gaussian(const Grid& g, double amplitude, double width);
Field cosine(const Grid& g, double k, double amplitude);
/// Band-limited random field with sup norm `amplitude`; deterministic in seed.
Field random_band(const Grid& g, double lmin, double lmax, std::uint64_t seed, double amplitude);
/// Random band-limited potential phi, returned as grad phi scaled to sup norm `amplitude`.
std::vector<Field> potential_gradient(const Grid& g, double lmin, double lmax, std::uint64_t seed,
                                      double amplitude);

}  // namespace wblab
