#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "harnack/ensemble/monomial_basis.hpp"
#include "harnack/error.hpp"

namespace harnack {

struct GridOracleResult {
  int sign_regions = 0;       // connected sign regions on S^2
  int sphere_components = 0;  // regions - 1
  int b0 = 0;
};

/// Uncertified reference count: signs of the polynomial on a latitude-longitude
/// grid of S^2 (nlat x 2 nlat cell centers), flood-filled into sign regions.
/// Disjoint circles on S^2 cut it into (circles + 1) regions, and a nonsingular
/// curve lifts to 2 circles per oval plus one per pseudoline.
inline GridOracleResult grid_oracle(const MonomialBasis& basis, std::span<const double> mono, int nlat = 2048) {
  if (nlat < 8) throw config_error("grid oracle needs at least 8 latitude rows");
  if (static_cast<int>(mono.size()) != basis.size()) throw config_error("coefficient vector has wrong length");
  const int nlon = 2 * nlat;
  const std::size_t cells = static_cast<std::size_t>(nlat) * nlon;
  std::vector<std::int8_t> sign(cells + 2);
  auto eval = [&](double x, double y, double z) {
    double v = basis.evaluate_polynomial<double>(mono, {x, y, z});
    return static_cast<std::int8_t>(v > 0.0 ? 1 : (v < 0.0 ? -1 : 0));
  };
  std::vector<double> cl(nlon), sl(nlon);
  for (int k = 0; k < nlon; ++k) {
    double lon = 2.0 * std::numbers::pi * (k + 0.5) / nlon;
    cl[k] = std::cos(lon);
    sl[k] = std::sin(lon);
  }
  for (int i = 0; i < nlat; ++i) {
    double th = std::numbers::pi * (i + 0.5) / nlat;
    double st = std::sin(th), ct = std::cos(th);
    for (int k = 0; k < nlon; ++k) sign[static_cast<std::size_t>(i) * nlon + k] = eval(st * cl[k], st * sl[k], ct);
  }
  // the two poles as extra nodes
  const std::size_t north = cells, south = cells + 1;
  sign[north] = eval(0, 0, 1);
  sign[south] = eval(0, 0, -1);

  std::vector<std::int32_t> label(cells + 2, -1);
  std::vector<std::size_t> queue;
  int regions = 0;
  auto neighbours = [&](std::size_t c, auto&& visit) {
    if (c == north) {
      for (int k = 0; k < nlon; ++k) visit(static_cast<std::size_t>(k));
      return;
    }
    if (c == south) {
      for (int k = 0; k < nlon; ++k) visit(static_cast<std::size_t>(nlat - 1) * nlon + k);
      return;
    }
    int i = static_cast<int>(c / nlon), k = static_cast<int>(c % nlon);
    visit(static_cast<std::size_t>(i) * nlon + (k + 1) % nlon);
    visit(static_cast<std::size_t>(i) * nlon + (k + nlon - 1) % nlon);
    if (i > 0)
      visit(c - nlon);
    else
      visit(north);
    if (i + 1 < nlat)
      visit(c + nlon);
    else
      visit(south);
  };
  for (std::size_t s = 0; s < cells + 2; ++s) {
    if (label[s] >= 0 || sign[s] == 0) continue;
    label[s] = regions;
    queue.assign(1, s);
    while (!queue.empty()) {
      std::size_t c = queue.back();
      queue.pop_back();
      neighbours(c, [&](std::size_t m) {
        if (label[m] < 0 && sign[m] == sign[s]) {
          label[m] = regions;
          queue.push_back(m);
        }
      });
    }
    ++regions;
  }
  GridOracleResult r;
  r.sign_regions = regions;
  r.sphere_components = regions - 1;
  r.b0 = (r.sphere_components + basis.degree() % 2) / 2;
  return r;
}

}  // namespace harnack
