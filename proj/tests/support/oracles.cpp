// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace adalut::oracle {

namespace {

double clamp01(double v) { return std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0); }

}  // namespace

double curve(const std::vector<double>& nodes, double v) {
  const int n = static_cast<int>(nodes.size());
  const double x = clamp01(v);
  for (int i = 0; i + 1 < n; ++i) {
    const double x0 = static_cast<double>(i) / (n - 1);
    const double x1 = static_cast<double>(i + 1) / (n - 1);
    if (x <= x1 || i + 2 == n) {
      const double t = (x - x0) / (x1 - x0);
      return clamp01(nodes[i] + t * (nodes[i + 1] - nodes[i]));
    }
  }
  return clamp01(nodes.back());
}

std::vector<double> hat_weights(int size, double v) {
  const double s = clamp01(v) * (size - 1);
  std::vector<double> w(size);
  for (int j = 0; j < size; ++j) w[j] = std::max(0.0, 1.0 - std::abs(s - j));
  return w;
}

std::array<double, 3> trilinear(const Lut3D& lut, double r, double g, double b) {
  const int n = lut.size();
  const auto hr = hat_weights(n, r), hg = hat_weights(n, g), hb = hat_weights(n, b);
  std::array<double, 3> out{};
  for (int i = 0; i < n; ++i) {
    if (hr[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (hg[j] == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        const double w = hr[i] * hg[j] * hb[k];
        if (w == 0.0) continue;
        for (int c = 0; c < 3; ++c) out[c] += w * lut.at(c, i, j, k);
      }
    }
  }
  for (double& v : out) v = clamp01(v);
  return out;
}

std::array<double, 3> tetrahedral(const Lut3D& lut, double r, double g, double b) {
  const int n = lut.size();
  std::array<int, 3> cell{};
  std::array<double, 3> frac{};
  const std::array<double, 3> in{r, g, b};
  for (int a = 0; a < 3; ++a) {
    const double s = clamp01(in[a]) * (n - 1);
    cell[a] = std::min(static_cast<int>(std::floor(s)), n - 2);
    frac[a] = s - cell[a];
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return frac[x] > frac[y]; });

  std::array<double, 3> out{};
  std::array<int, 3> node = cell;
  double prev = 1.0;
  for (int step = 0; step <= 3; ++step) {
    const double next = step < 3 ? frac[order[step]] : 0.0;
    const double w = prev - next;
    for (int c = 0; c < 3; ++c) out[c] += w * lut.at(c, node[0], node[1], node[2]);
    if (step < 3) node[order[step]] += 1;
    prev = next;
  }
  for (double& v : out) v = clamp01(v);
  return out;
}

double resize_sample(const ImageF& image, int c, int out_h, int out_w, int y, int x) {
  auto axis = [](int dst, int src_len, int dst_len, int& i0, int& i1, double& t) {
    double s = (dst + 0.5) * static_cast<double>(src_len) / dst_len - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_len - 1));
    i0 = static_cast<int>(std::floor(s));
    i1 = std::min(i0 + 1, src_len - 1);
    t = s - i0;
  };
  int y0, y1, x0, x1;
  double ty, tx;
  axis(y, image.height(), out_h, y0, y1, ty);
  axis(x, image.width(), out_w, x0, x1, tx);
  const double top = (1 - tx) * image.at(c, y0, x0) + tx * image.at(c, y0, x1);
  const double bottom = (1 - tx) * image.at(c, y1, x0) + tx * image.at(c, y1, x1);
  return (1 - ty) * top + ty * bottom;
}

namespace {

struct Q16 {
  unsigned cell;
  unsigned __int128 frac;
};

Q16 q16_position(std::uint8_t v, int size) {
  const unsigned __int128 s = (static_cast<unsigned __int128>(v) * (size - 1) * 65536) / 255;
  unsigned cell = static_cast<unsigned>(s / 65536);
  cell = std::min<unsigned>(cell, static_cast<unsigned>(size - 2));
  return {cell, s - static_cast<unsigned __int128>(cell) * 65536};
}

std::uint8_t round_shift(unsigned __int128 acc, int bits) {
  const unsigned __int128 one = 1;
  return static_cast<std::uint8_t>((acc + (one << (bits - 1))) >> bits);
}

}  // namespace

std::uint8_t fixed_curve(const std::vector<std::uint8_t>& nodes, std::uint8_t v) {
  const Q16 p = q16_position(v, static_cast<int>(nodes.size()));
  const unsigned __int128 acc = nodes[p.cell] * (65536 - p.frac) + nodes[p.cell + 1] * p.frac;
  return round_shift(acc, 16);
}

std::array<std::uint8_t, 3> fixed_trilinear(const Lut3DQ& lut, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const int n = lut.size();
  const Q16 p[3] = {q16_position(r, n), q16_position(g, n), q16_position(b, n)};
  std::array<std::uint8_t, 3> out{};
  for (int c = 0; c < 3; ++c) {
    unsigned __int128 acc = 0;
    for (unsigned dr = 0; dr < 2; ++dr)
      for (unsigned dg = 0; dg < 2; ++dg)
        for (unsigned db = 0; db < 2; ++db) {
          const unsigned __int128 w = (dr ? p[0].frac : 65536 - p[0].frac) * (dg ? p[1].frac : 65536 - p[1].frac) *
                                      (db ? p[2].frac : 65536 - p[2].frac);
          acc += w * lut.at(c, static_cast<int>(p[0].cell + dr), static_cast<int>(p[1].cell + dg),
                            static_cast<int>(p[2].cell + db));
        }
    out[c] = round_shift(acc, 48);
  }
  return out;
}

int centered_rank(const std::vector<std::vector<double>>& rows, double tolerance) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index d = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rows[i][j];
  m.rowwise() -= m.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tolerance * sv(0)) ++rank;
  return rank;
}

}  // namespace adalut::oracle
