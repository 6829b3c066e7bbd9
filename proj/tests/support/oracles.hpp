#pragma once

// Independent reference computations. Nothing here calls into the library's
// algorithm code; only its value types are shared.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <vector>

#include "selfpair/image.hpp"

namespace oracle {

using selfpair::Point;
using selfpair::RasterImage;
using selfpair::SemanticMask;

/// Textbook O(N^2) 2-D DFT straight from its definition, in long double.
inline std::vector<std::complex<double>> direct_dft(const std::vector<double>& x, int w, int h) {
  std::vector<std::complex<double>> out(x.size());
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (int m = 0; m < h; ++m) {
    for (int n = 0; n < w; ++n) {
      long double re = 0, im = 0;
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
          const long double ang = -two_pi * (static_cast<long double>(r) * m / h +
                                             static_cast<long double>(c) * n / w);
          re += x[static_cast<std::size_t>(r) * w + c] * std::cos(ang);
          im += x[static_cast<std::size_t>(r) * w + c] * std::sin(ang);
        }
      }
      out[static_cast<std::size_t>(m) * w + n] = {static_cast<double>(re), static_cast<double>(im)};
    }
  }
  return out;
}

/// 8-connected components by union-find; returned as a set of pixel sets.
inline std::set<std::set<Point>> components(const SemanticMask& m) {
  const int w = m.width(), h = m.height();
  std::vector<int> parent(static_cast<std::size_t>(w) * h);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!m.at(r, c)) continue;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const int nr = r + dr, nc = c + dc;
          if (nr < 0 || nr >= h || nc < 0 || nc >= w || !m.at(nr, nc)) continue;
          parent[find(r * w + c)] = find(nr * w + nc);
        }
      }
    }
  }
  std::map<int, std::set<Point>> groups;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (m.at(r, c)) groups[find(r * w + c)].insert({r, c});
    }
  }
  std::set<std::set<Point>> out;
  for (auto& [root, px] : groups) out.insert(px);
  return out;
}

/// Telea-style inpainting written independently of the library: arrival
/// times by iterated fast sweeping (converges to the same upwind discrete
/// solution as fast marching), fill order by sorting on (time, index), and
/// the direction/distance/level-set weighted average.
struct TeleaReference {
  std::vector<double> arrival;
  std::vector<double> filled;  // per sample, before rounding
  RasterImage image;
};

inline std::vector<double> sweep_arrival(const std::vector<std::uint8_t>& hole, int w, int h) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> t(hole.size());
  for (std::size_t i = 0; i < hole.size(); ++i) t[i] = hole[i] ? inf : 0.0;
  auto get = [&](int r, int c) {
    return (r < 0 || r >= h || c < 0 || c >= w) ? inf : t[static_cast<std::size_t>(r) * w + c];
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int sweep = 0; sweep < 4; ++sweep) {
      const bool flip_r = sweep & 1, flip_c = sweep & 2;
      for (int i = 0; i < h; ++i) {
        const int r = flip_r ? h - 1 - i : i;
        for (int j = 0; j < w; ++j) {
          const int c = flip_c ? w - 1 - j : j;
          const std::size_t idx = static_cast<std::size_t>(r) * w + c;
          if (!hole[idx]) continue;
          const double a = std::min(get(r, c - 1), get(r, c + 1));
          const double b = std::min(get(r - 1, c), get(r + 1, c));
          double cand;
          if (std::isinf(a) && std::isinf(b)) continue;
          if (std::isinf(a) || std::isinf(b) || std::fabs(a - b) >= 1.0) {
            cand = std::min(a, b) + 1.0;
          } else {
            cand = (a + b + std::sqrt(2.0 - (a - b) * (a - b))) / 2.0;
          }
          if (cand < t[idx]) {
            t[idx] = cand;
            changed = true;
          }
        }
      }
    }
  }
  return t;
}

inline TeleaReference telea_reference(const RasterImage& img, const std::vector<std::uint8_t>& hole,
                                      int radius) {
  const int w = img.width(), h = img.height(), ch = img.channels();
  TeleaReference ref{sweep_arrival(hole, w, h), {}, img};
  const auto& t = ref.arrival;
  ref.filled.assign(img.data().begin(), img.data().end());
  std::vector<bool> have(hole.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < hole.size(); ++i) {
    have[i] = !hole[i];
    if (hole[i]) todo.push_back(i);
  }
  std::stable_sort(todo.begin(), todo.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });

  for (const std::size_t p : todo) {
    const int pr = static_cast<int>(p) / w, pc = static_cast<int>(p) % w;
    // Gradient of T: central where both sides exist, one-sided at borders.
    const int cl = pc > 0 ? pc - 1 : pc, cr = pc < w - 1 ? pc + 1 : pc;
    const int ru = pr > 0 ? pr - 1 : pr, rd = pr < h - 1 ? pr + 1 : pr;
    const double gx = cr == cl ? 0.0 : (t[pr * w + cr] - t[pr * w + cl]) / (cr - cl);
    const double gy = rd == ru ? 0.0 : (t[rd * w + pc] - t[ru * w + pc]) / (rd - ru);
    const double glen = std::sqrt(gx * gx + gy * gy);
    std::vector<double> sum(ch, 0.0);
    double wsum = 0.0;
    for (int qr = 0; qr < h; ++qr) {
      for (int qc = 0; qc < w; ++qc) {
        const std::size_t q = static_cast<std::size_t>(qr) * w + qc;
        if (q == p || !have[q]) continue;
        const double vy = pr - qr, vx = pc - qc;
        const double len2 = vy * vy + vx * vx;
        if (len2 > radius * radius) continue;
        const double len = std::sqrt(len2);
        double dir = glen > 0 ? std::fabs((vx * gx + vy * gy) / (len * glen)) : 1.0;
        if (dir == 0.0) dir = 1e-6;
        const double weight = dir * (1.0 / len2) * (1.0 / (1.0 + std::fabs(t[p] - t[q])));
        wsum += weight;
        for (int k = 0; k < ch; ++k) sum[k] += weight * ref.filled[q * ch + k];
      }
    }
    for (int k = 0; k < ch; ++k) ref.filled[p * ch + k] = sum[k] / wsum;
    have[p] = true;
  }
  std::vector<std::uint8_t> bytes(ref.filled.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<std::uint8_t>(std::clamp(std::lround(ref.filled[i]), 0L, 255L));
  }
  ref.image = RasterImage(w, h, ch, std::move(bytes));
  return ref;
}

/// Dense 2-D Gaussian of a mask: square support ceil(3 sigma), weights
/// renormalized over in-bounds taps.
inline std::vector<double> dense_gaussian(const SemanticMask& m, double sigma) {
  const int w = m.width(), h = m.height();
  const int rad = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double num = 0, den = 0;
      for (int dr = -rad; dr <= rad; ++dr) {
        for (int dc = -rad; dc <= rad; ++dc) {
          const int rr = r + dr, cc = c + dc;
          if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
          const double g = std::exp(-(dr * dr + dc * dc) / (2 * sigma * sigma));
          num += g * m.at(rr, cc);
          den += g;
        }
      }
      out[static_cast<std::size_t>(r) * w + c] = num / den;
    }
  }
  return out;
}

/// True iff some pair of size x size placements in a w x h grid is disjoint.
inline bool disjoint_pair_exists(int w, int h, int size) {
  if (size > w || size > h) return false;
  for (int r1 = 0; r1 + size <= h; ++r1) {
    for (int c1 = 0; c1 + size <= w; ++c1) {
      for (int r2 = 0; r2 + size <= h; ++r2) {
        for (int c2 = 0; c2 + size <= w; ++c2) {
          const int ih = std::min(r1, r2) + size - std::max(r1, r2);
          const int iw = std::min(c1, c2) + size - std::max(c1, c2);
          if (ih <= 0 || iw <= 0) return true;
        }
      }
    }
  }
  return false;
}

/// Every offset at which `footprint` (relative coordinates) sits inside the
/// grid without touching foreground of `occupied`.
inline std::set<Point> legal_offsets(const SemanticMask& occupied, const std::vector<Point>& footprint) {
  int fh = 0, fw = 0;
  for (const Point& p : footprint) {
    fh = std::max(fh, p.row + 1);
    fw = std::max(fw, p.col + 1);
  }
  std::set<Point> out;
  for (int r = 0; r + fh <= occupied.height(); ++r) {
    for (int c = 0; c + fw <= occupied.width(); ++c) {
      bool ok = true;
      for (const Point& p : footprint) ok = ok && !occupied.at(r + p.row, c + p.col);
      if (ok) out.insert({r, c});
    }
  }
  return out;
}

/// Per-pixel truth table of XOR.
inline SemanticMask truth_table_xor(const SemanticMask& a, const SemanticMask& b) {
  static constexpr std::uint8_t table[2][2] = {{0, 1}, {1, 0}};
  std::vector<std::uint8_t> out(a.size());
  for (int r = 0; r < a.height(); ++r) {
    for (int c = 0; c < a.width(); ++c) {
      out[static_cast<std::size_t>(r) * a.width() + c] = table[a.at(r, c)][b.at(r, c)];
    }
  }
  return SemanticMask(a.width(), a.height(), std::move(out));
}

}  // namespace oracle
