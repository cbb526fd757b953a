#include "core/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ppeflow {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

bool point_on_segment(const Vec2& p, const Vec2& a, const Vec2& b, double tol) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  const double t = (p - a).dot(d) / len2;
  if (t < -tol || t > 1.0 + tol) return false;
  const Vec2 proj = a + t * d;
  return (p - proj).norm() <= tol;
}

}  // namespace

double Mesh::triangle_area(Index t) const {
  const auto& tri = triangles[t];
  return signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

Mat2 Mesh::jacobian(Index t) const {
  const auto& tri = triangles[t];
  Mat2 J;
  J.col(0) = vertices[tri[1]] - vertices[tri[0]];
  J.col(1) = vertices[tri[2]] - vertices[tri[0]];
  return J;
}

Vec2 Mesh::edge_normal(Index e) const {
  const Vec2 d = edge_vector(e).normalized();
  return Vec2(d.y(), -d.x());
}

Vec2 Mesh::boundary_outward_normal(Index e) const {
  const Index t = edge_triangles[e][0];
  const auto& te = triangle_edges[t];
  for (int i = 0; i < 3; ++i) {
    if (te[i] == e) {
      // Local CCW traversal rotated -90 degrees points outward.
      const Index a = triangles[t][(i + 1) % 3];
      const Index b = triangles[t][(i + 2) % 3];
      const Vec2 d = (vertices[b] - vertices[a]).normalized();
      return Vec2(d.y(), -d.x());
    }
  }
  throw Error("boundary_outward_normal: edge not in its triangle");
}

double Mesh::min_edge_length() const {
  double m = std::numeric_limits<double>::max();
  for (Index e = 0; e < num_edges(); ++e) m = std::min(m, edge_length(e));
  return m;
}

double Mesh::total_area() const {
  double a = 0.0;
  for (Index t = 0; t < num_triangles(); ++t) a += triangle_area(t);
  return a;
}

void Mesh::build_bins() {
  double x0 = vertices[0].x(), x1 = x0, y0 = vertices[0].y(), y1 = y0;
  for (const auto& v : vertices) {
    x0 = std::min(x0, v.x());
    x1 = std::max(x1, v.x());
    y0 = std::min(y0, v.y());
    y1 = std::max(y1, v.y());
  }
  const int n = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(num_triangles()) / 2.0)));
  bins_.x0 = x0;
  bins_.y0 = y0;
  bins_.nx = n;
  bins_.ny = n;
  bins_.dx = std::max((x1 - x0) / n, 1e-300);
  bins_.dy = std::max((y1 - y0) / n, 1e-300);
  bins_.cells.assign(static_cast<std::size_t>(n) * n, {});
  for (Index t = 0; t < num_triangles(); ++t) {
    double tx0 = 1e300, tx1 = -1e300, ty0 = 1e300, ty1 = -1e300;
    for (int k = 0; k < 3; ++k) {
      const Vec2 v = triangle_vertex(t, k);
      tx0 = std::min(tx0, v.x());
      tx1 = std::max(tx1, v.x());
      ty0 = std::min(ty0, v.y());
      ty1 = std::max(ty1, v.y());
    }
    const int i0 = std::clamp(static_cast<int>((tx0 - x0) / bins_.dx), 0, n - 1);
    const int i1 = std::clamp(static_cast<int>((tx1 - x0) / bins_.dx), 0, n - 1);
    const int j0 = std::clamp(static_cast<int>((ty0 - y0) / bins_.dy), 0, n - 1);
    const int j1 = std::clamp(static_cast<int>((ty1 - y0) / bins_.dy), 0, n - 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) bins_.cells[static_cast<std::size_t>(j) * n + i].push_back(t);
  }
}

PointLocation Mesh::locate_point(const Vec2& x) const {
  const int bi = std::clamp(static_cast<int>((x.x() - bins_.x0) / bins_.dx), 0, bins_.nx - 1);
  const int bj = std::clamp(static_cast<int>((x.y() - bins_.y0) / bins_.dy), 0, bins_.ny - 1);
  const auto& cand = bins_.cells[static_cast<std::size_t>(bj) * bins_.nx + bi];
  for (Index t : cand) {
    const auto& tri = triangles[t];
    const Vec2& a = vertices[tri[0]];
    const Vec2& b = vertices[tri[1]];
    const Vec2& c = vertices[tri[2]];
    const double A = signed_area(a, b, c);
    double l0 = signed_area(x, b, c) / A;
    double l1 = signed_area(a, x, c) / A;
    double l2 = signed_area(a, b, x) / A;
    // Physical distance tolerance converted per barycentric coordinate:
    // lambda_i = dist * |opposite edge| / (2 A).
    const double t0 = kGeomEps * (c - b).norm() / (2.0 * A);
    const double t1 = kGeomEps * (a - c).norm() / (2.0 * A);
    const double t2 = kGeomEps * (b - a).norm() / (2.0 * A);
    if (l0 >= -t0 && l1 >= -t1 && l2 >= -t2) {
      l0 = std::max(l0, 0.0);
      l1 = std::max(l1, 0.0);
      l2 = std::max(l2, 0.0);
      const double s = l0 + l1 + l2;
      return PointLocation{t, {l0 / s, l1 / s, l2 / s}};
    }
  }
  throw NotFound("locate_point: point outside the mesh");
}

void Mesh::validate() const {
  for (Index t = 0; t < num_triangles(); ++t) {
    if (triangle_area(t) <= 0.0) throw Error("mesh: non-positive triangle area");
  }
  Index n_boundary = 0;
  for (Index e = 0; e < num_edges(); ++e) {
    const auto& et = edge_triangles[e];
    if (et[0] < 0) throw Error("mesh: edge without triangle");
    if (et[1] < 0) {
      ++n_boundary;
      if (edge_tags[e] == BoundaryTag::interior) throw Error("mesh: untagged boundary edge");
    } else if (edge_tags[e] != BoundaryTag::interior) {
      throw Error("mesh: tagged interior edge");
    }
  }
  // Euler relation for a simply connected planar region.
  if (num_vertices() - num_edges() + num_triangles() != 1) {
    throw Error("mesh: Euler relation violated");
  }
  for (const auto& [m, s] : periodic_pairs) {
    if (std::abs(edge_length(m) - edge_length(s)) > 1e-12) {
      throw Error("mesh: periodic pair length mismatch");
    }
    const Vec2 mm = 0.5 * (vertices[edges[m][0]] + vertices[edges[m][1]]);
    const Vec2 sm = 0.5 * (vertices[edges[s][0]] + vertices[edges[s][1]]);
    if ((sm - mm - period).norm() > 1e-12) throw Error("mesh: periodic pair not a translate");
  }
}

Mesh finalize_mesh(std::vector<Vec2> vertices, std::vector<std::array<Index, 3>> triangles,
                   const std::vector<std::pair<Vec2, Vec2>>& tagged_segments,
                   const std::vector<BoundaryTag>& segment_tags, const Vec2& period) {
  Mesh m;
  m.vertices = std::move(vertices);
  m.triangles = std::move(triangles);
  for (auto& tri : m.triangles) {
    if (signed_area(m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]) < 0.0) {
      std::swap(tri[1], tri[2]);
    }
  }

  std::map<std::array<Index, 2>, Index> edge_index;
  m.triangle_edges.resize(m.triangles.size());
  m.triangle_edge_signs.resize(m.triangles.size());
  for (Index t = 0; t < m.num_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) {
      const Index a = m.triangles[t][(i + 1) % 3];
      const Index b = m.triangles[t][(i + 2) % 3];
      const std::array<Index, 2> key{std::min(a, b), std::max(a, b)};
      auto it = edge_index.find(key);
      Index e;
      if (it == edge_index.end()) {
        e = static_cast<Index>(m.edges.size());
        edge_index.emplace(key, e);
        m.edges.push_back(key);
        m.edge_triangles.push_back({t, -1});
      } else {
        e = it->second;
        if (m.edge_triangles[e][1] >= 0) throw Error("mesh: edge shared by three triangles");
        m.edge_triangles[e][1] = t;
      }
      m.triangle_edges[t][i] = e;
      m.triangle_edge_signs[t][i] = (a == key[0]) ? +1 : -1;
    }
  }

  m.edge_tags.assign(m.edges.size(), BoundaryTag::interior);
  const double tol = kGeomEps;
  for (Index e = 0; e < m.num_edges(); ++e) {
    if (!m.is_boundary_edge(e)) continue;
    const Vec2 mid = 0.5 * (m.vertices[m.edges[e][0]] + m.vertices[m.edges[e][1]]);
    BoundaryTag tag = BoundaryTag::wall;
    for (std::size_t s = 0; s < tagged_segments.size(); ++s) {
      if (point_on_segment(mid, tagged_segments[s].first, tagged_segments[s].second, tol)) {
        tag = segment_tags[s];
        break;
      }
    }
    m.edge_tags[e] = tag;
  }

  // Pair periodic masters with slaves by matching translated midpoints.
  m.period = period;
  if (period.squaredNorm() > 0.0) {
    std::vector<Index> masters, slaves;
    for (Index e = 0; e < m.num_edges(); ++e) {
      if (m.edge_tags[e] == BoundaryTag::periodic_master) masters.push_back(e);
      if (m.edge_tags[e] == BoundaryTag::periodic_slave) slaves.push_back(e);
    }
    if (masters.size() != slaves.size()) throw Error("mesh: unbalanced periodic edges");
    for (Index me : masters) {
      const Vec2 target = 0.5 * (m.vertices[m.edges[me][0]] + m.vertices[m.edges[me][1]]) + period;
      Index found = -1;
      for (Index se : slaves) {
        const Vec2 mid = 0.5 * (m.vertices[m.edges[se][0]] + m.vertices[m.edges[se][1]]);
        if ((mid - target).norm() < 1e-9) {
          found = se;
          break;
        }
      }
      if (found < 0) throw Error("mesh: unmatched periodic edge");
      m.periodic_pairs.emplace_back(me, found);
    }
  }

  m.build_bins();
  m.validate();
  return m;
}

Mesh build_unit_square_mesh(int n, bool periodic_x) {
  if (n < 1) throw InvalidArgument("build_unit_square_mesh: n must be >= 1");
  const double h = 1.0 / n;
  std::vector<Vec2> verts;
  verts.reserve(static_cast<std::size_t>((n + 1) * (n + 1) + n * n));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) verts.emplace_back(i * h, j * h);
  const Index center0 = static_cast<Index>((n + 1) * (n + 1));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) verts.emplace_back((i + 0.5) * h, (j + 0.5) * h);

  auto vid = [n](int i, int j) { return static_cast<Index>(j * (n + 1) + i); };
  std::vector<std::array<Index, 3>> tris;
  tris.reserve(static_cast<std::size_t>(4 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Index sw = vid(i, j), se = vid(i + 1, j), ne = vid(i + 1, j + 1), nw = vid(i, j + 1);
      const Index c = center0 + static_cast<Index>(j * n + i);
      tris.push_back({sw, se, c});
      tris.push_back({se, ne, c});
      tris.push_back({ne, nw, c});
      tris.push_back({nw, sw, c});
    }
  }

  std::vector<std::pair<Vec2, Vec2>> segs;
  std::vector<BoundaryTag> tags;
  segs.push_back({Vec2(0, 1), Vec2(1, 1)});
  tags.push_back(BoundaryTag::lid);
  if (periodic_x) {
    segs.push_back({Vec2(0, 0), Vec2(0, 1)});
    tags.push_back(BoundaryTag::periodic_master);
    segs.push_back({Vec2(1, 0), Vec2(1, 1)});
    tags.push_back(BoundaryTag::periodic_slave);
  }
  const Vec2 period = periodic_x ? Vec2(1.0, 0.0) : Vec2(0.0, 0.0);
  return finalize_mesh(std::move(verts), std::move(tris), segs, tags, period);
}

namespace {

// Cell sizes for [a, b]: geometric ramps of ratio g starting at h_a / h_b at
// the refined ends (0 disables refinement at that end), capped at h_cap, with
// the middle filled by near-cap cells sized to land exactly on b.
std::vector<double> graded_sizes(double a, double b, double h_a, double h_b, double g,
                                 double h_cap) {
  const double len = b - a;
  if (len <= 0.0) throw InvalidArgument("graded_sizes: empty interval");
  auto ramp = [&](double h0) {
    std::vector<double> r;
    if (h0 <= 0.0) return r;
    double h = h0, cum = 0.0;
    while (h < h_cap * (1.0 - 1e-12) && cum + h <= 0.45 * len) {
      r.push_back(h);
      cum += h;
      h *= g;
    }
    return r;
  };
  std::vector<double> left = ramp(h_a);
  std::vector<double> right = ramp(h_b);
  const double used = std::accumulate(left.begin(), left.end(), 0.0) +
                      std::accumulate(right.begin(), right.end(), 0.0);
  const double mid = len - used;
  std::vector<double> sizes = left;
  if (mid > 1e-14 * len) {
    const int k = std::max<int>(1, static_cast<int>(std::lround(mid / h_cap)));
    for (int i = 0; i < k; ++i) sizes.push_back(mid / k);
  }
  sizes.insert(sizes.end(), right.rbegin(), right.rend());
  return sizes;
}

std::vector<double> coords_from_sizes(double a, const std::vector<double>& sizes) {
  std::vector<double> xs{a};
  for (double s : sizes) xs.push_back(xs.back() + s);
  return xs;
}

}  // namespace

Mesh build_step_mesh(double L, double h_min, double grading) {
  if (!(L > 0.5)) throw InvalidArgument("build_step_mesh: L must exceed 0.5");
  if (!(h_min > 0.0 && h_min < 0.5)) throw InvalidArgument("build_step_mesh: h_min out of range");
  if (!(grading >= 1.0)) throw InvalidArgument("build_step_mesh: grading must be >= 1");

  const double h_cap = h_min * std::clamp(std::pow(grading, 22.0), 1.0, 8.0);

  // x: refined toward the step plane x = 0.5 from both sides.
  std::vector<double> xs = coords_from_sizes(0.0, graded_sizes(0.0, 0.5, 0.0, h_min, grading, h_cap));
  {
    auto right = graded_sizes(0.5, L, h_min, 0.0, grading, h_cap);
    for (double s : right) xs.push_back(xs.back() + s);
  }
  // y: refined toward the corner line y = 0 from both sides, and kept fine at
  // the lower wall y = -0.5 where the reattachment point is detected.
  std::vector<double> ys =
      coords_from_sizes(-0.5, graded_sizes(-0.5, 0.0, 1.5 * h_min, h_min, grading, h_cap));
  {
    auto upper = graded_sizes(0.0, 0.5, h_min, 0.0, grading, h_cap);
    for (double s : upper) ys.push_back(ys.back() + s);
  }

  const int nx = static_cast<int>(xs.size()) - 1;
  const int ny = static_cast<int>(ys.size()) - 1;
  const auto it_step_x = std::find_if(xs.begin(), xs.end(),
                                      [](double v) { return std::abs(v - 0.5) < 1e-12; });
  const auto it_step_y = std::find_if(ys.begin(), ys.end(),
                                      [](double v) { return std::abs(v) < 1e-12; });
  if (it_step_x == xs.end() || it_step_y == ys.end()) {
    throw Error("build_step_mesh: grid does not contain the corner lines");
  }
  const int ix_step = static_cast<int>(it_step_x - xs.begin());
  const int iy_step = static_cast<int>(it_step_y - ys.begin());

  auto in_cutout = [&](int i, int j) { return i < ix_step && j < iy_step; };

  std::vector<Vec2> verts;
  std::vector<Index> grid_id(static_cast<std::size_t>((nx + 1) * (ny + 1)), -1);
  auto gid = [&](int i, int j) -> Index& { return grid_id[static_cast<std::size_t>(j) * (nx + 1) + i]; };
  auto need_vertex = [&](int i, int j) {
    // Corner (i,j) of some retained cell.
    for (int dj = -1; dj <= 0; ++dj)
      for (int di = -1; di <= 0; ++di) {
        const int ci = i + di, cj = j + dj;
        if (ci >= 0 && ci < nx && cj >= 0 && cj < ny && !in_cutout(ci, cj)) return true;
      }
    return false;
  };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      if (need_vertex(i, j)) {
        gid(i, j) = static_cast<Index>(verts.size());
        verts.emplace_back(xs[i], ys[j]);
      }

  std::vector<std::array<Index, 3>> tris;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (in_cutout(i, j)) continue;
      const Index sw = gid(i, j), se = gid(i + 1, j), ne = gid(i + 1, j + 1), nw = gid(i, j + 1);
      const Index c = static_cast<Index>(verts.size());
      verts.emplace_back(0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]));
      tris.push_back({sw, se, c});
      tris.push_back({se, ne, c});
      tris.push_back({ne, nw, c});
      tris.push_back({nw, sw, c});
    }
  }

  std::vector<std::pair<Vec2, Vec2>> segs;
  std::vector<BoundaryTag> tags;
  segs.push_back({Vec2(0.0, 0.0), Vec2(0.0, 0.5)});
  tags.push_back(BoundaryTag::inflow);
  segs.push_back({Vec2(L, -0.5), Vec2(L, 0.5)});
  tags.push_back(BoundaryTag::outflow);
  return finalize_mesh(std::move(verts), std::move(tris), segs, tags, Vec2(0.0, 0.0));
}

}  // namespace ppeflow
