#include "pointforce/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "pointforce/errors.hpp"

namespace pointforce {

namespace {

struct Face {
  Vec3 origin;  // squares: a corner; triangles: vertex A
  Vec3 u;       // squares: edge vector; triangles: B - A
  Vec3 v;       // squares: edge vector; triangles: C - A
  Vec3 normal;  // outward unit
  bool triangle = false;
  double area = 0.0;
};

std::vector<Face> cube_faces(double edge) {
  const double e = edge;
  const auto face = [&](Vec3 origin, Vec3 u, Vec3 v, Vec3 n) {
    return Face{origin, u, v, n, false, e * e};
  };
  return {
      face({0, 0, 0}, {e, 0, 0}, {0, e, 0}, {0, 0, -1}),
      face({0, 0, e}, {e, 0, 0}, {0, e, 0}, {0, 0, 1}),
      face({0, 0, 0}, {e, 0, 0}, {0, 0, e}, {0, -1, 0}),
      face({0, e, 0}, {e, 0, 0}, {0, 0, e}, {0, 1, 0}),
      face({0, 0, 0}, {0, e, 0}, {0, 0, e}, {-1, 0, 0}),
      face({e, 0, 0}, {0, e, 0}, {0, 0, e}, {1, 0, 0}),
  };
}

std::vector<Face> tetra_faces(double edge) {
  const double s = edge / (2.0 * std::numbers::sqrt2);
  const Vec3 verts[4] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  const Vec3 center{0, 0, 0};
  const int tri[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

  std::vector<Face> faces;
  for (const auto& t : tri) {
    Face f;
    f.origin = verts[t[0]];
    f.u = verts[t[1]] - verts[t[0]];
    f.v = verts[t[2]] - verts[t[0]];
    Vec3 n = cross(f.u, f.v);
    f.area = 0.5 * n.norm();
    n = n / n.norm();
    if (dot(n, f.origin - center) < 0.0) n = -n;
    f.normal = n;
    f.triangle = true;
    faces.push_back(f);
  }
  return faces;
}

Vec3 face_point(const Face& f, double a, double b) {
  if (f.triangle && a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return f.origin + a * f.u + b * f.v;
}

// Distance from a point on the face to the nearest face edge, measured in the
// face plane.
double edge_clearance(const Face& f, const Vec3& p) {
  if (!f.triangle) {
    const Vec3 d = p - f.origin;
    const double lu = f.u.norm();
    const double lv = f.v.norm();
    const double a = dot(d, f.u) / lu;
    const double b = dot(d, f.v) / lv;
    return std::fmin(std::fmin(a, lu - a), std::fmin(b, lv - b));
  }
  const Vec3 verts[3] = {f.origin, f.origin + f.u, f.origin + f.v};
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    const Vec3& a = verts[k];
    const Vec3& b = verts[(k + 1) % 3];
    const Vec3 ab = b - a;
    const double t = dot(p - a, ab) / ab.squared_norm();
    best = std::fmin(best, distance(p, a + t * ab));
  }
  return best;
}

struct ConePlacement {
  int face = -1;
  Vec3 center;
};

// Quasirandom R2 sequence over the unit square, offset by the seeded origin.
struct R2Sequence {
  double a0, b0;
  long k = 0;
  std::pair<double, double> next() {
    constexpr double g1 = 0.7548776662466927;
    constexpr double g2 = 0.5698402909980532;
    ++k;
    double a = a0 + g1 * k;
    double b = b0 + g2 * k;
    return {a - std::floor(a), b - std::floor(b)};
  }
};

std::vector<ConePlacement> place_cones(const std::vector<Face>& faces,
                                       const SyntheticSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  R2Sequence seq{unit(rng), unit(rng)};

  std::vector<ConePlacement> cones;
  const int n_faces = static_cast<int>(faces.size());
  long attempts = 0;
  const long max_attempts = 20000L * std::max(spec.cone_count, 1);
  while (static_cast<int>(cones.size()) < spec.cone_count) {
    if (++attempts > max_attempts) throw DataError("placement infeasible");
    const auto [a, b] = seq.next();
    const int face = static_cast<int>((attempts - 1) % n_faces);
    const Vec3 candidate = face_point(faces[face], a, b);
    if (edge_clearance(faces[face], candidate) < spec.cone_radius) continue;
    bool overlaps = false;
    for (const ConePlacement& c : cones) {
      if (c.face == face && distance(c.center, candidate) < 2.0 * spec.cone_radius) {
        overlaps = true;
        break;
      }
    }
    if (overlaps) continue;
    cones.push_back({face, candidate});
  }
  return cones;
}

void validate(const SyntheticSpec& spec) {
  if (!(spec.edge > 0.0)) throw ConfigError("shape edge must be positive");
  if (spec.cone_count < 0) throw ConfigError("cone count must be nonnegative");
  if (spec.cone_count > 0) {
    if (!(spec.cone_radius > 0.0) || !(spec.cone_height > 0.0))
      throw ConfigError("cone extents must be positive");
    if (!(spec.cone_radius < spec.edge / 2.0))
      throw ConfigError("cone radius must be smaller than half the edge");
  }
  if (!(spec.surface_density > 0.0)) throw ConfigError("surface density must be positive");
  if (spec.noise_variance < 0.0) throw ConfigError("noise variance must be nonnegative");
}

}  // namespace

LabeledCloud make_shape(const SyntheticSpec& spec) {
  validate(spec);
  const std::vector<Face> faces =
      spec.shape == ShapeKind::cube ? cube_faces(spec.edge) : tetra_faces(spec.edge);

  std::mt19937_64 rng(spec.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::vector<ConePlacement> cones =
      spec.cone_count > 0 ? place_cones(faces, spec, rng) : std::vector<ConePlacement>{};

  LabeledCloud out;
  for (const ConePlacement& c : cones) out.cone_centers.push_back(c.center);

  // Flat surface, skipping the disk footprint of each cone on its face.
  for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
    const Face& f = faces[fi];
    const long count = std::llround(spec.surface_density * f.area);
    for (long k = 0; k < count; ++k) {
      const double a = unit(rng);
      const double b = unit(rng);
      const Vec3 p = face_point(f, a, b);
      bool in_disk = false;
      for (const ConePlacement& c : cones) {
        if (c.face == fi && distance(p, c.center) < spec.cone_radius) {
          in_disk = true;
          break;
        }
      }
      if (in_disk) continue;
      out.cloud.push_back(p);
      out.truth.push_back(0);
    }
  }

  // Right-cone lateral surfaces at matching density, apex on the face normal.
  const double slant = std::sqrt(spec.cone_radius * spec.cone_radius +
                                 spec.cone_height * spec.cone_height);
  const double lateral_area = std::numbers::pi * spec.cone_radius * slant;
  for (const ConePlacement& c : cones) {
    const Face& f = faces[c.face];
    const Vec3 u_hat = f.u / f.u.norm();
    Vec3 v_hat = cross(f.normal, u_hat);
    v_hat = v_hat / v_hat.norm();
    const long count =
        std::max<long>(1, static_cast<long>(std::llround(spec.surface_density * lateral_area)));
    for (long k = 0; k < count; ++k) {
      const double t = std::sqrt(unit(rng));  // area grows linearly from the apex
      const double theta = 2.0 * std::numbers::pi * unit(rng);
      const Vec3 radial = (t * spec.cone_radius) *
                          (std::cos(theta) * u_hat + std::sin(theta) * v_hat);
      out.cloud.push_back(c.center + radial + ((1.0 - t) * spec.cone_height) * f.normal);
      out.truth.push_back(1);
    }
  }

  out.cloud = add_gaussian_noise(out.cloud, spec.noise_variance, spec.rng_seed + 1);
  return out;
}

PointCloud add_gaussian_noise(const PointCloud& cloud, double variance, std::uint64_t rng_seed) {
  if (variance < 0.0) throw ConfigError("noise variance must be nonnegative");
  if (variance == 0.0) return cloud;

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(variance));
  PointCloud out;
  out.reserve(cloud.size());
  for (const Vec3& p : cloud) {
    const double dx = noise(rng);
    const double dy = noise(rng);
    const double dz = noise(rng);
    out.push_back({p.x + dx, p.y + dy, p.z + dz});
  }
  return out;
}

}  // namespace pointforce
