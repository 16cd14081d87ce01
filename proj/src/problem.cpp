#include "wavegal/problem.hpp"

#include <cmath>
#include <sstream>

namespace wavegal {

namespace {

void check_in_domain(double x, double y) {
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) {
    std::ostringstream os;
    os << "point (" << x << ", " << y << ") outside the unit square";
    throw DomainError(os.str());
  }
}

}  // namespace

double ConductivityTensor::eig_min() const {
  const double tr = kxx + kyy;
  const double disc = std::sqrt((kxx - kyy) * (kxx - kyy) + 4.0 * kxy * kxy);
  return 0.5 * (tr - disc);
}

double ConductivityTensor::eig_max() const {
  const double tr = kxx + kyy;
  const double disc = std::sqrt((kxx - kyy) * (kxx - kyy) + 4.0 * kxy * kxy);
  return 0.5 * (tr + disc);
}

void GeometryDescriptor::validate() const {
  switch (tag) {
    case Tag::Homogeneous:
      break;
    case Tag::LayeredSlab:
      if (!(interface_y > 0.0 && interface_y < 1.0))
        throw ValidationError("slab interface_y must lie in (0,1)");
      break;
    case Tag::CircularInclusion:
      if (!(r > 0.0)) throw ValidationError("inclusion radius must be positive");
      if (cx - r <= 0.0 || cx + r >= 1.0 || cy - r <= 0.0 || cy + r >= 1.0)
        throw ValidationError("inclusion disc must lie strictly inside the unit square");
      break;
    case Tag::GradedLayer:
      if (!(y0 > 0.0 && y0 < 1.0)) throw ValidationError("graded layer y0 must lie in (0,1)");
      if (alpha < 0.0) throw ValidationError("grading intensity alpha must be >= 0");
      break;
  }
}

ConductivityTensor MaterialMap::conductivity_at(double x, double y) const {
  check_in_domain(x, y);
  switch (geometry.tag) {
    case GeometryDescriptor::Tag::Homogeneous:
      return matrix_phase.conductivity;
    case GeometryDescriptor::Tag::LayeredSlab:
      return y >= geometry.interface_y ? secondary_phase.conductivity : matrix_phase.conductivity;
    case GeometryDescriptor::Tag::CircularInclusion: {
      const double dx = x - geometry.cx, dy = y - geometry.cy;
      return dx * dx + dy * dy <= geometry.r * geometry.r ? secondary_phase.conductivity
                                                         : matrix_phase.conductivity;
    }
    case GeometryDescriptor::Tag::GradedLayer: {
      if (y < geometry.y0) return matrix_phase.conductivity;
      const double scale = 1.0 + geometry.alpha * (2.0 * y - 1.0);
      const ConductivityTensor& base = secondary_phase.conductivity;
      return {base.kxx * scale, base.kxy * scale, base.kyy * scale};
    }
  }
  return matrix_phase.conductivity;
}

int MaterialMap::phase_of(double x, double y) const {
  check_in_domain(x, y);
  switch (geometry.tag) {
    case GeometryDescriptor::Tag::Homogeneous:
      return matrix_phase.id;
    case GeometryDescriptor::Tag::LayeredSlab:
      return y >= geometry.interface_y ? secondary_phase.id : matrix_phase.id;
    case GeometryDescriptor::Tag::CircularInclusion: {
      const double dx = x - geometry.cx, dy = y - geometry.cy;
      return dx * dx + dy * dy <= geometry.r * geometry.r ? secondary_phase.id : matrix_phase.id;
    }
    case GeometryDescriptor::Tag::GradedLayer:
      return y >= geometry.y0 ? secondary_phase.id : matrix_phase.id;
  }
  return matrix_phase.id;
}

double MaterialMap::rho_cp_at(double x, double y) const {
  const MaterialPhase& ph =
      phase_of(x, y) == matrix_phase.id ? matrix_phase : secondary_phase;
  return ph.rho * ph.cp;
}

std::pair<double, double> MaterialMap::ellipticity_bounds(int samples_per_axis) const {
  if (samples_per_axis < 2) throw ValidationError("ellipticity_bounds needs samples_per_axis >= 2");
  double kmin = 0.0, kmax = 0.0;
  bool first = true;
  const int m = samples_per_axis;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double x = static_cast<double>(i) / (m - 1);
      const double y = static_cast<double>(j) / (m - 1);
      const ConductivityTensor k = conductivity_at(x, y);
      if (!k.spd()) {
        std::ostringstream os;
        os << "conductivity tensor not SPD at (" << x << ", " << y << ")";
        throw ValidationError(os.str());
      }
      const double lo = k.eig_min(), hi = k.eig_max();
      if (first || lo < kmin) kmin = lo;
      if (first || hi > kmax) kmax = hi;
      first = false;
    }
  }
  return {kmin, kmax};
}

bool MaterialMap::separable_in_y() const {
  if (geometry.tag == GeometryDescriptor::Tag::CircularInclusion) return false;
  return matrix_phase.conductivity.isotropic_diagonal() &&
         secondary_phase.conductivity.isotropic_diagonal();
}

void MaterialMap::validate() const {
  geometry.validate();
  matrix_phase.validate();
  secondary_phase.validate();
}

std::set<Edge> BoundarySpec::dirichlet_edges() const {
  std::set<Edge> out;
  for (int i = 0; i < 4; ++i)
    if (edges[i].kind == BcKind::Dirichlet) out.insert(static_cast<Edge>(i));
  return out;
}

bool BoundarySpec::dirichlet_time_dependent() const {
  for (const auto& e : edges)
    if (e.kind == BcKind::Dirichlet && e.data.time_dependent) return true;
  return false;
}

ConductivityTensor evaluate_conductivity(const MaterialMap& map, double x, double y) {
  return map.conductivity_at(x, y);
}

int phase_of(const MaterialMap& map, double x, double y) { return map.phase_of(x, y); }

std::pair<double, double> ellipticity_bounds(const MaterialMap& map, int samples_per_axis) {
  return map.ellipticity_bounds(samples_per_axis);
}

}  // namespace wavegal
