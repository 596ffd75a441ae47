#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>

#include "pointforce/errors.hpp"
#include "pointforce/metrics.hpp"
#include "pointforce/pipeline.hpp"
#include "pointforce/preprocess.hpp"
#include "pointforce/synth.hpp"
#include "pointforce/theorem.hpp"

namespace py = pybind11;
using namespace pointforce;

namespace {

PointCloud to_cloud(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2 || arr.shape(1) != 3)
    throw ConfigError("expected an (N, 3) array of points");
  const auto n = static_cast<std::size_t>(arr.shape(0));
  PointCloud cloud(n);
  std::memcpy(cloud.data(), arr.data(), n * 3 * sizeof(double));
  return cloud;
}

py::array_t<double> from_cloud(const PointCloud& cloud) {
  py::array_t<double> arr({static_cast<py::ssize_t>(cloud.size()), py::ssize_t{3}});
  std::memcpy(arr.mutable_data(), cloud.data(), cloud.size() * 3 * sizeof(double));
  return arr;
}

template <typename T>
py::array_t<T> from_vector(const std::vector<T>& values) {
  py::array_t<T> arr(static_cast<py::ssize_t>(values.size()));
  std::memcpy(arr.mutable_data(), values.data(), values.size() * sizeof(T));
  return arr;
}

std::vector<std::uint8_t> to_labels(
    const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr) {
  return {arr.data(), arr.data() + arr.size()};
}

std::vector<double> to_doubles(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  return {arr.data(), arr.data() + arr.size()};
}

ShapeKind shape_from_string(const std::string& name) {
  if (name == "cube") return ShapeKind::cube;
  if (name == "tetrahedron") return ShapeKind::tetrahedron;
  throw ConfigError("shape must be 'cube' or 'tetrahedron'");
}

}  // namespace

PYBIND11_MODULE(pointforce, m) {
  m.doc() = "Spring-electrical force analysis and anomaly detection for 3D point clouds";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);

  py::enum_<SignConvention>(m, "SignConvention")
      .value("paper", SignConvention::paper)
      .value("classical", SignConvention::classical);

  py::class_<ForceParams>(m, "ForceParams")
      .def(py::init<>())
      .def_readwrite("repulsion_scale", &ForceParams::repulsion_scale)
      .def_readwrite("spring_length", &ForceParams::spring_length)
      .def_readwrite("decay_exponent", &ForceParams::decay_exponent)
      .def_readwrite("step", &ForceParams::step)
      .def_readwrite("sign", &ForceParams::sign)
      .def_readwrite("coincident_eps", &ForceParams::coincident_eps)
      .def_readwrite("force_eps", &ForceParams::force_eps);

  py::class_<RecurrenceGraph>(m, "RecurrenceGraph")
      .def_property_readonly("radius", [](const RecurrenceGraph& g) { return g.radius; })
      .def("__len__", &RecurrenceGraph::size)
      .def("degree", &RecurrenceGraph::degree, py::arg("i"))
      .def("edge_count", &RecurrenceGraph::edge_count)
      .def(
          "neighbors",
          [](const RecurrenceGraph& g, int i) { return from_vector(g.neighbors.at(i)); },
          py::arg("i"));

  py::class_<DetectConfig>(m, "DetectConfig")
      .def(py::init<>())
      .def_readwrite("fps_target", &DetectConfig::fps_target)
      .def_readwrite("fps_start_index", &DetectConfig::fps_start_index)
      .def_readwrite("cube_edge", &DetectConfig::cube_edge)
      .def_readwrite("xi_multiplier", &DetectConfig::xi_multiplier)
      .def_readwrite("xi_absolute", &DetectConfig::xi_absolute)
      .def_readwrite("repulsion_scale", &DetectConfig::repulsion_scale)
      .def_readwrite("spring_length", &DetectConfig::spring_length)
      .def_readwrite("decay_exponent", &DetectConfig::decay_exponent)
      .def_readwrite("step", &DetectConfig::step)
      .def_readwrite("step_multiplier", &DetectConfig::step_multiplier)
      .def_readwrite("iterations", &DetectConfig::iterations)
      .def_readwrite("sign", &DetectConfig::sign)
      .def_readwrite("norm_radius_multiplier", &DetectConfig::norm_radius_multiplier)
      .def_readwrite("open_surface", &DetectConfig::open_surface)
      .def_readwrite("angle_gap_threshold", &DetectConfig::angle_gap_threshold)
      .def_readwrite("gamma_pct", &DetectConfig::gamma_pct)
      .def_readwrite("delta_pct", &DetectConfig::delta_pct)
      .def_readwrite("tau", &DetectConfig::tau);

  py::class_<DetectionResult>(m, "DetectionResult")
      .def_property_readonly("processed",
                             [](const DetectionResult& r) { return from_cloud(r.processed); })
      .def_property_readonly(
          "original_index",
          [](const DetectionResult& r) { return from_vector(r.original_index); })
      .def_property_readonly("labels",
                             [](const DetectionResult& r) { return from_vector(r.labels); })
      .def_property_readonly(
          "scores", [](const DetectionResult& r) { return from_vector(r.scores.values); })
      .def_property_readonly(
          "displacements",
          [](const DetectionResult& r) { return from_vector(r.displacements); })
      .def_property_readonly("seeds",
                             [](const DetectionResult& r) { return from_vector(r.seeds); })
      .def_property_readonly(
          "optimizable", [](const DetectionResult& r) { return from_vector(r.optimizable); })
      .def_property_readonly("manifest", [](const DetectionResult& r) {
        py::dict d;
        for (const auto& [key, value] : r.manifest.entries()) d[py::str(key)] = value;
        return d;
      });

  py::class_<TheoremReport>(m, "TheoremReport")
      .def_readonly("checked", &TheoremReport::checked)
      .def_readonly("skipped_isolated", &TheoremReport::skipped_isolated)
      .def_readonly("skipped_zero_kappa", &TheoremReport::skipped_zero_kappa)
      .def_readonly("violations", &TheoremReport::violations)
      .def_readonly("min_slack", &TheoremReport::min_slack)
      .def_readonly("min_cauchy_slack", &TheoremReport::min_cauchy_slack)
      .def_property_readonly("kappa_norms",
                             [](const TheoremReport& r) {
                               std::vector<double> v;
                               for (const auto& p : r.points) v.push_back(p.kappa_norm);
                               return from_vector(v);
                             })
      .def_property_readonly("force_norms",
                             [](const TheoremReport& r) {
                               std::vector<double> v;
                               for (const auto& p : r.points) v.push_back(p.force_norm);
                               return from_vector(v);
                             })
      .def_property_readonly("projections",
                             [](const TheoremReport& r) {
                               std::vector<double> v;
                               for (const auto& p : r.points) v.push_back(p.projection);
                               return from_vector(v);
                             })
      .def_property_readonly("bounds", [](const TheoremReport& r) {
        std::vector<double> v;
        for (const auto& p : r.points) v.push_back(p.bound);
        return from_vector(v);
      });

  m.def(
      "make_shape",
      [](const std::string& shape, double edge, double cone_radius, double cone_height,
         int cone_count, double surface_density, double noise_variance, std::uint64_t rng_seed) {
        SyntheticSpec spec;
        spec.shape = shape_from_string(shape);
        spec.edge = edge;
        spec.cone_radius = cone_radius;
        spec.cone_height = cone_height;
        spec.cone_count = cone_count;
        spec.surface_density = surface_density;
        spec.noise_variance = noise_variance;
        spec.rng_seed = rng_seed;
        const LabeledCloud lc = make_shape(spec);
        return py::make_tuple(from_cloud(lc.cloud), from_vector(lc.truth),
                              from_cloud(lc.cone_centers));
      },
      py::arg("shape") = "cube", py::arg("edge") = 64.0, py::arg("cone_radius") = 4.0,
      py::arg("cone_height") = 10.0, py::arg("cone_count") = 4,
      py::arg("surface_density") = 0.5, py::arg("noise_variance") = 0.1,
      py::arg("rng_seed") = 0,
      "Sample a labeled synthetic shape with conical protrusions");

  m.def(
      "add_gaussian_noise",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         double variance, std::uint64_t seed) {
        return from_cloud(add_gaussian_noise(to_cloud(pts), variance, seed));
      },
      py::arg("points"), py::arg("variance"), py::arg("rng_seed"));

  m.def(
      "fps_downsample",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts, int target,
         int start_index) {
        const auto [cloud, map] = fps_downsample(to_cloud(pts), target, start_index);
        return py::make_tuple(from_cloud(cloud), from_vector(map));
      },
      py::arg("points"), py::arg("target"), py::arg("start_index") = 0,
      "Farthest point sampling; returns (points, original_indices)");

  m.def(
      "rescale_to_cube",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         double edge) {
        const auto [cloud, transform] = rescale_to_cube(to_cloud(pts), edge);
        return py::make_tuple(from_cloud(cloud), transform.scale,
                              py::make_tuple(transform.translation.x, transform.translation.y,
                                             transform.translation.z));
      },
      py::arg("points"), py::arg("edge"),
      "Uniform rescale; returns (points, scale, translation)");

  m.def(
      "mean_nn_distance",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts) {
        return mean_nn_distance(to_cloud(pts));
      },
      py::arg("points"));

  m.def(
      "select_radius",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         double multiplier) { return select_radius(to_cloud(pts), multiplier); },
      py::arg("points"), py::arg("multiplier"));

  m.def(
      "build_graph",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         double radius) {
        const PointCloud cloud = to_cloud(pts);
        const SpatialIndex index(cloud, radius);
        return build_recurrence_graph(cloud, index, radius);
      },
      py::arg("points"), py::arg("radius"),
      "Radius graph: i ~ j iff ||v_i - v_j|| < radius");

  m.def(
      "radius_neighbors",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts, int i,
         double radius) {
        const PointCloud cloud = to_cloud(pts);
        const SpatialIndex index(cloud);
        return from_vector(index.radius_neighbors(i, radius));
      },
      py::arg("points"), py::arg("i"), py::arg("radius"));

  m.def(
      "compute_forces",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         const RecurrenceGraph& graph, const ForceParams& params) {
        return from_cloud(compute_forces(to_cloud(pts), graph, params));
      },
      py::arg("points"), py::arg("graph"), py::arg("params"));

  m.def(
      "point_energies",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         const RecurrenceGraph& graph, const ForceParams& params) {
        const EnergyField energy =
            energy_field(compute_forces(to_cloud(pts), graph, params));
        return from_vector(energy.values);
      },
      py::arg("points"), py::arg("graph"), py::arg("params"),
      "Per-point squared force magnitudes");

  m.def(
      "local_zscore",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& energies,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         double norm_radius) {
        const PointCloud cloud = to_cloud(pts);
        const SpatialIndex index(cloud, norm_radius);
        EnergyField field;
        field.values = to_doubles(energies);
        for (double e : field.values) field.total += e;
        return from_vector(local_zscore(field, cloud, index, norm_radius).values);
      },
      py::arg("energies"), py::arg("points"), py::arg("norm_radius"));

  m.def(
      "detect_boundary_points",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         const RecurrenceGraph& graph, double angle_gap_threshold) {
        const PointCloud cloud = to_cloud(pts);
        const SpatialIndex index(cloud, graph.radius);
        BoundaryParams params;
        params.enabled = true;
        params.angle_gap_threshold = angle_gap_threshold;
        return from_vector(detect_boundary_points(cloud, index, graph, params));
      },
      py::arg("points"), py::arg("graph"),
      py::arg("angle_gap_threshold") = 1.5707963267948966);

  m.def(
      "update_positions",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         const std::vector<int>& movable, const RecurrenceGraph& graph,
         const ForceParams& params, int iterations) {
        const auto [cloud, displacement] =
            update_positions(to_cloud(pts), movable, graph, params, iterations);
        return py::make_tuple(from_cloud(cloud), from_vector(displacement));
      },
      py::arg("points"), py::arg("movable"), py::arg("graph"), py::arg("params"),
      py::arg("iterations"));

  m.def(
      "detect",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         const DetectConfig& config) { return detect(to_cloud(pts), config); },
      py::arg("points"), py::arg("config") = DetectConfig{},
      "Run the full detection pipeline");

  m.def(
      "confusion",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& pred,
         const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& truth) {
        const ConfusionCounts c = confusion(to_labels(pred), to_labels(truth));
        return py::make_tuple(c.tp, c.fp, c.tn, c.fn);
      },
      py::arg("pred"), py::arg("truth"), "Returns (tp, fp, tn, fn)");

  m.def(
      "prf",
      [](long tp, long fp, long tn, long fn) {
        const PrfScores s = prf({tp, fp, tn, fn});
        return py::make_tuple(s.precision, s.recall, s.f1);
      },
      py::arg("tp"), py::arg("fp"), py::arg("tn"), py::arg("fn"),
      "Returns (precision, recall, f1)");

  m.def(
      "auroc",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& scores,
         const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& truth) {
        return auroc(to_doubles(scores), to_labels(truth));
      },
      py::arg("scores"), py::arg("truth"));

  m.def(
      "verify_lower_bound",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts,
         const RecurrenceGraph& graph, const ForceParams& params) {
        return verify_lower_bound(to_cloud(pts), graph, params);
      },
      py::arg("points"), py::arg("graph"), py::arg("params"),
      "Check the asymmetry-force lower bound on every point");
}
