#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ptzsim/errors.hpp"
#include "ptzsim/report.hpp"
#include "ptzsim/runner.hpp"

namespace py = pybind11;
using namespace ptzsim;

namespace {

py::dict result_dict(const SequenceResult& r) {
  py::dict d;
  d["tpe"] = r.tpe;
  d["tpo"] = r.tpo;
  d["bor"] = r.bor;
  d["tf"] = r.tf;
  d["pr"] = r.pr;
  d["score"] = r.score;
  d["processed"] = r.processed;
  d["total"] = r.total;
  return d;
}

py::dict trace_dict(const SimTrace& t) {
  py::list frames;
  for (const auto& r : t.records) {
    py::dict f;
    f["frame"] = r.frame_index;
    f["timestamp"] = r.timestamp;
    f["tpe"] = r.tpe;
    f["bor"] = r.bor;
    f["tpo"] = r.tpo;
    f["tf"] = r.tf;
    f["aim"] = py::make_tuple(r.aim.pan(), r.aim.tilt());
    frames.append(f);
  }
  py::dict d = result_dict(aggregate(t.records, t.total));
  d["frames"] = frames;
  d["delays"] = py::dict(py::arg("execution") = t.ledger.execution, py::arg("motion") = t.ledger.motion,
                         py::arg("communication") = t.ledger.communication);
  return d;
}

SimTrace simulate(const Sequence& seq, const std::string& tracker, const std::string& config_json) {
  const SimConfig cfg = config_json.empty() ? SimConfig{} : nlohmann::json::parse(config_json).get<SimConfig>();
  auto t = make_tracker(tracker);
  py::gil_scoped_release release;
  return run_simulation(seq, *t, cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Online PTZ tracking simulator core";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<DataError>(m, "DataError", error.ptr());
  py::register_exception<InsufficientHistory>(m, "InsufficientHistory", error.ptr());

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("version", &version_string);

  py::class_<SphericalPoint>(m, "SphericalPoint")
      .def(py::init<double, double>(), py::arg("pan"), py::arg("tilt"))
      .def_property_readonly("pan", &SphericalPoint::pan)
      .def_property_readonly("tilt", &SphericalPoint::tilt)
      .def("__repr__", [](const SphericalPoint& p) {
        return "SphericalPoint(" + std::to_string(p.pan()) + ", " + std::to_string(p.tilt()) + ")";
      });

  py::class_<CameraPose>(m, "CameraPose")
      .def(py::init<SphericalPoint, double, int, int>(), py::arg("aim"), py::arg("hfov") = 60.0,
           py::arg("width") = 320, py::arg("height") = 240)
      .def_readonly("aim", &CameraPose::aim)
      .def_readonly("hfov", &CameraPose::hfov)
      .def_property_readonly("focal_px", &CameraPose::focal_px);

  py::class_<BoundingBox>(m, "BoundingBox")
      .def(py::init<double, double, double, double>(), py::arg("x"), py::arg("y"), py::arg("w"), py::arg("h"))
      .def_readonly("x", &BoundingBox::x)
      .def_readonly("y", &BoundingBox::y)
      .def_readonly("w", &BoundingBox::w)
      .def_readonly("h", &BoundingBox::h);

  m.def(
      "project",
      [](const SphericalPoint& p, const CameraPose& pose) -> std::optional<std::pair<double, double>> {
        auto q = project_sphere_to_image(p, pose);
        if (!q) return std::nullopt;
        return std::pair{q->x, q->y};
      },
      py::arg("point"), py::arg("pose"), "Pixel coordinates of a sphere point, or None outside the frustum.");
  m.def(
      "backproject", [](double x, double y, const CameraPose& pose) { return backproject_image_to_sphere({x, y}, pose); },
      py::arg("x"), py::arg("y"), py::arg("pose"));
  m.def("angular_distance", &angular_distance);

  m.def("bor", &bor, py::arg("gt"), py::arg("pt"));
  m.def("score", &score, py::arg("bor"), py::arg("tf"));
  m.def(
      "rank",
      [](const std::vector<std::tuple<std::string, double, double>>& rows) {
        std::vector<NamedResult> in;
        for (const auto& [name, b, tf] : rows) {
          SequenceResult s;
          s.bor = b;
          s.tf = tf;
          s.score = score(b, tf);
          in.push_back({name, s});
        }
        std::vector<std::pair<std::string, double>> out;
        for (const auto& r : rank(std::move(in))) out.emplace_back(r.name, r.result.score);
        return out;
      },
      py::arg("rows"), "Ranks (name, BOR, TF) rows by score; returns (name, score) pairs.");

  m.def(
      "predict_displacement",
      [](const std::vector<std::tuple<double, double, double>>& samples, const std::string& model, double dt) {
        TrackHistory h;
        for (const auto& [pan, tilt, t] : samples) h.push(SphericalPoint(pan, tilt), t);
        const auto d = ptzsim::predict_displacement(prediction_model_from_string(model), estimate_motion(h), dt);
        return std::pair{d.pan, d.tilt};
      },
      py::arg("samples"), py::arg("model"), py::arg("dt"),
      "Displacement over dt from up to three (pan, tilt, time) samples.");

  m.def("next_processed_frame", &next_processed_frame, py::arg("current_index"), py::arg("busy_until"),
        py::arg("fps"), py::arg("frame_count"));

  m.def("default_config_json", [] { return nlohmann::json(SimConfig{}).dump(); });
  m.def("default_synthetic_json", [] { return synthetic_spec_json(SyntheticSpec{}).dump(); });
  m.def("tracker_names", &tracker_names);

  m.def(
      "simulate_synthetic",
      [](const std::string& spec_json, const std::string& tracker, const std::string& config_json) {
        const SyntheticSpec spec = synthetic_spec_from_json(nlohmann::json::parse(spec_json));
        const Sequence seq = generate_synthetic_sequence(spec);
        return trace_dict(simulate(seq, tracker, config_json));
      },
      py::arg("spec_json"), py::arg("tracker"), py::arg("config_json") = "");
  m.def(
      "simulate_dataset",
      [](const std::filesystem::path& root, const std::string& tracker, const std::string& config_json) {
        const Sequence seq = load_sequence(root);
        return trace_dict(simulate(seq, tracker, config_json));
      },
      py::arg("root"), py::arg("tracker"), py::arg("config_json") = "");

  m.def(
      "run_manifest",
      [](const std::string& manifest_json, const std::filesystem::path& out_dir, int jobs) {
        RunSpec spec = run_spec_from_manifest(nlohmann::json::parse(manifest_json));
        spec.output_dir = out_dir;
        spec.jobs = jobs;
        std::ostringstream log;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cmd_run(spec, log);
        }
        return std::pair{code, log.str()};
      },
      py::arg("manifest_json"), py::arg("out_dir"), py::arg("jobs") = 1);
  m.def(
      "table",
      [](const std::filesystem::path& dir) {
        std::ostringstream out, err;
        const int code = cmd_table(dir, out, err);
        return std::tuple{code, out.str(), err.str()};
      },
      py::arg("results_dir"));
  m.def(
      "generate",
      [](const std::string& spec_json, const std::filesystem::path& out_dir) {
        std::ostringstream err;
        const int code = cmd_gen(synthetic_spec_from_json(nlohmann::json::parse(spec_json)), out_dir, err);
        return std::pair{code, err.str()};
      },
      py::arg("spec_json"), py::arg("out_dir"));
}
