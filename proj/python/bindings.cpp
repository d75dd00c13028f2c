#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "gcpid/denoise.hpp"
#include "gcpid/error.hpp"
#include "gcpid/metrics.hpp"
#include "gcpid/search.hpp"
#include "gcpid/synth.hpp"
#include "gcpid/talg.hpp"

namespace py = pybind11;
using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

namespace {

// (H, W, 3) interleaved <-> planar Image.
gcpid::Image to_image(const Array& a) {
  if (a.ndim() != 3 || a.shape(2) != 3) throw gcpid::ShapeError("expected an (H, W, 3) array");
  const int h = static_cast<int>(a.shape(0));
  const int w = static_cast<int>(a.shape(1));
  auto r = a.unchecked<3>();
  gcpid::Image img(h, w, 3);
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) img.at(c, y, x) = r(y, x, c);
  return img;
}

Array from_image(const gcpid::Image& img) {
  Array a({img.height(), img.width(), img.channels()});
  auto r = a.mutable_unchecked<3>();
  for (int c = 0; c < img.channels(); ++c)
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) r(y, x, c) = img.at(c, y, x);
  return a;
}

// (n1, n2, n3) <-> Tensor3.
gcpid::Tensor3 to_tensor(const Array& a) {
  if (a.ndim() != 3) throw gcpid::ShapeError("expected a 3-d array");
  gcpid::Tensor3 t(a.shape(0), a.shape(1), a.shape(2));
  auto r = a.unchecked<3>();
  for (py::ssize_t k = 0; k < a.shape(2); ++k)
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
      for (py::ssize_t j = 0; j < a.shape(1); ++j) t(i, j, k) = r(i, j, k);
  return t;
}

Array from_tensor(const gcpid::Tensor3& t) {
  Array a({t.rows(), t.cols(), t.depth()});
  auto r = a.mutable_unchecked<3>();
  for (gcpid::Index k = 0; k < t.depth(); ++k)
    for (gcpid::Index i = 0; i < t.rows(); ++i)
      for (gcpid::Index j = 0; j < t.cols(); ++j) r(i, j, k) = t(i, j, k);
  return a;
}

std::vector<gcpid::Image> to_frames(const std::vector<Array>& frames) {
  std::vector<gcpid::Image> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(to_image(f));
  return out;
}

}  // namespace

PYBIND11_MODULE(_gcpid, m) {
  m.doc() = "Color image and video denoising with a nonlocal tensor transform";

  py::register_exception<gcpid::Error>(m, "Error", PyExc_RuntimeError);

  py::class_<gcpid::DenoiseConfig>(m, "DenoiseConfig")
      .def(py::init<>())
      .def_readwrite("patch_size", &gcpid::DenoiseConfig::patch_size)
      .def_readwrite("window", &gcpid::DenoiseConfig::window)
      .def_readwrite("group_size", &gcpid::DenoiseConfig::group_size)
      .def_readwrite("lambda_", &gcpid::DenoiseConfig::lambda)
      .def_readwrite("sigma", &gcpid::DenoiseConfig::sigma)
      .def_readwrite("tau_scale", &gcpid::DenoiseConfig::tau_scale)
      .def_readwrite("stride", &gcpid::DenoiseConfig::stride)
      .def_readwrite("video", &gcpid::DenoiseConfig::video)
      .def_readwrite("frames", &gcpid::DenoiseConfig::frames)
      .def_readwrite("workers", &gcpid::DenoiseConfig::workers)
      .def("validate", &gcpid::DenoiseConfig::validate)
      .def_static("image_defaults", &gcpid::DenoiseConfig::image_defaults)
      .def_static("video_defaults", &gcpid::DenoiseConfig::video_defaults)
      .def("__repr__", [](const gcpid::DenoiseConfig& c) {
        return "DenoiseConfig(patch_size=" + std::to_string(c.patch_size) +
               ", window=" + std::to_string(c.window) + ", group_size=" +
               std::to_string(c.group_size) + ", sigma=" + std::to_string(c.sigma) + ")";
      });

  m.def("threshold_value", &gcpid::threshold_value, py::arg("config"));

  m.def(
      "denoise_image",
      [](const Array& noisy, const gcpid::DenoiseConfig& cfg) {
        const gcpid::Image img = to_image(noisy);
        gcpid::Image out;
        {
          py::gil_scoped_release release;
          out = gcpid::denoise_image(img, cfg);
        }
        return from_image(out);
      },
      py::arg("noisy"), py::arg("config"));

  m.def(
      "denoise_video",
      [](const std::vector<Array>& frames, const gcpid::DenoiseConfig& cfg) {
        const gcpid::VideoSequence seq(to_frames(frames));
        std::vector<gcpid::Image> out;
        {
          py::gil_scoped_release release;
          out = gcpid::denoise_video(seq, cfg).frames();
        }
        std::vector<Array> result;
        for (const auto& f : out) result.push_back(from_image(f));
        return result;
      },
      py::arg("frames"), py::arg("config"));

  m.def(
      "add_awgn",
      [](const Array& img, double sigma, std::uint64_t seed) {
        return from_image(gcpid::add_awgn(to_image(img), sigma, seed));
      },
      py::arg("image"), py::arg("sigma"), py::arg("seed"));

  m.def(
      "add_awgn_rgb",
      [](const Array& img, std::array<double, 3> sigma, std::uint64_t seed) {
        return from_image(gcpid::add_awgn(to_image(img), sigma, seed));
      },
      py::arg("image"), py::arg("sigma_rgb"), py::arg("seed"));

  m.def(
      "psnr",
      [](const Array& a, const Array& b, double peak) {
        return gcpid::metrics::psnr(to_image(a), to_image(b), peak);
      },
      py::arg("a"), py::arg("b"), py::arg("peak") = 255.0);

  m.def(
      "ssim", [](const Array& a, const Array& b) { return gcpid::metrics::ssim(to_image(a), to_image(b)); },
      py::arg("a"), py::arg("b"));

  m.def(
      "t_product",
      [](const Array& a, const Array& b) { return from_tensor(gcpid::talg::t_product(to_tensor(a), to_tensor(b))); },
      py::arg("a"), py::arg("b"));

  m.def(
      "t_transpose", [](const Array& a) { return from_tensor(gcpid::talg::t_transpose(to_tensor(a))); },
      py::arg("a"));

  m.def(
      "t_svd",
      [](const Array& a) {
        const auto r = gcpid::talg::t_svd(to_tensor(a));
        return py::make_tuple(from_tensor(r.u), from_tensor(r.s), from_tensor(r.v));
      },
      py::arg("a"), "Returns (U, S, V) with a = U * S * V^T under the t-product.");

  m.def(
      "success_rate",
      [](const Array& clean, const Array& noisy, const gcpid::DenoiseConfig& cfg,
         const std::string& scheme, int n_refs, std::uint64_t seed) {
        return gcpid::search::success_rate(to_image(clean), to_image(noisy), cfg,
                                           gcpid::search::scheme_from_string(scheme), n_refs,
                                           seed);
      },
      py::arg("clean"), py::arg("noisy"), py::arg("config"), py::arg("scheme") = "green-guided",
      py::arg("n_refs") = 1000, py::arg("seed") = 0);

  m.def(
      "synthetic_image",
      [](const std::string& pattern, int height, int width, std::uint64_t seed) {
        for (auto p : gcpid::synth::kAllPatterns) {
          if (gcpid::synth::to_string(p) == pattern) {
            return from_image(gcpid::synth::make_image(p, height, width, seed));
          }
        }
        throw gcpid::ConfigError("unknown pattern '" + pattern + "'");
      },
      py::arg("pattern"), py::arg("height"), py::arg("width"), py::arg("seed") = 0);
}
