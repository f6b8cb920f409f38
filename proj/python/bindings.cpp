// Python bindings. Fields cross the boundary as complex128 arrays of shape
// (3, n, n, n) (vectors) or (n, n, n) (scalars) in FFT index order.
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <random>
#include <sstream>

#include "hallmhd/checkpoint.hpp"
#include "hallmhd/config.hpp"
#include "hallmhd/diagnostics.hpp"
#include "hallmhd/diophantine.hpp"
#include "hallmhd/integrator.hpp"
#include "hallmhd/mhd_operators.hpp"
#include "hallmhd/simulation.hpp"
#include "hallmhd/spectral.hpp"

namespace py = pybind11;
using namespace hallmhd;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

void check_shape(const CArray& a, const Lattice& lat, bool vector) {
  const auto n = static_cast<py::ssize_t>(lat.n_grid());
  const py::ssize_t want = vector ? 4 : 3;
  bool ok = a.ndim() == want;
  for (py::ssize_t d = 0; ok && d < want; ++d) {
    const py::ssize_t expect = (vector && d == 0) ? 3 : n;
    ok = a.shape(d) == expect;
  }
  if (!ok) {
    throw py::value_error(std::string("expected shape ") +
                          (vector ? "(3, n, n, n)" : "(n, n, n)") +
                          " with n = " + std::to_string(lat.n_grid()));
  }
}

ScalarField to_scalar(const CArray& a, const Lattice& lat) {
  check_shape(a, lat, false);
  ScalarField f(lat);
  std::memcpy(f.coeffs().data(), a.data(), lat.size() * sizeof(Complex));
  return f;
}

VectorField to_vector(const CArray& a, const Lattice& lat) {
  check_shape(a, lat, true);
  VectorField v(lat);
  for (int c = 0; c < 3; ++c) {
    std::memcpy(v[c].coeffs().data(), a.data() + c * lat.size(),
                lat.size() * sizeof(Complex));
  }
  return v;
}

CArray from_scalar(const ScalarField& f) {
  const auto n = static_cast<py::ssize_t>(f.n_grid());
  CArray out({n, n, n});
  std::memcpy(out.mutable_data(), f.coeffs().data(), f.size() * sizeof(Complex));
  return out;
}

CArray from_vector(const VectorField& v) {
  const auto n = static_cast<py::ssize_t>(v.n_grid());
  CArray out({py::ssize_t{3}, n, n, n});
  const std::size_t size = v[0].size();
  for (int c = 0; c < 3; ++c) {
    std::memcpy(out.mutable_data() + c * size, v[c].coeffs().data(),
                size * sizeof(Complex));
  }
  return out;
}

py::dict report_dict(const EnergyReport& r) {
  py::dict d;
  d["t"] = r.t;
  d["dt"] = r.dt;
  d["l2_u"] = r.l2_u;
  d["l2_b"] = r.l2_b;
  d["grad_b_l2"] = r.grad_b_l2;
  py::dict hs;
  for (const auto& h : r.hs) hs[py::float_(h.s)] = py::make_tuple(h.u, h.b);
  d["hs"] = hs;
  d["E"] = r.E;
  d["D"] = r.D;
  d["lyap_residual"] = r.lyap_residual;
  d["div_max"] = r.div_max;
  d["mean_max"] = r.mean_max;
  py::dict ids;
  for (const auto& [name, value] : r.identity_residuals) ids[py::str(name)] = value;
  d["identity_residuals"] = ids;
  return d;
}

py::dict fit_dict(const DecayFit& f) {
  py::dict d;
  d["beta"] = f.beta;
  d["window"] = py::make_tuple(f.window.t_start, f.window.t_end);
  d["fitted_alpha"] = f.fitted_alpha;
  d["predicted_alpha"] = f.predicted_alpha;
  d["r_squared"] = f.r_squared;
  d["points"] = f.points;
  d["below_floor"] = f.below_floor;
  d["pass"] = f.pass;
  return d;
}

Terms terms_from_name(const std::string& name) {
  if (name == "all") return Terms::all();
  if (name == "linear") return Terms::linear();
  if (name == "diffusion") return Terms::diffusion_only();
  throw py::value_error("terms must be 'all', 'linear' or 'diffusion'");
}

std::string config_text(const py::dict& d) {
  std::ostringstream os;
  for (const auto& [key, value] : d) {
    os << py::str(key).cast<std::string>() << " = ";
    if (py::isinstance<py::bool_>(value)) {
      os << (value.cast<bool>() ? "true" : "false");
    } else if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
      bool first = true;
      for (const auto& item : value) {
        if (!first) os << ", ";
        os << py::repr(item).cast<std::string>();
        first = false;
      }
    } else if (py::isinstance<py::float_>(value)) {
      os << py::repr(value).cast<std::string>();
    } else {
      os << py::str(value).cast<std::string>();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_hallmhd, m) {
  m.doc() = "Pseudo-spectral Hall-MHD on the 3-torus";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_RuntimeError);
  py::register_exception<CheckpointError>(m, "CheckpointError", PyExc_IOError);

  py::class_<Lattice>(m, "Lattice")
      .def(py::init([](int n_grid, std::pair<int, int> pad) {
             return Lattice(n_grid, PadFactor{pad.first, pad.second});
           }),
           py::arg("n_grid"), py::arg("pad") = std::pair<int, int>{3, 2})
      .def_property_readonly("n_grid", &Lattice::n_grid)
      .def_property_readonly("padded_grid", &Lattice::padded_grid)
      .def_property_readonly("alias_free", &Lattice::alias_free)
      .def_property_readonly("max_wavenumber", &Lattice::max_wavenumber)
      .def_property_readonly("covering_radius",
                             [](const Lattice& l) { return covering_radius(l); })
      .def("wavevector",
           [](const Lattice& l, int i1, int i2, int i3) {
             const auto k = l.wavevector(l.flat(i1, i2, i3));
             return py::make_tuple(k.k1, k.k2, k.k3);
           })
      .def("mask", [](const Lattice& l) {
        const auto n = static_cast<py::ssize_t>(l.n_grid());
        py::array_t<bool> out({n, n, n});
        auto* p = out.mutable_data();
        for (std::size_t i = 0; i < l.size(); ++i) p[i] = l.retained(i);
        return out;
      })
      .def("__repr__", [](const Lattice& l) {
        return "Lattice(" + std::to_string(l.n_grid()) + ", pad=" +
               to_string(l.pad_factor()) + ")";
      });

  py::class_<DiophantineVector>(m, "DiophantineVector")
      .def(py::init([](Vec3 n, double r, int K) { return make_diophantine(n, r, K); }),
           py::arg("n"), py::arg("r") = 2.5, py::arg("K") = 32)
      .def_readonly("n", &DiophantineVector::n)
      .def_readonly("r", &DiophantineVector::r)
      .def_readonly("c_est", &DiophantineVector::c_est)
      .def_readonly("K", &DiophantineVector::K)
      .def_property_readonly("argmin",
                             [](const DiophantineVector& d) {
                               return py::make_tuple(d.argmin.k1, d.argmin.k2, d.argmin.k3);
                             })
      .def_property_readonly("usable", &DiophantineVector::usable)
      .def("norm", &DiophantineVector::norm);

  m.def("min_product", [](Vec3 n, double r, int K) {
    const auto mp = min_product(n, r, K);
    return py::make_tuple(mp.c_est, py::make_tuple(mp.argmin.k1, mp.argmin.k2, mp.argmin.k3));
  }, py::arg("n"), py::arg("r"), py::arg("K"));

  m.def("check_condition", [](const DiophantineVector& dv, double c) {
    const auto rep = check_condition(dv, c);
    py::dict d;
    d["holds"] = rep.holds;
    d["tightest_shell"] = rep.tightest_shell;
    d["tightest_k"] = py::make_tuple(rep.tightest_k.k1, rep.tightest_k.k2, rep.tightest_k.k3);
    py::list shells;
    for (const auto& s : rep.shells) shells.append(py::make_tuple(s.shell, s.min_value, s.holds));
    d["shells"] = shells;
    return d;
  });

  m.def("suggest_background", [](double r, int K, double amplitude) {
    const auto s = suggest_background(r, K, amplitude);
    return py::make_tuple(s.dv, s.candidate, s.accepted);
  }, py::arg("r"), py::arg("K"), py::arg("amplitude") = 1.0);

  m.def("random_solenoidal", [](const Lattice& lat, std::uint64_t seed, double kmax, double slope) {
    std::mt19937_64 rng(seed);
    return from_vector(random_solenoidal(lat, rng, kmax, slope));
  }, py::arg("lattice"), py::arg("seed"), py::arg("kmax"), py::arg("slope") = 0.0);

  m.def("sobolev_norm", [](const CArray& a, const Lattice& lat, double s) {
    return a.ndim() == 4 ? sobolev_norm(to_vector(a, lat), lat, s)
                         : sobolev_norm(to_scalar(a, lat), lat, s);
  }, py::arg("field"), py::arg("lattice"), py::arg("s"));

  m.def("leray_project", [](const CArray& a, const Lattice& lat) {
    return from_vector(leray_project(to_vector(a, lat), lat));
  });
  m.def("max_divergence", [](const CArray& a, const Lattice& lat) {
    return max_divergence(to_vector(a, lat), lat);
  });
  m.def("curl", [](const CArray& a, const Lattice& lat) {
    return from_vector(curl(to_vector(a, lat), lat));
  });
  m.def("alias_free_product", [](const CArray& f, const CArray& g, const Lattice& lat) {
    return from_scalar(alias_free_product(to_scalar(f, lat), to_scalar(g, lat), lat));
  });

  m.def("rhs", [](const CArray& u, const CArray& b, const Lattice& lat, Vec3 n,
                  double gamma, const std::string& terms) {
    const auto t = perturbed_terms(to_vector(u, lat), to_vector(b, lat), lat, n, gamma,
                                   terms_from_name(terms));
    return py::make_tuple(from_vector(t.du), from_vector(t.db));
  }, py::arg("u"), py::arg("b"), py::arg("lattice"), py::arg("n"),
     py::arg("gamma") = 1.0, py::arg("terms") = "all");

  py::class_<SimState>(m, "State")
      .def(py::init([](const Lattice& lat, const DiophantineVector& dv, double gamma) {
             return SimState(lat, gamma, dv);
           }),
           py::arg("lattice"), py::arg("dv"), py::arg("gamma") = 1.0)
      .def_property("u", [](const SimState& s) { return from_vector(s.u); },
                    [](SimState& s, const CArray& a) {
                      s.u = to_vector(a, Lattice(s.u.n_grid()));
                    })
      .def_property("b", [](const SimState& s) { return from_vector(s.b); },
                    [](SimState& s, const CArray& a) {
                      s.b = to_vector(a, Lattice(s.b.n_grid()));
                    })
      .def_readwrite("t", &SimState::t)
      .def_readonly("gamma", &SimState::gamma)
      .def_readonly("dv", &SimState::dv);

  m.def("initial_data", [](const Lattice& lat, std::uint64_t seed, double slope,
                           double epsilon, double N) {
    const auto [u, b] = make_initial_data(seed, slope, epsilon, lat, N);
    return py::make_tuple(from_vector(u), from_vector(b));
  }, py::arg("lattice"), py::arg("seed"), py::arg("slope"), py::arg("epsilon"),
     py::arg("N") = 17.0);

  m.def("step", [](const SimState& s, const Lattice& lat, double dt, const std::string& terms) {
    return step(s, lat, dt, terms_from_name(terms));
  }, py::arg("state"), py::arg("lattice"), py::arg("dt"), py::arg("terms") = "all");

  m.def("choose_dt", [](const SimState& s, const Lattice& lat, double dt_max,
                        double dt_min, double cfl_adv, double cfl_hall) {
    StepControl ctrl;
    ctrl.dt_max = dt_max;
    ctrl.dt_min = dt_min;
    ctrl.cfl_adv = cfl_adv;
    ctrl.cfl_hall = cfl_hall;
    const auto c = choose_dt(s, lat, ctrl);
    return py::make_tuple(c.dt, std::string(to_string(c.limiter)), c.clamped);
  }, py::arg("state"), py::arg("lattice"), py::arg("dt_max") = 5e-2,
     py::arg("dt_min") = 1e-6, py::arg("cfl_adv") = 0.5, py::arg("cfl_hall") = 0.5);

  m.def("choose_A", &choose_A);
  m.def("energy_E", &energy_E, py::arg("state"), py::arg("lattice"), py::arg("A"));
  m.def("dissipation_D", &dissipation_D, py::arg("state"), py::arg("lattice"), py::arg("A"));
  m.def("predicted_decay_exponent", &predicted_decay_exponent,
        py::arg("beta"), py::arg("N"), py::arg("r"));
  m.def("identity_suite", [](const SimState& s, const Lattice& lat) {
    py::dict d;
    for (const auto& [name, value] : identity_suite(s, lat)) d[py::str(name)] = value;
    return d;
  });
  m.def("identity_names", &identity_names);
  m.def("report", [](const SimState& s, const Lattice& lat, double A,
                     std::vector<double> hs, bool identities) {
    return report_dict(make_report(s, lat, 0.0, ReportOptions{A, std::move(hs), identities}));
  }, py::arg("state"), py::arg("lattice"), py::arg("A"),
     py::arg("hs") = std::vector<double>{}, py::arg("identities") = true);

  m.def("save_checkpoint", [](const std::filesystem::path& path, const SimState& s,
                              const Lattice& lat) { save_checkpoint(path, s, lat); });
  m.def("load_checkpoint", [](const std::filesystem::path& path) {
    auto loaded = load_checkpoint(path);
    return py::make_tuple(loaded.lattice, loaded.state);
  });
  m.def("bit_equal", [](const SimState& a, const SimState& b) {
    return bit_equal(a.u, b.u) && bit_equal(a.b, b.b);
  });

  m.def("config_keys", &config_keys);
  m.def("print_config", [](const py::dict& d) { return print_config(parse_config(config_text(d))); });

  m.def("simulate", [](const py::dict& d, bool write_outputs, bool identities) {
    const RunConfig cfg = parse_config(config_text(d));
    SimulateOptions opts;
    opts.write_outputs = write_outputs;
    opts.identities = identities;
    RunResult res;
    {
      py::gil_scoped_release release;
      res = simulate(cfg, opts);
    }
    py::dict out;
    out["background"] = res.background;
    out["dv"] = res.dv;
    out["A"] = res.A;
    out["steps"] = res.steps;
    out["clamped_steps"] = res.clamped_steps;
    out["blew_up"] = res.blew_up;
    out["blowup_detail"] = res.blowup_detail;
    py::list series;
    for (const auto& r : res.series) series.append(report_dict(r));
    out["series"] = series;
    py::list decay;
    for (const auto& f : res.decay) decay.append(fit_dict(f));
    out["decay"] = decay;
    if (res.lyapunov) {
      out["lyapunov_max_residual"] = res.lyapunov->max_residual;
      out["lyapunov_flagged"] = res.lyapunov->flagged.size();
    }
    out["final_state"] = res.final_state;
    out["output_dir"] = res.output_dir;
    return out;
  }, py::arg("config"), py::arg("write_outputs") = false, py::arg("identities") = true);
}
