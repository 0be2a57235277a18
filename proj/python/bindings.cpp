#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "invlab/existence.hpp"
#include "invlab/gaussian.hpp"
#include "invlab/kloosterman.hpp"
#include "invlab/modular.hpp"
#include "invlab/poisson.hpp"

namespace py = pybind11;
using namespace invlab;

PYBIND11_MODULE(_invlab, m) {
    m.doc() = "Solutions of xy ≡ 1 (mod p) in short interval pairs: "
              "Kloosterman sums, Poisson spectral identities, existence experiments.";

    py::class_<PrimeModulus>(m, "PrimeModulus")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("p"),
             py::arg("table_cap") = PrimeModulus::kDefaultTableCap)
        .def_property_readonly("p", &PrimeModulus::p)
        .def("inverse", &PrimeModulus::inverse, py::arg("n"))
        .def("balanced", &PrimeModulus::balanced, py::arg("k"))
        .def("root", &PrimeModulus::root, py::arg("a"));

    m.def("is_prime", &is_prime, py::arg("n"));
    m.def("dist_nearest_int", &dist_nearest_int, py::arg("z"));

    py::class_<Interval>(m, "Interval")
        .def(py::init([](double lo, double hi) { return Interval{lo, hi}; }),
             py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &Interval::lo)
        .def_readwrite("hi", &Interval::hi);

    py::class_<KloostermanValue>(m, "KloostermanValue")
        .def_readonly("a", &KloostermanValue::a)
        .def_readonly("b", &KloostermanValue::b)
        .def_readonly("p", &KloostermanValue::p)
        .def_readonly("value", &KloostermanValue::value)
        .def_readonly("reduced", &KloostermanValue::reduced);

    m.def("kloosterman", &kloosterman, py::arg("a"), py::arg("b"), py::arg("pm"));
    m.def("kloosterman_row", &kloosterman_row, py::arg("a"), py::arg("pm"),
          py::arg("fast") = false);
    m.def("weil_margin", &weil_margin, py::arg("a"), py::arg("b"), py::arg("pm"));
    m.def("incomplete_kloosterman",
          [](const Interval& I, std::uint64_t l, const PrimeModulus& pm) {
              return incomplete_kloosterman(I, l, pm);
          },
          py::arg("interval"), py::arg("l"), py::arg("pm"));

    py::class_<MeanValueCheck>(m, "MeanValueCheck")
        .def_readonly("lhs", &MeanValueCheck::lhs)
        .def_readonly("rhs", &MeanValueCheck::rhs)
        .def_readonly("holds", &MeanValueCheck::holds);
    m.def("mean_value_check",
          [](const std::vector<Interval>& intervals, double H, std::uint64_t l,
             const PrimeModulus& pm) { return mean_value_check(intervals, H, l, pm); },
          py::arg("intervals"), py::arg("H"), py::arg("l"), py::arg("pm"));

    m.def("weight", &weight, py::arg("t"));
    py::class_<GaussianScale>(m, "GaussianScale")
        .def_readonly("H", &GaussianScale::H)
        .def_readonly("K", &GaussianScale::K)
        .def_readonly("epsilon", &GaussianScale::epsilon)
        .def_readonly("x", &GaussianScale::x)
        .def_readonly("y", &GaussianScale::y)
        .def_readonly("radius", &GaussianScale::radius);
    m.def("scales", &scales, py::arg("H"), py::arg("K"), py::arg("pm"),
          py::arg("epsilon") = 0.5, py::arg("radius") = 3.7);
    m.def("theta_tail", &theta_tail, py::arg("k"), py::arg("pm"), py::arg("x"),
          py::arg("radius") = 3.7);

    py::enum_<FamilyKind>(m, "FamilyKind")
        .value("general", FamilyKind::general)
        .value("disjoint", FamilyKind::disjoint)
        .value("x_spaced", FamilyKind::x_spaced)
        .value("arithmetic", FamilyKind::arithmetic);

    py::class_<SpacingParams>(m, "SpacingParams")
        .def(py::init([](double X, std::int64_t Y) { return SpacingParams{X, Y}; }),
             py::arg("X") = 0.0, py::arg("Y") = 0)
        .def_readwrite("X", &SpacingParams::X)
        .def_readwrite("Y", &SpacingParams::Y);

    py::class_<IntervalFamily>(m, "IntervalFamily")
        .def_readonly("p", &IntervalFamily::p)
        .def_readonly("H", &IntervalFamily::H)
        .def_readonly("K", &IntervalFamily::K)
        .def_readonly("kind", &IntervalFamily::kind)
        .def_readonly("centers", &IntervalFamily::centers)
        .def_property_readonly("J", &IntervalFamily::J);

    py::class_<SumDecomposition>(m, "SumDecomposition")
        .def_readonly("T", &SumDecomposition::T)
        .def_readonly("S", &SumDecomposition::S)
        .def_readonly("S1", &SumDecomposition::S1)
        .def_readonly("S2", &SumDecomposition::S2)
        .def_readonly("S_spectral", &SumDecomposition::S_spectral)
        .def_readonly("main_term_paper", &SumDecomposition::main_term_paper)
        .def_readonly("residual", &SumDecomposition::residual);

    m.def("t_direct",
          [](const IntervalFamily& fam, const GaussianScale& sc, const PrimeModulus& pm) {
              auto dc = t_direct(fam, sc, pm);
              std::vector<std::tuple<std::size_t, std::int64_t, std::int64_t>> w;
              for (const auto& wit : dc.witnesses) w.emplace_back(wit.j, wit.m, wit.n);
              return std::make_pair(dc.T, w);
          },
          py::arg("fam"), py::arg("sc"), py::arg("pm"));
    m.def("s_decompose", &s_decompose, py::arg("fam"), py::arg("sc"), py::arg("pm"),
          py::arg("jobs") = 1);
    m.def("s_spectral", &s_spectral, py::arg("fam"), py::arg("sc"), py::arg("pm"),
          py::arg("jobs") = 1);
    m.def("poisson_residual", &poisson_residual, py::arg("fam"), py::arg("sc"),
          py::arg("pm"), py::arg("jobs") = 1);
    m.def("family_exponential_sum", &family_exponential_sum, py::arg("k"), py::arg("l"),
          py::arg("fam"), py::arg("pm"));

    m.def("solution_exists",
          [](const Interval& I1, const Interval& I2, const PrimeModulus& pm) {
              auto r = solution_exists(I1, I2, pm);
              return std::make_pair(r.exists, r.witness);
          },
          py::arg("I1"), py::arg("I2"), py::arg("pm"));
    m.def("x_spacing", &x_spacing, py::arg("fam"));
    m.def("thm1_threshold", &thm1_threshold, py::arg("p"), py::arg("H"), py::arg("K"));
    m.def("thm3_threshold", &thm3_threshold, py::arg("p"), py::arg("H"), py::arg("K"),
          py::arg("X"), py::arg("epsilon"));
    m.def("thm4_thresholds",
          [](double p, double H, double K, double eps) {
              auto t = thm4_thresholds(p, H, K, eps);
              return std::make_pair(t.X_max, t.J_min);
          },
          py::arg("p"), py::arg("H"), py::arg("K"), py::arg("epsilon"));
    m.def("generate_family", &generate_family, py::arg("kind"), py::arg("pm"),
          py::arg("H"), py::arg("K"), py::arg("J"), py::arg("spacing"), py::arg("seed"));
    m.def("family_solvable", &family_solvable, py::arg("fam"), py::arg("pm"));
}
