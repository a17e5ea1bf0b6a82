#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oideg/adeglp.hpp"
#include "oideg/classical.hpp"
#include "oideg/harness.hpp"
#include "oideg/oracle.hpp"
#include "oideg/parityhard.hpp"
#include "oideg/protocols.hpp"

namespace py = pybind11;
using namespace oideg;

namespace {

BitString bits(const std::string& s) { return BitString::from_string(s); }

}  // namespace

PYBIND11_MODULE(oideg, m) {
    m.doc() = "oracle-identification degree experiments";

    py::class_<BitString>(m, "BitString")
        .def(py::init(&bits))
        .def_static("zeros", &BitString::zeros)
        .def_static("ones", &BitString::ones)
        .def_static("basis", &BitString::basis)
        .def_static("from_value", &BitString::from_value)
        .def("bit", &BitString::bit)
        .def("parity", &BitString::parity)
        .def("popcount", &BitString::popcount)
        .def("leq", &BitString::leq)
        .def("to_value", &BitString::to_value)
        .def("__len__", &BitString::length)
        .def("__str__", &BitString::str)
        .def("__repr__", [](const BitString& b) { return "BitString('" + b.str() + "')"; })
        .def("__eq__", [](const BitString& a, const BitString& b) { return a == b; })
        .def("__xor__", [](const BitString& a, const BitString& b) { return a ^ b; })
        .def("__and__", [](const BitString& a, const BitString& b) { return a & b; });

    m.def("inner_product", &inner_product);
    m.def("xor_subset", &xor_subset);
    m.def(
        "exists_small_xor_cover",
        [](const std::vector<BitString>& strings, uint32_t d, const BitString& target) {
            return exists_small_xor_cover(strings, d, target);
        },
        py::arg("strings"), py::arg("d"), py::arg("target"));
    m.def("rank_gf2", &rank_gf2);

    py::class_<Slot>(m, "Slot")
        .def_static("fixed", &Slot::fixed)
        .def_static("free", &Slot::free)
        .def_property_readonly("is_fixed", [](const Slot& s) { return s.kind == SlotKind::Fixed; })
        .def_property_readonly("value", [](const Slot& s) { return s.value; });

    py::class_<BaseSpec>(m, "BaseSpec")
        .def_readonly("n", &BaseSpec::n)
        .def_readonly("t", &BaseSpec::t)
        .def_readonly("alpha", &BaseSpec::alpha)
        .def_property_readonly("m", &BaseSpec::m)
        .def("slot", &BaseSpec::slot, py::return_value_policy::reference_internal)
        .def("hash", &BaseSpec::hash)
        .def("to_json", [](const BaseSpec& b) { return b.to_json().dump(); })
        .def("templates",
             [](const BaseSpec& b) {
                 std::vector<std::string> out;
                 for (const auto& s : b.slots)
                     if (s.kind == SlotKind::Free) out.push_back(s.value.str());
                 return out;
             });

    py::class_<Sample>(m, "Sample")
        .def("string_at", &Sample::string_at)
        .def_property_readonly("strings", [](const Sample& s) { return s.strings; })
        .def("validate", &Sample::validate);

    m.def("build_os_base", &build_os_base);
    m.def("build_ospp_base", &build_ospp_base);
    m.def("build_ahs_base", &build_ahs_base);
    m.def("os_default_alpha", &os_default_alpha);
    m.def("os_default_t", &os_default_t);
    m.def("ahs_default_t", &ahs_default_t);
    m.def(
        "draw_sample",
        [](const BaseSpec& base, uint64_t seed) {
            Rng rng(Rng::mix(seed));
            return sample(base, rng);
        },
        py::keep_alive<0, 1>(), py::arg("base"), py::arg("seed"));

    py::class_<OracleTable>(m, "OracleTable")
        .def(py::init<const Sample&, BitString>(), py::keep_alive<1, 2>())
        .def("query", &OracleTable::query)
        .def("read_counter", &OracleTable::read_counter)
        .def("reset_counter", &OracleTable::reset_counter)
        .def_property_readonly("m", &OracleTable::m);

    m.def("gt_b", [](const OracleTable& t, const BitString& i, uint32_t j) { return gt_b(t, i, j); });
    m.def("gt_b_pp", [](const OracleTable& t, const BitString& i, uint32_t j, uint32_t c) {
        return gt_b_pp(t, i, j, c);
    });
    m.def("ahs_b", [](const OracleTable& t, uint32_t i, const BitString& s, uint32_t j) {
        return ahs_b(t, i, s, j);
    });
    m.def("acceptance_probability_gt",
          [](const Sample& r, const BitString& i, const BitString& x) {
              auto st = acceptance_probability_gt(r, i, x);
              return py::make_tuple(st.accepted, st.copies);
          });
    m.def("acceptance_probability_ahs",
          [](const Sample& r, uint32_t i, const BitString& s, const BitString& x) {
              auto st = acceptance_probability_ahs(r, i, s, x);
              return py::make_tuple(st.accepted, st.copies);
          });

    m.def(
        "noisy_search",
        [](uint32_t key, double p_correct, uint32_t n, uint32_t c, uint64_t seed) {
            Rng rng(Rng::mix(seed));
            auto cmp = iid_comparator(key, p_correct, rng);
            auto res = noisy_search(cmp, n, c);
            return py::make_tuple(res.location, res.confident, res.interval_asks, res.unit_asks);
        },
        py::arg("key"), py::arg("p_correct"), py::arg("n"), py::arg("c"), py::arg("seed"));

    m.def("crap_eval", [](const Sample& r, const BitString& x) {
        CrapInstance inst{&r};
        return crap_eval(inst, x);
    });
    m.def("character_sum", [](const Sample& r, const std::vector<uint32_t>& T) {
        auto cs = character_sum(r, T);
        return py::make_tuple(cs.value, cs.direct_checked);
    });
    m.def("classify_indices", [](const BaseSpec& base, const std::vector<uint32_t>& T) {
        auto rep = classify_indices(base, T);
        std::vector<std::string> names;
        std::vector<std::pair<uint32_t, uint32_t>> probs;
        for (uint32_t k = 1; k <= base.n; ++k) {
            switch (rep.types[k - 1]) {
                case IndexType::I: names.push_back("I"); break;
                case IndexType::II: names.push_back("II"); break;
                default: names.push_back("III"); break;
            }
            auto p = rep.one_prob(k);
            probs.emplace_back(p.num, p.den);
        }
        return py::make_tuple(names, probs, rep.probability());
    });
    m.def("default_cover_bound", &default_cover_bound);

    m.def("chi", &chi);
    m.def("phi", &phi);
    m.def("os_binary_search", [](const std::string& x) {
        SortedOracle oracle(bits(x));
        return os_binary_search(oracle).str();
    });
    m.def("hs_reconstruct", [](const std::string& x, bool prefer_one) {
        SubstringOracle oracle(bits(x));
        return hs_reconstruct(oracle, prefer_one ? TieBreak::PreferOne : TieBreak::PreferZero)
            .str();
    });

    m.def("min_degree", [](const std::string& fn, uint32_t n, const std::string& eps,
                           const std::string& mode) {
        PartialBoolFn f;
        if (fn == "parity")
            f = make_parity(n);
        else if (fn == "os")
            f = make_os(n);
        else if (fn == "hs")
            f = make_hs(n);
        else if (fn == "ahs")
            f = make_ahs(n);
        else if (fn == "gt")
            f = make_gt_table(n);
        else
            throw std::invalid_argument("unknown fn");
        return min_degree(f, rational_from_string(eps),
                          mode == "domain" ? BoundMode::DomainOnly : BoundMode::Full);
    });
    m.def("threshold_feasible", [](const std::string& fn, uint32_t n, uint32_t d) {
        PartialBoolFn f = fn == "parity" ? make_parity(n)
                                         : (fn == "os" ? make_os(n) : make_hs(n));
        return threshold_feasible(f, d).feasible;
    });

    m.def("hoeffding_n", &hoeffding_n);
    m.def("run_experiment", [](const std::string& config_json) {
        auto cfg = ExperimentConfig::from_json(nlohmann::json::parse(config_json));
        return run(cfg).to_json().dump();
    });
}
