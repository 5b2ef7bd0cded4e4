#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mzv/cache.hpp"
#include "mzv/verify.hpp"

namespace py = pybind11;

namespace {

mzv::signed_index parse(const std::string& text) { return mzv::parse_index(text); }

py::dict eval_expr(const std::string& expr, double tol, const std::string& cache_path,
                   const std::string& method) {
    const mzv::real rtol(tol);
    mzv::value_cache cache(cache_path);
    mzv::eval_options opts;
    opts.method = method == "direct" ? mzv::backend::direct : mzv::backend::holder;
    const mzv::evaluator ev(cache_path.empty() ? nullptr : &cache, opts);
    const mzv::star_sum sum = mzv::parse_sum(expr);
    mzv::eval_result r;
    if (sum.size() == 1 && sum.terms().begin()->second == 1) {
        const auto& idx = sum.terms().begin()->first;
        r = idx.starred() ? ev.eval_star(idx, rtol) : ev.eval_index(idx, rtol);
    } else {
        r = ev.eval_sum(sum, rtol);
    }
    if (!cache_path.empty()) cache.save();
    py::dict out;
    out["expr"] = sum.str();
    out["value"] = mzv::to_decimal(r.value, 32);
    out["float"] = static_cast<double>(r.value);
    out["error_bound"] = mzv::to_decimal(r.error_bound, 4);
    out["cache_hit"] = r.cache_hit;
    return out;
}

py::object verify(const std::string& suite, py::object p_max, py::object q_max,
                  py::object w_max, const std::string& lambdas, double tol, int workers,
                  const std::string& cache_path, std::uint64_t seed) {
    mzv::suite_config config;
    config.suites = {suite};
    config.tol = mzv::real(tol);
    config.workers = workers;
    config.params.seed = seed;
    if (!p_max.is_none()) config.params.p_max = p_max.cast<int>();
    if (!q_max.is_none()) config.params.q_max = q_max.cast<int>();
    if (!w_max.is_none()) config.params.w_max = w_max.cast<int>();
    if (!lambdas.empty()) {
        std::stringstream ss(lambdas);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) config.params.lambdas.push_back(mzv::parse_rational(item));
    }
    config.cache_path = cache_path;
    mzv::value_cache cache(cache_path);
    const mzv::verification_report report =
        mzv::run_suites(config, cache_path.empty() ? nullptr : &cache);
    // Round-trip through JSON so python sees plain dicts/lists.
    py::module_ json = py::module_::import("json");
    return json.attr("loads")(report.to_json());
}

}  // namespace

PYBIND11_MODULE(pymzv, m) {
    m.doc() = "multiple zeta value workbench: index algebra, certified evaluation, "
              "identity verification";

    // translators run newest-first, so the base class registers first
    py::register_exception<mzv::error>(m, "MzvError");
    py::register_exception<mzv::parse_error>(m, "ParseError");
    py::register_exception<mzv::divergent_index>(m, "DivergentIndex");
    py::register_exception<mzv::precision_unreachable>(m, "PrecisionUnreachable");
    py::register_exception<mzv::cache_corrupt>(m, "CacheCorrupt");

    py::class_<mzv::signed_index>(m, "Index")
        .def(py::init(&parse))
        .def("__repr__", [](const mzv::signed_index& i) { return mzv::render(i); })
        .def("__str__", [](const mzv::signed_index& i) { return mzv::render(i); })
        .def("__eq__", [](const mzv::signed_index& a,
                          const mzv::signed_index& b) { return a == b; })
        .def_property_readonly("weight", &mzv::signed_index::weight)
        .def_property_readonly("depth", &mzv::signed_index::depth)
        .def_property_readonly("height", &mzv::signed_index::height)
        .def_property_readonly("starred", &mzv::signed_index::starred)
        .def_property_readonly("admissible", &mzv::signed_index::is_admissible);

    m.def("parse", &parse, py::arg("text"));
    m.def("render", [](const mzv::signed_index& i) { return mzv::render(i); });
    m.def("classify", [](const std::string& text) {
        const auto c = mzv::classify(mzv::parse_index(text));
        return py::make_tuple(c.weight, c.depth, c.height);
    });
    m.def("is_admissible",
          [](const std::string& text) { return mzv::parse_index(text).is_admissible(); });
    m.def("dual", [](const std::string& text) {
        return mzv::render(mzv::dual(mzv::parse_index(text)));
    });
    m.def("to_word", [](const std::string& text) {
        return mzv::to_word(mzv::parse_index(text)).text();
    });
    m.def("from_word", [](const std::string& text) {
        return mzv::render(mzv::from_word(mzv::word::from_text(text)));
    });
    m.def("shuffle", [](const std::string& x, const std::string& y) {
        return mzv::shuffle_indices(mzv::parse_index(x), mzv::parse_index(y)).str();
    });
    m.def("stuffle", [](const std::string& x, const std::string& y) {
        return mzv::stuffle(mzv::parse_index(x), mzv::parse_index(y)).str();
    });
    m.def("star_expand", [](const std::string& text) {
        return mzv::star_expand(mzv::parse_index(text)).str();
    });
    m.def("eval", &eval_expr, py::arg("expr"), py::arg("tol") = 1e-10,
          py::arg("cache") = std::string(), py::arg("backend") = std::string("holder"));
    m.def("xi", [](int k, int s, double tol) {
        const mzv::evaluator ev;
        const auto r = ev.xi(k, s, mzv::real(tol));
        return py::make_tuple(mzv::to_decimal(r.value, 32), mzv::to_decimal(r.error_bound, 4));
    }, py::arg("k"), py::arg("s"), py::arg("tol") = 1e-10);
    m.def("verify", &verify, py::arg("suite") = std::string("all"),
          py::arg("p_max") = py::none(), py::arg("q_max") = py::none(),
          py::arg("w_max") = py::none(), py::arg("lambdas") = std::string(),
          py::arg("tol") = 1e-10, py::arg("workers") = 4,
          py::arg("cache") = std::string(), py::arg("seed") = std::uint64_t{20220326});
    m.def("list_identities", [] {
        std::vector<std::string> ids;
        for (const auto& def : mzv::identity_registry()) ids.push_back(def.id);
        return ids;
    });
}
