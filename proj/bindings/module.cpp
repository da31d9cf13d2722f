#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <vector>

#include "borderline/blockseq.hpp"
#include "borderline/detector.hpp"
#include "borderline/evalharness.hpp"
#include "borderline/likelihood.hpp"
#include "borderline/solver.hpp"
#include "borderline/synthgen.hpp"

namespace py = pybind11;
using namespace borderline;

namespace {

BlockSequence sequence_from_bits(const std::vector<std::uint8_t>& bits) {
    BlockSequence seq;
    for (const std::uint8_t bit : bits) seq.push(bit != 0);
    return seq;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Streaming change detection over binary sequences";

    py::class_<CountPair>(m, "CountPair")
        .def(py::init<>())
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("ones"),
             py::arg("zeros"))
        .def_readwrite("ones", &CountPair::ones)
        .def_readwrite("zeros", &CountPair::zeros)
        .def("total", &CountPair::total)
        .def("flipped", &CountPair::flipped)
        .def(py::self + py::self)
        .def(py::self == py::self)
        .def("__repr__", [](const CountPair& c) {
            return "CountPair(ones=" + std::to_string(c.ones) +
                   ", zeros=" + std::to_string(c.zeros) + ")";
        });

    m.def("log_likelihood", &log_likelihood, py::arg("counts"), py::arg("p"));
    m.def("ml_log_likelihood", &ml_log_likelihood, py::arg("counts"));
    m.def("split_score", &split_score, py::arg("left"), py::arg("right"));
    m.def("split_score_fixed", &split_score_fixed, py::arg("left"),
          py::arg("right"), py::arg("p1"), py::arg("p2"));

    py::class_<Block>(m, "Block")
        .def_readonly("ones", &Block::ones)
        .def_readonly("zeros", &Block::zeros)
        .def("total", &Block::total);

    py::class_<Fraction>(m, "Fraction")
        .def_readonly("num", &Fraction::num)
        .def_readonly("den", &Fraction::den)
        .def("value", &Fraction::value);

    py::class_<BlockSequence>(m, "BlockSequence")
        .def(py::init<>())
        .def("push", [](BlockSequence& seq, int bit) { seq.push(bit != 0); },
             py::arg("bit"))
        .def("__len__", &BlockSequence::size)
        .def("size", &BlockSequence::size)
        .def("raw_len", &BlockSequence::raw_len)
        .def("block", &BlockSequence::block, py::arg("i"),
             py::return_value_policy::copy)
        .def("raw_offset", &BlockSequence::raw_offset, py::arg("i"))
        .def("counts", &BlockSequence::counts, py::arg("i"), py::arg("j"))
        .def("freq", &BlockSequence::freq, py::arg("i"), py::arg("j"))
        .def("reset", &BlockSequence::reset)
        .def("push_count", &BlockSequence::push_count)
        .def("merge_count", &BlockSequence::merge_count)
        .def("dump", [](const BlockSequence& seq) {
            std::ostringstream os;
            seq.dump(os);
            return os.str();
        });

    m.def("sequence_from_bits", &sequence_from_bits, py::arg("bits"),
          "Push every bit of an iterable into a fresh BlockSequence.");

    py::class_<ChangeResult>(m, "ChangeResult")
        .def_readonly("block_index", &ChangeResult::block_index)
        .def_readonly("raw_index", &ChangeResult::raw_index)
        .def_readonly("score", &ChangeResult::score)
        .def_readonly("tested", &ChangeResult::tested)
        .def("has_split", &ChangeResult::has_split)
        .def("__repr__", [](const ChangeResult& r) {
            return "ChangeResult(block_index=" + std::to_string(r.block_index) +
                   ", raw_index=" + std::to_string(r.raw_index) +
                   ", score=" + std::to_string(r.score) +
                   ", tested=" + std::to_string(r.tested) + ")";
        });

    m.def("find_segment", &find_segment, py::arg("seq"), py::arg("p1"),
          py::arg("p2"));
    m.def("find_cands", &find_cands, py::arg("seq"), py::arg("eps"));
    m.def("find_cands_prime", &find_cands_prime, py::arg("seq"), py::arg("eps"));
    m.def("exact_change_block", &exact_change_block, py::arg("seq"));
    m.def("find_change", &find_change, py::arg("seq"), py::arg("eps"));
    m.def(
        "naive_change_raw",
        [](const std::vector<std::uint8_t>& bits) {
            return naive_change_raw(bits);
        },
        py::arg("bits"));

    py::enum_<Direction>(m, "Direction")
        .value("increase", Direction::increase)
        .value("decrease", Direction::decrease);

    py::class_<DetectorConfig>(m, "DetectorConfig")
        .def(py::init<>())
        .def(py::init([](double tau, double eps, std::uint64_t query_period) {
                 return DetectorConfig{tau, eps, query_period};
             }),
             py::arg("tau") = 6.0, py::arg("eps") = 0.0,
             py::arg("query_period") = 1)
        .def_readwrite("tau", &DetectorConfig::tau)
        .def_readwrite("eps", &DetectorConfig::eps)
        .def_readwrite("query_period", &DetectorConfig::query_period);

    py::class_<ChangeEvent>(m, "ChangeEvent")
        .def_readonly("detected_at", &ChangeEvent::detected_at)
        .def_readonly("split_at", &ChangeEvent::split_at)
        .def_readonly("score", &ChangeEvent::score)
        .def_readonly("direction", &ChangeEvent::direction)
        .def_readonly("window_len", &ChangeEvent::window_len)
        .def("__repr__", [](const ChangeEvent& e) {
            return "ChangeEvent(detected_at=" + std::to_string(e.detected_at) +
                   ", split_at=" + std::to_string(e.split_at) +
                   ", score=" + std::to_string(e.score) + ", direction='" +
                   std::string(to_string(e.direction)) +
                   "', window_len=" + std::to_string(e.window_len) + ")";
        });

    py::class_<Detector>(m, "Detector")
        .def(py::init<DetectorConfig>(), py::arg("config"))
        .def(
            "observe",
            [](Detector& d, int bit) { return d.observe(bit != 0); },
            py::arg("bit"))
        .def("sigma", &Detector::sigma)
        .def("stream_position", &Detector::stream_position)
        .def("window_len", &Detector::window_len)
        .def_property_readonly("config", &Detector::config);

    py::enum_<WorkloadKind>(m, "WorkloadKind")
        .value("ind", WorkloadKind::ind)
        .value("step", WorkloadKind::step)
        .value("slope", WorkloadKind::slope)
        .value("hill", WorkloadKind::hill);

    py::class_<WorkloadSpec>(m, "WorkloadSpec")
        .def(py::init([](WorkloadKind kind, std::uint64_t length,
                         std::uint64_t seed, std::uint64_t segment) {
                 return WorkloadSpec{kind, length, seed, segment};
             }),
             py::arg("kind") = WorkloadKind::ind, py::arg("length") = 200000,
             py::arg("seed") = 0, py::arg("segment") = 10000)
        .def_readwrite("kind", &WorkloadSpec::kind)
        .def_readwrite("length", &WorkloadSpec::length)
        .def_readwrite("seed", &WorkloadSpec::seed)
        .def_readwrite("segment", &WorkloadSpec::segment);

    py::class_<Workload>(m, "Workload")
        .def_readonly("bits", &Workload::bits)
        .def_readonly("true_changes", &Workload::true_changes);

    m.def("probability_at", &probability_at, py::arg("spec"), py::arg("t"));
    m.def("generate", &generate, py::arg("spec"));

    py::class_<HarnessOptions>(m, "HarnessOptions")
        .def(py::init<>())
        .def_readwrite("ratios", &HarnessOptions::ratios);

    py::class_<RunMetrics>(m, "RunMetrics")
        .def_readonly("events", &RunMetrics::events)
        .def_readonly("delays", &RunMetrics::delays)
        .def_readonly("true_changes", &RunMetrics::true_changes)
        .def_readonly("matched", &RunMetrics::matched)
        .def_readonly("false_positives", &RunMetrics::false_positives)
        .def_readonly("queries", &RunMetrics::queries)
        .def_readonly("ratio_queries", &RunMetrics::ratio_queries)
        .def_readonly("min_ratio", &RunMetrics::min_ratio)
        .def_readonly("avg_ratio", &RunMetrics::avg_ratio)
        .def_readonly("cand_frac_n", &RunMetrics::cand_frac_n)
        .def_readonly("cand_frac_k", &RunMetrics::cand_frac_k)
        .def_readonly("wall_time", &RunMetrics::wall_time)
        .def("mean_delay", &RunMetrics::mean_delay);

    m.def("run_experiment", &run_experiment, py::arg("spec"), py::arg("config"),
          py::arg("options") = HarnessOptions{});
}
