// Copyright 2026 The h2vqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "h2vqe/app/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "h2vqe/error.hpp"
#include "json.hpp"

namespace h2vqe::io {

using nlohmann::json;

namespace {

// Typed access to one JSON object with field paths in error messages and
// rejection of unknown keys.
class Fields {
  public:
    Fields(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            fail(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    [[nodiscard]] std::string where(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    [[noreturn]] static void fail(const std::string &field, const std::string &what) {
        throw ConfigError("config field '" + field + "': " + what);
    }

    const json *find(std::string_view key) {
        used_.insert(std::string(key));
        const auto it = j_.find(std::string(key));
        return it == j_.end() ? nullptr : &*it;
    }

    std::optional<double> number(std::string_view key) {
        const json *v = find(key);
        if (v == nullptr) {
            return std::nullopt;
        }
        if (!v->is_number()) {
            fail(where(key), "expected a number");
        }
        return v->get<double>();
    }

    std::optional<std::int64_t> integer(std::string_view key) {
        const json *v = find(key);
        if (v == nullptr) {
            return std::nullopt;
        }
        if (!v->is_number_integer()) {
            fail(where(key), "expected an integer");
        }
        return v->get<std::int64_t>();
    }

    std::optional<std::uint64_t> unsigned_integer(std::string_view key) {
        const json *v = find(key);
        if (v == nullptr) {
            return std::nullopt;
        }
        if (!v->is_number_unsigned()) {
            fail(where(key), "expected a non-negative integer");
        }
        return v->get<std::uint64_t>();
    }

    std::optional<bool> boolean(std::string_view key) {
        const json *v = find(key);
        if (v == nullptr) {
            return std::nullopt;
        }
        if (!v->is_boolean()) {
            fail(where(key), "expected true or false");
        }
        return v->get<bool>();
    }

    std::optional<std::string> string(std::string_view key) {
        const json *v = find(key);
        if (v == nullptr) {
            return std::nullopt;
        }
        if (!v->is_string()) {
            fail(where(key), "expected a string");
        }
        return v->get<std::string>();
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (used_.count(it.key()) == 0) {
                fail(where(it.key()), "unknown field");
            }
        }
    }

  private:
    const json &j_;
    std::string path_;
    std::set<std::string> used_;
};

template <typename Fn>
void guarded(const std::string &field, Fn &&fn) {
    try {
        fn();
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        Fields::fail(field, e.what());
    }
}

int to_int(std::int64_t v, const std::string &field) {
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        Fields::fail(field, "out of range");
    }
    return static_cast<int>(v);
}

std::pair<double, double> interval(const json &j, const std::string &field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        Fields::fail(field, "expected [lo, hi]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

void parse_optimizer(const json &j, OptimizerConfig &o) {
    Fields f(j, "optimizer");
    if (auto m = f.string("method")) {
        guarded(f.where("method"), [&] { o.method = parse_method(*m); });
    }
    if (auto v = f.integer("max_iterations")) {
        o.max_iterations = to_int(*v, f.where("max_iterations"));
    }
    if (auto v = f.unsigned_integer("max_evaluations")) {
        o.max_evaluations = *v;
    }
    if (auto v = f.number("tolerance")) {
        o.tolerance = *v;
    }
    if (const json *s = f.find("spsa")) {
        Fields g(*s, "optimizer.spsa");
        if (auto v = g.number("a")) {
            o.spsa.a = *v;
        }
        if (auto v = g.number("c")) {
            o.spsa.c = *v;
        }
        if (auto v = g.number("A")) {
            o.spsa.A = *v;
        }
        if (auto v = g.number("alpha")) {
            o.spsa.alpha = *v;
        }
        if (auto v = g.number("gamma")) {
            o.spsa.gamma = *v;
        }
        if (auto v = g.boolean("calibrate")) {
            o.spsa.calibrate = *v;
        }
        if (auto v = g.integer("calibration_steps")) {
            o.spsa.calibration_steps = to_int(*v, g.where("calibration_steps"));
        }
        if (auto v = g.number("target_magnitude")) {
            o.spsa.target_magnitude = *v;
        }
        g.finish();
    }
    if (const json *s = f.find("cobyla")) {
        Fields g(*s, "optimizer.cobyla");
        if (auto v = g.number("rhobeg")) {
            o.cobyla.rhobeg = *v;
        }
        g.finish();
    }
    if (const json *s = f.find("nelder_mead")) {
        Fields g(*s, "optimizer.nelder_mead");
        if (auto v = g.number("reflection")) {
            o.nelder_mead.reflection = *v;
        }
        if (auto v = g.number("expansion")) {
            o.nelder_mead.expansion = *v;
        }
        if (auto v = g.number("contraction")) {
            o.nelder_mead.contraction = *v;
        }
        if (auto v = g.number("shrink")) {
            o.nelder_mead.shrink = *v;
        }
        if (auto v = g.number("initial_step")) {
            o.nelder_mead.initial_step = *v;
        }
        if (auto v = g.boolean("relative_step")) {
            o.nelder_mead.relative_step = *v;
        }
        if (auto v = g.number("x_tolerance")) {
            o.nelder_mead.x_tolerance = *v;
        }
        g.finish();
    }
    if (const json *s = f.find("powell")) {
        Fields g(*s, "optimizer.powell");
        if (auto v = g.number("line_tolerance")) {
            o.powell.line_tolerance = *v;
        }
        if (auto v = g.number("initial_step")) {
            o.powell.initial_step = *v;
        }
        if (auto v = g.integer("max_bracket_expansions")) {
            o.powell.max_bracket_expansions = to_int(*v, g.where("max_bracket_expansions"));
        }
        g.finish();
    }
    f.finish();
}

NoiseModel parse_noise(const json &j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "ideal") {
            return NoiseModel::ideal();
        }
        if (s == "readout") {
            return NoiseModel::readout_only();
        }
        if (s == "gate") {
            return NoiseModel::gate_only();
        }
        if (s == "full") {
            return NoiseModel::full();
        }
        Fields::fail("noise", "expected ideal, readout, gate, full or an object");
    }
    NoiseModel m;
    Fields f(j, "noise");
    if (auto v = f.boolean("gate")) {
        m.gate_enabled = *v;
    }
    if (auto v = f.number("p1")) {
        m.p1 = *v;
    }
    if (auto v = f.number("p2")) {
        m.p2 = *v;
    }
    if (auto v = f.boolean("readout")) {
        m.readout_enabled = *v;
    }
    const auto p01 = f.number("readout_p01");
    const auto p10 = f.number("readout_p10");
    if (p01 || p10) {
        m.readout = {ReadoutError{p01.value_or(kDefaultReadoutFlip), p10.value_or(kDefaultReadoutFlip)}};
    }
    if (const json *list = f.find("readout_per_qubit")) {
        if (!list->is_array()) {
            Fields::fail(f.where("readout_per_qubit"), "expected an array");
        }
        m.readout.clear();
        for (std::size_t q = 0; q < list->size(); ++q) {
            Fields e((*list)[q], "noise.readout_per_qubit[" + std::to_string(q) + "]");
            ReadoutError r;
            r.p01 = e.number("p01").value_or(kDefaultReadoutFlip);
            r.p10 = e.number("p10").value_or(kDefaultReadoutFlip);
            e.finish();
            m.readout.push_back(r);
        }
    }
    f.finish();
    guarded("noise", [&] { m.validate(); });
    return m;
}

json counts_json(const CountsVector &c) { return json(c.counts()); }

std::string basis_in_order(const std::string &q_high_left, BitOrder order) {
    if (order == BitOrder::Q0Rightmost) {
        return q_high_left;
    }
    return {q_high_left.rbegin(), q_high_left.rend()};
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path &path, std::string_view text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
}

Hamiltonian load_hamiltonian(std::string_view selector) {
    if (selector == "4q") {
        return h2_4qubit();
    }
    if (selector == "2q") {
        return h2_2qubit();
    }
    const std::filesystem::path path{std::string(selector)};
    if (!std::filesystem::exists(path)) {
        throw ConfigError("unknown Hamiltonian '" + std::string(selector) +
                          "' (expected 4q, 2q or a JSON file)");
    }
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::parse_error &e) {
        throw ConfigError("hamiltonian file '" + path.string() + "': " + e.what());
    }
    Fields f(j, "hamiltonian");
    const auto order = f.string("bit_order").value_or("q_high_left");
    if (order != "q_high_left") {
        Fields::fail("hamiltonian.bit_order", "only q_high_left is supported");
    }
    const auto n = f.integer("n_qubits");
    if (!n) {
        Fields::fail("hamiltonian.n_qubits", "required");
    }
    const json *terms = f.find("terms");
    if (terms == nullptr || !terms->is_array()) {
        Fields::fail("hamiltonian.terms", "expected an array");
    }
    std::vector<PauliTerm> parsed;
    for (std::size_t i = 0; i < terms->size(); ++i) {
        const std::string field = "hamiltonian.terms[" + std::to_string(i) + "]";
        Fields t((*terms)[i], field);
        const auto coeff = t.number("coeff");
        const auto label = t.string("string");
        t.finish();
        if (!coeff || !label) {
            Fields::fail(field, "needs coeff and string");
        }
        guarded(field, [&] { parsed.push_back({*coeff, PauliString::from_label(*label)}); });
    }
    f.finish();
    std::optional<Hamiltonian> h;
    guarded("hamiltonian", [&] { h.emplace(to_int(*n, "hamiltonian.n_qubits"), parsed); });
    return *h;
}

std::string hamiltonian_to_json(const Hamiltonian &h) {
    json terms = json::array();
    for (const auto &t : h.terms()) {
        terms.push_back({{"coeff", t.coefficient}, {"string", t.string.label()}});
    }
    json j{{"bit_order", "q_high_left"}, {"n_qubits", h.n_qubits()}, {"terms", terms}};
    return j.dump(2) + "\n";
}

std::string group_basis_text(const MeasurementGroup &group, BitOrder order) {
    return basis_in_order(group.basis_label(), order);
}

CountsFile parse_counts(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("counts file: ") + e.what());
    }
    if (!j.is_object()) {
        throw ValidationError("counts file: expected an object");
    }
    CountsFile out;
    try {
        const int n = j.at("n_qubits").get<int>();
        const auto counts = j.at("counts").get<std::vector<std::uint64_t>>();
        out.counts = CountsVector(n, counts);
        out.order = parse_bit_order(j.value("bit_order", std::string(to_string(kPublishedBitOrder))));
        out.group_basis = j.value("group_basis", std::string(static_cast<std::size_t>(n), 'Z'));
        if (j.contains("group_id")) {
            out.group_id = j.at("group_id").get<int>();
        }
        if (j.contains("energy_ha") && !j.at("energy_ha").is_null()) {
            out.energy_ha = j.at("energy_ha").get<double>();
        }
        if (j.contains("shots") && j.at("shots").get<std::uint64_t>() != out.counts.shots()) {
            throw ValidationError("counts file: shots field does not equal the sum of counts");
        }
    } catch (const json::exception &e) {
        throw ValidationError(std::string("counts file: ") + e.what());
    }
    if (out.group_basis.size() != static_cast<std::size_t>(out.counts.n_qubits()) ||
        out.group_basis.find_first_not_of("XYZ") != std::string::npos) {
        throw ValidationError("counts file: group_basis must have one of X/Y/Z per qubit");
    }
    return out;
}

CountsFile read_counts_file(const std::filesystem::path &path) {
    try {
        auto f = parse_counts(read_text(path));
        f.source = path.filename().string();
        return f;
    } catch (const ValidationError &e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::string counts_to_json(const CountsFile &file) {
    json j;
    j["n_qubits"] = file.counts.n_qubits();
    j["shots"] = file.counts.shots();
    j["group_basis"] = file.group_basis;
    if (file.group_id) {
        j["group_id"] = *file.group_id;
    }
    if (file.energy_ha) {
        j["energy_ha"] = *file.energy_ha;
    }
    j["bit_order"] = std::string(to_string(file.order));
    j["counts"] = counts_json(file.counts);
    return j.dump() + "\n";
}

ExperimentConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    VqeConfig &v = cfg.vqe;
    Fields f(j, "");
    if (auto h = f.string("hamiltonian")) {
        guarded("hamiltonian", [&] { v.hamiltonian = load_hamiltonian(*h); });
        v.hamiltonian_label = *h;
    }
    v.ansatz.n_qubits = v.hamiltonian.n_qubits();
    if (const json *a = f.find("ansatz")) {
        Fields g(*a, "ansatz");
        if (auto s = g.string("form")) {
            guarded("ansatz.form", [&] { v.ansatz.form = parse_form(*s); });
        }
        if (auto s = g.string("entanglement")) {
            guarded("ansatz.entanglement",
                          [&] { v.ansatz.entanglement = parse_entanglement(*s); });
        }
        if (auto r = g.integer("reps")) {
            v.ansatz.reps = to_int(*r, "ansatz.reps");
        }
        if (auto n = g.integer("n_qubits")) {
            v.ansatz.n_qubits = to_int(*n, "ansatz.n_qubits");
        }
        g.finish();
    }
    if (const json *o = f.find("optimizer")) {
        parse_optimizer(*o, v.optimizer);
    }
    if (auto s = f.unsigned_integer("shots")) {
        v.shots = *s;
    }
    if (const json *n = f.find("noise")) {
        v.noise = parse_noise(*n);
    }
    if (auto s = f.unsigned_integer("seed")) {
        v.seed = *s;
    }
    if (const json *init = f.find("init")) {
        if (init->is_string()) {
            guarded("init", [&] { v.init = parse_init_policy(init->get<std::string>()); });
            if (v.init == InitPolicy::Explicit) {
                Fields::fail("init", "give explicit angles as an array of numbers");
            }
        } else if (init->is_array()) {
            v.init = InitPolicy::Explicit;
            for (const auto &x : *init) {
                if (!x.is_number()) {
                    Fields::fail("init", "angles must be numbers");
                }
                v.initial_params.push_back(x.get<double>());
            }
        } else {
            Fields::fail("init", "expected uniform, zeros or an array of angles");
        }
    }
    if (const json *b = f.find("bands")) {
        Fields g(*b, "bands");
        if (const json *x = g.find("ground")) {
            std::tie(v.bands.ground_lo, v.bands.ground_hi) = interval(*x, "bands.ground");
        }
        if (const json *x = g.find("excited")) {
            std::tie(v.bands.excited_lo, v.bands.excited_hi) = interval(*x, "bands.excited");
        }
        g.finish();
    }
    if (auto a = f.boolean("analytic")) {
        v.analytic = *a;
    }
    if (auto n = f.integer("n_runs")) {
        if (*n < 1) {
            Fields::fail("n_runs", "must be >= 1");
        }
        cfg.n_runs = to_int(*n, "n_runs");
    }
    if (auto w = f.unsigned_integer("workers")) {
        cfg.workers = static_cast<unsigned>(*w);
    }
    if (auto s = f.boolean("emit_svg")) {
        cfg.emit_svg = *s;
    }
    f.finish();

    try {
        v.validate();
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig read_config_file(const std::filesystem::path &path) {
    return parse_config(read_text(path));
}

std::string result_to_json(const VqeResult &result, const VqeConfig &cfg,
                           std::string_view trace_file) {
    const auto &o = cfg.optimizer;
    json optimizer{{"method", std::string(to_string(o.method))},
                   {"max_iterations", o.max_iterations},
                   {"max_evaluations", o.max_evaluations},
                   {"tolerance", o.tolerance}};
    switch (o.method) {
    case Method::SPSA:
        optimizer["spsa"] = {{"a", o.spsa.a},         {"c", o.spsa.c},
                             {"A", o.spsa.A},         {"alpha", o.spsa.alpha},
                             {"gamma", o.spsa.gamma}, {"calibrate", o.spsa.calibrate}};
        break;
    case Method::COBYLA:
        optimizer["cobyla"] = {{"rhobeg", o.cobyla.rhobeg}};
        break;
    case Method::NelderMead:
        optimizer["nelder_mead"] = {{"reflection", o.nelder_mead.reflection},
                                    {"expansion", o.nelder_mead.expansion},
                                    {"contraction", o.nelder_mead.contraction},
                                    {"shrink", o.nelder_mead.shrink},
                                    {"initial_step", o.nelder_mead.initial_step},
                                    {"x_tolerance", o.nelder_mead.x_tolerance}};
        break;
    case Method::Powell:
        optimizer["powell"] = {{"line_tolerance", o.powell.line_tolerance},
                               {"initial_step", o.powell.initial_step}};
        break;
    }
    json noise{{"gate", cfg.noise.gate_enabled},
               {"p1", cfg.noise.p1},
               {"p2", cfg.noise.p2},
               {"readout", cfg.noise.readout_enabled},
               {"descriptor", cfg.noise.descriptor()}};
    json config{{"hamiltonian", cfg.hamiltonian_label},
                {"ansatz",
                 {{"form", std::string(to_string(cfg.ansatz.form))},
                  {"entanglement", std::string(to_string(cfg.ansatz.entanglement))},
                  {"reps", cfg.ansatz.reps},
                  {"n_qubits", cfg.ansatz.n_qubits}}},
                {"optimizer", optimizer},
                {"shots", cfg.shots},
                {"noise", noise},
                {"seed", cfg.seed},
                {"init", std::string(to_string(cfg.init))},
                {"bands",
                 {{"ground", {cfg.bands.ground_lo, cfg.bands.ground_hi}},
                  {"excited", {cfg.bands.excited_lo, cfg.bands.excited_hi}}}},
                {"analytic", cfg.analytic}};

    json counts = json::array();
    for (std::size_t g = 0; g < result.final_counts.size(); ++g) {
        const auto c = reorder(result.final_counts[g], kNativeBitOrder, kPublishedBitOrder);
        counts.push_back({{"group_id", g},
                          {"group_basis", group_basis_text(result.groups.at(g), kPublishedBitOrder)},
                          {"shots", c.shots()},
                          {"counts", counts_json(c)}});
    }
    json j{{"energy_ha", result.energy},
           {"band", std::string(to_string(result.band))},
           {"complete", result.complete},
           {"converged", result.converged},
           {"evaluations", result.trace.size()},
           {"iterations", result.iterations},
           {"params", std::vector<double>(result.params.data(),
                                          result.params.data() + result.params.size())},
           {"trace_file", std::string(trace_file)},
           {"bit_order", std::string(to_string(kPublishedBitOrder))},
           {"diagnostics", result.diagnostics},
           {"config", config},
           {"final_counts", counts}};
    if (!std::isfinite(result.energy)) {
        j["energy_ha"] = nullptr;
    }
    return j.dump(2) + "\n";
}

} // namespace h2vqe::io
