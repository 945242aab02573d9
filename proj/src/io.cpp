#include "splitproj/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace splitproj {

namespace {

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError("missing field '" + path + "." + key + "'");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError("field '" + path + "' must be a number");
  return j.get<double>();
}

std::size_t count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned())
    throw SchemaError("field '" + path + "' must be a non-negative integer");
  return j.get<std::size_t>();
}

Vector vector_from(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError("field '" + path + "' must be an array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[i] = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

json vector_to(const Vector& v) { return json(v.std_vector()); }

json matrix_to(const Matrix& m) {
  const auto data = m.row_major();
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"data", std::vector<double>(data.begin(), data.end())}};
}

Matrix matrix_from(const json& j, const std::string& path) {
  const std::size_t rows = count(field(j, "rows", path), path + ".rows");
  const std::size_t cols = count(field(j, "cols", path), path + ".cols");
  const Vector data = vector_from(field(j, "data", path), path + ".data");
  if (data.size() != rows * cols)
    throw SchemaError("field '" + path + ".data' has " + std::to_string(data.size()) +
                      " entries, expected rows*cols = " + std::to_string(rows * cols));
  return Matrix(rows, cols, data.std_vector());
}

json box_to(const BoxSet& b) { return json{{"lo", vector_to(b.lo())}, {"hi", vector_to(b.hi())}}; }

BoxSet box_from(const json& j, const std::string& path) {
  Vector lo = vector_from(field(j, "lo", path), path + ".lo");
  Vector hi = vector_from(field(j, "hi", path), path + ".hi");
  try {
    return BoxSet(std::move(lo), std::move(hi));
  } catch (const std::exception& e) {
    throw SchemaError("field '" + path + "': " + e.what());
  }
}

json pair_to(double lo, double hi) { return json::array({lo, hi}); }

std::pair<double, double> pair_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw SchemaError("field '" + path + "' must be a [lo, hi] pair");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

json bifunction_to(const QuadraticBifunction& f) {
  return json{{"P", matrix_to(f.x_coefficient())},
              {"R", matrix_to(f.y_coefficient())},
              {"c", vector_to(f.offset())}};
}

QuadraticBifunction bifunction_from(const json& j, const std::string& path) {
  Matrix p = matrix_from(field(j, "P", path), path + ".P");
  Matrix r = matrix_from(field(j, "R", path), path + ".R");
  Vector c = vector_from(field(j, "c", path), path + ".c");
  try {
    return QuadraticBifunction(std::move(p), std::move(r), std::move(c));
  } catch (const std::exception& e) {
    throw SchemaError("field '" + path + "': " + e.what());
  }
}

std::vector<QuadraticBifunction> bifunctions_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    throw SchemaError("field '" + path + "' must be a non-empty array");
  std::vector<QuadraticBifunction> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(bifunction_from(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

json spec_to_json(const InstanceSpec& spec) {
  return json{{"m", spec.m},
              {"k", spec.k},
              {"seed", spec.seed},
              {"variant", to_string(spec.variant)},
              {"n_f", spec.n_f},
              {"n_F", spec.n_big_f},
              {"c_box", pair_to(spec.c_lo, spec.c_hi)},
              {"q_box", pair_to(spec.q_lo, spec.q_hi)},
              {"a_range", pair_to(spec.a_lo, spec.a_hi)}};
}

InstanceSpec spec_from_json(const json& j) {
  const std::string p = "spec";
  if (!j.is_object()) throw SchemaError("spec: expected an object");
  InstanceSpec s;
  // Every field is optional and falls back to the defaults.
  if (j.contains("m")) s.m = count(j["m"], p + ".m");
  if (j.contains("k")) s.k = count(j["k"], p + ".k");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned())
      throw SchemaError("field 'spec.seed' must be a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw SchemaError("field 'spec.variant' must be a string");
    try {
      s.variant = parse_variant(j["variant"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError("field 'spec.variant': " + std::string(e.what()));
    }
  }
  if (j.contains("n_f")) s.n_f = count(j["n_f"], p + ".n_f");
  if (j.contains("n_F")) s.n_big_f = count(j["n_F"], p + ".n_F");
  if (j.contains("c_box")) std::tie(s.c_lo, s.c_hi) = pair_from(j["c_box"], p + ".c_box");
  if (j.contains("q_box")) std::tie(s.q_lo, s.q_hi) = pair_from(j["q_box"], p + ".q_box");
  if (j.contains("a_range")) std::tie(s.a_lo, s.a_hi) = pair_from(j["a_range"], p + ".a_range");
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("spec: ") + e.what());
  }
  return s;
}

json instance_to_json(const GeneratedInstance& inst) {
  json f = json::array();
  for (const auto& fi : inst.f) f.push_back(bifunction_to(fi));
  json big_f = json::array();
  for (const auto& fj : inst.big_f) big_f.push_back(bifunction_to(fj));
  return json{{"format", kInstanceFormat},
              {"spec", spec_to_json(inst.spec)},
              {"C", box_to(inst.c)},
              {"Q", box_to(inst.q)},
              {"A", matrix_to(inst.a)},
              {"f", std::move(f)},
              {"F", std::move(big_f)},
              {"known_solution", vector_to(inst.known_solution)}};
}

GeneratedInstance instance_from_json(const json& j) {
  const std::string root = "instance";
  const json& format = field(j, "format", root);
  if (!format.is_string() || format.get<std::string>() != kInstanceFormat)
    throw SchemaError("field 'instance.format' must be \"" + std::string(kInstanceFormat) + "\"");

  GeneratedInstance inst{spec_from_json(field(j, "spec", root)),
                         box_from(field(j, "C", root), root + ".C"),
                         box_from(field(j, "Q", root), root + ".Q"),
                         matrix_from(field(j, "A", root), root + ".A"),
                         bifunctions_from(field(j, "f", root), root + ".f"),
                         bifunctions_from(field(j, "F", root), root + ".F"),
                         vector_from(field(j, "known_solution", root),
                                     root + ".known_solution")};

  const std::size_t m = inst.a.cols(), k = inst.a.rows();
  if (inst.c.dim() != m) throw SchemaError("field 'instance.C': dimension differs from A.cols");
  if (inst.q.dim() != k) throw SchemaError("field 'instance.Q': dimension differs from A.rows");
  for (const auto& fi : inst.f)
    if (fi.dim() != m) throw SchemaError("field 'instance.f': dimension differs from A.cols");
  for (const auto& fj : inst.big_f)
    if (fj.dim() != k) throw SchemaError("field 'instance.F': dimension differs from A.rows");
  if (inst.known_solution.size() != m)
    throw SchemaError("field 'instance.known_solution': dimension differs from A.cols");
  if (inst.spec.m != m || inst.spec.k != k)
    throw SchemaError("field 'instance.spec': m/k disagree with A");
  if (inst.f.size() != inst.spec.n_f || inst.big_f.size() != inst.spec.n_big_f)
    throw SchemaError("field 'instance.spec': component counts disagree with f/F");
  return inst;
}

void save_instance(const GeneratedInstance& inst, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  os << instance_to_json(inst).dump(1) << '\n';
  if (!os) throw std::runtime_error("write to '" + path.string() + "' failed");
}

GeneratedInstance load_instance(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return instance_from_json(j);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void put_optional(std::ostream& os, const std::optional<double>& v) {
  if (v) os << format_double(*v);
}

}  // namespace

void write_trace_csv(std::ostream& os, const IterateTrace& trace, bool include_timing) {
  os << kTraceCsvHeader << '\n';
  for (const TraceRow& r : trace.rows) {
    os << r.n << ',';
    put_optional(os, r.d);
    os << ',' << format_double(r.residual_split) << ',' << format_double(r.residual_step)
       << ',';
    put_optional(os, r.gamma);
    os << ',' << format_double(r.alpha) << ',' << format_double(r.delta) << ',';
    put_optional(os, r.fejer_violation);
    os << ',';
    if (include_timing) os << format_double(r.elapsed_ms);
    os << '\n';
  }
}

std::string trace_csv(const IterateTrace& trace, bool include_timing) {
  std::ostringstream os;
  write_trace_csv(os, trace, include_timing);
  return os.str();
}

}  // namespace splitproj
