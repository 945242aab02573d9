#pragma once

// Instance files (JSON) and trace files (CSV).
//
// Instance schema, format tag "splitproj-instance/1":
//   {
//     "format": "splitproj-instance/1",
//     "spec":   { "m", "k", "seed", "variant", "n_f", "n_F",
//                 "c_box": [lo, hi], "q_box": [lo, hi], "a_range": [lo, hi] },
//     "C":      { "lo": [...], "hi": [...] },
//     "Q":      { "lo": [...], "hi": [...] },
//     "A":      { "rows": k, "cols": m, "data": [row-major] },
//     "f":      [ { "P": matrix, "R": matrix, "c": [...] }, ... ],
//     "F":      [ ... ],
//     "known_solution": [...]
//   }
// Doubles are written with round-trip precision, so load(save(x)) == x.
//
// Trace CSV columns, in order:
//   n,D_n,residual_split,residual_step,gamma_n,alpha_n,delta_n,fejer_violation,elapsed_ms
// Absent values are empty fields; elapsed_ms is empty when timing is off.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "splitproj/generators.hpp"
#include "splitproj/trace.hpp"

namespace splitproj {

using json = nlohmann::json;

inline constexpr const char* kInstanceFormat = "splitproj-instance/1";
inline constexpr const char* kTraceCsvHeader =
    "n,D_n,residual_split,residual_step,gamma_n,alpha_n,delta_n,fejer_violation,elapsed_ms";

/// Malformed file or document; the message names the offending field.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json spec_to_json(const InstanceSpec& spec);
InstanceSpec spec_from_json(const json& j);

json instance_to_json(const GeneratedInstance& inst);
GeneratedInstance instance_from_json(const json& j);

void save_instance(const GeneratedInstance& inst, const std::filesystem::path& path);
GeneratedInstance load_instance(const std::filesystem::path& path);

/// Shortest decimal that reads back to the same double ("%.17g" class).
std::string format_double(double v);

void write_trace_csv(std::ostream& os, const IterateTrace& trace, bool include_timing);
std::string trace_csv(const IterateTrace& trace, bool include_timing);

}  // namespace splitproj
