#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "dirac/types.hpp"

namespace dirac::cli {

using nlohmann::json;

inline constexpr const char* kVersion = "0.3.0";

/// Validation failure reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complex literal: "a", "bi", "a+bi", "a-bi", "i", "-i" (a, b real literals; 'j' accepted for 'i').
cplx parse_complex(const std::string& s);
/// Comma-separated reals, e.g. "1,0,0".
RVec parse_vector(const std::string& s);
/// "a:b:steps" -> steps evenly spaced points including both ends.
std::vector<double> parse_range(const std::string& s);

json complex_to_json(cplx z);
json matrix_to_json(const Mat& M);
/// Accepts numbers or [re, im] pairs; errors carry a JSON pointer below `where`.
Mat matrix_from_json(const json& j, const std::string& where);

json read_json_file(const std::string& path);
/// Write to a sibling temp file, then rename over `path`.
void atomic_write(const std::string& path, const std::string& text);

/// Envelope common to every artifact.
json artifact(const std::string& command, unsigned long long seed, const json& config, const json& result);

}  // namespace dirac::cli
