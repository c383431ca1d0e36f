#include "dirac/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dirac::cli {

namespace {

double parse_real(const std::string& s, const std::string& whole) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("malformed number '" + whole + "'");
    }
    if (used != s.size()) throw UsageError("malformed number '" + whole + "'");
    return v;
}

}  // namespace

cplx parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (c != ' ') s += c;
    if (s.empty()) throw UsageError("empty complex literal");
    const char last = s.back();
    if (last != 'i' && last != 'j') return {parse_real(s, raw), 0.0};
    s.pop_back();
    // Split at the last sign that is not the leading one and not an exponent sign.
    std::size_t cut = std::string::npos;
    for (std::size_t p = s.size(); p-- > 1;) {
        if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
            cut = p;
            break;
        }
    }
    const std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
    std::string im = cut == std::string::npos ? s : s.substr(cut);
    if (im.empty() || im == "+") im = "1";
    else if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : parse_real(re, raw), parse_real(im, raw)};
}

RVec parse_vector(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_real(item, s));
    if (v.empty()) throw UsageError("empty vector '" + s + "'");
    return Eigen::Map<RVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> parse_range(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("range must look like a:b:steps, got '" + s + "'");
    const double a = parse_real(parts[0], s), b = parse_real(parts[1], s);
    const double steps = parse_real(parts[2], s);
    if (steps < 2 || steps != std::floor(steps)) throw UsageError("range needs an integer step count >= 2");
    if (!(b > a)) throw UsageError("range needs a < b");
    const int n = static_cast<int>(steps);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return out;
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Mat& M) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(complex_to_json(M(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Mat matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw UsageError(where + ": expected a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) throw UsageError(where + "/0: expected a non-empty row");
    const std::size_t cols = j[0].size();
    Mat M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rp = where + "/" + std::to_string(r);
        if (!j[r].is_array() || j[r].size() != cols) throw UsageError(rp + ": expected a row of length " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) {
            const json& e = j[r][c];
            const std::string ep = rp + "/" + std::to_string(c);
            cplx v;
            if (e.is_number()) v = e.get<double>();
            else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
                v = cplx(e[0].get<double>(), e[1].get<double>());
            else throw UsageError(ep + ": expected a number or [re, im]");
            M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return M;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void atomic_write(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot write '" + tmp + "'");
        out << text;
        if (!out) throw UsageError("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw UsageError("cannot move output into '" + path + "'");
    }
}

json artifact(const std::string& command, unsigned long long seed, const json& config, const json& result) {
    json a;
    a["version"] = kVersion;
    a["command"] = command;
    a["seed"] = seed;
    a["config"] = config;
    a["result"] = result;
    return a;
}

}  // namespace dirac::cli
