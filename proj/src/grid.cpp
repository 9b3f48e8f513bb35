#include "csmcg/grid.hpp"
#include "csmcg/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <sstream>

namespace csmcg {

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(axis_points());
    return s;
}

std::vector<int> GridSpec::index(std::size_t flat) const {
    std::vector<int> j(n);
    auto m = static_cast<std::size_t>(axis_points());
    for (int i = n - 1; i >= 0; --i) {
        j[i] = static_cast<int>(flat % m) - half_extent;
        flat /= m;
    }
    return j;
}

std::size_t GridSpec::flat(const std::vector<int>& j) const {
    std::size_t f = 0;
    auto m = static_cast<std::size_t>(axis_points());
    for (int i = 0; i < n; ++i) {
        if (j[i] < -half_extent || j[i] > half_extent) return size();
        f = f * m + static_cast<std::size_t>(j[i] + half_extent);
    }
    return f;
}

Eigen::VectorXd GridSpec::point(std::size_t flat) const {
    auto j = index(flat);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = j[i];
    return frame * v;
}

bool GridSpec::is_boundary(std::size_t flat) const {
    for (int v : index(flat))
        if (v == -half_extent || v == half_extent) return true;
    return false;
}

bool GridSpec::axis_aligned() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && frame(i, j) != 0.0) return false;
    for (int i = 1; i < n; ++i)
        if (frame(i, i) != frame(0, 0)) return false;
    return true;
}

GridSpec orthonormal_grid(int n, double step, double box_radius) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "grid rank must be >= 1");
    if (!(step > 0) || !(box_radius > 0)) fail(ErrorKind::InvalidArgument, "grid step and box radius must be positive");
    GridSpec g;
    g.n = n;
    g.frame = Eigen::MatrixXd::Identity(n, n) * step;
    g.half_extent = static_cast<int>(std::ceil(box_radius / step - 1e-9));
    g.box_radius = box_radius;
    return g;
}

GridFunction::GridFunction(const GridSpec& g, int comps) : grid(g), components(comps) {
    data.assign(static_cast<std::size_t>(comps) * g.size(), {0.0, 0.0});
}

double GridFunction::sup() const {
    double m = 0;
    for (const auto& v : data) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::boundary_sup() const {
    double m = 0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
        if (!grid.is_boundary(p)) continue;
        for (int c = 0; c < components; ++c) m = std::max(m, std::abs(at(c, p)));
    }
    return m;
}

std::complex<double> inner(const GridFunction& f, const GridFunction& g) {
    if (f.data.size() != g.data.size()) fail(ErrorKind::InvalidArgument, "inner: grid functions differ in shape");
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < f.data.size(); ++i) s += f.data[i] * std::conj(g.data[i]);
    return s * f.grid.cell_volume();
}

double sup_diff(const GridFunction& f, const GridFunction& g) {
    if (f.data.size() != g.data.size()) fail(ErrorKind::InvalidArgument, "sup_diff: grid functions differ in shape");
    double m = 0;
    for (std::size_t i = 0; i < f.data.size(); ++i) m = std::max(m, std::abs(f.data[i] - g.data[i]));
    return m;
}

namespace {
const char* kB64 = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}

std::string base64_encode(const std::vector<unsigned char>& b) {
    std::string out;
    out.reserve((b.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < b.size(); i += 3) {
        std::uint32_t v = static_cast<std::uint32_t>(b[i]) << 16;
        if (i + 1 < b.size()) v |= static_cast<std::uint32_t>(b[i + 1]) << 8;
        if (i + 2 < b.size()) v |= b[i + 2];
        out += kB64[(v >> 18) & 63];
        out += kB64[(v >> 12) & 63];
        out += i + 1 < b.size() ? kB64[(v >> 6) & 63] : '=';
        out += i + 2 < b.size() ? kB64[v & 63] : '=';
    }
    return out;
}

std::vector<unsigned char> base64_decode(const std::string& s) {
    int rev[256];
    std::fill(std::begin(rev), std::end(rev), -1);
    for (int i = 0; i < 64; ++i) rev[static_cast<unsigned char>(kB64[i])] = i;
    std::vector<unsigned char> out;
    std::uint32_t acc = 0;
    int bits = 0;
    for (char ch : s) {
        if (ch == '=' || std::isspace(static_cast<unsigned char>(ch))) continue;
        int v = rev[static_cast<unsigned char>(ch)];
        if (v < 0) fail(ErrorKind::InvalidArgument, "invalid base64 character");
        acc = (acc << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<unsigned char>((acc >> bits) & 0xFF));
        }
    }
    return out;
}

std::string grid_to_json(const GridFunction& f, GridEncoding enc) {
    using nlohmann::json;
    const GridSpec& g = f.grid;
    json j;
    j["format"] = "csmcg-grid";
    j["version"] = 1;
    j["rank"] = g.n;
    json frame = json::array();
    for (int r = 0; r < g.n; ++r) {
        json row = json::array();
        for (int c = 0; c < g.n; ++c) row.push_back(g.frame(r, c));
        frame.push_back(row);
    }
    j["frame"] = frame;
    j["half_extent"] = g.half_extent;
    j["box_radius"] = g.box_radius;
    j["resolution"] = g.resolution;
    j["level"] = g.level;
    j["components"] = f.components;
    j["component_labels"] = f.component_labels;
    j["domain"] = f.domain == GridFunction::Domain::Full ? "full" : "chamber";
    j["boundary_sup"] = f.boundary_sup();
    j["layout"] = "component-major, then grid index row-major with the last axis fastest";
    if (enc == GridEncoding::Base64) {
        std::vector<unsigned char> bytes(f.data.size() * 2 * sizeof(double));
        for (std::size_t i = 0; i < f.data.size(); ++i) {
            double re = f.data[i].real(), im = f.data[i].imag();
            std::memcpy(&bytes[(2 * i) * sizeof(double)], &re, sizeof(double));
            std::memcpy(&bytes[(2 * i + 1) * sizeof(double)], &im, sizeof(double));
        }
        j["encoding"] = "base64-f64le";
        j["data"] = base64_encode(bytes);
    } else {
        json arr = json::array();
        for (const auto& v : f.data) arr.push_back({v.real(), v.imag()});
        j["encoding"] = "inline";
        j["data"] = arr;
    }
    return j.dump(1);
}

GridFunction grid_from_json(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidArgument, std::string("grid JSON: ") + e.what());
    }
    try {
        if (j.at("format") != "csmcg-grid") fail(ErrorKind::InvalidArgument, "grid JSON: unexpected format tag");
        GridSpec g;
        g.n = j.at("rank").get<int>();
        if (g.n < 1) fail(ErrorKind::InvalidArgument, "grid JSON: rank must be >= 1");
        g.frame = Eigen::MatrixXd(g.n, g.n);
        for (int r = 0; r < g.n; ++r)
            for (int c = 0; c < g.n; ++c) g.frame(r, c) = j.at("frame").at(r).at(c).get<double>();
        g.half_extent = j.at("half_extent").get<int>();
        g.box_radius = j.value("box_radius", 0.0);
        g.resolution = j.value("resolution", 0);
        g.level = j.value("level", std::int64_t{0});
        GridFunction f(g, j.value("components", 1));
        f.component_labels = j.value("component_labels", std::vector<std::string>{});
        f.domain = j.value("domain", std::string("full")) == "chamber" ? GridFunction::Domain::Chamber
                                                                      : GridFunction::Domain::Full;
        std::string enc = j.value("encoding", std::string("inline"));
        if (enc == "base64-f64le") {
            auto bytes = base64_decode(j.at("data").get<std::string>());
            if (bytes.size() != f.data.size() * 2 * sizeof(double))
                fail(ErrorKind::InvalidArgument, "grid JSON: data length does not match the grid");
            for (std::size_t i = 0; i < f.data.size(); ++i) {
                double re, im;
                std::memcpy(&re, &bytes[(2 * i) * sizeof(double)], sizeof(double));
                std::memcpy(&im, &bytes[(2 * i + 1) * sizeof(double)], sizeof(double));
                f.data[i] = {re, im};
            }
        } else if (enc == "inline") {
            const auto& arr = j.at("data");
            if (arr.size() != f.data.size()) fail(ErrorKind::InvalidArgument, "grid JSON: data length does not match the grid");
            for (std::size_t i = 0; i < f.data.size(); ++i)
                f.data[i] = {arr[i].at(0).get<double>(), arr[i].at(1).get<double>()};
        } else {
            fail(ErrorKind::InvalidArgument, "grid JSON: unknown encoding '" + enc + "'");
        }
        return f;
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidArgument, std::string("grid JSON: ") + e.what());
    }
}

std::string grid_to_csv(const GridFunction& f) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "component";
    for (int i = 0; i < f.grid.n; ++i) os << ",j" << i;
    for (int i = 0; i < f.grid.n; ++i) os << ",u" << i;
    os << ",re,im\n";
    for (int c = 0; c < f.components; ++c)
        for (std::size_t p = 0; p < f.grid.size(); ++p) {
            os << c;
            for (int v : f.grid.index(p)) os << ',' << v;
            auto u = f.grid.point(p);
            for (int i = 0; i < f.grid.n; ++i) os << ',' << u[i];
            os << ',' << f.at(c, p).real() << ',' << f.at(c, p).imag() << '\n';
        }
    return os.str();
}

}  // namespace csmcg
