#include "dispersion/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "dispersion/a2.hpp"
#include "dispersion/error.hpp"
#include "dispersion/ratio.hpp"

namespace dispersion::io {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double get_number(const json& j, const char* what) {
    if (!j.is_number()) throw ValidationError(std::string(what) + " must be a number");
    return j.get<double>();
}

double number_or_inf(const json& j, const char* what) {
    return j.is_null() ? kInf : get_number(j, what);
}

Point get_point(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    Point p;
    for (const json& v : j) p.push_back(get_number(v, what));
    return p;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("JSON parse error: ") + e.what());
    }
}

}  // namespace

std::string instance_to_json(const BallInstance& inst) {
    json disks = json::array();
    for (const Ball& b : inst.balls()) {
        disks.push_back({{"center", b.center}, {"radius", b.radius}});
    }
    json doc = {{"dimension", inst.dimension()}, {"disks", std::move(disks)}};
    return doc.dump(2) + "\n";
}

BallInstance instance_from_json(const std::string& text) {
    const json doc = parse(text);
    if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("disks")) {
        throw ValidationError("instance must be an object with 'dimension' and 'disks'");
    }
    if (!doc["dimension"].is_number_integer()) throw ValidationError("'dimension' must be an integer");
    if (!doc["disks"].is_array()) throw ValidationError("'disks' must be an array");
    std::vector<Ball> balls;
    for (const json& d : doc["disks"]) {
        if (!d.is_object() || !d.contains("center") || !d.contains("radius")) {
            throw ValidationError("each disk needs 'center' and 'radius'");
        }
        balls.push_back({get_point(d["center"], "center"), get_number(d["radius"], "radius")});
    }
    return BallInstance(doc["dimension"].get<int>(), std::move(balls));
}

std::string solution_to_json(const Solution& sol, const Certificate& cert) {
    json points = json::array();
    for (const Point& p : sol.points) points.push_back(p);
    json doc = {
        {"algorithm", sol.algorithm},
        {"points", std::move(points)},
        {"min_distance", number_or_null(sol.min_distance)},
        {"certificate",
         {{"opt_upper", number_or_null(cert.opt_upper)},
          {"ratio_lower_bound", number_or_null(cert.ratio_lower_bound)},
          {"opt_lower", cert.opt_lower ? number_or_null(*cert.opt_lower) : json(nullptr)}}},
    };
    return doc.dump(2) + "\n";
}

SolutionFile solution_from_json(const std::string& text) {
    const json doc = parse(text);
    if (!doc.is_object()) throw ValidationError("solution must be a JSON object");
    for (const char* key : {"algorithm", "points", "min_distance", "certificate"}) {
        if (!doc.contains(key)) throw ValidationError(std::string("solution is missing '") + key + "'");
    }
    if (!doc["algorithm"].is_string()) throw ValidationError("'algorithm' must be a string");
    if (!doc["points"].is_array()) throw ValidationError("'points' must be an array");
    SolutionFile out;
    out.solution.algorithm = doc["algorithm"].get<std::string>();
    for (const json& p : doc["points"]) out.solution.points.push_back(get_point(p, "point"));
    out.solution.min_distance = number_or_inf(doc["min_distance"], "min_distance");
    const json& cert = doc["certificate"];
    if (!cert.is_object()) throw ValidationError("'certificate' must be an object");
    out.certificate.achieved = out.solution.min_distance;
    if (cert.contains("opt_upper")) out.certificate.opt_upper = number_or_inf(cert["opt_upper"], "opt_upper");
    if (cert.contains("ratio_lower_bound") && !cert["ratio_lower_bound"].is_null()) {
        out.certificate.ratio_lower_bound = get_number(cert["ratio_lower_bound"], "ratio_lower_bound");
    }
    if (cert.contains("opt_lower") && !cert["opt_lower"].is_null()) {
        out.certificate.opt_lower = get_number(cert["opt_lower"], "opt_lower");
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

GeneratorKind parse_generator_kind(const std::string& name) {
    if (name == "disjoint-unit") return GeneratorKind::kDisjointUnit;
    if (name == "disjoint-arbitrary") return GeneratorKind::kDisjointArbitrary;
    if (name == "unit-overlap") return GeneratorKind::kUnitOverlap;
    throw ValidationError("unknown generator kind '" + name + "'");
}

const char* to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::kDisjointUnit: return "disjoint-unit";
        case GeneratorKind::kDisjointArbitrary: return "disjoint-arbitrary";
        case GeneratorKind::kUnitOverlap: return "unit-overlap";
    }
    return "unknown";
}

namespace {

class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : rng_(seed) {}
    double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 rng_;
};

// Spatial hash of accepted centers for rejection tests.
class AcceptedSet {
public:
    AcceptedSet(int dim, double cell) : dim_(dim), cell_(cell) {}

    void add(const Point& p, double r) {
        balls_.push_back({p, r});
        cells_[key(cell_of(p))].push_back(balls_.size() - 1);
    }

    // True when a ball of radius r at p keeps clearance `gap` to all accepted balls
    // (with `reach` cells of search radius).
    bool clear(const Point& p, double r, double gap, bool radii_matter) const {
        const auto c = cell_of(p);
        std::array<std::int64_t, 3> off{};
        std::array<std::int64_t, 3> lim{};
        for (int k = 0; k < 3; ++k) lim[k] = k < dim_ ? 1 : 0;
        for (off[0] = -lim[0]; off[0] <= lim[0]; ++off[0])
            for (off[1] = -lim[1]; off[1] <= lim[1]; ++off[1])
                for (off[2] = -lim[2]; off[2] <= lim[2]; ++off[2]) {
                    std::array<std::int64_t, 3> q{};
                    for (int k = 0; k < 3; ++k) q[k] = c[k] + off[k];
                    const auto it = cells_.find(key(q));
                    if (it == cells_.end()) continue;
                    for (std::size_t idx : it->second) {
                        const Ball& b = balls_[idx];
                        const double need = (radii_matter ? r + b.radius : 0.0) + gap;
                        if (distance(p, b.center) < need) return false;
                    }
                }
        return true;
    }

    std::vector<Ball> take() { return std::move(balls_); }

private:
    std::array<std::int64_t, 3> cell_of(const Point& p) const {
        std::array<std::int64_t, 3> c{};
        for (int k = 0; k < dim_; ++k) c[k] = static_cast<std::int64_t>(std::floor(p[k] / cell_));
        return c;
    }
    static std::uint64_t key(const std::array<std::int64_t, 3>& c) {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::int64_t v : c) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }

    int dim_;
    double cell_;
    std::vector<Ball> balls_;
    // Hash collisions only merge buckets; membership is rechecked by distance.
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

}  // namespace

BallInstance generate(const GeneratorSpec& spec) {
    if (spec.n < 1) throw ValidationError("generator needs n >= 1");
    if (spec.dimension < 1 || spec.dimension > 3) throw ValidationError("generator supports d = 1..3");
    if (!(spec.min_gap >= 0.0) || !std::isfinite(spec.min_gap)) {
        throw ValidationError("min-gap must be a non-negative number");
    }
    Uniform uniform(spec.seed);
    const int d = spec.dimension;
    const auto n = static_cast<double>(spec.n);
    constexpr int kAttempts = 10000;

    if (spec.kind == GeneratorKind::kUnitOverlap) {
        const double side = 1.5 * std::pow(n, 1.0 / d);
        AcceptedSet accepted(d, std::max(spec.min_gap, 1e-9));
        for (std::size_t i = 0; i < spec.n; ++i) {
            bool placed = false;
            for (int attempt = 0; attempt < kAttempts && !placed; ++attempt) {
                Point p(static_cast<std::size_t>(d));
                for (double& v : p) v = side * uniform();
                if (spec.min_gap == 0.0 || accepted.clear(p, 1.0, spec.min_gap, false)) {
                    accepted.add(p, 1.0);
                    placed = true;
                }
            }
            if (!placed) throw ValidationError("generator could not place ball " + std::to_string(i));
        }
        return BallInstance(d, accepted.take());
    }

    const bool unit = spec.kind == GeneratorKind::kDisjointUnit;
    std::vector<double> radii(spec.n);
    double volume = 0.0;
    double r_max = 0.0;
    for (double& r : radii) {
        r = unit ? 1.0 : 0.25 + 1.75 * uniform();
        volume += std::pow(2.0 * r + spec.min_gap, d);
        r_max = std::max(r_max, r);
    }
    const double side = std::pow(volume / 0.25, 1.0 / d);
    AcceptedSet accepted(d, 2.0 * r_max + spec.min_gap);
    for (std::size_t i = 0; i < spec.n; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kAttempts && !placed; ++attempt) {
            Point p(static_cast<std::size_t>(d));
            for (double& v : p) v = side * uniform();
            if (accepted.clear(p, radii[i], spec.min_gap, true)) {
                accepted.add(p, radii[i]);
                placed = true;
            }
        }
        if (!placed) {
            throw ValidationError("generator density budget exhausted at ball " + std::to_string(i));
        }
    }
    return BallInstance(d, accepted.take());
}

std::string render_svg(const BallInstance& inst, const Solution& sol) {
    if (inst.dimension() != 2) throw ValidationError("svg output needs a planar (d = 2) instance");
    if (sol.points.size() != inst.size()) throw ValidationError("solution does not match the instance");

    double x0 = kInf, y0 = kInf, x1 = -kInf, y1 = -kInf;
    for (const Ball& b : inst.balls()) {
        x0 = std::min(x0, b.center[0] - b.radius);
        x1 = std::max(x1, b.center[0] + b.radius);
        y0 = std::min(y0, b.center[1] - b.radius);
        y1 = std::max(y1, b.center[1] + b.radius);
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-9});
    const double margin = 0.05 * span;
    const double scale = 800.0 / (span + 2.0 * margin);
    auto sx = [&](double x) { return (x - x0 + margin) * scale; };
    auto sy = [&](double y) { return (y1 - y + margin) * scale; };
    const double width = (x1 - x0 + 2.0 * margin) * scale;
    const double height = (y1 - y0 + 2.0 * margin) * scale;

    std::ostringstream os;
    os.precision(6);
    os << std::fixed;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const Ball& b : inst.balls()) {
        os << "<circle class=\"disk\" cx=\"" << sx(b.center[0]) << "\" cy=\"" << sy(b.center[1])
           << "\" r=\"" << b.radius * scale << "\" fill=\"none\" stroke=\"black\"/>\n";
    }
    if (sol.algorithm == "a2") {
        for (const Ball& b : inst.balls()) {
            os << "<circle class=\"shrunk\" cx=\"" << sx(b.center[0]) << "\" cy=\""
               << sy(b.center[1]) << "\" r=\"" << kInnerScale * b.radius * scale
               << "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
            ContainerPolytope poly = build_container_polytope(b, 2);
            auto angle = [&](const Point& v) {
                return std::atan2(v[1] - b.center[1], v[0] - b.center[0]);
            };
            std::sort(poly.vertices.begin(), poly.vertices.end(),
                      [&](const Point& u, const Point& v) { return angle(u) < angle(v); });
            os << "<polygon class=\"polytope\" points=\"";
            for (std::size_t k = 0; k < poly.vertices.size(); ++k) {
                os << (k ? " " : "") << sx(poly.vertices[k][0]) << "," << sy(poly.vertices[k][1]);
            }
            os << "\" fill=\"none\" stroke=\"steelblue\"/>\n";
        }
    }
    if (const auto pair = closest_pair(sol.points)) {
        const Point& a = sol.points[pair->first];
        const Point& b = sol.points[pair->second];
        os << "<line class=\"minpair\" x1=\"" << sx(a[0]) << "\" y1=\"" << sy(a[1]) << "\" x2=\""
           << sx(b[0]) << "\" y2=\"" << sy(b[1]) << "\" stroke=\"red\" stroke-width=\"2\"/>\n";
    }
    for (const Point& p : sol.points) {
        os << "<circle class=\"point\" cx=\"" << sx(p[0]) << "\" cy=\"" << sy(p[1])
           << "\" r=\"3\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

namespace {

// Four decimals, truncated, in the "0.5110..." style.
std::string trunc4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f...", std::floor(v * 1e4) / 1e4);
    return buf;
}

void row(std::ostringstream& os, const std::string& label, double value, const std::string& detail) {
    char buf[256];
    const std::string head = label + " = " + trunc4(value);
    std::snprintf(buf, sizeof buf, "%-44s %.15f  %s\n", head.c_str(), value, detail.c_str());
    os << buf;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

}  // namespace

std::string constants_report() {
    std::ostringstream os;
    os << "constant                                     full value         check\n";

    const double sigma2 = ratio::solve_sigma(2.0);
    row(os, "sigma(2)", sigma2, fmt("residual %.2e", std::abs(ratio::sigma_residual(2.0, sigma2))));

    const ratio::CForms c2 = ratio::c_forms(2.0);
    row(os, "c(2)", c2.via_sigma, fmt("|delta/f(sigma) - (sigma+delta)/(2(delta+2))| = %.2e",
                                      std::abs(c2.via_f - c2.via_sigma)));

    const double mu0 = ratio::mu0();
    row(os, "mu0", mu0,
        fmt("|y1(mu0) - mu0| = %.2e, |solved - closed| = %.2e", std::abs(ratio::y1(mu0) - mu0),
            std::abs(ratio::mu0_solved() - mu0)));

    const double floor_mu0 = ratio::hybrid_floor(mu0, 10000);
    row(os, "hybrid_floor", ratio::hybrid_bound(),
        fmt("grid(10000) at mu0 = %.12f, gap %.2e", floor_mu0, floor_mu0 - ratio::hybrid_bound()));

    const auto c1c2 = ratio::crossover(ratio::c1, ratio::c2, 1.0, 2.0);
    row(os, "c1/c2 crossover x", c1c2.x_star,
        fmt("residual %.2e, closed form %.12f", c1c2.residual, ratio::c1_c2_crossover_closed_form_x()));
    row(os, "c1/c2 crossover value", c1c2.value,
        fmt("closed form %.12f", ratio::c1_c2_crossover_closed_form_value()));

    const auto c1a1 = ratio::crossover(ratio::c1, ratio::a1, 1.01, 2.0);
    row(os, "c1/a1 crossover x", c1a1.x_star, fmt("residual %.2e", c1a1.residual));
    row(os, "c1/a1 crossover value", c1a1.value, fmt("1/value = %.6f", 1.0 / c1a1.value));

    const auto c1a2 = ratio::crossover(ratio::c1, [mu0](double x) { return ratio::a2(x, mu0); }, 1.0, 2.0);
    row(os, "c1/a2(mu0) crossover x", c1a2.x_star,
        fmt("residual %.2e, 1 + mu0 = %.12f", c1a2.residual, 1.0 + mu0));

    row(os, "y1(0)", ratio::y1(0.0), fmt("1/sqrt(3 - sqrt 6) = %.12f", 1.0 / std::sqrt(3.0 - std::sqrt(6.0))));
    row(os, "(1-eps)/sqrt(2), eps=1e-4", ratio::a2_ratio(1e-4), "");
    return os.str();
}

}  // namespace dispersion::io
