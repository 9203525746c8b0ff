#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "dispersion/certify.hpp"
#include "dispersion/geometry.hpp"

namespace dispersion::io {

// Instance file: {"dimension": d, "disks": [{"center": [...], "radius": r}, ...]}
// Solution file: {"algorithm": s, "points": [[...], ...], "min_distance": x,
//                 "certificate": {"opt_upper": x, "ratio_lower_bound": x, "opt_lower": x|null}}
// Non-finite numbers (n = 1) are written as null.

std::string instance_to_json(const BallInstance& inst);
BallInstance instance_from_json(const std::string& text);

std::string solution_to_json(const Solution& sol, const Certificate& cert);

struct SolutionFile {
    Solution solution;
    Certificate certificate;
};
SolutionFile solution_from_json(const std::string& text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

enum class GeneratorKind { kDisjointUnit, kDisjointArbitrary, kUnitOverlap };

GeneratorKind parse_generator_kind(const std::string& name);
const char* to_string(GeneratorKind kind);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::kDisjointUnit;
    std::size_t n = 10;
    std::uint64_t seed = 1;
    double min_gap = 0.0;
    int dimension = 2;
};

/// Deterministic instance from (kind, n, seed, min_gap, dimension).
///
/// Randomness comes from std::mt19937_64 seeded with `seed`; raw 64-bit draws
/// are mapped to [0, 1) as (x >> 11) * 2^-53, so output does not depend on the
/// standard library's distribution implementations. Disjoint kinds use
/// rejection sampling in a cube sized for roughly 25% occupancy and guarantee
/// |o_i o_j| >= r_i + r_j + min_gap. Arbitrary radii are uniform in [0.25, 2].
BallInstance generate(const GeneratorSpec& spec);

/// Two-dimensional drawing of disks, optional A2 polytopes and the selected
/// points, with the closest pair highlighted.
std::string render_svg(const BallInstance& inst, const Solution& sol);

/// Human-readable table of the ratio constants with their residuals.
std::string constants_report();

}  // namespace dispersion::io
