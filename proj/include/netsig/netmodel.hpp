#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "netsig/gray_image.hpp"

namespace netsig {

/// Integer lattice offsets with Euclidean norm in (0, R], ascending by
/// distance. Offsets at the same distance are grouped into a ring; the
/// membership test is exact (dx*dx + dy*dy <= R*R in integers).
struct NeighborhoodOffsets {
    struct Entry {
        int dx;
        int dy;
        int dist_sq;
        double dist; // sqrt(dist_sq)
    };
    struct Ring {
        std::size_t begin; // [begin, end) into entries
        std::size_t end;
        int dist_sq;
    };

    int max_radius = 0;
    std::vector<Entry> entries;
    std::vector<Ring> rings;
};

NeighborhoodOffsets neighborhood(int max_radius);

/// Weight of a directed edge between pixels at Euclidean distance `dist`
/// whose intensities differ by `delta_i`, on the network built with radius r:
///   r == 1:  delta_i / L
///   r >= 2:  (((dist - 1) / (r - 1)) + delta_i / L) / 2
/// Always in [0, 1].
double edge_weight(double dist, int delta_i, int r, int max_level);

/// How equal-intensity pixel pairs connect. The default follows the model's
/// prose rule (one edge in each direction); `exclude` drops tie edges
/// entirely and is kept for experimentation only.
enum class TieRule { bidirectional, exclude };

struct EdgeRecord {
    int src = 0;       // pixel index, row-major
    int dst = 0;
    double weight = 0; // in [0, 1]
    double dist = 0;
};

/// Reference enumeration of the directed network on `image` with radius r:
/// for every ordered pixel pair within distance r, an edge src -> dst exists
/// iff I(src) < I(dst), or in both directions on ties (per tie_rule). This
/// is the explicit O(N * |neighborhood|) oracle; intended for small images
/// and for validating degree_profiles.
std::vector<EdgeRecord> enumerate_edges(const GrayImage& image, int r,
                                        TieRule tie_rule = TieRule::bidirectional);

/// Debug dump, one `src,dst,dist,weight` row per edge after a header line.
void write_edges_csv(const std::vector<EdgeRecord>& edges, std::ostream& out);

/// Per-pixel degree evolution for r = 1..max_radius. Weighted degrees are
/// recomputed per radius because the edge weight renormalizes with r.
/// Layout: value for (pixel p, radius r) at index p * max_radius + (r - 1).
struct DegreeProfiles {
    int width = 0;
    int height = 0;
    int max_radius = 0;
    std::vector<std::int32_t> k; // out-degree
    std::vector<double> ks;      // weighted out-degree
    std::vector<double> ke;      // weighted in-degree

    std::int32_t out_degree(int pixel, int r) const {
        return k[static_cast<std::size_t>(pixel) * max_radius + r - 1];
    }
    double weighted_out_degree(int pixel, int r) const {
        return ks[static_cast<std::size_t>(pixel) * max_radius + r - 1];
    }
    double weighted_in_degree(int pixel, int r) const {
        return ke[static_cast<std::size_t>(pixel) * max_radius + r - 1];
    }
};

/// Computes k/ks/ke for every pixel and every radius 1..max_radius in one
/// cumulative pass over distance rings. Matches per-pixel aggregation of
/// enumerate_edges exactly for k and to ~1e-12 for ks/ke.
DegreeProfiles degree_profiles(const GrayImage& image, int max_radius,
                               TieRule tie_rule = TieRule::bidirectional);

} // namespace netsig
