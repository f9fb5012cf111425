#include "netsig/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "netsig/text.hpp"

namespace netsig {

NeighborhoodOffsets neighborhood(int max_radius) {
    if (max_radius < 1)
        throw std::invalid_argument("neighborhood: radius must be at least 1");

    NeighborhoodOffsets out;
    out.max_radius = max_radius;
    const int r_sq = max_radius * max_radius;
    for (int dy = -max_radius; dy <= max_radius; ++dy) {
        for (int dx = -max_radius; dx <= max_radius; ++dx) {
            const int d_sq = dx * dx + dy * dy;
            if (d_sq == 0 || d_sq > r_sq) continue;
            out.entries.push_back({dx, dy, d_sq, std::sqrt(static_cast<double>(d_sq))});
        }
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
        if (a.dist_sq != b.dist_sq) return a.dist_sq < b.dist_sq;
        if (a.dy != b.dy) return a.dy < b.dy;
        return a.dx < b.dx;
    });

    std::size_t begin = 0;
    for (std::size_t i = 1; i <= out.entries.size(); ++i) {
        if (i == out.entries.size() || out.entries[i].dist_sq != out.entries[begin].dist_sq) {
            out.rings.push_back({begin, i, out.entries[begin].dist_sq});
            begin = i;
        }
    }
    return out;
}

double edge_weight(double dist, int delta_i, int r, int max_level) {
    const double intensity_term = static_cast<double>(delta_i) / max_level;
    if (r == 1) return intensity_term;
    return ((dist - 1.0) / (r - 1.0) + intensity_term) / 2.0;
}

std::vector<EdgeRecord> enumerate_edges(const GrayImage& image, int r, TieRule tie_rule) {
    if (r < 1)
        throw std::invalid_argument("enumerate_edges: radius must be at least 1");

    const auto offsets = neighborhood(r);
    const int w = image.width;
    const int h = image.height;
    std::vector<EdgeRecord> edges;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int i = y * w + x;
            const int vi = image.data[i];
            for (const auto& o : offsets.entries) {
                const int nx = x + o.dx;
                const int ny = y + o.dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                const int j = ny * w + nx;
                const int vj = image.data[j];
                const bool connects =
                    vi < vj || (vi == vj && tie_rule == TieRule::bidirectional);
                if (!connects) continue;
                edges.push_back(
                    {i, j, edge_weight(o.dist, vj - vi, r, image.max_level), o.dist});
            }
        }
    }
    return edges;
}

void write_edges_csv(const std::vector<EdgeRecord>& edges, std::ostream& out) {
    out << "src,dst,dist,weight\n";
    std::string line;
    for (const auto& e : edges) {
        line.clear();
        line += std::to_string(e.src);
        line += ',';
        line += std::to_string(e.dst);
        line += ',';
        append_double(line, e.dist);
        line += ',';
        append_double(line, e.weight);
        line += '\n';
        out << line;
    }
}

DegreeProfiles degree_profiles(const GrayImage& image, int max_radius, TieRule tie_rule) {
    if (max_radius < 1)
        throw std::invalid_argument("degree_profiles: radius must be at least 1");
    if (image.width < 1 || image.height < 1 || image.data.empty())
        throw std::invalid_argument("degree_profiles: empty image");

    const auto offsets = neighborhood(max_radius);
    const int w = image.width;
    const int h = image.height;
    const int n = w * h;

    DegreeProfiles p;
    p.width = w;
    p.height = h;
    p.max_radius = max_radius;
    p.k.assign(static_cast<std::size_t>(n) * max_radius, 0);
    p.ks.assign(static_cast<std::size_t>(n) * max_radius, 0.0);
    p.ke.assign(static_cast<std::size_t>(n) * max_radius, 0.0);

    // Running sums over the edges accumulated so far (neighborhoods are
    // cumulative in r). For radius r >= 2 the per-edge weight
    // ((dist-1)/(r-1) + dI/L)/2 summed over edges factors into
    // 0.5 * ((S_dist - k)/(r-1) + S_dI/L), so per-r snapshots need only the
    // running count and the running dist / intensity-difference sums.
    std::vector<std::int32_t> k_out(n, 0), k_in(n, 0);
    std::vector<double> sd_out(n, 0.0), sdi_out(n, 0.0);
    std::vector<double> sd_in(n, 0.0), sdi_in(n, 0.0);

    const double inv_l = 1.0 / image.max_level;
    const bool ties = tie_rule == TieRule::bidirectional;

    std::size_t ring_idx = 0;
    for (int r = 1; r <= max_radius; ++r) {
        const int r_sq = r * r;
        for (; ring_idx < offsets.rings.size() && offsets.rings[ring_idx].dist_sq <= r_sq;
             ++ring_idx) {
            const auto& ring = offsets.rings[ring_idx];
            for (std::size_t e = ring.begin; e < ring.end; ++e) {
                const auto& o = offsets.entries[e];
                // Each unordered pixel pair is folded once, from its
                // canonical half-offset.
                if (o.dy < 0 || (o.dy == 0 && o.dx < 0)) continue;
                const double d = o.dist;
                const int x0 = std::max(0, -o.dx);
                const int x1 = w - 1 - std::max(0, o.dx);
                const int y0 = std::max(0, -o.dy);
                const int y1 = h - 1 - std::max(0, o.dy);
                for (int y = y0; y <= y1; ++y) {
                    const int row_i = y * w;
                    const int row_j = (y + o.dy) * w + o.dx;
                    for (int x = x0; x <= x1; ++x) {
                        const int i = row_i + x;
                        const int j = row_j + x;
                        const int a = image.data[i];
                        const int b = image.data[j];
                        if (a < b) {
                            ++k_out[i];
                            sd_out[i] += d;
                            sdi_out[i] += b - a;
                            ++k_in[j];
                            sd_in[j] += d;
                            sdi_in[j] += b - a;
                        } else if (b < a) {
                            ++k_out[j];
                            sd_out[j] += d;
                            sdi_out[j] += a - b;
                            ++k_in[i];
                            sd_in[i] += d;
                            sdi_in[i] += a - b;
                        } else if (ties) {
                            ++k_out[i];
                            sd_out[i] += d;
                            ++k_out[j];
                            sd_out[j] += d;
                            ++k_in[i];
                            sd_in[i] += d;
                            ++k_in[j];
                            sd_in[j] += d;
                        }
                    }
                }
            }
        }

        if (r == 1) {
            for (int i = 0; i < n; ++i) {
                const std::size_t slot = static_cast<std::size_t>(i) * max_radius;
                p.k[slot] = k_out[i];
                p.ks[slot] = sdi_out[i] * inv_l;
                p.ke[slot] = sdi_in[i] * inv_l;
            }
        } else {
            const double inv_rm1 = 1.0 / (r - 1);
            for (int i = 0; i < n; ++i) {
                const std::size_t slot = static_cast<std::size_t>(i) * max_radius + (r - 1);
                p.k[slot] = k_out[i];
                p.ks[slot] = 0.5 * ((sd_out[i] - k_out[i]) * inv_rm1 + sdi_out[i] * inv_l);
                p.ke[slot] = 0.5 * ((sd_in[i] - k_in[i]) * inv_rm1 + sdi_in[i] * inv_l);
            }
        }
    }
    return p;
}

} // namespace netsig
