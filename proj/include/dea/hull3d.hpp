// Copyright 2026 The DEA Authors
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

#pragma once

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

namespace dea {

/// Incremental convex hull of points in R^3. Faces carry outward-oriented
/// vertex triples. `ok` is false when the input is degenerate (fewer than
/// four points or all coplanar within tolerance).
struct Hull3D {
    struct Face {
        int a, b, c;
    };
    std::vector<Face> faces;
    bool ok = false;
    bool origin_inside = false;
};

inline Hull3D convex_hull_3d(const std::vector<Eigen::Vector3d>& pts, double eps = 1e-12) {
    Hull3D hull;
    const int n = static_cast<int>(pts.size());
    if (n < 4) return hull;

    auto orient = [&](int a, int b, int c, const Eigen::Vector3d& p) {
        return (pts[b] - pts[a]).cross(pts[c] - pts[a]).dot(p - pts[a]);
    };

    // Initial tetrahedron: two distinct points, a third off the line, a
    // fourth off the plane.
    int i1 = -1, i2 = -1, i3 = -1;
    for (int i = 1; i < n && i1 < 0; ++i)
        if ((pts[i] - pts[0]).norm() > eps) i1 = i;
    if (i1 < 0) return hull;
    for (int i = 1; i < n && i2 < 0; ++i)
        if (i != i1 && (pts[i1] - pts[0]).cross(pts[i] - pts[0]).norm() > eps) i2 = i;
    if (i2 < 0) return hull;
    for (int i = 1; i < n && i3 < 0; ++i)
        if (i != i1 && i != i2 && std::abs(orient(0, i1, i2, pts[i])) > eps) i3 = i;
    if (i3 < 0) return hull;

    std::vector<Hull3D::Face> faces;
    auto add_face = [&](int a, int b, int c, const Eigen::Vector3d& interior) {
        if (orient(a, b, c, interior) > 0) std::swap(b, c);  // keep interior below
        faces.push_back({a, b, c});
    };
    Eigen::Vector3d interior = (pts[0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    add_face(0, i1, i2, interior);
    add_face(0, i1, i3, interior);
    add_face(0, i2, i3, interior);
    add_face(i1, i2, i3, interior);

    for (int p = 1; p < n; ++p) {
        if (p == i1 || p == i2 || p == i3) continue;
        std::vector<char> visible(faces.size(), 0);
        bool any = false;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (orient(faces[f].a, faces[f].b, faces[f].c, pts[p]) > eps) {
                visible[f] = 1;
                any = true;
            }
        }
        if (!any) continue;  // inside or on the hull
        // Horizon: directed edges of visible faces whose reverse lives on an
        // invisible face.
        std::map<std::pair<int, int>, int> edge_count;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) continue;
            int v[3] = {faces[f].a, faces[f].b, faces[f].c};
            for (int e = 0; e < 3; ++e) {
                edge_count[{v[e], v[(e + 1) % 3]}] += 1;
                edge_count[{v[(e + 1) % 3], v[e]}] -= 1;  // mark reverses
            }
        }
        std::vector<Hull3D::Face> next;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (!visible[f]) next.push_back(faces[f]);
        for (const auto& [edge, count] : edge_count) {
            // An unmatched forward edge of the visible set borders the horizon.
            if (count == 1) next.push_back({edge.first, edge.second, p});
        }
        faces = std::move(next);
    }

    hull.faces = faces;
    hull.ok = !faces.empty();
    hull.origin_inside = true;
    for (const Hull3D::Face& f : faces) {
        Eigen::Vector3d normal = (pts[f.b] - pts[f.a]).cross(pts[f.c] - pts[f.a]);
        if (normal.dot(-pts[f.a]) >= -eps) {
            hull.origin_inside = false;
            break;
        }
    }
    return hull;
}

}  // namespace dea
