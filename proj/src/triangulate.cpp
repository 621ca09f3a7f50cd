#include "ominal/triangulate.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace ominal {

namespace {

bool meets(const ConstraintSystem& partial, const SemilinearSet& within) {
    for (const auto& piece : within.pieces) {
        if (is_feasible(partial.intersect(piece))) return true;
    }
    return false;
}

int system_dim(const ConstraintSystem& system) {
    Matrix equalities;
    for (const auto& c : system.constraints) {
        if (c.rel == Rel::EQ) equalities.push_back(c.form.coeffs);
    }
    return system.ambient_dim - matrix_rank(std::move(equalities));
}

ConstraintSystem closure_system(const ConstraintSystem& system) {
    ConstraintSystem out(system.ambient_dim);
    for (const auto& c : system.constraints) {
        out.constraints.push_back({c.form, c.rel == Rel::LT ? Rel::LE : c.rel});
    }
    return out;
}

Point average(const std::vector<Point>& points) {
    assert(!points.empty());
    Point sum(points[0].size(), Rational(0));
    for (const auto& p : points) {
        for (size_t i = 0; i < sum.size(); ++i) sum[i] += p[i];
    }
    const Rational scale(1, static_cast<long long>(points.size()));
    for (auto& value : sum) value *= scale;
    return sum;
}

} // namespace

std::vector<ArrangementCell> arrangement_cells(int ambient_dim,
                                               const std::vector<AffineForm>& forms,
                                               const SemilinearSet& within) {
    const std::vector<AffineForm> shape = canonical_forms(forms);
    std::vector<ArrangementCell> cells;
    ConstraintSystem partial(ambient_dim);
    auto walk = [&](auto&& self, size_t next) -> void {
        if (!meets(partial, within)) return;
        if (next == shape.size()) {
            auto sample = sample_point(partial);
            assert(sample);
            cells.push_back({partial, std::move(*sample), system_dim(partial)});
            return;
        }
        for (int sign : {0, -1, +1}) {
            if (sign == 0) partial.eq(shape[next]);
            else if (sign < 0) partial.lt(shape[next]);
            else partial.gt(shape[next]);
            self(self, next + 1);
            partial.constraints.pop_back();
        }
    };
    walk(walk, 0);
    std::stable_sort(cells.begin(), cells.end(),
                     [](const ArrangementCell& a, const ArrangementCell& b) { return a.dim < b.dim; });
    return cells;
}

Point Triangulation::barycenter(const std::vector<int>& simplex) const {
    std::vector<Point> corners;
    corners.reserve(simplex.size());
    for (int v : simplex) corners.push_back(vertex_points[static_cast<size_t>(v)]);
    return average(corners);
}

Triangulation triangulate(const std::vector<SemilinearSet>& sets) {
    Triangulation tri;
    if (sets.empty()) return tri;
    tri.ambient_dim = sets[0].ambient_dim;
    for (const auto& s : sets) {
        if (!is_bounded(s)) throw UnboundedInput("triangulate: input set is unbounded");
    }
    SemilinearSet all = sets[0];
    for (size_t k = 1; k < sets.size(); ++k) all = set_union(all, sets[k]);
    // Closure and union introduce no new constraint forms, so every
    // arrangement cell below is entirely inside or outside the hull and each
    // input, and pointwise membership of a sample decides the whole cell.
    const SemilinearSet hull = closure(all);

    std::vector<AffineForm> forms;
    for (const auto& s : sets) {
        for (auto& form : constraint_forms(s)) forms.push_back(std::move(form));
    }
    tri.cells = arrangement_cells(tri.ambient_dim, forms, hull);
    const size_t m = tri.cells.size();

    // Proper faces have strictly smaller dimension, hence a smaller index
    // after the dimension sort; closures of cells are unions of cells, so a
    // sample decides containment.
    std::vector<ConstraintSystem> closures(m);
    for (size_t i = 0; i < m; ++i) closures[i] = closure_system(tri.cells[i].system);
    std::vector<std::vector<size_t>> faces_of(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < i; ++j) {
            if (tri.cells[j].dim < tri.cells[i].dim && closures[i].contains(tri.cells[j].sample)) {
                faces_of[i].push_back(j);
            }
        }
    }

    // Vertices: every 0-cell, plus a barycentric apex for every cell of
    // dimension >= 2. 1-cells become single edges between their endpoints.
    tri.cell_vertex.assign(m, -1);
    for (size_t i = 0; i < m; ++i) {
        if (tri.cells[i].dim == 1) continue;
        tri.cell_vertex[i] = static_cast<int>(tri.vertex_points.size());
        if (tri.cells[i].dim == 0) {
            tri.vertex_points.push_back(tri.cells[i].sample);
        } else {
            tri.vertex_points.push_back(average(vertices(tri.cells[i].system)));
        }
    }

    // Top simplices triangulating the closure of each cell: the boundary of a
    // d-cell is covered by the closures of its (d-1)-faces, and coning their
    // triangulations from the apex triangulates the cell.
    std::vector<std::vector<std::vector<int>>> closed_tris(m);
    std::vector<std::vector<int>> simplices;
    for (size_t i = 0; i < m; ++i) {
        const int d = tri.cells[i].dim;
        if (d == 0) {
            closed_tris[i] = {{tri.cell_vertex[i]}};
        } else if (d == 1) {
            std::vector<int> edge;
            for (size_t j : faces_of[i]) edge.push_back(tri.cell_vertex[j]);
            assert(edge.size() == 2); // a bounded 1-face has exactly two endpoints
            closed_tris[i] = {std::move(edge)};
        } else {
            for (size_t j : faces_of[i]) {
                if (tri.cells[j].dim != d - 1) continue;
                for (const auto& t : closed_tris[j]) {
                    auto cone = t;
                    cone.push_back(tri.cell_vertex[i]);
                    closed_tris[i].push_back(std::move(cone));
                }
            }
        }
        simplices.insert(simplices.end(), closed_tris[i].begin(), closed_tris[i].end());
    }
    tri.complex = SimplicialComplex::from_simplices(std::move(simplices));

    tri.tags.resize(sets.size());
    for (size_t k = 0; k < sets.size(); ++k) {
        auto& per_dim = tri.tags[k];
        per_dim.resize(tri.complex.faces.size());
        for (size_t p = 0; p < tri.complex.faces.size(); ++p) {
            per_dim[p].resize(tri.complex.faces[p].size());
            for (size_t idx = 0; idx < tri.complex.faces[p].size(); ++idx) {
                per_dim[p][idx] = sets[k].contains(tri.barycenter(tri.complex.faces[p][idx]));
            }
        }
    }
    return tri;
}

namespace {

// Discards elementary collapse pairs until none remain: a simplex with
// exactly one codim-1 coface has that coface as its only coface at all (a
// deeper one would bring a second codim-1 coface along), so the pair is
// free and removing it is a deformation retraction.
std::vector<std::vector<int>> collapse_free_faces(std::vector<std::vector<int>> simplices) {
    std::map<std::vector<int>, int> id;
    for (size_t i = 0; i < simplices.size(); ++i) id[simplices[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> cofaces(simplices.size());
    std::vector<int> cnt(simplices.size(), 0);
    auto each_facet = [&](size_t i, auto&& fn) {
        const auto& s = simplices[i];
        if (s.size() < 2) return;
        for (size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<int> f;
            for (size_t k = 0; k < s.size(); ++k) {
                if (k != drop) f.push_back(s[k]);
            }
            fn(id.at(f));
        }
    };
    for (size_t i = 0; i < simplices.size(); ++i) {
        each_facet(i, [&](int f) {
            cofaces[static_cast<size_t>(f)].push_back(static_cast<int>(i));
            ++cnt[static_cast<size_t>(f)];
        });
    }
    std::vector<bool> alive(simplices.size(), true);
    std::vector<int> queue;
    for (size_t i = 0; i < simplices.size(); ++i) {
        if (cnt[i] == 1) queue.push_back(static_cast<int>(i));
    }
    while (!queue.empty()) {
        const int si = queue.back();
        queue.pop_back();
        if (!alive[static_cast<size_t>(si)] || cnt[static_cast<size_t>(si)] != 1) continue;
        int ti = -1;
        for (int c : cofaces[static_cast<size_t>(si)]) {
            if (alive[static_cast<size_t>(c)]) {
                ti = c;
                break;
            }
        }
        alive[static_cast<size_t>(si)] = alive[static_cast<size_t>(ti)] = false;
        for (const int killed : {si, ti}) {
            each_facet(static_cast<size_t>(killed), [&](int f) {
                if (alive[static_cast<size_t>(f)] && --cnt[static_cast<size_t>(f)] == 1) {
                    queue.push_back(f);
                }
            });
        }
    }
    std::vector<std::vector<int>> out;
    for (size_t i = 0; i < simplices.size(); ++i) {
        if (alive[i]) out.push_back(std::move(simplices[i]));
    }
    return out;
}

} // namespace

std::vector<AbelianGroup> oracle_cohomology(const SemilinearSet& p, const SemilinearSet& q,
                                            const CoefficientGroup& g) {
    if (!is_definably_compact(p)) throw NotCompact("cohomology oracle needs a closed bounded set");
    if (!is_definably_compact(q)) throw NotCompact("cohomology oracle needs a closed bounded removed set");
    if (!is_subset(q, p)) throw NotNested("removed set must lie inside the ambient compact");

    Triangulation tri = triangulate({p, q});
    std::vector<Point> points = std::move(tri.vertex_points);
    std::set<std::vector<int>> live;
    for (const auto& level : tri.complex.faces) live.insert(level.begin(), level.end());

    auto center = [&](const std::vector<int>& s) {
        std::vector<Point> corners;
        for (int v : s) corners.push_back(points[static_cast<size_t>(v)]);
        return average(corners);
    };
    std::vector<bool> vertex_in(points.size());
    for (size_t v = 0; v < points.size(); ++v) vertex_in[v] = q.contains(points[v]);

    // Make q's carrier full by local stellar moves: a simplex spanned by
    // carrier vertices whose interior leaves q gets a new vertex at its
    // barycenter (outside q, as the triangulation is adapted). Every new
    // simplex uses that vertex, so each move strictly shrinks the offending
    // set, and the complex stays adapted to {p, q}.
    for (;;) {
        const std::vector<int>* found = nullptr;
        for (const auto& s : live) {
            if (s.size() < 2) continue;
            if (!std::all_of(s.begin(), s.end(),
                             [&](int v) { return vertex_in[static_cast<size_t>(v)]; })) {
                continue;
            }
            if (!q.contains(center(s))) {
                found = &s;
                break;
            }
        }
        if (!found) break;
        const std::vector<int> sigma = *found;
        const int vid = static_cast<int>(points.size());
        points.push_back(center(sigma));
        vertex_in.push_back(false);
        std::vector<std::vector<int>> stars;
        for (const auto& s : live) {
            if (std::includes(s.begin(), s.end(), sigma.begin(), sigma.end())) stars.push_back(s);
        }
        for (const auto& tau : stars) live.erase(tau);
        for (const auto& tau : stars) {
            std::vector<int> rest;
            std::set_difference(tau.begin(), tau.end(), sigma.begin(), sigma.end(),
                                std::back_inserter(rest));
            // Pieces v * (proper face of sigma) * (tau minus sigma).
            for (unsigned mask = 0; mask + 1 < 1u << sigma.size(); ++mask) {
                std::vector<int> piece = rest;
                for (size_t b = 0; b < sigma.size(); ++b) {
                    if (mask & (1u << b)) piece.push_back(sigma[b]);
                }
                piece.push_back(vid);
                std::sort(piece.begin(), piece.end());
                live.insert(std::move(piece));
            }
        }
    }

    // With a full carrier the full subcomplex on the vertices outside q is a
    // deformation retract of |p| \ |q|; collapse it before the algebra.
    std::vector<std::vector<int>> outside;
    for (const auto& s : live) {
        if (std::none_of(s.begin(), s.end(),
                         [&](int v) { return vertex_in[static_cast<size_t>(v)]; })) {
            outside.push_back(s);
        }
    }
    if (outside.empty()) return {};
    return simplicial_cohomology(
        SimplicialComplex::from_simplices(collapse_free_faces(std::move(outside))), g);
}

std::vector<AbelianGroup> set_cohomology(const SemilinearSet& s, const CoefficientGroup& g) {
    if (!is_bounded(s)) throw UnboundedInput("set cohomology needs a bounded set");
    const SemilinearSet rim = boundary(s); // closure minus the set itself
    if (!is_closed(rim)) throw NotClosed("set is not locally closed");
    return oracle_cohomology(closure(s), rim, g);
}

std::vector<SemilinearSet> components(const SemilinearSet& x) {
    if (!is_bounded(x)) throw UnboundedInput("components requires a bounded set");
    const std::vector<ArrangementCell> cells =
        arrangement_cells(x.ambient_dim, constraint_forms(x), x);
    const size_t m = cells.size();
    std::vector<size_t> parent(m);
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    // A cell and a face of it lie in one component: the segment from a face
    // point to a cell point stays inside the cell except at its start. The
    // resulting classes are open in x, so they are exactly its components.
    for (size_t i = 0; i < m; ++i) {
        const ConstraintSystem closed = closure_system(cells[i].system);
        for (size_t j = 0; j < i; ++j) {
            if (cells[j].dim >= cells[i].dim) continue;
            if (!closed.contains(cells[j].sample)) continue;
            parent[find(i)] = find(j);
        }
    }
    std::vector<SemilinearSet> out;
    std::vector<int> slot(m, -1);
    for (size_t i = 0; i < m; ++i) {
        const size_t root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(out.size());
            out.emplace_back(x.ambient_dim);
        }
        out[static_cast<size_t>(slot[root])].pieces.push_back(cells[i].system);
    }
    return out;
}

} // namespace ominal
