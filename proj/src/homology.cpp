#include "ominal/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace ominal {

IntMatrix int_identity(int n) {
    IntMatrix m(static_cast<size_t>(n), std::vector<Integer>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return m;
}

IntMatrix int_matrix_product(const IntMatrix& a, const IntMatrix& b) {
    const size_t rows = a.size();
    const size_t inner = b.size();
    const size_t cols = inner == 0 ? 0 : b.front().size();
    IntMatrix out(rows, std::vector<Integer>(cols));
    for (size_t i = 0; i < rows; ++i) {
        if (a[i].size() != inner) throw DimensionMismatch("matrix product shape");
        for (size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    }
    return out;
}

namespace {

Integer int_abs(const Integer& v) { return v < 0 ? Integer(-v) : v; }

// One Smith elimination engine; u/v are optional transform accumulators.
void smith_reduce(IntMatrix& d, IntMatrix* u, IntMatrix* v) {
    const size_t rows = d.size();
    const size_t cols = rows == 0 ? 0 : d.front().size();

    auto swap_rows = [&](size_t a, size_t b) {
        if (a == b) return;
        std::swap(d[a], d[b]);
        if (u) std::swap((*u)[a], (*u)[b]);
    };
    auto swap_cols = [&](size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < rows; ++i) std::swap(d[i][a], d[i][b]);
        if (v)
            for (auto& row : *v) std::swap(row[a], row[b]);
    };
    auto add_row = [&](size_t dst, size_t src, const Integer& q) {
        for (size_t j = 0; j < cols; ++j) d[dst][j] += q * d[src][j];
        if (u) {
            auto& udst = (*u)[dst];
            const auto& usrc = (*u)[src];
            for (size_t j = 0; j < udst.size(); ++j) udst[j] += q * usrc[j];
        }
    };
    auto add_col = [&](size_t dst, size_t src, const Integer& q) {
        for (size_t i = 0; i < rows; ++i) d[i][dst] += q * d[i][src];
        if (v)
            for (auto& row : *v) row[dst] += q * row[src];
    };
    auto negate_row = [&](size_t i) {
        for (auto& x : d[i]) x = -x;
        if (u)
            for (auto& x : (*u)[i]) x = -x;
    };

    const size_t steps = std::min(rows, cols);
    auto diagonalize = [&]() {
        for (size_t t = 0; t < steps; ++t) {
            // Pivot: smallest nonzero magnitude in the unreduced block.
            size_t pr = t, pc = t;
            Integer best(0);
            for (size_t i = t; i < rows; ++i) {
                for (size_t j = t; j < cols; ++j) {
                    if (d[i][j] == 0) continue;
                    const Integer mag = int_abs(d[i][j]);
                    if (best == 0 || mag < best) {
                        best = mag;
                        pr = i;
                        pc = j;
                    }
                }
            }
            if (best == 0) break;
            swap_rows(t, pr);
            swap_cols(t, pc);

            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (size_t i = t + 1; i < rows; ++i) {
                    if (d[i][t] == 0) continue;
                    const Integer q = d[i][t] / d[t][t];
                    add_row(i, t, -q);
                    if (d[i][t] != 0) {
                        // Remainder smaller than the pivot becomes the pivot.
                        swap_rows(t, i);
                        dirty = true;
                    }
                }
                for (size_t j = t + 1; j < cols; ++j) {
                    if (d[t][j] == 0) continue;
                    const Integer q = d[t][j] / d[t][t];
                    add_col(j, t, -q);
                    if (d[t][j] != 0) {
                        swap_cols(t, j);
                        dirty = true;
                    }
                }
            }
            if (d[t][t] < 0) negate_row(t);
        }
    };

    // Diagonalize, then repeatedly fold a divisibility violation back into the
    // matrix and rediagonalize; the sorted diagonal magnitudes strictly drop,
    // so this terminates with d1 | d2 | ... .
    diagonalize();
    while (true) {
        size_t vi = steps, vj = steps;
        for (size_t i = 0; i + 1 < steps && vi == steps; ++i) {
            if (d[i][i] == 0) continue;
            for (size_t j = i + 1; j < steps; ++j) {
                if (d[j][j] != 0 && d[j][j] % d[i][i] != 0) {
                    vi = i;
                    vj = j;
                    break;
                }
            }
        }
        if (vi == steps) break;
        add_col(vi, vj, 1);
        diagonalize();
    }
}

std::vector<Integer> diagonal_of(const IntMatrix& d) {
    std::vector<Integer> out;
    const size_t steps = d.empty() ? 0 : std::min(d.size(), d.front().size());
    for (size_t i = 0; i < steps; ++i) {
        if (d[i][i] != 0) out.push_back(d[i][i]);
    }
    return out;
}

std::vector<Integer> torsion_of(const std::vector<Integer>& diagonal) {
    std::vector<Integer> out;
    for (const Integer& v : diagonal) {
        if (v > 1) out.push_back(v);
    }
    return out;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
    SmithForm s;
    s.d = a;
    const int rows = static_cast<int>(a.size());
    const int cols = a.empty() ? 0 : static_cast<int>(a.front().size());
    s.u = int_identity(rows);
    s.v = int_identity(cols);
    smith_reduce(s.d, &s.u, &s.v);
    s.diagonal = diagonal_of(s.d);
    return s;
}

std::vector<Integer> smith_diagonal(const IntMatrix& a) {
    IntMatrix d = a;
    smith_reduce(d, nullptr, nullptr);
    return diagonal_of(d);
}

int int_matrix_rank(const IntMatrix& a) {
    return static_cast<int>(smith_diagonal(a).size());
}

std::string to_string(const AbelianGroup& g) {
    if (g.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    auto sep = [&]() {
        if (!first) out << " + ";
        first = false;
    };
    if (g.free_rank == 1) {
        sep();
        out << "Z";
    } else if (g.free_rank > 1) {
        sep();
        out << "Z^" << g.free_rank;
    }
    for (const Integer& t : g.torsion) {
        sep();
        out << "Z/" << t;
    }
    return out.str();
}

CoefficientGroup CoefficientGroup::integers() {
    CoefficientGroup g;
    g.generators = 1;
    g.relations = {std::vector<Integer>{}};
    return g;
}

CoefficientGroup CoefficientGroup::cyclic(const Integer& m) {
    CoefficientGroup g;
    g.generators = 1;
    g.relations = {{m}};
    return g;
}

CoefficientGroup CoefficientGroup::direct_sum(const CoefficientGroup& a,
                                              const CoefficientGroup& b) {
    CoefficientGroup g;
    g.generators = a.generators + b.generators;
    const size_t ac = a.generators && !a.relations.empty() ? a.relations.front().size() : 0;
    const size_t bc = b.generators && !b.relations.empty() ? b.relations.front().size() : 0;
    g.relations.assign(static_cast<size_t>(g.generators), std::vector<Integer>(ac + bc));
    for (int i = 0; i < a.generators; ++i)
        for (size_t j = 0; j < ac; ++j)
            g.relations[static_cast<size_t>(i)][j] = a.relations[static_cast<size_t>(i)][j];
    for (int i = 0; i < b.generators; ++i)
        for (size_t j = 0; j < bc; ++j)
            g.relations[static_cast<size_t>(a.generators + i)][ac + j] =
                b.relations[static_cast<size_t>(i)][j];
    return g;
}

AbelianGroup CoefficientGroup::value() const {
    const std::vector<Integer> diag = smith_diagonal(relations);
    AbelianGroup g;
    g.free_rank = generators - static_cast<int>(diag.size());
    g.torsion = torsion_of(diag);
    return g;
}

void CochainComplex::validate() const {
    if (maps.size() + 1 != ranks.size() && !(ranks.empty() && maps.empty()))
        throw InvalidComplex("one map is needed between consecutive degrees");
    for (size_t p = 0; p < maps.size(); ++p) {
        const IntMatrix& m = maps[p];
        if (static_cast<int>(m.size()) != ranks[p + 1])
            throw InvalidComplex("map target rank mismatch");
        for (const auto& row : m) {
            if (static_cast<int>(row.size()) != ranks[p])
                throw InvalidComplex("map source rank mismatch");
        }
    }
    for (size_t p = 0; p + 1 < maps.size(); ++p) {
        const IntMatrix square = int_matrix_product(maps[p + 1], maps[p]);
        for (const auto& row : square) {
            for (const Integer& x : row) {
                if (x != 0) throw InvalidComplex("maps do not square to zero");
            }
        }
    }
}

std::vector<AbelianGroup> cohomology(const CochainComplex& c) {
    c.validate();
    const size_t degrees = c.ranks.size();
    std::vector<AbelianGroup> out(degrees);
    std::vector<int> ranks(c.maps.size());
    std::vector<std::vector<Integer>> diagonals(c.maps.size());
    for (size_t p = 0; p < c.maps.size(); ++p) {
        diagonals[p] = smith_diagonal(c.maps[p]);
        ranks[p] = static_cast<int>(diagonals[p].size());
    }
    for (size_t p = 0; p < degrees; ++p) {
        const int outgoing = p < c.maps.size() ? ranks[p] : 0;
        const int incoming = p > 0 ? ranks[p - 1] : 0;
        out[p].free_rank = c.ranks[p] - outgoing - incoming;
        if (p > 0) out[p].torsion = torsion_of(diagonals[p - 1]);
    }
    return out;
}

std::vector<AbelianGroup> cohomology(const CochainComplex& c, const CoefficientGroup& g) {
    c.validate();
    // Canonical presentation: free part plus injective diagonal relations.
    const std::vector<Integer> diag = smith_diagonal(g.relations);
    const std::vector<Integer> orders = torsion_of(diag);
    const int free_gens = g.generators - static_cast<int>(diag.size());
    const int gens = free_gens + static_cast<int>(orders.size());
    const int rels = static_cast<int>(orders.size());

    // Twisted complex T^p = C^p (x) Z^gens  (+)  C^{p+1} (x) Z^rels with
    // differential (x, y) -> (dx + (1 (x) R) y, -dy); since R is injective the
    // cohomology of T is the cohomology of C with coefficients in coker(R).
    // T starts in degree -1, so everything is stored shifted up by one.
    const size_t degrees = c.ranks.size();
    if (degrees == 0) return {};
    auto rank_at = [&](int p) { return p >= 0 && p < static_cast<int>(degrees) ? c.ranks[static_cast<size_t>(p)] : 0; };
    auto map_at = [&](int p) -> const IntMatrix* {
        return p >= 0 && p < static_cast<int>(c.maps.size()) ? &c.maps[static_cast<size_t>(p)] : nullptr;
    };

    CochainComplex twisted;
    twisted.ranks.resize(degrees + 1);
    for (size_t q = 0; q <= degrees; ++q) {
        const int p = static_cast<int>(q) - 1;
        twisted.ranks[q] = rank_at(p) * gens + rank_at(p + 1) * rels;
    }
    twisted.maps.resize(degrees);
    for (size_t q = 0; q < degrees; ++q) {
        const int p = static_cast<int>(q) - 1; // map T^p -> T^{p+1}
        IntMatrix m(static_cast<size_t>(twisted.ranks[q + 1]),
                    std::vector<Integer>(static_cast<size_t>(twisted.ranks[q])));
        const IntMatrix* d0 = map_at(p);     // C^p -> C^{p+1}
        const IntMatrix* d1 = map_at(p + 1); // C^{p+1} -> C^{p+2}
        const size_t block2 = static_cast<size_t>(rank_at(p) * gens);
        const size_t target2 = static_cast<size_t>(rank_at(p + 1) * gens);
        // Block (dx): (j, a) <- (i, a) with coefficient d0[j][i].
        if (d0) {
            for (size_t j = 0; j < d0->size(); ++j) {
                for (size_t i = 0; i < (*d0)[j].size(); ++i) {
                    if ((*d0)[j][i] == 0) continue;
                    for (int a = 0; a < gens; ++a)
                        m[j * static_cast<size_t>(gens) + static_cast<size_t>(a)]
                         [i * static_cast<size_t>(gens) + static_cast<size_t>(a)] = (*d0)[j][i];
                }
            }
        }
        // Block ((1 (x) R) y): (j, a) <- (j, b) with the diagonal order; the
        // torsion generators sit after the free ones.
        for (int b = 0; b < rels; ++b) {
            const int a = free_gens + b;
            for (int j = 0; j < rank_at(p + 1); ++j)
                m[static_cast<size_t>(j * gens + a)]
                 [block2 + static_cast<size_t>(j * rels + b)] = orders[static_cast<size_t>(b)];
        }
        // Block (-dy): (j2, b) <- (j1, b) with -d1[j2][j1].
        if (d1) {
            for (size_t j2 = 0; j2 < d1->size(); ++j2) {
                for (size_t j1 = 0; j1 < (*d1)[j2].size(); ++j1) {
                    if ((*d1)[j2][j1] == 0) continue;
                    for (int b = 0; b < rels; ++b)
                        m[target2 + j2 * static_cast<size_t>(rels) + static_cast<size_t>(b)]
                         [block2 + j1 * static_cast<size_t>(rels) + static_cast<size_t>(b)] =
                            -(*d1)[j2][j1];
                }
            }
        }
        twisted.maps[q] = std::move(m);
    }
    const std::vector<AbelianGroup> shifted = cohomology(twisted);
    return {shifted.begin() + 1, shifted.end()};
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<std::vector<int>> simplices) {
    std::set<std::vector<int>> closed;
    // Downward closure by subset masks; top simplices are small.
    for (auto& simplex : simplices) {
        std::sort(simplex.begin(), simplex.end());
        if (std::adjacent_find(simplex.begin(), simplex.end()) != simplex.end())
            throw InvalidComplex("simplex with a repeated vertex");
        const size_t k = simplex.size();
        if (k == 0) continue;
        if (k > 20) throw InvalidComplex("simplex too large");
        for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
            std::vector<int> face;
            for (size_t i = 0; i < k; ++i) {
                if ((mask >> i) & 1) face.push_back(simplex[i]);
            }
            closed.insert(std::move(face));
        }
    }
    SimplicialComplex x;
    for (const auto& face : closed) {
        const size_t p = face.size() - 1;
        if (x.faces.size() <= p) x.faces.resize(p + 1);
        x.faces[p].push_back(face);
    }
    for (auto& level : x.faces) std::sort(level.begin(), level.end());
    return x;
}

bool SimplicialComplex::contains(std::vector<int> simplex) const {
    std::sort(simplex.begin(), simplex.end());
    return index_of(simplex) >= 0;
}

int SimplicialComplex::index_of(const std::vector<int>& simplex) const {
    if (simplex.empty()) return -1;
    const size_t p = simplex.size() - 1;
    if (p >= faces.size()) return -1;
    const auto& level = faces[p];
    const auto it = std::lower_bound(level.begin(), level.end(), simplex);
    if (it == level.end() || *it != simplex) return -1;
    return static_cast<int>(it - level.begin());
}

std::vector<int> SimplicialComplex::vertices() const {
    std::vector<int> out;
    if (faces.empty()) return out;
    for (const auto& v : faces[0]) out.push_back(v.front());
    return out;
}

SimplicialComplex SimplicialComplex::full_subcomplex(const std::vector<int>& keep) const {
    const std::set<int> allowed(keep.begin(), keep.end());
    std::vector<std::vector<int>> retained;
    for (const auto& level : faces) {
        for (const auto& simplex : level) {
            bool ok = true;
            for (int v : simplex) {
                if (!allowed.count(v)) {
                    ok = false;
                    break;
                }
            }
            if (ok) retained.push_back(simplex);
        }
    }
    return from_simplices(std::move(retained));
}

CochainComplex SimplicialComplex::cochain_complex() const {
    CochainComplex c;
    c.ranks.resize(faces.size());
    for (size_t p = 0; p < faces.size(); ++p) c.ranks[p] = static_cast<int>(faces[p].size());
    if (faces.size() < 2) return c;
    c.maps.resize(faces.size() - 1);
    for (size_t p = 0; p + 1 < faces.size(); ++p) {
        IntMatrix m(faces[p + 1].size(), std::vector<Integer>(faces[p].size()));
        for (size_t j = 0; j < faces[p + 1].size(); ++j) {
            const auto& simplex = faces[p + 1][j];
            for (size_t drop = 0; drop < simplex.size(); ++drop) {
                std::vector<int> face;
                face.reserve(simplex.size() - 1);
                for (size_t i = 0; i < simplex.size(); ++i) {
                    if (i != drop) face.push_back(simplex[i]);
                }
                const int idx = index_of(face);
                if (idx < 0) throw InvalidComplex("complex not closed under faces");
                m[j][static_cast<size_t>(idx)] = (drop % 2 == 0) ? 1 : -1;
            }
        }
        c.maps[p] = std::move(m);
    }
    return c;
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    for (size_t p = 0; p < faces.size(); ++p) {
        const long long count = static_cast<long long>(faces[p].size());
        chi += (p % 2 == 0) ? count : -count;
    }
    return chi;
}

std::vector<AbelianGroup> simplicial_cohomology(const SimplicialComplex& x,
                                                const CoefficientGroup& g) {
    return cohomology(x.cochain_complex(), g);
}

SimplicialComplex barycentric_subdivision(const SimplicialComplex& x) {
    std::vector<int> offset(x.faces.size() + 1, 0);
    for (size_t p = 0; p < x.faces.size(); ++p) {
        offset[p + 1] = offset[p] + static_cast<int>(x.faces[p].size());
    }
    auto label = [&](const std::vector<int>& simplex) {
        return offset[simplex.size() - 1] + x.index_of(simplex);
    };
    // chains[L] = every chain of simplices ending at the one labeled L; a
    // chain is determined by its top element plus a shorter chain, so
    // processing faces in dimension order visits each chain exactly once.
    std::vector<std::vector<std::vector<int>>> chains(static_cast<size_t>(offset.back()));
    std::vector<std::vector<int>> simplices;
    for (size_t p = 0; p < x.faces.size(); ++p) {
        for (const auto& top : x.faces[p]) {
            const int top_label = label(top);
            auto& into = chains[static_cast<size_t>(top_label)];
            into.push_back({top_label});
            const size_t k = top.size();
            for (unsigned long mask = 1; mask + 1 < (1ul << k); ++mask) {
                std::vector<int> face;
                for (size_t i = 0; i < k; ++i) {
                    if ((mask >> i) & 1) face.push_back(top[i]);
                }
                for (const auto& chain : chains[static_cast<size_t>(label(face))]) {
                    auto extended = chain;
                    extended.push_back(top_label);
                    into.push_back(std::move(extended));
                }
            }
            simplices.insert(simplices.end(), into.begin(), into.end());
        }
    }
    return SimplicialComplex::from_simplices(std::move(simplices));
}

} // namespace ominal
