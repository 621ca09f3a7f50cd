#pragma once

#include "ominal/plmap.hpp"
#include "ominal/semilinear.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ominal {

enum class CellKind { Point, Interval, Graph, Band };

struct Cell;
using CellPtr = std::shared_ptr<const Cell>;

// A cell of an inductive decomposition: a point or interval on the line, or a
// graph / band over a lower-dimensional base cell. Validity (continuity of the
// defining functions, strict ordering of band walls) is certified at
// construction; the underlying set and a witness point are cached.
struct Cell {
    CellKind kind = CellKind::Point;
    int ambient_dim = 1;
    int dim = 0;
    CellPtr base; // null for ambient_dim == 1

    Rational point_value;           // Point
    std::optional<Rational> lo, hi; // Interval; nullopt = unbounded side
    bool lo_strict = true, hi_strict = true;

    std::optional<PLFunction> f; // Graph: the function; Band: lower wall
    std::optional<PLFunction> g; // Band: upper wall

    SemilinearSet underlying;
    Point sample;
};

CellPtr make_point_cell(const Rational& value);
// Requires lo < hi when both are finite; throws InvalidCell otherwise.
CellPtr make_interval_cell(std::optional<Rational> lo, std::optional<Rational> hi,
                           bool lo_strict = true, bool hi_strict = true);
// f must be continuous on the base and defined everywhere on it.
CellPtr make_graph_cell(CellPtr base, PLFunction f);
// Degenerate bands are rejected at construction: lower < upper must hold on
// the whole base. Null walls give unbounded bands.
CellPtr make_band_cell(CellPtr base, std::optional<PLFunction> lower,
                       std::optional<PLFunction> upper);

struct CellDecomposition {
    SemilinearSet target;
    std::vector<CellPtr> cells;
};

// Decomposition of all of n-space into cells on which every given form has
// constant sign.
std::vector<CellPtr> decompose_space(int n, const std::vector<AffineForm>& forms);

// Decomposition of x into cells (x is a union of them, each sign-constant for
// every constraint form of x).
CellDecomposition decompose(const SemilinearSet& x);

struct PartitionReport {
    bool ok = true;
    std::vector<std::string> issues;
};
// Cells are nonempty, pairwise disjoint, union to the target, and project to
// bases that are themselves pairwise disjoint or equal.
PartitionReport verify_partition(const CellDecomposition& d);

// Piecewise-linear homotopy H : [t0, t1] × domain → ambient space, with the
// parameter as the first coordinate of the map's domain.
struct PLHomotopy {
    PwAffineMap map; // dom_dim = 1 + n, cod_dim = n
    Rational t0, t1;
    SemilinearSet domain;

    std::vector<PLFunction> total_map() const; // components, parameter first
};

struct Contraction {
    PLHomotopy homotopy;
    Point target;
};

// Deformation retraction of a bounded cell onto a point of it; throws
// UnboundedCell when the cell is unbounded.
Contraction contraction(const CellPtr& cell);

struct HomotopyReport {
    bool ok = true;
    std::vector<std::string> issues;
};
// Symbolic certificate: H(t0, ·) = id, H(t1, ·) ≡ target, H stays inside the
// cell, piece values agree on closure overlaps, pieces cover [t0,t1] × cell.
HomotopyReport verify_contraction(const Contraction& c, const CellPtr& cell);

} // namespace ominal
