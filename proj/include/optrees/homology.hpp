#pragma once

#include <string>
#include <vector>

#include "optrees/category.hpp"

namespace optrees {

// A chain complex of free abelian groups given by explicit boundary lists.
// boundary[k][cell] lists (cell index in dimension k-1, coefficient); cells
// in dimension 0 have no boundary entries and are counted by n0.
struct CellComplex {
    int n0 = 0;
    std::vector<std::vector<std::vector<std::pair<int, long long>>>> boundary;  // dims 1..D

    int dim() const { return static_cast<int>(boundary.size()); }
    long long cells(int k) const {
        return k == 0 ? n0 : static_cast<long long>(boundary[k - 1].size());
    }
    // Verifies that the composite of consecutive boundaries vanishes.
    std::optional<std::string> check_dd_zero() const;
};

// Nondegenerate nerve of a finite category: dimension-k cells are chains of
// k composable non-identity morphisms.  Materializes every requested
// dimension; intended for small categories.
struct NerveComplex {
    const FinCategory* cat = nullptr;
    int max_dim = 0;
    // chains[k] lists k-tuples of morphism ids, k >= 1; dimension 0 cells are
    // the objects.
    std::vector<std::vector<std::vector<int>>> chains;

    long long cells(int k) const {
        if (k == 0) return cat ? cat->object_count() : 0;
        if (k > max_dim) return 0;
        return static_cast<long long>(chains[k - 1].size());
    }
    CellComplex to_cell_complex() const;
};

NerveComplex nerve(const FinCategory& cat, int max_dim);

struct HomologyReport {
    int max_degree = 0;
    std::vector<long long> betti;                  // per degree 0..max_degree
    std::vector<std::vector<long long>> torsion;   // per degree
    bool connected = false;
    bool top_degree_exact = true;  // false when only an upper bound was available

    bool acyclic_through(int d) const;
    std::string summary() const;
};

// Exact integral homology of a cell complex through max_deg, by coreduction
// of free pairs followed by Smith normal form over arbitrary precision
// integers.  max_deg must be < dim() for an exact top degree; the report
// flags the top degree otherwise.
HomologyReport homology(const CellComplex& cx, int max_deg, bool use_coreduction = true);

// Homology of the nerve of a category through max_deg.  Builds the nerve one
// dimension above max_deg.  For max_deg == 2 a streaming enumeration of the
// 3-chains is used when their number would be large.
HomologyReport homology_of_category(const FinCategory& cat, int max_deg);

// Independent construction for posets: the order complex (chains of the
// strict order relation).  Cross-check for the nerve path.
HomologyReport order_complex_homology(const FinCategory& poset, int max_deg);

}  // namespace optrees
