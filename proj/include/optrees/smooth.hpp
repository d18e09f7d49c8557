#pragma once

#include "optrees/category.hpp"
#include "optrees/homology.hpp"

namespace optrees {

struct SmoothReport {
    bool smooth = false;
    long long lifting_categories = 0;
    std::vector<std::string> failures;  // offending (f1, x1) pairs
    bool ok() const { return smooth; }
};

// Cisinski criterion at truncation: for every morphism f1 in the codomain
// and every object x1 over its target, the lifting category of f1 over x1
// must have the integral homology of a point through max_dim.
SmoothReport check_smooth(const Functor& F, int max_dim);
// Dual check over co-lifting categories (objects x0 -> x over f1, morphisms
// in the fibre of the target).
SmoothReport check_proper(const Functor& F, int max_dim);

struct QuillenAReport {
    SmoothReport smooth;
    bool fibres_terminal = false;
    bool fibres_acyclic = false;
    bool codomain_acyclic = false;
    bool expectation_acyclic = false;  // what Quillen A predicts for the domain
    HomologyReport domain;
    HomologyReport codomain;
    bool consistent = false;  // computed domain homology matches the expectation
};

// The Theorem 3.4 pipeline: smoothness, fibres, codomain homology, and the
// independent computation of the domain homology, compared.
QuillenAReport quillen_a_conclusion(const Functor& F, int max_dim);

}  // namespace optrees
