#pragma once

#include <vector>

#include "fdesign/packing.hpp"

namespace fdesign {

// An r-graph F* together with an F-decomposition of it.
struct FDecomposition {
    RGraph fstar;
    Packing decomposition;
};

struct Regularisation {
    RGraph f;
    int q = 0;
    RGraph fstar;
    Packing decomposition;
    std::vector<i64> s;
    std::vector<std::vector<int>> permutation_table;
};

struct RegulariseOptions {
    i64 max_edges = 20'000'000;
};

// s_{r-1} = |F| r! (f-r+1)! and s_i = s_{r-1} c_i / (r-i) with c_i = C(f-i, r-1-i) q^(r-1-i).
std::vector<i64> regularisation_s_vector(const RGraph& f, int q);

// The prime power used for an f-vertex pattern: smallest in [f!, 2 f!].
int regularisation_order(int f);

Regularisation regularise(const RGraph& f, const RegulariseOptions& opts = {});

FDecomposition to_fdecomposition(const Regularisation& reg);

}  // namespace fdesign
