#pragma once

#include <string>
#include <vector>

#include "fdesign/hypergraph.hpp"
#include "fdesign/matrix.hpp"

namespace fdesign {

// Vertex (x, i) of the complete f-partite host with parts of size q is encoded
// as i*q + index(x).
inline Vertex partite_vertex(int q, int part, int x) { return part * q + x; }
inline int partite_part(int q, Vertex v) { return v / q; }
inline int partite_elem(int q, Vertex v) { return v % q; }
bool is_crossing(const VertexSet& s, int q);

struct ResolvableDecomposition {
    int q = 0;
    int f = 0;
    int r = 0;
    // classes[x*] lists the f-sets Q with a_hat . x_Q = x*, sorted.
    std::vector<std::vector<VertexSet>> classes;
};

// The Cauchy-matrix scheme behind the resolvable decomposition of K_{q x f}.
class CauchyScheme {
public:
    CauchyScheme(int q, int f, int r);

    int q() const { return q_; }
    int f() const { return f_; }
    int r() const { return r_; }
    const Field& field() const { return field_; }
    // The (f-r+1) x f Cauchy matrix; its last row is a_hat.
    const Matrix& matrix() const { return a_; }

    ResolvableDecomposition enumerate() const;
    // The unique Q in Y containing the crossing r-set e, found by solving
    // A'_{[f] \ I_e} x' = -A'_{I_e} x_e.
    VertexSet clique_through(const VertexSet& e) const;
    bool in_null_space(const VertexSet& clique) const;
    int class_of(const VertexSet& clique) const;

private:
    std::vector<int> coordinates(const VertexSet& clique) const;
    int q_, f_, r_;
    Field field_;
    Matrix a_;
    Matrix solve_free_;  // (f-r) x r, maps the last r coordinates to the first f-r
};

ResolvableDecomposition resolvable_decomposition(int q, int f, int r);

struct ResolvableVerdict {
    bool ok = true;
    std::string violation;
    VertexSet witness;
    int clazz = -1;
};

ResolvableVerdict verify_resolvable(const ResolvableDecomposition& d);

}  // namespace fdesign
