#include "cryst/matgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cryst/errors.hpp"

namespace cryst {

FinMatGroup FinMatGroup::closure(const std::vector<IntMatrix>& gens, std::size_t max_order) {
    std::size_t dim = gens.empty() ? 0 : gens.front().rows();
    for (const IntMatrix& g : gens) {
        if (!g.is_square() || g.rows() != dim)
            throw std::invalid_argument("generators must be square of equal dimension");
        if (!g.is_unimodular())
            throw std::invalid_argument("generator is not unimodular");
    }
    std::set<IntMatrix> seen;
    std::deque<IntMatrix> frontier;
    IntMatrix id = IntMatrix::identity(dim);
    seen.insert(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        IntMatrix x = std::move(frontier.front());
        frontier.pop_front();
        for (const IntMatrix& g : gens) {
            IntMatrix y = x * g;
            if (seen.contains(y)) continue;
            if (seen.size() >= max_order) {
                std::ostringstream msg;
                msg << "group order exceeds cap " << max_order;
                throw OrderCapExceeded(msg.str());
            }
            frontier.push_back(y);
            seen.insert(std::move(y));
        }
    }
    FinMatGroup G;
    G.dim_ = dim;
    G.generators_ = gens;
    G.elements_.assign(seen.begin(), seen.end());
    return G;
}

FinMatGroup FinMatGroup::from_elements(std::size_t dim, std::vector<IntMatrix> generators,
                                       std::vector<IntMatrix> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    FinMatGroup G;
    G.dim_ = dim;
    G.generators_ = std::move(generators);
    G.elements_ = std::move(elements);
    if (!G.contains(IntMatrix::identity(dim)))
        throw std::invalid_argument("element set lacks the identity");
    for (const IntMatrix& g : G.generators_)
        if (!G.contains(g)) throw std::invalid_argument("generator outside element set");
    for (const IntMatrix& x : G.elements_)
        for (const IntMatrix& g : G.generators_)
            if (!G.contains(x * g))
                throw std::invalid_argument("element set not closed under generators");
    return G;
}

FinMatGroup FinMatGroup::trivial(std::size_t dim) {
    return closure({IntMatrix::identity(dim)});
}

bool FinMatGroup::contains(const IntMatrix& X) const {
    return std::binary_search(elements_.begin(), elements_.end(), X);
}

std::size_t FinMatGroup::index_of(const IntMatrix& X) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), X);
    if (it == elements_.end() || !(*it == X)) return elements_.size();
    return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t FinMatGroup::identity_index() const {
    return index_of(IntMatrix::identity(dim_));
}

bool normalizes(const FinMatGroup& G, const IntMatrix& X) {
    if (X.rows() != G.dim() || X.cols() != G.dim())
        throw std::invalid_argument("dimension mismatch");
    IntMatrix Xinv = X.inverse_unimodular();
    for (const IntMatrix& g : G.generators())
        if (!G.contains(X * g * Xinv)) return false;
    return true;
}

namespace {

// finite group on indices 0..n-1 given by a multiplication callback
struct IndexGroup {
    std::vector<std::size_t> elems;  // global indices
    std::size_t id;
    std::vector<std::vector<std::size_t>> mult;  // local x local -> local
};

Int local_order(const IndexGroup& Q, std::size_t a) {
    Int ord = 1;
    std::size_t x = a;
    std::size_t id_local = 0;
    for (std::size_t i = 0; i < Q.elems.size(); ++i)
        if (Q.elems[i] == Q.id) id_local = i;
    while (x != id_local) {
        x = Q.mult[x][a];
        ++ord;
    }
    return ord;
}

// invariant factors of a finite abelian group: split off a maximal-order
// cyclic factor and recurse on the quotient
std::vector<Int> abelian_invariants(const IndexGroup& Q) {
    const std::size_t n = Q.elems.size();
    if (n == 1) return {};
    std::size_t id_local = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (Q.elems[i] == Q.id) id_local = i;

    Int best_ord = 0;
    std::size_t best = id_local;
    for (std::size_t i = 0; i < n; ++i) {
        Int o = local_order(Q, i);
        if (o > best_ord) {
            best_ord = o;
            best = i;
        }
    }
    // cyclic subgroup generated by the max-order element
    std::vector<bool> in_h(n, false);
    std::size_t x = id_local;
    do {
        in_h[x] = true;
        x = Q.mult[x][best];
    } while (x != id_local);

    // cosets; reps are minimal local indices
    std::vector<std::size_t> rep(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = i;
        for (std::size_t h = 0; h < n; ++h)
            if (in_h[h]) r = std::min(r, Q.mult[h][i]);
        rep[i] = r;
    }
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i)
        if (rep[i] == i) reps.push_back(i);
    std::vector<std::size_t> local_of(n, 0);
    for (std::size_t k = 0; k < reps.size(); ++k) local_of[reps[k]] = k;

    IndexGroup quot;
    quot.id = Q.elems[rep[id_local]];
    for (std::size_t r : reps) quot.elems.push_back(Q.elems[r]);
    quot.mult.assign(reps.size(), std::vector<std::size_t>(reps.size()));
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = 0; b < reps.size(); ++b)
            quot.mult[a][b] = local_of[rep[Q.mult[reps[a]][reps[b]]]];

    std::vector<Int> inv = abelian_invariants(quot);
    inv.push_back(best_ord);
    return inv;
}

}  // namespace

GroupFingerprint fingerprint(const FinMatGroup& G) {
    GroupFingerprint fp;
    const std::size_t n = G.order();
    fp.order = n;

    const IntMatrix id = IntMatrix::identity(G.dim());
    std::vector<std::size_t> inv_idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        IntMatrix x = G.elements()[i];
        Int ord = 1;
        while (!(x == id)) {
            x = x * G.elements()[i];
            ++ord;
        }
        ++fp.element_order_histogram[ord];
        inv_idx[i] = G.index_of(G.elements()[i].inverse_unimodular());
    }

    auto mult_idx = [&](std::size_t a, std::size_t b) {
        return G.index_of(G.elements()[a] * G.elements()[b]);
    };

    // commutator subgroup from all pairwise commutators, closed under product
    std::set<std::size_t> comm;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t ij = mult_idx(i, j), ji = mult_idx(j, i);
            comm.insert(mult_idx(ij, inv_idx[ji]));
        }
    std::deque<std::size_t> queue(comm.begin(), comm.end());
    std::vector<std::size_t> comm_gens(comm.begin(), comm.end());
    while (!queue.empty()) {
        std::size_t a = queue.front();
        queue.pop_front();
        for (std::size_t g : comm_gens) {
            std::size_t b = mult_idx(a, g);
            if (comm.insert(b).second) queue.push_back(b);
        }
    }

    // quotient by the commutator subgroup: right cosets, minimal-index reps
    std::vector<std::size_t> rep(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = i;
        for (std::size_t h : comm) r = std::min(r, mult_idx(h, i));
        rep[i] = r;
    }
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < n; ++i)
        if (rep[i] == i) reps.push_back(i);
    std::vector<std::size_t> local_of(n, 0);
    for (std::size_t k = 0; k < reps.size(); ++k) local_of[reps[k]] = k;

    IndexGroup quot;
    quot.id = rep[G.identity_index()];
    quot.elems = reps;
    quot.mult.assign(reps.size(), std::vector<std::size_t>(reps.size()));
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = 0; b < reps.size(); ++b)
            quot.mult[a][b] = local_of[rep[mult_idx(reps[a], reps[b])]];

    std::vector<Int> inv = abelian_invariants(quot);
    std::erase_if(inv, [](const Int& d) { return d <= 1; });
    fp.abelianization_invariants = inv;
    return fp;
}

std::vector<IntMatrix> find_generators(std::size_t dim, const std::vector<IntMatrix>& elements,
                                       std::size_t closure_cap) {
    if (closure_cap == 0) closure_cap = elements.size();
    std::vector<IntMatrix> gens;
    FinMatGroup current = FinMatGroup::trivial(dim);
    for (const IntMatrix& e : elements) {
        if (current.contains(e)) continue;
        gens.push_back(e);
        current = FinMatGroup::closure(gens, closure_cap);
    }
    return gens;
}

}  // namespace cryst
