#pragma once

// Finite abelian p-groups G = Z_{p^e1} + ... + Z_{p^er} and their subgroups.
//
// A subgroup H is handled as the lattice L_H with diag(p^ei) Z^r <= L_H <= Z^r,
// stored in Hermite normal form. That makes purity, intersections and
// complements exact integer linear algebra. Element-level enumeration is only
// used by enumerate_subgroups, which is bounded.

#include "mixedab/integer.hpp"
#include "mixedab/matrix.hpp"
#include "mixedab/snf.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace mixedab {

class BoundExceeded : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Largest group order p^k the oracle layer accepts, as the exponent k.
/// MIXEDAB_MAX_ENUM overrides the default of 12.
struct EnumBound {
    unsigned max_log_order = 12;

    static EnumBound from_env() {
        EnumBound b;
        if (const char* env = std::getenv("MIXEDAB_MAX_ENUM")) {
            char* end = nullptr;
            const unsigned long v = std::strtoul(env, &end, 10);
            if (end != env && *end == '\0' && v > 0 && v < 64) b.max_log_order = static_cast<unsigned>(v);
        }
        return b;
    }
};

struct FinitePGroup {
    std::uint64_t p = 2;
    std::vector<unsigned> orders;  ///< exponents, descending

    static FinitePGroup make(std::uint64_t p, std::vector<unsigned> orders) {
        std::sort(orders.begin(), orders.end(), std::greater<>());
        FinitePGroup g{p, std::move(orders)};
        if (auto v = g.validate(); !v.empty()) throw std::invalid_argument(v.front());
        return g;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> out;
        if (!is_prime(p)) out.push_back("p = " + std::to_string(p) + " is not prime");
        for (unsigned e : orders)
            if (e == 0) out.emplace_back("cyclic factor exponents must be >= 1");
        if (!std::is_sorted(orders.begin(), orders.end(), std::greater<>()))
            out.emplace_back("exponents must be sorted descending");
        return out;
    }

    std::size_t rank() const noexcept { return orders.size(); }
    unsigned log_order() const {
        unsigned s = 0;
        for (unsigned e : orders) s += e;
        return s;
    }
    BigInt order() const { return ipow(p, log_order()); }
    BigInt modulus(std::size_t i) const { return ipow(p, orders[i]); }
    unsigned exponent() const { return orders.empty() ? 0 : orders.front(); }

    IntVector reduce(IntVector x) const {
        if (x.size() != rank()) throw std::invalid_argument("element has wrong length");
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod_floor(x[i], modulus(i));
        return x;
    }

    /// diag(p^e_i): the lattice of the zero subgroup.
    IntMatrix zero_lattice() const {
        IntMatrix d(rank(), rank());
        for (std::size_t i = 0; i < rank(); ++i) d(i, i) = modulus(i);
        return d;
    }

    friend bool operator==(const FinitePGroup& a, const FinitePGroup& b) {
        return a.p == b.p && a.orders == b.orders;
    }
};

/// Subgroup given by generators in coordinates of the ambient group.
struct SubgroupGens {
    FinitePGroup ambient;
    std::vector<IntVector> gens;
};

/// p-height of x in G, nullopt for x = 0.
inline std::optional<unsigned> height_in(const FinitePGroup& g, const IntVector& x) {
    std::optional<unsigned> h;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const BigInt r = mod_floor(x[i], g.modulus(i));
        if (r == 0) continue;
        const unsigned v = valuation(r, g.p, g.orders[i]);
        if (!h || v < *h) h = v;
    }
    return h;
}

/// Subgroup as a full-rank lattice in Hermite normal form.
class SubgroupLattice {
 public:
    SubgroupLattice(FinitePGroup g, const std::vector<IntVector>& gens) : g_(std::move(g)) {
        IntMatrix m = g_.zero_lattice();
        for (const auto& v : gens) {
            if (v.size() != g_.rank()) throw std::invalid_argument("generator has wrong length");
            m.append_row(v);
        }
        basis_ = hnf(m);
    }

    explicit SubgroupLattice(const SubgroupGens& s) : SubgroupLattice(s.ambient, s.gens) {}

    static SubgroupLattice whole(const FinitePGroup& g) {
        std::vector<IntVector> gens;
        for (std::size_t i = 0; i < g.rank(); ++i) {
            IntVector e(g.rank());
            e[i] = 1;
            gens.push_back(e);
        }
        return SubgroupLattice(g, gens);
    }

    /// p^k G
    static SubgroupLattice multiples(const FinitePGroup& g, unsigned k) {
        std::vector<IntVector> gens;
        for (std::size_t i = 0; i < g.rank(); ++i) {
            IntVector e(g.rank());
            e[i] = ipow(g.p, std::min(k, g.orders[i]));
            gens.push_back(e);
        }
        return SubgroupLattice(g, gens);
    }

    /// G[p^k]
    static SubgroupLattice torsion(const FinitePGroup& g, unsigned k) {
        std::vector<IntVector> gens;
        for (std::size_t i = 0; i < g.rank(); ++i) {
            IntVector e(g.rank());
            e[i] = ipow(g.p, g.orders[i] > k ? g.orders[i] - k : 0);
            gens.push_back(e);
        }
        return SubgroupLattice(g, gens);
    }

    const FinitePGroup& ambient() const noexcept { return g_; }
    const IntMatrix& basis() const noexcept { return basis_; }

    /// log_p |H|
    unsigned log_order() const {
        unsigned idx = 0;
        for (std::size_t i = 0; i < basis_.rows(); ++i)
            idx += valuation(basis_(i, i), g_.p, 1u << 20);
        return g_.log_order() - idx;
    }
    BigInt order() const { return ipow(g_.p, log_order()); }

    bool contains(const IntVector& x) const {
        // basis_ is upper triangular with the pivot of row i in column i
        IntVector r = x;
        for (std::size_t c = 0; c < basis_.cols(); ++c) {
            if (r[c] % basis_(c, c) != 0) return false;
            const BigInt y = r[c] / basis_(c, c);
            if (y == 0) continue;
            for (std::size_t j = c; j < basis_.cols(); ++j) r[j] -= y * basis_(c, j);
        }
        return true;
    }

    bool contains(const SubgroupLattice& other) const {
        for (std::size_t i = 0; i < other.basis_.rows(); ++i)
            if (!contains(other.basis_.row(i))) return false;
        return true;
    }

    SubgroupLattice operator+(const SubgroupLattice& o) const {
        return SubgroupLattice(FromRows{}, g_, stack(basis_, o.basis_));
    }

    SubgroupLattice intersect(const SubgroupLattice& o) const {
        const std::size_t r = g_.rank();
        IntMatrix m(2 * r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                m(i, j) = basis_(i, j);
                m(r + i, j) = -o.basis_(i, j);
            }
        const IntMatrix ker = left_kernel(m);
        IntMatrix rows(ker.rows(), r);
        for (std::size_t k = 0; k < ker.rows(); ++k)
            for (std::size_t i = 0; i < r; ++i) {
                if (ker(k, i) == 0) continue;
                for (std::size_t j = 0; j < r; ++j) rows(k, j) += ker(k, i) * basis_(i, j);
            }
        return SubgroupLattice(FromRows{}, g_, stack(rows, g_.zero_lattice()));
    }

    /// p^k H
    SubgroupLattice multiply(unsigned k) const {
        IntMatrix m = basis_;
        const BigInt f = ipow(g_.p, k);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= f;
        return SubgroupLattice(FromRows{}, g_, stack(m, g_.zero_lattice()));
    }

    /// Generators reduced into the ambient coordinates, zero rows dropped.
    std::vector<IntVector> generators() const {
        std::vector<IntVector> out;
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            IntVector v = g_.reduce(basis_.row(i));
            bool zero = std::all_of(v.begin(), v.end(), [](const BigInt& a) { return a == 0; });
            if (!zero) out.push_back(std::move(v));
        }
        return out;
    }

    SubgroupGens to_gens() const { return SubgroupGens{g_, generators()}; }

    /// Invariant-factor exponents of H itself (descending).
    std::vector<unsigned> type() const {
        // H = L_H / L_0 ; present it as Z^r / (L_0 expressed in the basis of L_H)
        const std::size_t r = g_.rank();
        // solve X * basis_ = zero_lattice  (X integral since L_0 <= L_H)
        IntMatrix rel(r, r);
        const IntMatrix z = g_.zero_lattice();
        for (std::size_t k = 0; k < r; ++k) {
            IntVector row = z.row(k);
            IntVector coeff(r);
            for (std::size_t c = 0; c < r; ++c) {
                coeff[c] = row[c] / basis_(c, c);
                for (std::size_t j = c; j < r; ++j) row[j] -= coeff[c] * basis_(c, j);
            }
            for (std::size_t c = 0; c < r; ++c) rel(k, c) = coeff[c];
        }
        std::vector<unsigned> out;
        for (const BigInt& d : canonical_form(rel))
            if (d != 0) out.push_back(valuation(d, g_.p, 1u << 20));
        std::sort(out.begin(), out.end(), std::greater<>());
        return out;
    }

    std::string key() const {
        std::ostringstream os;
        os << basis_;
        return os.str();
    }

    friend bool operator==(const SubgroupLattice& a, const SubgroupLattice& b) {
        return a.g_ == b.g_ && a.basis_ == b.basis_;
    }

 private:
    struct FromRows {};
    SubgroupLattice(FromRows, FinitePGroup g, const IntMatrix& rows) : g_(std::move(g)), basis_(hnf(rows)) {}

    FinitePGroup g_;
    IntMatrix basis_;
};

/// Smallest k >= 1 with H cap p^k G != p^k H, or nullopt when H is pure.
inline std::optional<unsigned> purity_violation(const SubgroupLattice& h) {
    const FinitePGroup& g = h.ambient();
    for (unsigned k = 1; k < g.exponent(); ++k) {
        const SubgroupLattice a = h.intersect(SubgroupLattice::multiples(g, k));
        const SubgroupLattice b = h.multiply(k);
        if (a.log_order() != b.log_order()) return k;
    }
    return std::nullopt;
}

inline bool is_pure(const SubgroupLattice& h) { return !purity_violation(h).has_value(); }

/// Complement of a pure subgroup: lifts a basis of G/H to elements of equal order.
inline SubgroupLattice pure_complement(const SubgroupLattice& h) {
    const FinitePGroup& g = h.ambient();
    const std::size_t r = g.rank();
    const SmithForm f = snf(h.basis());
    // Z^r / L_H has generators = rows of V^{-1}, orders = diagonal of S
    std::vector<IntVector> lifts;
    for (std::size_t i = 0; i < r; ++i) {
        const BigInt d = f.S(i, i);
        if (d == 1) continue;
        const IntVector gi = f.V_inverse.row(i);
        // find n in L_H with d * (gi - n) in L_0: unknowns (a, w) with
        // d * a * B + w * D0 = d * gi, written as a transposed system
        IntMatrix sys(r, 2 * r);
        const IntMatrix d0 = g.zero_lattice();
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t j = 0; j < r; ++j) {
                sys(j, k) = d * h.basis()(k, j);
                sys(j, r + k) = d0(k, j);
            }
        IntVector rhs(r);
        for (std::size_t j = 0; j < r; ++j) rhs[j] = d * gi[j];
        const auto sol = solve_linear(sys, rhs);
        if (!sol) throw std::logic_error("pure_complement: subgroup is not pure");
        IntVector c = gi;
        for (std::size_t k = 0; k < r; ++k) {
            if ((*sol)[k] == 0) continue;
            for (std::size_t j = 0; j < r; ++j) c[j] -= (*sol)[k] * h.basis()(k, j);
        }
        lifts.push_back(g.reduce(c));
    }
    return SubgroupLattice(g, lifts);
}

inline void require_bound(const FinitePGroup& g, const EnumBound& bound) {
    if (g.log_order() > bound.max_log_order) {
        throw BoundExceeded("group of order " + std::to_string(g.p) + "^" + std::to_string(g.log_order()) +
                            " exceeds enumeration bound p^" + std::to_string(bound.max_log_order));
    }
}

/// A complement C with N + C = G and N cap C = 0, or nullopt if N is not a summand.
inline std::optional<SubgroupGens> is_summand(const SubgroupGens& n, const EnumBound& bound = EnumBound::from_env()) {
    require_bound(n.ambient, bound);
    const SubgroupLattice h(n);
    if (!is_pure(h)) return std::nullopt;
    const SubgroupLattice c = pure_complement(h);
    if (h.log_order() + c.log_order() != n.ambient.log_order() || h.intersect(c).log_order() != 0)
        throw std::logic_error("is_summand: complement verification failed");
    return c.to_gens();
}

/// Minimal-order summand of G containing the given subgroup. Best-first search
/// over subgroups: an impure node is extended by every admissible p-th root of
/// a witness of impurity, so every pure overgroup has an ancestor chain in the
/// search and the first pure node popped has least order.
inline SubgroupLattice minimal_summand_containing(const SubgroupLattice& start) {
    const FinitePGroup& g = start.ambient();
    if (is_pure(start)) return start;

    struct Node {
        unsigned log_order;
        std::string key;
        SubgroupLattice lattice;
        bool operator>(const Node& o) const {
            return log_order != o.log_order ? log_order > o.log_order : key > o.key;
        }
    };
    std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
    std::unordered_set<std::string> seen;
    open.push(Node{start.log_order(), start.key(), start});
    seen.insert(start.key());

    // every coordinate factor touched by the subgroup spans a pure upper bound
    std::vector<IntVector> support;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        bool touched = false;
        for (std::size_t k = 0; k < start.basis().rows() && !touched; ++k)
            touched = mod_floor(start.basis()(k, i), g.modulus(i)) != 0;
        if (touched) {
            IntVector e(g.rank());
            e[i] = 1;
            support.push_back(e);
        }
    }
    std::optional<SubgroupLattice> best = SubgroupLattice(g, support);

    const SubgroupLattice socle = SubgroupLattice::torsion(g, 1);
    std::vector<IntVector> socle_elems;  // all of G[p], enumerated once
    {
        std::vector<IntVector> basis = socle.generators();
        std::vector<IntVector> acc{IntVector(g.rank())};
        for (const auto& b : basis) {
            std::vector<IntVector> next;
            for (const auto& v : acc)
                for (std::uint64_t c = 0; c < g.p; ++c) {
                    IntVector w = v;
                    for (std::size_t j = 0; j < w.size(); ++j) w[j] += BigInt(c) * b[j];
                    next.push_back(g.reduce(w));
                }
            acc.swap(next);
        }
        socle_elems = std::move(acc);
    }

    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        if (best && node.log_order >= best->log_order()) break;
        const auto k = purity_violation(node.lattice);
        if (!k) return node.lattice;

        // witness x in H cap p^k G \ p^k H
        const SubgroupLattice cap = node.lattice.intersect(SubgroupLattice::multiples(g, *k));
        const SubgroupLattice pk = node.lattice.multiply(*k);
        IntVector x;
        for (const auto& v : cap.generators())
            if (!pk.contains(v)) {
                x = v;
                break;
            }
        if (x.empty()) throw std::logic_error("minimal_summand_containing: no impurity witness");
        // z0 with p^k z0 = x, then z = p^{k-1} z0 satisfies p z = x and z in p^{k-1} G
        IntVector z0(g.rank());
        for (std::size_t i = 0; i < g.rank(); ++i) {
            const BigInt xi = mod_floor(x[i], g.modulus(i));
            if (g.orders[i] <= *k) continue;
            z0[i] = xi / ipow(g.p, *k);
        }
        IntVector z(g.rank());
        for (std::size_t i = 0; i < g.rank(); ++i) z[i] = z0[i] * ipow(g.p, *k - 1);
        const SubgroupLattice allowed = SubgroupLattice::multiples(g, *k - 1);

        for (const auto& t : socle_elems) {
            IntVector c = z;
            for (std::size_t i = 0; i < c.size(); ++i) c[i] += t[i];
            c = g.reduce(c);
            if (!allowed.contains(c) || node.lattice.contains(c)) continue;
            SubgroupLattice child = node.lattice + SubgroupLattice(g, {c});
            std::string key = child.key();
            if (!seen.insert(key).second) continue;
            const unsigned lo = child.log_order();
            if (best && lo >= best->log_order()) continue;
            if (is_pure(child)) {
                best = child;
                continue;
            }
            open.push(Node{lo, std::move(key), std::move(child)});
        }
    }
    return *best;
}

namespace detail {

/// Mixed-radix indexing of the elements of a small group.
class ElementTable {
 public:
    explicit ElementTable(const FinitePGroup& g) : g_(g) {
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < g.rank(); ++i) {
            const std::uint64_t m = to_i64(g.modulus(i));
            moduli_.push_back(m);
            if (n > (std::uint64_t{1} << 22) / m) throw BoundExceeded("group too large to enumerate elements");
            n *= m;
        }
        size_ = n;
    }
    std::uint64_t size() const { return size_; }
    std::vector<std::uint64_t> decode(std::uint64_t idx) const {
        std::vector<std::uint64_t> c(moduli_.size());
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            c[i] = idx % moduli_[i];
            idx /= moduli_[i];
        }
        return c;
    }
    std::uint64_t encode(const std::vector<std::uint64_t>& c) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + c[i] % moduli_[i];
        return idx;
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        auto ca = decode(a), cb = decode(b);
        for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = (ca[i] + cb[i]) % moduli_[i];
        return encode(ca);
    }
    std::uint64_t scale(std::uint64_t k, std::uint64_t a) const {
        auto ca = decode(a);
        for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = (ca[i] * (k % moduli_[i])) % moduli_[i];
        return encode(ca);
    }
    IntVector vec(std::uint64_t idx) const {
        IntVector v;
        for (auto c : decode(idx)) v.emplace_back(c);
        return v;
    }

 private:
    FinitePGroup g_;
    std::vector<std::uint64_t> moduli_;
    std::uint64_t size_ = 1;
};

}  // namespace detail

/// All subgroups of G, each with its Hermite-normal generating set, ordered
/// by (order, generators). Throws BoundExceeded when |G| exceeds the bound or
/// more than `limit` subgroups exist.
inline std::vector<SubgroupGens> enumerate_subgroups(const FinitePGroup& g, std::size_t limit,
                                                     const EnumBound& bound = EnumBound::from_env()) {
    require_bound(g, bound);
    const detail::ElementTable table(g);
    const std::uint64_t n = table.size();
    using Bits = std::vector<std::uint64_t>;
    struct BitsHash {
        std::size_t operator()(const Bits& b) const {
            std::size_t h = 1469598103934665603ull;
            for (auto w : b) h = (h ^ w) * 1099511628211ull;
            return h;
        }
    };
    auto test = [](const Bits& b, std::uint64_t i) { return (b[i >> 6] >> (i & 63)) & 1u; };
    auto set = [](Bits& b, std::uint64_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); };

    struct Found {
        Bits bits;
        std::vector<std::uint64_t> elems;
        std::vector<std::uint64_t> gens;
    };
    std::unordered_set<Bits, BitsHash> seen;
    std::deque<Found> queue;
    std::vector<Found> all;

    Found zero{Bits((n + 63) / 64), {0}, {}};
    set(zero.bits, 0);
    seen.insert(zero.bits);
    queue.push_back(zero);
    while (!queue.empty()) {
        Found h = std::move(queue.front());
        queue.pop_front();
        Bits covered = h.bits;
        for (std::uint64_t gidx = 0; gidx < n; ++gidx) {
            if (test(covered, gidx)) continue;
            if (!test(h.bits, table.scale(g.p, gidx))) continue;
            Found next{Bits(h.bits.size()), {}, h.gens};
            next.gens.push_back(gidx);
            std::uint64_t shift = 0;
            for (std::uint64_t c = 0; c < g.p; ++c) {
                for (auto e : h.elems) {
                    const std::uint64_t s = table.add(e, shift);
                    set(next.bits, s);
                    next.elems.push_back(s);
                }
                shift = table.add(shift, gidx);
            }
            for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= next.bits[w];
            if (!seen.insert(next.bits).second) continue;
            if (seen.size() > limit) throw BoundExceeded("subgroup count exceeds limit " + std::to_string(limit));
            queue.push_back(std::move(next));
        }
        all.push_back(std::move(h));
    }

    std::vector<std::pair<std::pair<std::size_t, std::string>, SubgroupGens>> keyed;
    for (const auto& h : all) {
        std::vector<IntVector> gens;
        for (auto idx : h.gens) gens.push_back(table.vec(idx));
        const SubgroupLattice lat(g, gens);
        keyed.push_back({{h.elems.size(), lat.key()}, lat.to_gens()});
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<SubgroupGens> out;
    for (auto& k : keyed) out.push_back(std::move(k.second));
    return out;
}

}  // namespace mixedab
