#pragma once

#include "surfdyn/boundary.hpp"
#include "surfdyn/rational.hpp"

#include <string>
#include <vector>

namespace surfdyn {

// Chain (or cyclic chain) of rational curves: consecutive components cross
// once, non-consecutive components are disjoint.
struct Zigzag {
    std::vector<long long> self;     // self-intersections in chain order
    std::vector<std::string> names;  // parallel to self
    bool cyclic = false;

    static Zigzag chain(std::vector<long long> self);
    static Zigzag cycle(std::vector<long long> self);

    int size() const { return int(self.size()); }
    // Literal form: "0,-1,-2" or "cycle:-1,-1,-1".
    std::string str() const;
    Completion completion() const;
};

// Parses the CLI literal syntax.
Zigzag parse_zigzag(const std::string& literal);

bool is_standard(const Zigzag& z);
bool is_almost_standard(const Zigzag& z);

// A boundary point of the zigzag: free on component i, or the satellite
// point between components i and i+1 (mod size for cycles).
struct ZPoint {
    bool satellite = false;
    int i = 0;
};

// An elementary move on a zigzag.
struct Move {
    enum class Kind { FreeFront, FreeBack, Satellite, Contract, Reverse };
    Kind kind = Kind::Reverse;
    int index = 0;  // Satellite: between index, index+1; Contract: index

    bool operator==(const Move& o) const {
        return kind == o.kind && index == o.index;
    }
};

std::string to_string(const Move& m);

// Free blow-up on component i.  At a chain end this extends the chain; at an
// interior component (or on a cycle) it breaks chain-ness and is reported as
// a fork instead of an error.
struct BlowupResult {
    bool forked = false;
    Zigzag z;          // valid when !forked: the extended chain
    Zigzag base;       // when forked: the original zigzag with host decremented
    int fork_at = -1;  // when forked: index the (-1) leaf hangs off
    std::string leaf_name;
};

BlowupResult blow_up_free(const Zigzag& z, int i);
// Satellite blow-up between components i and i+1: insert a fresh (-1),
// decrement both hosts.
Zigzag blow_up_satellite(const Zigzag& z, int i);
// Castelnuovo contraction of component i (self-intersection -1): remove it
// and increment its neighbors.
Zigzag contract(const Zigzag& z, int i);

Zigzag apply_move(const Zigzag& z, const Move& m);
Zigzag replay(Zigzag z, const std::vector<Move>& log);

// Signature (n+, n0, n-) of the chain intersection matrix, exact.
struct Inertia {
    int pos = 0, zero = 0, neg = 0;
    bool operator==(const Inertia& o) const {
        return pos == o.pos && zero == o.zero && neg == o.neg;
    }
};

Inertia zigzag_inertia(const Zigzag& z);

// Standardization outcome.  Blow-ups and contractions preserve the (n+, n0)
// part of the inertia, and every standard zigzag has (n+, n0) = (1, 0)
// (or (0, 1) for the single-component standard (0)); a chain with any other
// inertia is provably non-standardizable and gets an obstruction certificate
// instead of a move log.
struct StandardizeResult {
    bool success = false;
    Zigzag standard;        // when success
    std::vector<Move> log;  // replayable from the input
    Inertia inertia;
    std::string obstruction;  // when !success
};

StandardizeResult standardize(const Zigzag& z);

enum class BoundaryShape { Zigzag, Cycle, Other };

std::string to_string(BoundaryShape s);

struct BoundaryClass {
    BoundaryShape shape = BoundaryShape::Other;
    std::string lambda1_tag;  // the dichotomy for loxodromic automorphisms
};

// Path of rational curves -> zigzag; cycle of rational curves -> cycle;
// anything else (forks, non-rational components) -> other.
BoundaryClass classify_boundary(const Completion& x);

// Pruning predicates from the indeterminacy-point lemmas: true iff the point
// is excluded as an indeterminacy point of any automorphism.
bool indeterminacy_excluded(const Zigzag& z, const ZPoint& p);

}  // namespace surfdyn
