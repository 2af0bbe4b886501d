#pragma once

#include "surfdyn/quadnumber.hpp"
#include "surfdyn/rational.hpp"

#include <set>
#include <string>
#include <vector>

namespace surfdyn {

// Normalization of the tree of infinitely near points above a point p:
//  - MaximalIdeal: root is the first exceptional divisor (ord of the blown-up
//    point); alpha(root) = 1, Farey label (1,1).
//  - Relative: root is the host divisor E through p; alpha(root) = 0, Farey
//    label (0,1).
enum class TreeMode { MaximalIdeal, Relative };

// Rooted tree of exceptional divisors above a fixed boundary point, carrying
// generic multiplicity b, skewness alpha, and Farey labels, together with the
// current adjacency (which divisors intersect in the current completion).
class BlowupTree {
  public:
    enum class Kind { Root, Free, Satellite };

    struct Node {
        std::string name;
        Kind kind;
        int host1 = -1, host2 = -1;  // creation hosts (host2 for satellite)
        BigInt b;
        Rational alpha;
        BigInt far_a, far_b;  // Farey label (a, b)
        int pred = -1;        // immediate predecessor in tree order
        int depth = 0;        // length of the pred chain
    };

    // A point of the tree: either a node, or a monomial point strictly inside
    // the segment between two adjacent nodes e < f, located by its skewness.
    struct Point {
        bool is_node = true;
        int node = -1;
        int e = -1, f = -1;
        Rational alpha;

        bool operator==(const Point& o) const {
            if (is_node != o.is_node) return false;
            if (is_node) return node == o.node;
            return e == o.e && f == o.f && alpha == o.alpha;
        }
    };

    explicit BlowupTree(TreeMode mode, std::string root_name = "E0");

    TreeMode mode() const { return mode_; }
    int root() const { return 0; }
    int size() const { return int(nodes_.size()); }
    const Node& node(int i) const { return nodes_.at(i); }
    int find(const std::string& name) const;

    bool adjacent(int i, int j) const;
    const std::set<int>& neighbors(int i) const { return adj_.at(i); }

    // Blow up a free point of the divisor `host`.
    int blow_up_free(int host, std::string name = "");
    // Blow up the satellite point where two currently adjacent divisors meet.
    int blow_up_satellite(int e, int f, std::string name = "");

    // Tree order: true iff v_i <= v_j.
    bool leq(int i, int j) const;
    // Infimum of two nodes for the tree order (deepest common ancestor).
    int wedge(int v1, int v2) const;

    static Point node_point(int i) { return Point{true, i, -1, -1, Rational(0)}; }
    // Monomial point on the segment between adjacent e, f with normalized
    // weights s b(E) + t b(F) = 1 (s weight on the smaller end).
    Point monomial_point(int e, int f, const Rational& s, const Rational& t) const;
    Point wedge_point(const Point& p1, const Point& p2) const;
    Rational alpha_of(const Point& p) const;

    // Skewness of the normalized monomial valuation v_{s,t} at the satellite
    // point between adjacent e < f: alpha(v_E) + t / b(E).
    Rational monomial_skewness(int e, int f, const Rational& s,
                               const Rational& t) const;

    // Affine relation between a relative tree growing at a free point of
    // node eq and this ambient tree:
    //   alpha_ambient(pi . v) = offset + scale * alpha_relative(v)
    //   b_ambient(pi . v)     = bscale * b_relative(v)
    struct RootRelation {
        Rational offset;
        Rational scale;
        BigInt bscale;
    };
    RootRelation change_root_relation(int eq) const;

    std::string dot() const;

  private:
    int add_node(Node n, std::string name);
    void orient(int& lo, int& hi) const;

    TreeMode mode_;
    std::vector<Node> nodes_;
    std::vector<std::set<int>> adj_;
};

}  // namespace surfdyn
