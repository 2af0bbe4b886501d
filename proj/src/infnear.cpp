#include "surfdyn/infnear.hpp"

#include <sstream>

namespace surfdyn {

BlowupTree::BlowupTree(TreeMode mode, std::string root_name) : mode_(mode) {
    Node root;
    root.kind = Kind::Root;
    root.b = 1;
    if (mode == TreeMode::MaximalIdeal) {
        root.alpha = Rational(1);
        root.far_a = 1;
        root.far_b = 1;
    } else {
        root.alpha = Rational(0);
        root.far_a = 0;
        root.far_b = 1;
    }
    add_node(std::move(root), std::move(root_name));
}

int BlowupTree::add_node(Node n, std::string name) {
    int id = int(nodes_.size());
    n.name = name.empty() ? "E" + std::to_string(id) : std::move(name);
    for (const auto& existing : nodes_)
        if (existing.name == n.name)
            throw Error("BlowupTree: duplicate node name " + n.name);
    nodes_.push_back(std::move(n));
    adj_.emplace_back();
    return id;
}

int BlowupTree::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (nodes_[i].name == name) return i;
    throw Error("BlowupTree: unknown node " + name);
}

bool BlowupTree::adjacent(int i, int j) const {
    return adj_.at(i).count(j) > 0;
}

int BlowupTree::blow_up_free(int host, std::string name) {
    const Node& h = nodes_.at(host);
    Node n;
    n.kind = Kind::Free;
    n.host1 = host;
    n.b = h.b;
    n.alpha = h.alpha + make_rational(1, h.b * h.b);
    n.far_a = h.far_a + 1;
    n.far_b = h.far_b;
    n.pred = host;
    n.depth = h.depth + 1;
    int id = add_node(std::move(n), std::move(name));
    adj_[host].insert(id);
    adj_[id].insert(host);
    return id;
}

void BlowupTree::orient(int& lo, int& hi) const {
    if (leq(lo, hi)) return;
    if (leq(hi, lo)) {
        std::swap(lo, hi);
        return;
    }
    throw Error("BlowupTree: adjacent pair " + nodes_.at(lo).name + "," +
                nodes_.at(hi).name + " is not comparable");
}

int BlowupTree::blow_up_satellite(int e, int f, std::string name) {
    if (!adjacent(e, f))
        throw Error("BlowupTree: satellite center requires adjacent divisors " +
                    nodes_.at(e).name + "," + nodes_.at(f).name);
    int lo = e, hi = f;
    orient(lo, hi);
    const Node& nlo = nodes_.at(lo);
    const Node& nhi = nodes_.at(hi);
    Node n;
    n.kind = Kind::Satellite;
    n.host1 = lo;
    n.host2 = hi;
    n.b = nlo.b + nhi.b;
    n.alpha = nlo.alpha + make_rational(1, nlo.b * n.b);
    n.far_a = nlo.far_a + nhi.far_a;
    n.far_b = nlo.far_b + nhi.far_b;
    n.pred = lo;
    n.depth = nlo.depth + 1;
    int id = add_node(std::move(n), std::move(name));
    // The new divisor separates the two hosts.
    adj_[lo].erase(hi);
    adj_[hi].erase(lo);
    adj_[lo].insert(id);
    adj_[hi].insert(id);
    adj_[id].insert(lo);
    adj_[id].insert(hi);
    // Maintain the order structure: the new node slots between lo and hi.
    nodes_[hi].pred = id;
    nodes_[hi].depth = nodes_[id].depth + 1;
    // Depths further below hi are only used relative to pred chains, so they
    // must be refreshed: every node whose pred chain passes through hi.
    for (int i = 0; i < size(); ++i) {
        if (i == id) continue;
        int walk = i, d = 0;
        while (walk != -1 && walk != hi) {
            walk = nodes_[walk].pred;
            ++d;
        }
        if (walk == hi) nodes_[i].depth = nodes_[hi].depth + d;
    }
    return id;
}

bool BlowupTree::leq(int i, int j) const {
    int walk = j;
    while (walk != -1) {
        if (walk == i) return true;
        walk = nodes_.at(walk).pred;
    }
    return false;
}

int BlowupTree::wedge(int v1, int v2) const {
    int a = v1, b = v2;
    while (nodes_.at(a).depth > nodes_.at(b).depth) a = nodes_.at(a).pred;
    while (nodes_.at(b).depth > nodes_.at(a).depth) b = nodes_.at(b).pred;
    while (a != b) {
        a = nodes_.at(a).pred;
        b = nodes_.at(b).pred;
    }
    return a;
}

Rational BlowupTree::monomial_skewness(int e, int f, const Rational& s,
                                       const Rational& t) const {
    if (!adjacent(e, f))
        throw Error("BlowupTree: monomial point requires adjacent divisors");
    int lo = e, hi = f;
    orient(lo, hi);
    Rational slo = s, thi = t;
    if (lo != e) std::swap(slo, thi);
    const Node& nlo = nodes_.at(lo);
    const Node& nhi = nodes_.at(hi);
    if (slo * Rational(nlo.b) + thi * Rational(nhi.b) != 1)
        throw Error("BlowupTree: monomial weights are not normalized: s b(E) + "
                    "t b(F) != 1");
    if (slo < 0 || thi < 0)
        throw Error("BlowupTree: monomial weights must be nonnegative");
    return nlo.alpha + thi / Rational(nlo.b);
}

BlowupTree::Point BlowupTree::monomial_point(int e, int f, const Rational& s,
                                             const Rational& t) const {
    int lo = e, hi = f;
    orient(lo, hi);
    Rational slo = s, thi = t;
    if (lo != e) std::swap(slo, thi);
    if (thi == 0) return node_point(lo);
    if (slo == 0) return node_point(hi);
    Point p;
    p.is_node = false;
    p.e = lo;
    p.f = hi;
    p.alpha = monomial_skewness(lo, hi, slo, thi);
    return p;
}

Rational BlowupTree::alpha_of(const Point& p) const {
    return p.is_node ? nodes_.at(p.node).alpha : p.alpha;
}

BlowupTree::Point BlowupTree::wedge_point(const Point& p1, const Point& p2) const {
    if (p1.is_node && p2.is_node) return node_point(wedge(p1.node, p2.node));
    if (p1.is_node) return wedge_point(p2, p1);
    // p1 is a monomial point on segment (e1, f1).
    if (p2.is_node) {
        // p1 <= p2 iff the chain to p2 passes beyond f1.
        if (leq(p1.f, p2.node)) return p1;
        return node_point(wedge(p1.e, p2.node));
    }
    if (p1.e == p2.e && p1.f == p2.f)
        return p1.alpha <= p2.alpha ? p1 : p2;
    if (leq(p1.f, p2.e)) return p1;
    if (leq(p2.f, p1.e)) return p2;
    return node_point(wedge(p1.e, p2.e));
}

BlowupTree::RootRelation BlowupTree::change_root_relation(int eq) const {
    // The relation holds for a relative tree growing at a *free* point q of
    // eq; gluing data at satellite points is not expressible here, so the
    // only precondition is that eq exists.
    const Node& n = nodes_.at(eq);
    RootRelation r;
    r.offset = n.alpha;
    r.scale = make_rational(1, n.b * n.b);
    r.bscale = n.b;
    return r;
}

std::string BlowupTree::dot() const {
    std::ostringstream out;
    out << "graph blowup_tree {\n";
    for (int i = 0; i < size(); ++i) {
        const Node& n = nodes_[i];
        out << "  n" << i << " [label=\"" << n.name << "\\nb=" << n.b.str()
            << " alpha=" << to_string(n.alpha) << "\\nFar=(" << n.far_a.str()
            << "," << n.far_b.str() << ")\"];\n";
    }
    for (int i = 0; i < size(); ++i)
        for (int j : adj_[i])
            if (i < j) out << "  n" << i << " -- n" << j << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace surfdyn
