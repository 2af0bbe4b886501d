#include "surfdyn/zigzag.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace surfdyn {

namespace {

std::vector<std::string> default_names(size_t n) {
    std::vector<std::string> names;
    for (size_t i = 0; i < n; ++i) names.push_back("B" + std::to_string(i + 1));
    return names;
}

std::string fresh_name(const Zigzag& z) {
    std::set<std::string> used(z.names.begin(), z.names.end());
    for (int k = 1;; ++k) {
        std::string cand = "Ex" + std::to_string(k);
        if (!used.count(cand)) return cand;
    }
}

void check_index(const Zigzag& z, int i) {
    if (i < 0 || i >= z.size())
        throw Error("Zigzag: component index out of range");
}

}  // namespace

Zigzag Zigzag::chain(std::vector<long long> self) {
    if (self.empty()) throw Error("Zigzag: empty chain");
    Zigzag z;
    z.names = default_names(self.size());
    z.self = std::move(self);
    return z;
}

Zigzag Zigzag::cycle(std::vector<long long> self) {
    if (self.size() < 3) throw Error("Zigzag: a cycle needs >= 3 components");
    Zigzag z;
    z.names = default_names(self.size());
    z.self = std::move(self);
    z.cyclic = true;
    return z;
}

std::string Zigzag::str() const {
    std::ostringstream out;
    if (cyclic) out << "cycle:";
    for (int i = 0; i < size(); ++i) {
        if (i) out << ",";
        out << self[i];
    }
    return out.str();
}

Completion Zigzag::completion() const {
    Completion x;
    for (int i = 0; i < size(); ++i) x.add_divisor(names[i], BigInt(self[i]));
    for (int i = 0; i + 1 < size(); ++i) x.add_crossing(names[i], names[i + 1]);
    if (cyclic) x.add_crossing(names.back(), names.front());
    return x;
}

Zigzag parse_zigzag(const std::string& literal) {
    std::string body = literal;
    bool cyclic = false;
    if (body.rfind("cycle:", 0) == 0) {
        cyclic = true;
        body = body.substr(6);
    }
    std::vector<long long> self;
    std::istringstream in(body);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        size_t pos = 0;
        long long v;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw Error("Zigzag: bad literal component '" + tok + "'");
        }
        if (pos != tok.size())
            throw Error("Zigzag: bad literal component '" + tok + "'");
        self.push_back(v);
    }
    if (self.empty()) throw Error("Zigzag: empty literal");
    return cyclic ? Zigzag::cycle(std::move(self))
                  : Zigzag::chain(std::move(self));
}

bool is_standard(const Zigzag& z) {
    if (z.cyclic) return false;
    if (z.self[0] != 0) return false;
    if (z.size() >= 2 && z.self[1] > -1) return false;
    for (int i = 2; i < z.size(); ++i)
        if (z.self[i] > -2) return false;
    return true;
}

bool is_almost_standard(const Zigzag& z) {
    if (z.cyclic) return false;
    int k = -1, minus_one = -1;
    for (int i = 0; i < z.size(); ++i) {
        if (z.self[i] >= 0) {
            if (k >= 0) return false;  // nonnegative component not unique
            k = i;
        }
        if (z.self[i] == -1) {
            if (minus_one >= 0) return false;  // more than one (-1)
            minus_one = i;
        }
    }
    if (k < 0) return false;
    if (minus_one >= 0 && minus_one != k - 1 && minus_one != k + 1)
        return false;
    return true;
}

std::string to_string(const Move& m) {
    switch (m.kind) {
        case Move::Kind::FreeFront: return "blow-up-free-front";
        case Move::Kind::FreeBack: return "blow-up-free-back";
        case Move::Kind::Satellite:
            return "blow-up-satellite(" + std::to_string(m.index) + "," +
                   std::to_string(m.index + 1) + ")";
        case Move::Kind::Contract:
            return "contract(" + std::to_string(m.index) + ")";
        case Move::Kind::Reverse: return "reverse";
    }
    throw Error("Move: unreachable");
}

BlowupResult blow_up_free(const Zigzag& z, int i) {
    check_index(z, i);
    BlowupResult r;
    std::string name = fresh_name(z);
    if (!z.cyclic && (i == 0 || i == z.size() - 1)) {
        r.z = z;
        r.z.self[i] -= 1;
        if (i == 0) {
            r.z.self.insert(r.z.self.begin(), -1);
            r.z.names.insert(r.z.names.begin(), name);
        } else {
            r.z.self.push_back(-1);
            r.z.names.push_back(name);
        }
        return r;
    }
    // Interior free point: the exceptional (-1) hangs off the chain/cycle.
    r.forked = true;
    r.base = z;
    r.base.self[i] -= 1;
    r.fork_at = i;
    r.leaf_name = name;
    return r;
}

Zigzag blow_up_satellite(const Zigzag& z, int i) {
    check_index(z, i);
    int j = i + 1;
    if (z.cyclic) j %= z.size();
    if (!z.cyclic && j >= z.size())
        throw Error("Zigzag: no satellite point after the last component");
    Zigzag r = z;
    r.self[i] -= 1;
    r.self[j] -= 1;
    std::string name = fresh_name(z);
    if (z.cyclic && j == 0) {
        r.self.push_back(-1);
        r.names.push_back(name);
    } else {
        r.self.insert(r.self.begin() + j, -1);
        r.names.insert(r.names.begin() + j, name);
    }
    return r;
}

Zigzag contract(const Zigzag& z, int i) {
    check_index(z, i);
    if (z.self[i] != -1)
        throw Error("Zigzag: can only contract a (-1)-component");
    if (z.size() == 1)
        throw Error("Zigzag: cannot contract the last component");
    if (z.cyclic && z.size() <= 3)
        throw Error("Zigzag: contracting would break the cycle");
    Zigzag r = z;
    if (z.cyclic) {
        int n = z.size();
        r.self[(i + n - 1) % n] += 1;
        r.self[(i + 1) % n] += 1;
    } else {
        if (i > 0) r.self[i - 1] += 1;
        if (i + 1 < z.size()) r.self[i + 1] += 1;
    }
    r.self.erase(r.self.begin() + i);
    r.names.erase(r.names.begin() + i);
    return r;
}

Zigzag apply_move(const Zigzag& z, const Move& m) {
    switch (m.kind) {
        case Move::Kind::FreeFront:
        case Move::Kind::FreeBack: {
            if (z.cyclic) throw Error("Zigzag: free end moves need a chain");
            Zigzag r = z;
            std::string name = fresh_name(z);
            if (m.kind == Move::Kind::FreeFront) {
                r.self[0] -= 1;
                r.self.insert(r.self.begin(), -1);
                r.names.insert(r.names.begin(), name);
            } else {
                r.self.back() -= 1;
                r.self.push_back(-1);
                r.names.push_back(name);
            }
            return r;
        }
        case Move::Kind::Satellite:
            return blow_up_satellite(z, m.index);
        case Move::Kind::Contract:
            return contract(z, m.index);
        case Move::Kind::Reverse: {
            if (z.cyclic) throw Error("Zigzag: reverse needs a chain");
            Zigzag r = z;
            std::reverse(r.self.begin(), r.self.end());
            std::reverse(r.names.begin(), r.names.end());
            return r;
        }
    }
    throw Error("Zigzag: unreachable move kind");
}

Zigzag replay(Zigzag z, const std::vector<Move>& log) {
    for (const Move& m : log) z = apply_move(z, m);
    return z;
}

Inertia zigzag_inertia(const Zigzag& z) {
    int n = z.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = Rational(z.self[i]);
    for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = Rational(1);
    if (z.cyclic) {
        m[0][n - 1] = m[0][n - 1] + 1;
        m[n - 1][0] = m[n - 1][0] + 1;
    }

    // Symmetric congruence diagonalization over Q.
    Inertia out;
    for (int k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            int j = -1;
            for (int c = k + 1; c < n; ++c)
                if (m[k][c] != 0) {
                    j = c;
                    break;
                }
            if (j < 0) {
                out.zero += 1;
                continue;
            }
            if (m[j][j] != 0) {
                std::swap(m[k], m[j]);
                for (int r = 0; r < n; ++r) std::swap(m[r][k], m[r][j]);
            } else {
                // Hyperbolic pair: fold row/col j into k, making the pivot
                // 2 m[k][j] != 0.
                for (int c = 0; c < n; ++c) m[k][c] = m[k][c] + m[j][c];
                for (int r = 0; r < n; ++r) m[r][k] = m[r][k] + m[r][j];
            }
        }
        Rational pivot = m[k][k];
        for (int r = k + 1; r < n; ++r) {
            if (m[r][k] == 0) continue;
            Rational factor = m[r][k] / pivot;
            for (int c = 0; c < n; ++c) m[r][c] = m[r][c] - factor * m[k][c];
            for (int c = 0; c < n; ++c) m[c][r] = m[c][r] - factor * m[c][k];
        }
        if (pivot > 0)
            out.pos += 1;
        else
            out.neg += 1;
    }
    return out;
}

namespace {

int violations(const std::vector<long long>& v) {
    int count = v[0] != 0 ? 1 : 0;
    if (v.size() >= 2 && v[1] > -1) ++count;
    for (size_t i = 2; i < v.size(); ++i)
        if (v[i] > -2) ++count;
    return count;
}

int heuristic(const std::vector<long long>& v) {
    std::vector<long long> rev(v.rbegin(), v.rend());
    return 3 * std::min(violations(v), violations(rev));
}

bool vec_standard(const std::vector<long long>& v) {
    if (v[0] != 0) return false;
    if (v.size() >= 2 && v[1] > -1) return false;
    for (size_t i = 2; i < v.size(); ++i)
        if (v[i] > -2) return false;
    return true;
}

// Applies primitive moves while recording a replayable log.
struct MoveLogger {
    Zigzag z;
    std::vector<Move> log;

    explicit MoveLogger(Zigzag in) : z(std::move(in)) {}

    int n() const { return z.size(); }
    long long at(int i) const { return z.self[size_t(i)]; }

    void mv(Move::Kind k, int i = 0) {
        z = apply_move(z, Move{k, i});
        log.push_back(Move{k, i});
        if (z.size() > 400 || log.size() > 20000)
            throw Error("shuttle standardization exceeded safety caps");
    }
};

// Constructive standardization by a zero-curve shuttle.  A 0-component at
// position s supports two-move macros built from one satellite blow-up and
// one contraction:
//   transfer right:  v[s-1] -= 1, v[s+1] += 1   (interior shuttle)
//   transfer left:   v[s-1] += 1, v[s+1] -= 1   (interior shuttle)
//   front pump / drain:  v[1] += 1 / v[1] -= 1  (shuttle at the front)
//   back pump / drain:   v[n-2] += 1 / -= 1     (shuttle at the back)
// Every macro except the end pumps/drains conserves the total weight; units
// are minted or destroyed only next to an end.  The shuttle is created on
// the leftmost nonnegative component and then makes round trips: a rightward
// transit raises each next component to 0 (deepening the trail behind the
// shuttle) and cascades positive excess into fresh (-1)-chains, the back end
// is drained, a leftward transit mirrors this, and the front end is drained.
// Shallow trail residues ((0)- or (-1)-components away from the shuttle)
// migrate toward the ends with each round trip and are destroyed there; the
// loop stops as soon as the chain (or its reversal) is standard.  Returns
// nullopt when the chain has no nonnegative component after greedy
// contraction (negative definite) or when the round trips stall.
std::optional<std::pair<Zigzag, std::vector<Move>>> shuttle_standardize(
    const Zigzag& input) {
    try {
        MoveLogger m(input);

        auto finished = [&] {  // standard as-is or after one reversal
            if (vec_standard(m.z.self)) return true;
            std::vector<long long> r(m.z.self.rbegin(), m.z.self.rend());
            if (vec_standard(r)) {
                m.mv(Move::Kind::Reverse);
                return true;
            }
            return false;
        };

        int s = 0;  // shuttle position; v[s] == 0 while transiting

        auto xfer_right = [&] {  // v[s-1] -= 1, v[s+1] += 1
            m.mv(Move::Kind::Satellite, s - 1);
            m.mv(Move::Kind::Contract, s + 1);
        };
        auto xfer_left = [&] {  // v[s-1] += 1, v[s+1] -= 1
            m.mv(Move::Kind::Satellite, s);
            m.mv(Move::Kind::Contract, s);
        };
        auto pump_front = [&] {  // s == 0: v[1] += 1
            m.mv(Move::Kind::FreeFront);
            m.mv(Move::Kind::Contract, 1);
            s = 0;
        };
        auto drain_front = [&] {  // s == 0: v[1] -= 1
            m.mv(Move::Kind::Satellite, 0);
            m.mv(Move::Kind::Contract, 0);
            s = 0;
        };
        auto pump_back = [&] {  // s == n-1: v[n-2] += 1
            int last = m.n() - 1;
            m.mv(Move::Kind::FreeBack);
            m.mv(Move::Kind::Contract, last);
            s = m.n() - 1;
        };
        auto drain_back = [&] {  // s == n-1: v[n-2] -= 1
            m.mv(Move::Kind::Satellite, m.n() - 2);
            m.mv(Move::Kind::Contract, m.n() - 1);
            s = m.n() - 1;
        };

        bool reversed_retry = false;
        std::set<std::vector<long long>> visited;
        for (int pass = 0; pass < 200; ++pass) {
            if (!visited.insert(m.z.self).second) {
                // Cycling; retry once in the mirror orientation, where the
                // excess may sit next to the destroying end.
                if (reversed_retry) return std::nullopt;
                reversed_retry = true;
                visited.clear();
                m.mv(Move::Kind::Reverse);
            }

            // Greedy Castelnuovo contractions; each shortens the chain.
            for (;;) {
                if (finished()) return std::pair{m.z, m.log};
                int idx = -1;
                for (int i = 0; i < m.n() && idx < 0; ++i)
                    if (m.at(i) == -1 && m.n() >= 2) idx = i;
                if (idx < 0) break;
                m.mv(Move::Kind::Contract, idx);
            }
            if (finished()) return std::pair{m.z, m.log};

            // (Re)create the shuttle: prefer an existing 0-component, else
            // lower the leftmost positive one by satellite cascading.
            s = -1;
            for (int i = 0; i < m.n() && s < 0; ++i)
                if (m.at(i) == 0) s = i;
            if (s < 0)
                for (int i = 0; i < m.n() && s < 0; ++i)
                    if (m.at(i) > 0) s = i;
            if (s < 0) return std::nullopt;  // negative definite
            if (m.n() == 1 && m.at(0) > 0) m.mv(Move::Kind::FreeBack);
            while (m.at(s) > 0) {
                if (s == m.n() - 1)
                    m.mv(Move::Kind::FreeBack);
                else
                    m.mv(Move::Kind::Satellite, s);
            }

            // Destroy excess sitting next to an end before it smears inward.
            if (s == 0) {
                while (m.n() >= 2 && m.at(1) > -1) drain_front();
            } else if (s == m.n() - 1) {
                while (m.n() >= 2 && m.at(m.n() - 2) > -1) drain_back();
            }
            if (finished()) return std::pair{m.z, m.log};

            // Rightward transit: raise the next component to 0 (minting at
            // the front, otherwise deepening the trail), cascade positive
            // excess into (-1)-chains, advance.
            while (s < m.n() - 1) {
                while (m.at(s + 1) < 0) s == 0 ? pump_front() : xfer_right();
                while (m.at(s + 1) > 0) {
                    if (s + 1 == m.n() - 1)
                        m.mv(Move::Kind::FreeBack);
                    else
                        m.mv(Move::Kind::Satellite, s + 1);
                }
                ++s;
            }
            while (m.n() >= 2 && m.at(m.n() - 2) > -2) drain_back();
            if (finished()) return std::pair{m.z, m.log};

            // Leftward transit (mirror image).
            while (s > 0) {
                while (m.at(s - 1) < 0)
                    s == m.n() - 1 ? pump_back() : xfer_left();
                while (m.at(s - 1) > 0) {  // cascade excess toward the front
                    if (s - 1 == 0)
                        m.mv(Move::Kind::FreeFront);
                    else
                        m.mv(Move::Kind::Satellite, s - 2);
                    ++s;
                }
                --s;
            }
            while (m.n() >= 2 && m.at(1) > -1) drain_front();
            if (finished()) return std::pair{m.z, m.log};
        }
        return std::nullopt;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

StandardizeResult standardize(const Zigzag& z) {
    if (z.cyclic) throw Error("standardize: input must be a chain, not a cycle");

    StandardizeResult res;
    res.inertia = zigzag_inertia(z);
    bool admissible = (res.inertia.pos == 1 && res.inertia.zero == 0) ||
                      (res.inertia.pos == 0 && res.inertia.zero == 1);
    if (!admissible) {
        res.obstruction =
            "non-standardizable: blow-ups and contractions preserve the "
            "(n+, n0) inertia of the intersection matrix, every standard "
            "zigzag has (n+, n0) = (1, 0) or (0, 1), but this chain has "
            "(n+, n0) = (" +
            std::to_string(res.inertia.pos) + ", " +
            std::to_string(res.inertia.zero) + ")";
        return res;
    }

    // Constructive shuttle sweep first; it handles arbitrary admissible
    // chains in a number of moves linear in the total weight.
    if (auto built = shuttle_standardize(z)) {
        res.success = true;
        res.log = std::move(built->second);
        res.standard = replay(z, res.log);
        return res;
    }

    // A* fallback over self-intersection sequences; deterministic branch order:
    // reverse, free-front, free-back, satellites left to right, contractions
    // left to right.
    const size_t max_len = std::max<size_t>(z.self.size(), 4) + 6;
    const long long min_self =
        *std::min_element(z.self.begin(), z.self.end()) - 8;
    struct NodeRef {
        int parent;
        Move move;
    };
    std::map<std::vector<long long>, int> seen;  // state -> node id
    std::vector<NodeRef> nodes;
    using Entry = std::tuple<int, int, int>;  // f, g, node id
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::vector<std::vector<long long>> states;

    auto push = [&](const std::vector<long long>& v, int parent, Move m,
                    int g) {
        if (v.size() > max_len) return;
        for (long long c : v)
            if (c < min_self || c > 2) return;
        auto [it, fresh] = seen.emplace(v, int(nodes.size()));
        if (!fresh) return;
        nodes.push_back({parent, m});
        states.push_back(v);
        open.emplace(g + heuristic(v), g, it->second);
    };

    push(z.self, -1, Move{}, 0);
    int goal = -1;
    const int expansion_cap = 400000;
    for (int expanded = 0; !open.empty() && expanded < expansion_cap;
         ++expanded) {
        auto [f, g, id] = open.top();
        open.pop();
        std::vector<long long> v = states[id];
        if (vec_standard(v)) {
            goal = id;
            break;
        }
        int n = int(v.size());
        {  // reverse
            std::vector<long long> w(v.rbegin(), v.rend());
            push(w, id, Move{Move::Kind::Reverse, 0}, g + 1);
        }
        {  // free front
            std::vector<long long> w = v;
            w[0] -= 1;
            w.insert(w.begin(), -1);
            push(w, id, Move{Move::Kind::FreeFront, 0}, g + 1);
        }
        {  // free back
            std::vector<long long> w = v;
            w[n - 1] -= 1;
            w.push_back(-1);
            push(w, id, Move{Move::Kind::FreeBack, 0}, g + 1);
        }
        for (int i = 0; i + 1 < n; ++i) {  // satellites
            std::vector<long long> w = v;
            w[i] -= 1;
            w[i + 1] -= 1;
            w.insert(w.begin() + i + 1, -1);
            push(w, id, Move{Move::Kind::Satellite, i}, g + 1);
        }
        if (n >= 2)
            for (int i = 0; i < n; ++i) {  // contractions
                if (v[i] != -1) continue;
                std::vector<long long> w = v;
                if (i > 0) w[i - 1] += 1;
                if (i + 1 < n) w[i + 1] += 1;
                w.erase(w.begin() + i);
                push(w, id, Move{Move::Kind::Contract, i}, g + 1);
            }
    }
    if (goal < 0)
        throw Error("standardize: search exhausted without reaching a "
                    "standard form (caps: length " +
                    std::to_string(max_len) + ", " +
                    std::to_string(expansion_cap) + " expansions)");

    std::vector<Move> log;
    for (int id = goal; nodes[id].parent >= 0; id = nodes[id].parent)
        log.push_back(nodes[id].move);
    std::reverse(log.begin(), log.end());
    res.success = true;
    res.log = std::move(log);
    res.standard = replay(z, res.log);
    return res;
}

std::string to_string(BoundaryShape s) {
    switch (s) {
        case BoundaryShape::Zigzag: return "zigzag";
        case BoundaryShape::Cycle: return "cycle";
        case BoundaryShape::Other: return "other";
    }
    throw Error("BoundaryShape: unreachable");
}

BoundaryClass classify_boundary(const Completion& x) {
    if (!x.connected())
        throw Error("classify_boundary: boundary dual graph must be connected");
    BoundaryClass out;
    std::vector<std::string> names = x.names();
    bool rational = true;
    for (const auto& n : names)
        if (x.divisor(n).genus != 0) rational = false;
    int edges = 0, max_deg = 0, deg2 = 0;
    for (const auto& n : names) {
        int deg = int(x.neighbors(n).size());
        edges += deg;
        max_deg = std::max(max_deg, deg);
        if (deg == 2) ++deg2;
    }
    edges /= 2;
    int n = x.count();
    if (rational && max_deg <= 2 && edges == n - 1) {
        out.shape = BoundaryShape::Zigzag;
        out.lambda1_tag =
            "loxodromic automorphisms have integer lambda1; eigenvaluations "
            "infinitely singular";
    } else if (rational && deg2 == n && edges == n) {
        out.shape = BoundaryShape::Cycle;
        out.lambda1_tag =
            "loxodromic automorphisms have quadratic irrational lambda1; "
            "eigenvaluations irrational";
    } else {
        out.shape = BoundaryShape::Other;
        out.lambda1_tag = "no loxodromic automorphism";
    }
    return out;
}

bool indeterminacy_excluded(const Zigzag& z, const ZPoint& p) {
    if (p.i < 0 || p.i >= z.size() || (p.satellite && !z.cyclic &&
                                       p.i + 1 >= z.size()))
        throw Error("indeterminacy_excluded: point out of range");
    if (z.cyclic) return false;

    // Type (-m_1..-m_k, -1, -1, -m_..): the satellite point between the two
    // (-1)-curves is excluded.
    for (int i = 0; i + 1 < z.size(); ++i) {
        if (z.self[i] != -1 || z.self[i + 1] != -1) continue;
        bool rest_ok = true;
        for (int j = 0; j < z.size(); ++j)
            if (j != i && j != i + 1 && z.self[j] > -2) rest_ok = false;
        if (rest_ok && p.satellite && p.i == i) return true;
    }

    // Type (-1, -2..-2 (F), -1 (E), -m_..): F ^ E is excluded.
    if (z.self[0] == -1) {
        int k = 1;
        while (k < z.size() && z.self[k] == -2) ++k;
        if (k > 1 && k < z.size() && z.self[k] == -1) {
            bool rest_ok = true;
            for (int j = k + 1; j < z.size(); ++j)
                if (z.self[j] > -2) rest_ok = false;
            if (rest_ok && p.satellite && p.i == k - 1) return true;
        }
    }

    // Almost standard with no (-1)-component: indeterminacy points must lie
    // on B_k, and only at its satellite points when B_k is interior.
    bool has_minus_one = false;
    for (long long c : z.self) has_minus_one |= c == -1;
    if (is_almost_standard(z) && !has_minus_one) {
        int k = 0;
        while (z.self[k] < 0) ++k;
        if (p.satellite) {
            if (p.i != k - 1 && p.i != k) return true;
        } else {
            if (p.i != k) return true;
            if (k != 0 && k != z.size() - 1) return true;  // interior free
        }
    }
    return false;
}

}  // namespace surfdyn
