#include "surfdyn/boundary.hpp"

#include <json.hpp>

#include <algorithm>
#include <queue>
#include <sstream>

namespace surfdyn {

namespace {

std::pair<std::string, std::string> norm_pair(const std::string& a,
                                              const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

// Exact Gaussian elimination; returns the solution of M z = rhs, or nullopt
// with a kernel vector when M is singular.
struct LinearSolve {
    std::optional<std::vector<Rational>> solution;
    std::vector<Rational> kernel;
};

LinearSolve solve_linear(std::vector<std::vector<Rational>> m,
                         std::vector<Rational> rhs) {
    const int n = int(m.size());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;

    std::vector<int> pivot_col_of_row(n, -1);
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int p = -1;
        for (int r = row; r < n; ++r)
            if (m[r][col] != 0) {
                p = r;
                break;
            }
        if (p == -1) continue;
        std::swap(m[p], m[row]);
        std::swap(rhs[p], rhs[row]);
        for (int r = 0; r < n; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational factor = m[r][col] / m[row][col];
            for (int c = col; c < n; ++c) m[r][c] -= factor * m[row][c];
            rhs[r] -= factor * rhs[row];
        }
        pivot_col_of_row[row] = col;
        ++row;
    }

    LinearSolve out;
    if (row < n) {
        // Singular: build a kernel vector from a free column.
        std::vector<bool> is_pivot(n, false);
        for (int r = 0; r < row; ++r) is_pivot[pivot_col_of_row[r]] = true;
        int free_col = 0;
        while (free_col < n && is_pivot[free_col]) ++free_col;
        std::vector<Rational> k(n, Rational(0));
        k[free_col] = Rational(1);
        for (int r = 0; r < row; ++r) {
            int pc = pivot_col_of_row[r];
            k[pc] = -m[r][free_col] / m[r][pc];
        }
        out.kernel = std::move(k);
        return out;
    }
    std::vector<Rational> z(n);
    for (int r = 0; r < n; ++r) z[pivot_col_of_row[r]] = rhs[r] / m[r][pivot_col_of_row[r]];
    out.solution = std::move(z);
    return out;
}

}  // namespace

void DivisorAtInfinity::prune() {
    for (auto it = coeff_.begin(); it != coeff_.end();)
        it = (it->second == 0) ? coeff_.erase(it) : std::next(it);
}

bool DivisorAtInfinity::effective() const {
    return std::all_of(coeff_.begin(), coeff_.end(),
                       [](const auto& kv) { return kv.second >= 0; });
}

bool DivisorAtInfinity::integral() const {
    return std::all_of(coeff_.begin(), coeff_.end(), [](const auto& kv) {
        return denominator(kv.second) == 1;
    });
}

DivisorAtInfinity DivisorAtInfinity::operator+(const DivisorAtInfinity& o) const {
    DivisorAtInfinity r = *this;
    for (const auto& [k, v] : o.coeff_) r.set(k, r.coeff(k) + v);
    return r;
}

DivisorAtInfinity DivisorAtInfinity::operator-(const DivisorAtInfinity& o) const {
    DivisorAtInfinity r = *this;
    for (const auto& [k, v] : o.coeff_) r.set(k, r.coeff(k) - v);
    return r;
}

DivisorAtInfinity DivisorAtInfinity::operator*(const Rational& s) const {
    DivisorAtInfinity r;
    if (s == 0) return r;
    for (const auto& [k, v] : coeff_) r.coeff_[k] = v * s;
    return r;
}

std::string DivisorAtInfinity::str() const {
    if (coeff_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : coeff_) {
        if (!first) out << (v > 0 ? " + " : " - ");
        else if (v < 0) out << "-";
        Rational a = v < 0 ? Rational(-v) : v;
        if (a != 1) out << to_string(a) << "*";
        out << k;
        first = false;
    }
    return out.str();
}

void Completion::add_divisor(const std::string& name, BigInt self_int, int genus) {
    if (name.empty()) throw Error("Completion: empty divisor name");
    if (has(name)) throw Error("Completion: duplicate divisor " + name);
    divisors_.push_back(Divisor{name, std::move(self_int), genus});
}

void Completion::add_crossing(const std::string& a, const std::string& b) {
    if (a == b) throw Error("Completion: self-crossing on " + a);
    index(a);
    index(b);
    if (!crossings_.insert(norm_pair(a, b)).second)
        throw Error("Completion: duplicate crossing " + a + "-" + b);
}

bool Completion::has(const std::string& name) const {
    return std::any_of(divisors_.begin(), divisors_.end(),
                       [&](const Divisor& d) { return d.name == name; });
}

int Completion::index(const std::string& name) const {
    for (int i = 0; i < count(); ++i)
        if (divisors_[i].name == name) return i;
    throw Error("Completion: unknown divisor " + name);
}

const Completion::Divisor& Completion::divisor(const std::string& name) const {
    return divisors_[index(name)];
}

std::vector<std::string> Completion::names() const {
    std::vector<std::string> out;
    for (const auto& d : divisors_) out.push_back(d.name);
    return out;
}

bool Completion::crossing(const std::string& a, const std::string& b) const {
    return crossings_.count(norm_pair(a, b)) > 0;
}

std::vector<std::string> Completion::neighbors(const std::string& name) const {
    std::vector<std::string> out;
    for (const auto& [a, b] : crossings_) {
        if (a == name) out.push_back(b);
        if (b == name) out.push_back(a);
    }
    return out;
}

bool Completion::connected() const {
    if (divisors_.empty()) return true;
    std::set<std::string> seen;
    std::queue<std::string> q;
    q.push(divisors_[0].name);
    seen.insert(divisors_[0].name);
    while (!q.empty()) {
        std::string cur = q.front();
        q.pop();
        for (const auto& n : neighbors(cur))
            if (seen.insert(n).second) q.push(n);
    }
    return int(seen.size()) == count();
}

std::string Completion::fresh_name() {
    while (true) {
        std::string cand = "Ex" + std::to_string(next_id_++);
        if (!has(cand)) return cand;
    }
}

BlowupRecord Completion::blow_up_free(const std::string& host, std::string name) {
    int hi = index(host);
    if (name.empty()) name = fresh_name();
    add_divisor(name, -1);
    divisors_[hi].self_int -= 1;
    crossings_.insert(norm_pair(host, name));
    return BlowupRecord{false, host, "", name};
}

BlowupRecord Completion::blow_up_satellite(const std::string& host1,
                                           const std::string& host2,
                                           std::string name) {
    if (!crossing(host1, host2))
        throw Error("Completion: satellite center requires crossing divisors " +
                    host1 + "," + host2);
    if (name.empty()) name = fresh_name();
    add_divisor(name, -1);
    divisors_[index(host1)].self_int -= 1;
    divisors_[index(host2)].self_int -= 1;
    crossings_.erase(norm_pair(host1, host2));
    crossings_.insert(norm_pair(host1, name));
    crossings_.insert(norm_pair(host2, name));
    return BlowupRecord{true, host1, host2, name};
}

void Completion::contract(const std::string& name) {
    int i = index(name);
    if (divisors_[i].self_int != -1)
        throw Error("Completion: can only contract a (-1)-divisor, " + name +
                    " has self-intersection " + divisors_[i].self_int.str());
    auto nb = neighbors(name);
    if (nb.size() > 2)
        throw Error("Completion: contracting " + name + " with " +
                    std::to_string(nb.size()) + " neighbors would create a "
                    "non-snc point");
    if (nb.size() == 2 && crossing(nb[0], nb[1]))
        throw Error("Completion: contracting " + name +
                    " would create a double crossing between " + nb[0] + " and " +
                    nb[1]);
    for (const auto& n : nb) {
        divisors_[index(n)].self_int += 1;
        crossings_.erase(norm_pair(name, n));
    }
    if (nb.size() == 2) crossings_.insert(norm_pair(nb[0], nb[1]));
    divisors_.erase(divisors_.begin() + i);
}

Rational Completion::intersect(const DivisorAtInfinity& a,
                               const DivisorAtInfinity& b) const {
    Rational total(0);
    for (const auto& [e, ae] : a.coeffs()) {
        for (const auto& [f, bf] : b.coeffs()) {
            if (e == f)
                total += ae * bf * Rational(divisor(e).self_int);
            else if (crossing(e, f))
                total += ae * bf;
        }
    }
    return total;
}

std::vector<std::vector<BigInt>> Completion::intersection_matrix() const {
    const int n = count();
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i) {
        m[i][i] = divisors_[i].self_int;
        for (int j = i + 1; j < n; ++j)
            if (crossing(divisors_[i].name, divisors_[j].name)) m[i][j] = m[j][i] = 1;
    }
    return m;
}

DivisorAtInfinity Completion::dual_divisor(const std::string& e) const {
    const int n = count();
    auto mi = intersection_matrix();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rational(mi[i][j]);
    std::vector<Rational> rhs(n, Rational(0));
    rhs[index(e)] = Rational(1);
    auto res = solve_linear(std::move(m), std::move(rhs));
    if (!res.solution) {
        std::ostringstream msg;
        msg << "Completion: degenerate intersection form; kernel vector (";
        for (int i = 0; i < n; ++i)
            msg << (i ? "," : "") << to_string(res.kernel[i]);
        msg << ") in basis (";
        for (int i = 0; i < n; ++i) msg << (i ? "," : "") << divisors_[i].name;
        msg << ")";
        throw Error(msg.str());
    }
    DivisorAtInfinity z;
    for (int i = 0; i < n; ++i) z.set(divisors_[i].name, (*res.solution)[i]);
    return z;
}

bool Completion::nondegenerate() const {
    const int n = count();
    auto mi = intersection_matrix();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rational(mi[i][j]);
    return solve_linear(std::move(m), std::vector<Rational>(n, Rational(0)))
        .solution.has_value();
}

std::string Completion::dot() const {
    std::ostringstream out;
    out << "graph boundary {\n";
    for (const auto& d : divisors_)
        out << "  \"" << d.name << "\" [label=\"" << d.name << " ("
            << d.self_int.str() << ")\"];\n";
    for (const auto& [a, b] : crossings_)
        out << "  \"" << a << "\" -- \"" << b << "\";\n";
    out << "}\n";
    return out.str();
}

DivisorAtInfinity pullback(const BlowupRecord& rec, const DivisorAtInfinity& d) {
    DivisorAtInfinity r = d;
    Rational mult = d.coeff(rec.host1);
    if (rec.satellite) mult += d.coeff(rec.host2);
    r.set(rec.name, mult);
    return r;
}

DivisorAtInfinity pushforward(const BlowupRecord& rec, const DivisorAtInfinity& d) {
    DivisorAtInfinity r = d;
    r.set(rec.name, Rational(0));
    return r;
}

MeetResult divisor_meet(const Completion& x, const DivisorAtInfinity& d1,
                        const DivisorAtInfinity& d2) {
    for (const auto& d : {d1, d2})
        for (const auto& [name, c] : d.coeffs())
            if (!x.has(name)) throw Error("divisor_meet: unknown divisor " + name);

    // Reduce to the effective integral case: scale by a common denominator
    // and shift by a common effective bound.
    BigInt scale = 1;
    for (const auto& d : {d1, d2})
        for (const auto& [name, c] : d.coeffs())
            scale = lcm(scale, denominator(c));
    DivisorAtInfinity shift;
    for (const auto& name : x.names()) {
        Rational low = std::min(d1.coeff(name), d2.coeff(name)) * Rational(scale);
        if (low < 0) shift.set(name, -low);
    }
    DivisorAtInfinity a = d1 * Rational(scale) + shift;
    DivisorAtInfinity b = d2 * Rational(scale) + shift;

    MeetResult out;
    out.completion = x;
    for (int guard = 0;; ++guard) {
        if (guard > 100000)
            throw Error("divisor_meet: procedure did not terminate");
        // Find a crossing where the pair is not well ordered: the order of
        // the two divisors flips between the two branches.
        std::string be, bf;
        for (const auto& e : out.completion.names()) {
            for (const auto& f : out.completion.neighbors(e)) {
                if (f < e) continue;
                Rational de = a.coeff(e) - b.coeff(e);
                Rational df = a.coeff(f) - b.coeff(f);
                if ((de > 0 && df < 0) || (de < 0 && df > 0)) {
                    be = e;
                    bf = f;
                    break;
                }
            }
            if (!be.empty()) break;
        }
        if (be.empty()) break;
        BlowupRecord rec = out.completion.blow_up_satellite(be, bf);
        a = pullback(rec, a);
        b = pullback(rec, b);
        shift = pullback(rec, shift);
        out.records.push_back(std::move(rec));
    }

    Rational inv = make_rational(1, scale);
    out.d1 = (a - shift) * inv;
    out.d2 = (b - shift) * inv;
    DivisorAtInfinity mn, mx;
    for (const auto& name : out.completion.names()) {
        mn.set(name, std::min(a.coeff(name), b.coeff(name)));
        mx.set(name, std::max(a.coeff(name), b.coeff(name)));
    }
    out.meet = (mn - shift) * inv;
    out.join = (mx - shift) * inv;
    return out;
}

Completion completion_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("boundary JSON parse error: ") + e.what());
    }
    Completion x;
    try {
        for (const auto& d : j.at("divisors")) {
            int genus = d.value("genus", 0);
            x.add_divisor(d.at("name").get<std::string>(),
                          BigInt(d.at("self_int").get<long long>()), genus);
        }
        for (const auto& c : j.at("crossings"))
            x.add_crossing(c.at(0).get<std::string>(), c.at(1).get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("boundary JSON schema error: ") + e.what());
    }
    return x;
}

std::string completion_to_json(const Completion& x) {
    nlohmann::json j;
    j["divisors"] = nlohmann::json::array();
    for (const auto& name : x.names()) {
        const auto& d = x.divisor(name);
        j["divisors"].push_back({{"name", d.name},
                                 {"self_int", d.self_int.convert_to<long long>()},
                                 {"genus", d.genus}});
    }
    j["crossings"] = nlohmann::json::array();
    for (const auto& a : x.names())
        for (const auto& b : x.neighbors(a))
            if (a < b) j["crossings"].push_back({a, b});
    return j.dump(2);
}

}  // namespace surfdyn
