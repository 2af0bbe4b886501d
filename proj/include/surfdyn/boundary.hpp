#pragma once

#include "surfdyn/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace surfdyn {

// Formal sum of boundary prime divisors with rational coefficients.
class DivisorAtInfinity {
  public:
    DivisorAtInfinity() = default;
    explicit DivisorAtInfinity(std::map<std::string, Rational> c)
        : coeff_(std::move(c)) {
        prune();
    }
    static DivisorAtInfinity prime(const std::string& name) {
        return DivisorAtInfinity({{name, Rational(1)}});
    }

    const std::map<std::string, Rational>& coeffs() const { return coeff_; }
    Rational coeff(const std::string& name) const {
        auto it = coeff_.find(name);
        return it == coeff_.end() ? Rational(0) : it->second;
    }
    void set(const std::string& name, Rational v) {
        if (v == 0)
            coeff_.erase(name);
        else
            coeff_[name] = std::move(v);
    }

    bool is_zero() const { return coeff_.empty(); }
    bool effective() const;
    bool integral() const;

    DivisorAtInfinity operator+(const DivisorAtInfinity& o) const;
    DivisorAtInfinity operator-(const DivisorAtInfinity& o) const;
    DivisorAtInfinity operator*(const Rational& r) const;
    bool operator==(const DivisorAtInfinity& o) const { return coeff_ == o.coeff_; }

    std::string str() const;

  private:
    void prune();
    std::map<std::string, Rational> coeff_;
};

// One blow-up step: enough data to transport divisors across it.
struct BlowupRecord {
    bool satellite = false;
    std::string host1, host2;  // host2 set only for satellite centers
    std::string name;          // the new exceptional divisor
};

// Boundary of a completion: named prime divisors with self-intersections and
// simple-normal-crossing intersections (at most one crossing per pair).
class Completion {
  public:
    struct Divisor {
        std::string name;
        BigInt self_int;
        int genus = 0;  // user-supplied metadata; 0 = rational
    };

    Completion() = default;

    void add_divisor(const std::string& name, BigInt self_int, int genus = 0);
    void add_crossing(const std::string& a, const std::string& b);

    bool has(const std::string& name) const;
    const Divisor& divisor(const std::string& name) const;
    std::vector<std::string> names() const;
    int count() const { return int(divisors_.size()); }
    bool crossing(const std::string& a, const std::string& b) const;
    std::vector<std::string> neighbors(const std::string& name) const;
    bool connected() const;

    // Blow up a free point of `host` / the satellite point host1 ^ host2.
    // Returns the name of the new exceptional divisor and the record.
    BlowupRecord blow_up_free(const std::string& host, std::string name = "");
    BlowupRecord blow_up_satellite(const std::string& host1,
                                   const std::string& host2,
                                   std::string name = "");
    // Castelnuovo contraction of a (-1)-divisor with at most two neighbors.
    void contract(const std::string& name);

    // Exact intersection number of two divisors at infinity.
    Rational intersect(const DivisorAtInfinity& a, const DivisorAtInfinity& b) const;
    // Matrix in the order of names().
    std::vector<std::vector<BigInt>> intersection_matrix() const;

    // Unique Z with Z . F = delta_{EF} for every boundary prime F; throws
    // with a kernel vector description when the form is degenerate.
    DivisorAtInfinity dual_divisor(const std::string& e) const;
    bool nondegenerate() const;

    std::string dot() const;

  private:
    std::string fresh_name();
    int index(const std::string& name) const;

    std::vector<Divisor> divisors_;
    std::set<std::pair<std::string, std::string>> crossings_;
    int next_id_ = 1;
};

// Transport across one blow-up.
DivisorAtInfinity pullback(const BlowupRecord& rec, const DivisorAtInfinity& d);
DivisorAtInfinity pushforward(const BlowupRecord& rec, const DivisorAtInfinity& d);

struct MeetResult {
    Completion completion;              // final completion after blow-ups
    std::vector<BlowupRecord> records;  // blow-ups performed, in order
    DivisorAtInfinity d1, d2;           // inputs pulled back to the end
    DivisorAtInfinity meet;             // componentwise minimum = D1 /\ D2
    DivisorAtInfinity join;             // componentwise maximum = D1 \/ D2
};

// Infimum/supremum of two divisors: blow up satellite points until the pair
// is well ordered at every crossing, then take componentwise min/max.
MeetResult divisor_meet(const Completion& x, const DivisorAtInfinity& d1,
                        const DivisorAtInfinity& d2);

// JSON (de)serialization of the boundary format.
Completion completion_from_json(const std::string& text);
std::string completion_to_json(const Completion& x);

}  // namespace surfdyn
