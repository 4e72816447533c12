#pragma once

#include <map>

#include "rat.hpp"

namespace denum {

/// Product of fractional-part atoms {r t}^pow, sorted by r, powers >= 1.
/// The empty monomial is the constant 1.
using Monomial = std::vector<std::pair<Rat, int>>;

/// Polynomial in atoms {r t} with rational coefficients, r in (0,1).
/// The representation is canonical: no zero coefficients, no {0 t} atoms,
/// no rewriting of powers.
class StepPoly {
  public:
    StepPoly() = default;

    static StepPoly constant(const Rat& c) {
        StepPoly p;
        if (c != 0) p.terms_[Monomial{}] = c;
        return p;
    }

    /// Single atom {r t}; requires r in (0,1).
    static StepPoly atom(const Rat& r) {
        if (!(r > 0 && r < 1)) throw DomainError("StepPoly::atom: r outside (0,1)");
        StepPoly p;
        p.terms_[Monomial{{r, 1}}] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }

    Rat constant_part() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    const std::map<Monomial, Rat>& terms() const { return terms_; }

    StepPoly& operator+=(const StepPoly& o) {
        for (const auto& [mono, c] : o.terms_) add_term(mono, c);
        return *this;
    }
    StepPoly& operator-=(const StepPoly& o) {
        for (const auto& [mono, c] : o.terms_) add_term(mono, Rat(-c));
        return *this;
    }
    friend StepPoly operator+(StepPoly a, const StepPoly& b) { return a += b; }
    friend StepPoly operator-(StepPoly a, const StepPoly& b) { return a -= b; }

    StepPoly operator-() const {
        StepPoly p;
        for (const auto& [mono, c] : terms_) p.terms_[mono] = -c;
        return p;
    }

    friend StepPoly operator*(const StepPoly& a, const StepPoly& b) {
        StepPoly p;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) p.add_term(merge(ma, mb), Rat(ca * cb));
        return p;
    }

    StepPoly& operator*=(const StepPoly& o) { return *this = *this * o; }

    /// Scale by a rational constant.
    friend StepPoly operator*(const StepPoly& a, const Rat& c) {
        StepPoly p;
        if (c == 0) return p;
        for (const auto& [mono, x] : a.terms_) p.terms_[mono] = x * c;
        return p;
    }
    friend StepPoly operator*(const Rat& c, const StepPoly& a) { return a * c; }

    StepPoly pow(int n) const {
        if (n < 0) throw DomainError("StepPoly::pow: negative exponent");
        StepPoly r = constant(Rat(1));
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    /// Evaluate at an integer t; {r t} means the fractional part of r*t.
    Rat eval(const Int& t) const {
        Rat s(0);
        for (const auto& [mono, c] : terms_) {
            Rat p = c;
            for (const auto& [r, e] : mono) {
                Rat base = rat_frac(make_rat(r.get_num() * t, r.get_den()));
                for (int i = 0; i < e; ++i) p *= base;
            }
            s += p;
        }
        return s;
    }

    /// Least common multiple of atom denominators; 1 for constants.
    Int period() const {
        Int l = 1;
        for (const auto& [mono, c] : terms_)
            for (const auto& [r, e] : mono) l = int_lcm(l, r.get_den());
        return l;
    }

    bool operator==(const StepPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const StepPoly& o) const { return !(*this == o); }

    /// Rendering like "1/24 - 1/36 {2t/3}^2"; var is the symbol inside atoms.
    std::string text(const std::string& var = "t") const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [mono, c] : terms_) {
            Rat a = rat_abs(c);
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += (c < 0) ? " - " : " + ";
            }
            bool unit = (a == 1) && !mono.empty();
            if (!unit) out += to_string(a);
            bool need_space = !unit;
            for (const auto& [r, e] : mono) {
                if (need_space) out += " ";
                out += "{";
                if (r.get_num() != 1) out += to_string(r.get_num());
                out += var + "/" + to_string(r.get_den()) + "}";
                if (e > 1) out += "^" + std::to_string(e);
                need_space = true;
            }
        }
        return out;
    }

  private:
    void add_term(const Monomial& mono, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(mono, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    static Monomial merge(const Monomial& a, const Monomial& b) {
        Monomial m;
        m.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first < b[j].first) m.push_back(a[i++]);
            else if (b[j].first < a[i].first) m.push_back(b[j++]);
            else {
                m.emplace_back(a[i].first, a[i].second + b[j].second);
                ++i; ++j;
            }
        }
        while (i < a.size()) m.push_back(a[i++]);
        while (j < b.size()) m.push_back(b[j++]);
        return m;
    }

    std::map<Monomial, Rat> terms_;
};

/// The step polynomial {k T}: reduce k mod 1; an integer k gives zero.
inline StepPoly atom_canon(const Rat& k) {
    Rat r = rat_frac(k);
    if (r == 0) return StepPoly();
    return StepPoly::atom(r);
}

/// Degree-indexed step-polynomial coefficients of a denumerant.
class QuasiPolynomial {
  public:
    QuasiPolynomial() : n_(0) {}
    QuasiPolynomial(IntVec a, std::map<int, StepPoly> coeffs)
        : a_(std::move(a)), n_(static_cast<int>(a_.size()) - 1), coeffs_(std::move(coeffs)) {
        for (const auto& [m, p] : coeffs_) {
            if (m < 0 || m > n_) throw DomainError("QuasiPolynomial: coefficient index outside 0..N");
        }
    }

    const IntVec& a() const { return a_; }
    int degree_bound() const { return n_; }
    const std::map<int, StepPoly>& coefficients() const { return coeffs_; }

    /// Coefficient of t^m; zero step polynomial when absent.
    StepPoly coeff(int m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? StepPoly() : it->second;
    }

    Int lcm() const {
        Int l = 1;
        for (const Int& x : a_) l = int_lcm(l, x);
        return l;
    }

    Int period(int m) const { return coeff(m).period(); }

    /// Evaluate sum_m E_m(t) t^m at integer t.
    Rat eval(const Int& t) const {
        Rat s(0);
        Rat tp(1);
        int last = 0;
        for (const auto& [m, p] : coeffs_) {
            for (; last < m; ++last) tp *= Rat(t);
            s += p.eval(t) * tp;
        }
        return s;
    }

    /// Evaluate and require an integer value (valid for a full coefficient set).
    Int eval_count(const Int& t) const {
        Rat v = eval(t);
        if (v.get_den() != 1) throw DomainError("QuasiPolynomial::eval_count: non-integer value");
        return v.get_num();
    }

    bool operator==(const QuasiPolynomial& o) const {
        return a_ == o.a_ && coeffs_ == o.coeffs_;
    }

  private:
    IntVec a_;
    int n_;
    std::map<int, StepPoly> coeffs_;
};

}  // namespace denum
