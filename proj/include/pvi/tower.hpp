#pragma once

// Function fields Q(s)(sqrt(f1), sqrt(f2)) presented as square-root towers of
// depth at most two over the rational function field, together with their
// elements. Elements carry coordinates over the monomial basis
// {1, r1, r2, r1 r2} in the formal positive roots.

#include <pvi/bipoly.hpp>
#include <pvi/polynomial.hpp>
#include <pvi/ratfunc.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pvi {

struct TowerError : std::runtime_error {
    explicit TowerError(const std::string &m) : std::runtime_error(m) {}
};

// Nontrivial squarefree representatives of the square classes generated by
// the radicands: empty, {f}, or {f, g, core(f*g)}.
class SquareClassSet {
  public:
    SquareClassSet() = default;
    explicit SquareClassSet(std::vector<UniPoly> reps) : reps_(std::move(reps)) {}

    const std::vector<UniPoly> &reps() const { return reps_; }
    std::size_t size() const { return reps_.size(); }

    bool contains(const UniPoly &canonical_rep) const {
        for (const auto &r : reps_)
            if (r == canonical_rep) return true;
        return false;
    }

    friend bool operator==(const SquareClassSet &a, const SquareClassSet &b) {
        if (a.reps_.size() != b.reps_.size()) return false;
        for (const auto &r : a.reps_)
            if (!b.contains(r)) return false;
        return true;
    }
    friend bool operator!=(const SquareClassSet &a, const SquareClassSet &b) {
        return !(a == b);
    }

  private:
    std::vector<UniPoly> reps_;
};

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

class Tower : public std::enable_shared_from_this<Tower> {
  public:
    // Radicands must already be canonical: squarefree with integral
    // coefficients of squarefree content. A trivial or repeated square class
    // is rejected, which is exactly the irreducibility of the cover.
    static TowerPtr make(std::string base_var, std::vector<UniPoly> radicands,
                         std::vector<std::string> generator_names) {
        return TowerPtr(new Tower(std::move(base_var), std::move(radicands),
                                  std::move(generator_names)));
    }
    static TowerPtr rational(std::string base_var) {
        return make(std::move(base_var), {}, {});
    }

    const std::string &var() const { return var_; }
    int depth() const { return static_cast<int>(radicands_.size()); }
    std::size_t basis_size() const { return std::size_t(1) << depth(); }
    const std::vector<UniPoly> &radicands() const { return radicands_; }
    const UniPoly &radicand(int i) const { return radicands_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string> &generator_names() const { return gen_names_; }

    // Product of the radicands appearing in basis monomial `mask`.
    UniPoly monomial_radicand(unsigned mask) const {
        UniPoly r = UniPoly::constant(var_, Rational(1));
        for (int i = 0; i < depth(); ++i)
            if (mask & (1u << i)) r *= radicands_[static_cast<std::size_t>(i)];
        return r;
    }

    const SquareClassSet &square_classes() const { return classes_; }

    // Same function field iff the square-class subgroups coincide.
    bool same_field(const Tower &o) const {
        return var_ == o.var_ && classes_ == o.classes_;
    }

    friend bool operator==(const Tower &a, const Tower &b) {
        return a.var_ == b.var_ && a.radicands_ == b.radicands_;
    }

  private:
    Tower(std::string base_var, std::vector<UniPoly> radicands,
          std::vector<std::string> generator_names)
        : var_(std::move(base_var)),
          radicands_(std::move(radicands)),
          gen_names_(std::move(generator_names)) {
        if (radicands_.size() > 2) throw TowerError("tower depth exceeds 2");
        if (gen_names_.size() != radicands_.size())
            throw TowerError("tower: generator name count mismatch");
        std::vector<UniPoly> reps;
        for (auto &f : radicands_) {
            if (f.is_zero()) throw TowerError("tower: zero radicand");
            if (!f.is_constant() && f.var() != var_)
                throw TowerError("tower: radicand variable mismatch");
            if (canonical_square_class(f) != f)
                throw TowerError("tower: radicand '" + f.str() +
                                 "' is not squarefree with squarefree content");
            if (is_trivial_class(f))
                throw TowerError("tower: radicand '" + f.str() + "' is a perfect square");
            reps.push_back(f);
        }
        if (radicands_.size() == 2) {
            UniPoly prod_core = canonical_square_class(radicands_[0] * radicands_[1]);
            if (is_trivial_class(prod_core))
                throw TowerError("tower: radicands generate the same square class");
            reps.push_back(prod_core);
        }
        classes_ = SquareClassSet(std::move(reps));
    }

    static bool is_trivial_class(const UniPoly &core) {
        return core.is_constant() && core.constant_term().is_square();
    }

    std::string var_;
    std::vector<UniPoly> radicands_;
    std::vector<std::string> gen_names_;
    SquareClassSet classes_;
};

class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(TowerPtr tower, std::vector<RatFunc> coords)
        : tower_(std::move(tower)), c_(std::move(coords)) {
        if (c_.size() != tower_->basis_size())
            throw TowerError("FieldElement: coordinate count mismatch");
    }

    static FieldElement from_base(TowerPtr tower, RatFunc v) {
        std::vector<RatFunc> c(tower->basis_size(),
                               RatFunc(UniPoly(tower->var())));
        c[0] = std::move(v);
        return FieldElement(std::move(tower), std::move(c));
    }
    static FieldElement constant(TowerPtr tower, Rational v) {
        auto var = tower->var();
        return from_base(std::move(tower), RatFunc::constant(var, std::move(v)));
    }
    static FieldElement base_variable(TowerPtr tower) {
        auto var = tower->var();
        return from_base(std::move(tower), RatFunc::variable(var));
    }
    // The formal positive root r_i.
    static FieldElement generator(TowerPtr tower, int i) {
        if (i < 0 || i >= tower->depth()) throw TowerError("generator index out of range");
        std::vector<RatFunc> c(tower->basis_size(), RatFunc(UniPoly(tower->var())));
        c[std::size_t(1) << i] = RatFunc::constant(tower->var(), Rational(1));
        return FieldElement(std::move(tower), std::move(c));
    }

    const TowerPtr &tower() const { return tower_; }
    const std::vector<RatFunc> &coords() const { return c_; }
    const RatFunc &coord(unsigned mask) const { return c_.at(mask); }

    bool is_zero() const {
        for (const auto &x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_base() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    bool is_constant() const { return is_base() && c_[0].is_constant(); }
    RatFunc base_value() const {
        if (!is_base()) throw TowerError("FieldElement: not in the base field");
        return c_[0];
    }

    friend bool operator==(const FieldElement &a, const FieldElement &b) {
        a.check_tower(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement &a, const FieldElement &b) { return !(a == b); }

    FieldElement operator-() const {
        FieldElement r(*this);
        for (auto &x : r.c_) x = -x;
        return r;
    }
    friend FieldElement operator+(const FieldElement &a, const FieldElement &b) {
        a.check_tower(b);
        FieldElement r(a);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend FieldElement operator-(const FieldElement &a, const FieldElement &b) {
        return a + (-b);
    }

    friend FieldElement operator*(const FieldElement &a, const FieldElement &b) {
        a.check_tower(b);
        const Tower &tw = *a.tower_;
        std::size_t n = a.c_.size();
        std::vector<RatFunc> out(n, RatFunc(UniPoly(tw.var())));
        for (unsigned i = 0; i < n; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (unsigned j = 0; j < n; ++j) {
                if (b.c_[j].is_zero()) continue;
                unsigned meet = i & j;               // repeated roots square out
                unsigned slot = i ^ j;
                RatFunc term = a.c_[i] * b.c_[j];
                if (meet)
                    term *= RatFunc(tw.monomial_radicand(meet));
                out[slot] += term;
            }
        }
        return FieldElement(a.tower_, std::move(out));
    }

    friend FieldElement operator*(const FieldElement &a, const RatFunc &s) {
        FieldElement r(a);
        for (auto &x : r.c_) x *= s;
        return r;
    }
    friend FieldElement operator*(const RatFunc &s, const FieldElement &a) { return a * s; }
    friend FieldElement operator*(const FieldElement &a, const Rational &s) {
        return a * RatFunc::constant(a.tower_->var(), s);
    }
    friend FieldElement operator*(const Rational &s, const FieldElement &a) { return a * s; }

    FieldElement &operator+=(const FieldElement &o) { return *this = *this + o; }
    FieldElement &operator-=(const FieldElement &o) { return *this = *this - o; }
    FieldElement &operator*=(const FieldElement &o) { return *this = *this * o; }

    // Conjugation flipping the sign of the generators selected by gen_mask.
    FieldElement conjugate(unsigned gen_mask) const {
        FieldElement r(*this);
        for (unsigned m = 0; m < r.c_.size(); ++m) {
            unsigned overlap = m & gen_mask;
            if (__builtin_popcount(overlap) % 2) r.c_[m] = -r.c_[m];
        }
        return r;
    }

    std::string str() const {
        std::string out;
        static const char *names2[4] = {"1", "%1", "%2", "%1*%2"};
        for (unsigned m = 0; m < c_.size(); ++m) {
            if (c_[m].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[m].str() + ")";
            if (m) {
                std::string mono = names2[m];
                std::string g1 = tower_->depth() > 0 ? tower_->generator_names()[0] : "";
                std::string g2 = tower_->depth() > 1 ? tower_->generator_names()[1] : "";
                std::string expanded;
                for (std::size_t i = 0; i < mono.size(); ++i) {
                    if (mono[i] == '%') {
                        expanded += (mono[i + 1] == '1') ? g1 : g2;
                        ++i;
                    } else {
                        expanded += mono[i];
                    }
                }
                out += "*" + expanded;
            }
        }
        return out.empty() ? "0" : out;
    }

  private:
    void check_tower(const FieldElement &o) const {
        if (!tower_ || !o.tower_) throw TowerError("FieldElement: missing tower");
        if (tower_ == o.tower_) return;
        if (!(*tower_ == *o.tower_)) throw TowerError("FieldElement: tower mismatch");
    }

    TowerPtr tower_;
    std::vector<RatFunc> c_;
};

inline FieldElement operator/(const FieldElement &a, const FieldElement &b);

// Multiplicative inverse via iterated conjugation. A vanishing norm on a
// nonzero element means the tower failed its irreducibility invariant.
inline FieldElement invert(const FieldElement &a) {
    if (a.is_zero()) throw TowerError("invert: zero element");
    const TowerPtr &tw = a.tower();
    int k = tw->depth();
    if (k == 0) return FieldElement::from_base(tw, a.coord(0).inverse());
    // Peel the top generator: a = alpha + beta*r_top, conj = alpha - beta*r_top,
    // a*conj lives in the subtower spanned by the lower generators.
    unsigned top = 1u << (k - 1);
    FieldElement conj = a.conjugate(top);
    FieldElement prod = a * conj;  // no r_top component
    for (unsigned m = 0; m < prod.coords().size(); ++m)
        if ((m & top) && !prod.coord(m).is_zero())
            throw TowerError("invert: conjugation did not cancel top generator");
    if (k == 1) {
        RatFunc norm = prod.coord(0);
        if (norm.is_zero())
            throw TowerError("invert: zero divisor, tower square class is degenerate");
        return conj * norm.inverse();
    }
    // depth 2: invert prod within the depth-1 subtower by another conjugation
    FieldElement conj2 = prod.conjugate(1u);
    FieldElement norm_el = prod * conj2;
    if (!norm_el.is_base())
        throw TowerError("invert: norm did not land in the base field");
    RatFunc norm = norm_el.coord(0);
    if (norm.is_zero())
        throw TowerError("invert: zero divisor, tower square class is degenerate");
    return conj * conj2 * norm.inverse();
}

inline FieldElement operator/(const FieldElement &a, const FieldElement &b) {
    return a * invert(b);
}

// Norm down to Q(s): product over all conjugates.
inline RatFunc field_norm(const FieldElement &a) {
    FieldElement acc = a;
    for (int i = 0; i < a.tower()->depth(); ++i)
        acc = acc * acc.conjugate(1u << i);
    if (!acc.is_base()) throw TowerError("field_norm: result not in base field");
    return acc.coord(0);
}

inline RatFunc field_trace(const FieldElement &a) {
    return a.coord(0) * Rational(static_cast<long>(a.tower()->basis_size()));
}

// The unique derivation extending d/ds, with D(r_i) = f_i'/(2 f_i) * r_i.
inline FieldElement differentiate(const FieldElement &a) {
    const TowerPtr &tw = a.tower();
    std::vector<RatFunc> out(a.coords().size(), RatFunc(UniPoly(tw->var())));
    for (unsigned m = 0; m < a.coords().size(); ++m) {
        const RatFunc &c = a.coord(m);
        if (c.is_zero()) continue;
        RatFunc d = c.derivative();
        if (m) {
            // log derivative of the monomial radicand covers products of roots
            UniPoly rad = tw->monomial_radicand(m);
            d += c * RatFunc(rad.derivative(), rad * Rational(2));
        }
        out[m] = d;
    }
    return FieldElement(tw, std::move(out));
}

// ---------------------------------------------------------------------------
// Polynomials in an auxiliary variable T over Q(s), low degree first.
// Used for characteristic and minimal polynomials of field elements.

using TPoly = std::vector<RatFunc>;

inline void tpoly_trim(TPoly &p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline TPoly tpoly_mul(const TPoly &a, const TPoly &b) {
    if (a.empty() || b.empty()) return {};
    TPoly r(a.size() + b.size() - 1);
    for (auto &x : r) x = RatFunc(UniPoly(a[0].var()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    tpoly_trim(r);
    return r;
}

inline TPoly tpoly_derivative(const TPoly &a) {
    if (a.size() <= 1) return {};
    TPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        r[i - 1] = a[i] * Rational(static_cast<long>(i));
    tpoly_trim(r);
    return r;
}

inline TPoly tpoly_monic(TPoly a) {
    tpoly_trim(a);
    if (a.empty()) return a;
    RatFunc inv = a.back().inverse();
    for (auto &x : a) x *= inv;
    return a;
}

inline std::pair<TPoly, TPoly> tpoly_divrem(TPoly a, const TPoly &b) {
    tpoly_trim(a);
    if (b.empty()) throw std::domain_error("tpoly_divrem: zero divisor");
    TPoly q;
    if (a.size() >= b.size()) {
        q.assign(a.size() - b.size() + 1, RatFunc(UniPoly(b.back().var())));
        RatFunc binv = b.back().inverse();
        while (a.size() >= b.size()) {
            RatFunc c = a.back() * binv;
            std::size_t off = a.size() - b.size();
            q[off] = c;
            for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
            a.pop_back();
            tpoly_trim(a);
            if (a.empty()) break;
        }
    }
    tpoly_trim(q);
    return {std::move(q), std::move(a)};
}

inline TPoly tpoly_gcd(TPoly a, TPoly b) {
    tpoly_trim(a);
    tpoly_trim(b);
    while (!b.empty()) {
        TPoly r = tpoly_divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return tpoly_monic(std::move(a));
}

inline FieldElement tpoly_eval(const TPoly &p, const FieldElement &x) {
    FieldElement acc = FieldElement::constant(x.tower(), Rational(0));
    for (auto it = p.rbegin(); it != p.rend(); ++it)
        acc = acc * x + FieldElement::from_base(x.tower(), *it);
    return acc;
}

// Characteristic polynomial of multiplication by a: prod over all conjugates
// of (T - sigma(a)). Coefficients land in the base field.
inline TPoly characteristic_polynomial(const FieldElement &a) {
    const TowerPtr &tw = a.tower();
    std::size_t n = tw->basis_size();
    // polynomial in T with FieldElement coefficients
    std::vector<FieldElement> acc = {FieldElement::constant(tw, Rational(1))};
    for (unsigned sigma = 0; sigma < n; ++sigma) {
        FieldElement root = a.conjugate(sigma);
        std::vector<FieldElement> next(acc.size() + 1, FieldElement::constant(tw, Rational(0)));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i + 1] += acc[i];
            next[i] -= acc[i] * root;
        }
        acc = std::move(next);
    }
    TPoly out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (!acc[i].is_base())
            throw TowerError("characteristic_polynomial: coefficient not in base field");
        out[i] = acc[i].coord(0);
    }
    return out;
}

// Monic irreducible m(T) with m(a) = 0; the squarefree part of the
// characteristic polynomial. Its degree divides the basis size.
inline TPoly minimal_polynomial(const FieldElement &a) {
    TPoly chi = characteristic_polynomial(a);
    TPoly g = tpoly_gcd(chi, tpoly_derivative(chi));
    TPoly m = tpoly_monic(tpoly_divrem(chi, g).first);
    return m;
}

// Clears denominators of m(T) into a primitive bivariate polynomial in
// (base variable, tvar).
inline BiPoly tpoly_primitive_bivariate(const TPoly &m, const std::string &base_var,
                                        const std::string &tvar) {
    UniPoly L = UniPoly::constant(base_var, Rational(1));
    for (const auto &c : m) L = poly_lcm(L, c.den());
    std::vector<UniPoly> coeffs;
    for (const auto &c : m) coeffs.push_back(c.num() * exact_div(L, c.den()));
    BiPoly b(base_var, tvar, std::move(coeffs));
    return b.primitive_part();
}

// ---------------------------------------------------------------------------
// Root adjunction and presentation changes.

struct AdjoinResult {
    TowerPtr tower;          // possibly extended
    FieldElement root;       // element with root^2 == radicand exactly
    bool was_square = false; // radicand had a trivial square class
    bool extended = false;   // a new generator was created
};

// Expression of sqrt(core) inside a tower whose square classes contain core.
inline FieldElement express_square_root_of_class(const TowerPtr &tw, const UniPoly &core) {
    int k = tw->depth();
    for (int i = 0; i < k; ++i) {
        if (tw->radicand(i) == core) return FieldElement::generator(tw, i);
    }
    if (k == 2) {
        UniPoly prod = tw->radicand(0) * tw->radicand(1);
        auto [pcore, pcof] = squarefree_part(prod);
        if (pcore == core) {
            // r1 r2 = pcof * sqrt(pcore)
            FieldElement r1r2 = FieldElement::generator(tw, 0) * FieldElement::generator(tw, 1);
            return r1r2 * RatFunc(pcof).inverse();
        }
    }
    throw TowerError("express_square_root_of_class: class not present in tower");
}

namespace detail {

inline AdjoinResult adjoin_reduced(const TowerPtr &tw, const UniPoly &core, const RatFunc &cof,
                                   const std::string &gen_name) {
    AdjoinResult res;
    if (core.is_constant() && core.constant_term().is_square()) {
        // perfect square: nothing to adjoin
        Rational c0 = core.constant_term().sqrt();
        res.tower = tw;
        res.root = FieldElement::from_base(tw, cof * c0);
        res.was_square = true;
        return res;
    }
    if (tw->square_classes().contains(core)) {
        res.tower = tw;
        res.root = express_square_root_of_class(tw, core) * cof;
        return res;
    }
    if (tw->depth() >= 2)
        throw TowerError("adjoin_root: tower depth budget exceeded");
    std::vector<UniPoly> rads = tw->radicands();
    std::vector<std::string> names = tw->generator_names();
    rads.push_back(core);
    names.push_back(gen_name);
    TowerPtr ext = Tower::make(tw->var(), std::move(rads), std::move(names));
    int new_index = ext->depth() - 1;
    RatFunc cofv(UniPoly(ext->var(), cof.num().coeffs()), UniPoly(ext->var(), cof.den().coeffs()));
    FieldElement root = FieldElement::generator(ext, new_index) * cofv;
    res.tower = ext;
    res.root = root;
    res.extended = true;
    return res;
}

}  // namespace detail

// Adjoins a square root of `radicand` (any nonzero polynomial or rational
// function). The radicand is squarefree-reduced first; the returned root
// element satisfies root^2 == radicand in the returned tower.
inline AdjoinResult adjoin_root(const TowerPtr &tw, const UniPoly &radicand,
                                const std::string &gen_name) {
    if (radicand.is_zero()) throw TowerError("adjoin_root: zero radicand");
    auto [core, cof] = squarefree_part(radicand);
    return detail::adjoin_reduced(tw, core, RatFunc(cof), gen_name);
}

inline AdjoinResult adjoin_root(const TowerPtr &tw, const RatFunc &radicand,
                                const std::string &gen_name) {
    if (radicand.is_zero()) throw TowerError("adjoin_root: zero radicand");
    auto [core, cof] = squarefree_part(radicand);
    return detail::adjoin_reduced(tw, core, cof, gen_name);
}

// Embeds an element of a subtower into an extension whose radicand list
// starts with the subtower's. Coordinates keep their basis masks.
inline FieldElement lift_to_extension(const TowerPtr &target, const FieldElement &a) {
    const TowerPtr &src = a.tower();
    if (src->depth() > target->depth() || src->var() != target->var())
        throw TowerError("lift_to_extension: not an extension");
    for (int i = 0; i < src->depth(); ++i)
        if (!(src->radicand(i) == target->radicand(i)))
            throw TowerError("lift_to_extension: radicand prefix mismatch");
    std::vector<RatFunc> coords(target->basis_size(), RatFunc(UniPoly(target->var())));
    for (unsigned m = 0; m < a.coords().size(); ++m) coords[m] = a.coord(m);
    return FieldElement(target, std::move(coords));
}

// Rewrites `a` on an equal-field tower (same square classes, same base
// variable). Generator signs follow the formal-positive-root convention.
inline FieldElement express_in(const TowerPtr &target, const FieldElement &a) {
    const TowerPtr &src = a.tower();
    if (*src == *target) return FieldElement(target, a.coords());
    if (!src->same_field(*target))
        throw TowerError("express_in: towers present different fields");
    // image of each source generator in the target
    std::vector<FieldElement> gen_img;
    for (int i = 0; i < src->depth(); ++i) {
        const UniPoly &f = src->radicand(i);
        // find target class h with f ~ h: f*h = square
        FieldElement img = FieldElement::constant(target, Rational(0));
        bool found = false;
        for (const auto &h : target->square_classes().reps()) {
            auto [pcore, pcof] = squarefree_part(f * h);
            if (pcore.is_constant() && pcore.constant_term().is_square()) {
                Rational c0 = pcore.constant_term().sqrt();
                // sqrt(f) = (pcof*c0/h) * sqrt(h)
                FieldElement rh = express_square_root_of_class(target, h);
                img = rh * RatFunc(pcof * c0, h);
                found = true;
                break;
            }
        }
        if (!found) throw TowerError("express_in: class matching failed");
        gen_img.push_back(img);
    }
    FieldElement out = FieldElement::constant(target, Rational(0));
    for (unsigned m = 0; m < a.coords().size(); ++m) {
        if (a.coord(m).is_zero()) continue;
        FieldElement term = FieldElement::from_base(target, a.coord(m));
        for (int i = 0; i < src->depth(); ++i)
            if (m & (1u << i)) term *= gen_img[static_cast<std::size_t>(i)];
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chart at infinity: substitute s = 1/sigma and rescale the generators so the
// radicands stay polynomial. Exact and invertible on elements.

struct InfinityChart {
    TowerPtr tower;               // tower over sigma
    std::string sigma;
    std::vector<int> half_degree; // ceil(deg f_i / 2) per generator

    FieldElement transport(const FieldElement &a) const {
        std::vector<RatFunc> out(tower->basis_size(), RatFunc(UniPoly(sigma)));
        for (unsigned m = 0; m < a.coords().size(); ++m) {
            if (a.coord(m).is_zero()) continue;
            RatFunc c = a.coord(m).substitute_inverse(sigma);
            int e = 0;
            for (std::size_t i = 0; i < half_degree.size(); ++i)
                if (m & (1u << i)) e += half_degree[i];
            if (e)
                c = c / RatFunc(UniPoly::monomial(sigma, Rational(1), e));
            out[m] = c;
        }
        return FieldElement(tower, std::move(out));
    }
};

inline InfinityChart infinity_chart(const TowerPtr &tw, const std::string &sigma) {
    std::vector<UniPoly> rads;
    std::vector<int> halves;
    for (const auto &f : tw->radicands()) {
        int d = f.degree();
        int k = (d + 1) / 2;
        UniPoly rev(sigma, f.reversed().coeffs());
        UniPoly fstar = (d % 2) ? rev.shifted(1) : rev;
        rads.push_back(fstar);
        halves.push_back(k);
    }
    InfinityChart chart;
    chart.tower = Tower::make(sigma, std::move(rads), tw->generator_names());
    chart.sigma = sigma;
    chart.half_degree = std::move(halves);
    return chart;
}

}  // namespace pvi

