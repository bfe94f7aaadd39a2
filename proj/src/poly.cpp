#include "equires/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace equires {

std::string rat_to_string(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

Rat rat_from_string(const std::string& s) {
    Rat q(s);
    q.canonicalize();
    return q;
}

int total_degree(const Exponents& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

bool grevlex_less(const Exponents& a, const Exponents& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    // Same degree: a < b iff in the rightmost differing coordinate a has the
    // larger exponent.
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

Poly Poly::constant(const std::vector<std::string>& vars, const ArtinScalar& c) {
    Poly p(vars, c.m());
    p.add_term(Exponents(vars.size(), 0), c);
    return p;
}

Poly Poly::constant(const std::vector<std::string>& vars, int m, const Rat& q) {
    return constant(vars, ArtinScalar(m, q));
}

Poly Poly::variable(const std::vector<std::string>& vars, int m, const std::string& v) {
    Poly p(vars, m);
    Exponents e(vars.size(), 0);
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) throw UnknownVariable(v);
    e[static_cast<std::size_t>(it - vars.begin())] = 1;
    p.add_term(e, ArtinScalar(m, Rat(1)));
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

ArtinScalar Poly::constant_term() const {
    auto it = terms_.find(Exponents(vars_.size(), 0));
    return it == terms_.end() ? ArtinScalar(m_) : it->second;
}

int Poly::var_index(const std::string& v) const {
    auto it = std::find(vars_.begin(), vars_.end(), v);
    if (it == vars_.end()) throw UnknownVariable(v);
    return static_cast<int>(it - vars_.begin());
}

void Poly::add_term(const Exponents& e, const ArtinScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(vars_, m_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    Poly r(vars_, m_);
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(e1);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
            r.add_term(e, c1 * c2);
        }
    }
    return r;
}

Poly Poly::operator*(const ArtinScalar& c) const {
    Poly r(vars_, m_);
    for (const auto& [e, x] : terms_) r.add_term(e, x * c);
    return r;
}

Poly Poly::operator*(const Rat& q) const { return *this * ArtinScalar(m_, q); }

Poly Poly::pow(int k) const {
    Poly r = constant(vars_, m_, Rat(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

Poly Poly::derivative(const std::string& v) const {
    int idx = var_index(v);
    Poly r(vars_, m_);
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponents e2(e);
        e2[idx] -= 1;
        r.add_term(e2, c * Rat(e[idx]));
    }
    return r;
}

Poly Poly::substitute(const std::string& v, const Poly& repl) const {
    int idx = var_index(v);
    Poly r(vars_, m_);
    // Cache powers of the replacement.
    std::vector<Poly> powers{constant(vars_, m_, Rat(1))};
    for (const auto& [e, c] : terms_) {
        while (static_cast<int>(powers.size()) <= e[idx])
            powers.push_back(powers.back() * repl);
        Exponents e2(e);
        e2[idx] = 0;
        Poly t(vars_, m_);
        t.add_term(e2, c);
        r = r + t * powers[static_cast<std::size_t>(e[idx])];
    }
    return r;
}

Poly Poly::map_vars(const std::vector<std::string>& target_vars,
                    const std::vector<Poly>& images) const {
    Poly r(target_vars, m_);
    for (const auto& [e, c] : terms_) {
        Poly t = constant(target_vars, ArtinScalar(c));
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) t = t * images[i].pow(e[i]);
        r = r + t;
    }
    return r;
}

Poly Poly::with_vars(const std::vector<std::string>& new_vars) const {
    std::vector<Poly> images;
    images.reserve(vars_.size());
    for (const auto& v : vars_) images.push_back(variable(new_vars, m_, v));
    return map_vars(new_vars, images);
}

Poly Poly::fiber() const {
    Poly r(vars_, 1);
    for (const auto& [e, c] : terms_) r.add_term(e, ArtinScalar(1, c.fiber()));
    return r;
}

Poly Poly::retruncate(int m2) const {
    Poly r(vars_, m2);
    for (const auto& [e, c] : terms_) r.add_term(e, c.retruncate(m2));
    return r;
}

std::optional<int> Poly::order() const {
    if (terms_.empty()) return std::nullopt;
    int best = -1;
    for (const auto& [e, c] : terms_) {
        int d = total_degree(e);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

std::optional<int> Poly::order_in(const std::vector<std::string>& subset) const {
    if (terms_.empty()) return std::nullopt;
    std::vector<int> idx;
    for (const auto& v : subset) idx.push_back(var_index(v));
    int best = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int i : idx) d += e[i];
        if (best < 0 || d < best) best = d;
    }
    return best;
}

int Poly::degree() const {
    int best = -1;
    for (const auto& [e, c] : terms_) best = std::max(best, total_degree(e));
    return best;
}

int Poly::degree_in(const std::string& v) const {
    int idx = var_index(v);
    int best = 0;
    for (const auto& [e, c] : terms_) best = std::max(best, e[idx]);
    return best;
}

std::optional<Poly> Poly::exact_divide(const Poly& divisor) const {
    if (divisor.is_zero()) return std::nullopt;
    if (!divisor.leading_coeff().is_unit()) {
        // Leading coefficient must be invertible for the division loop.
        return std::nullopt;
    }
    Poly rem(*this);
    Poly quot(vars_, m_);
    const Exponents& de = divisor.leading_exponents();
    ArtinScalar dinv = divisor.leading_coeff().inverse();
    while (!rem.is_zero()) {
        const Exponents& le = rem.leading_exponents();
        Exponents q(le);
        bool divisible = true;
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] -= de[i];
            if (q[i] < 0) divisible = false;
        }
        if (!divisible) return std::nullopt;
        Poly t(vars_, m_);
        t.add_term(q, rem.leading_coeff() * dinv);
        quot = quot + t;
        rem = rem - t * divisor;
    }
    return quot;
}

const Exponents& Poly::leading_exponents() const {
    const Exponents* best = nullptr;
    for (const auto& [e, c] : terms_)
        if (!best || grevlex_less(*best, e)) best = &e;
    if (!best) throw std::logic_error("leading term of zero polynomial");
    return *best;
}

const ArtinScalar& Poly::leading_coeff() const { return terms_.at(leading_exponents()); }

Poly Poly::adjoin_eps(const std::string& eps_name) const {
    std::vector<std::string> vars(vars_);
    vars.push_back(eps_name);
    Poly r(vars, 1);
    for (const auto& [e, c] : terms_) {
        for (int k = 0; k < c.m(); ++k) {
            if (c.coeff(k) == 0) continue;
            Exponents e2(e);
            e2.push_back(k);
            r.add_term(e2, ArtinScalar(1, c.coeff(k)));
        }
    }
    return r;
}

Poly Poly::absorb_eps(const Poly& p, int m) {
    std::vector<std::string> vars(p.vars().begin(), p.vars().end() - 1);
    Poly r(vars, m);
    for (const auto& [e, c] : p.terms()) {
        int k = e.back();
        if (k >= m) continue;
        Exponents e2(e.begin(), e.end() - 1);
        ArtinScalar s(m);
        s = s + ArtinScalar::eps(m, k) * ArtinScalar(m, c.fiber());
        r.add_term(e2, s);
    }
    return r;
}

namespace {

void print_product(std::ostream& os, const Rat& q, int eps_pow, const Exponents& e,
                   const std::vector<std::string>& vars, bool leading) {
    Rat a = q;
    if (a < 0) {
        os << (leading ? "-" : " - ");
        a = -a;
    } else if (!leading) {
        os << " + ";
    }
    std::vector<std::string> factors;
    if (a != 1) factors.push_back(rat_to_string(a));
    if (eps_pow == 1)
        factors.push_back("eps");
    else if (eps_pow > 1)
        factors.push_back("eps^" + std::to_string(eps_pow));
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (e[i] == 1)
            factors.push_back(vars[i]);
        else
            factors.push_back(vars[i] + "^" + std::to_string(e[i]));
    }
    if (factors.empty()) factors.push_back("1");
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "*";
        os << factors[i];
    }
}

}  // namespace

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    // Collect (monomial, eps-power) atoms; order: grevlex-descending monomial,
    // then increasing eps power.
    std::vector<std::pair<Exponents, int>> atoms;
    for (const auto& [e, c] : terms_)
        for (int k = 0; k < c.m(); ++k)
            if (c.coeff(k) != 0) atoms.emplace_back(e, k);
    std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return grevlex_less(b.first, a.first);
        return a.second < b.second;
    });
    std::ostringstream os;
    bool leading = true;
    for (const auto& [e, k] : atoms) {
        print_product(os, terms_.at(e).coeff(k), k, e, vars_, leading);
        leading = false;
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    const std::vector<std::string>& vars;
    int m;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }

    Poly parse_expr() {
        skip_ws();
        bool neg = accept('-');
        if (!neg) accept('+');
        Poly p = parse_term();
        if (neg) p = -p;
        while (true) {
            skip_ws();
            if (accept('+')) {
                p = p + parse_term();
            } else if (accept('-')) {
                p = p - parse_term();
            } else {
                break;
            }
        }
        return p;
    }

    Poly parse_term() {
        Poly p = parse_factor();
        while (accept('*')) p = p * parse_factor();
        return p;
    }

    int parse_nat() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer", pos);
        return std::stoi(s.substr(start, pos - start));
    }

    Poly parse_factor() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Poly p = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos);
            return maybe_pow(p);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = parse_nat();
            Rat q(num);
            if (accept('/')) q /= Rat(parse_nat());
            q.canonicalize();
            return maybe_pow(Poly::constant(vars, m, q));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
                    s[pos] == '\''))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "eps") {
                int k = 1;
                if (accept('^')) k = parse_nat();
                return Poly::constant(vars, ArtinScalar::eps(m, k));
            }
            auto it = std::find(vars.begin(), vars.end(), name);
            if (it == vars.end()) throw ParseError("unknown variable '" + name + "'", start);
            return maybe_pow(Poly::variable(vars, m, name));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    Poly maybe_pow(const Poly& p) {
        if (accept('^')) return p.pow(parse_nat());
        return p;
    }
};

}  // namespace

Poly Poly::parse(const std::string& text, const std::vector<std::string>& vars, int m) {
    Parser parser{text, 0, vars, m};
    Poly p = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) throw ParseError("trailing input", parser.pos);
    return p;
}

}  // namespace equires
