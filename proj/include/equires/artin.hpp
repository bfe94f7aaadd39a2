// Exact arithmetic in the truncated polynomial ring A = Q[eps]/(eps^m).
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace equires {

using Rat = mpq_class;

struct NonUnit : std::runtime_error {
    explicit NonUnit(const std::string& what) : std::runtime_error(what) {}
};

// Element of A = Q[eps]/(eps^m): c0 + c1*eps + ... + c_{m-1}*eps^{m-1}.
// m = 1 recovers Q.  All arithmetic truncates eps-degrees >= m.
class ArtinScalar {
public:
    ArtinScalar() : m_(1), c_(1, Rat(0)) {}
    explicit ArtinScalar(int m) : m_(check_m(m)), c_(m, Rat(0)) {}
    ArtinScalar(int m, const Rat& c0) : m_(check_m(m)), c_(m, Rat(0)) { c_[0] = c0; }
    ArtinScalar(int m, std::vector<Rat> coeffs) : m_(check_m(m)), c_(std::move(coeffs)) {
        c_.resize(m_, Rat(0));
        for (auto& x : c_) x.canonicalize();
    }

    static ArtinScalar eps(int m, int power = 1) {
        ArtinScalar s(m);
        if (power < m) s.c_[power] = 1;
        return s;
    }

    int m() const { return m_; }
    const Rat& coeff(int k) const { return c_[k]; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_unit() const { return c_[0] != 0; }
    Rat fiber() const { return c_[0]; }

    // Lowest eps-power with nonzero coefficient; m for the zero scalar.
    int eps_order() const {
        for (int k = 0; k < m_; ++k)
            if (c_[k] != 0) return k;
        return m_;
    }

    ArtinScalar operator-() const {
        ArtinScalar r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }
    ArtinScalar operator+(const ArtinScalar& o) const {
        check_same(o);
        ArtinScalar r(*this);
        for (int k = 0; k < m_; ++k) r.c_[k] += o.c_[k];
        return r;
    }
    ArtinScalar operator-(const ArtinScalar& o) const { return *this + (-o); }
    ArtinScalar operator*(const ArtinScalar& o) const {
        check_same(o);
        ArtinScalar r(m_);
        for (int i = 0; i < m_; ++i) {
            if (c_[i] == 0) continue;
            for (int j = 0; i + j < m_; ++j) {
                if (o.c_[j] == 0) continue;
                r.c_[i + j] += c_[i] * o.c_[j];
            }
        }
        return r;
    }
    ArtinScalar operator*(const Rat& q) const {
        ArtinScalar r(*this);
        for (auto& x : r.c_) x *= q;
        return r;
    }

    // Exact inverse of a unit: solve (c0 + n)(d0 + ...) = 1 by eps-layers.
    ArtinScalar inverse() const {
        if (!is_unit()) throw NonUnit("ArtinScalar::inverse of non-unit");
        ArtinScalar r(m_);
        r.c_[0] = Rat(1) / c_[0];
        for (int k = 1; k < m_; ++k) {
            Rat acc(0);
            for (int i = 1; i <= k; ++i) acc += c_[i] * r.c_[k - i];
            r.c_[k] = -acc / c_[0];
        }
        return r;
    }

    bool operator==(const ArtinScalar& o) const { return m_ == o.m_ && c_ == o.c_; }
    bool operator!=(const ArtinScalar& o) const { return !(*this == o); }

    // Image in Q[eps]/(eps^m2) for m2 <= m (truncation) or m2 >= m (inclusion).
    ArtinScalar retruncate(int m2) const {
        ArtinScalar r(m2);
        for (int k = 0; k < std::min(m_, m2); ++k) r.c_[k] = c_[k];
        return r;
    }

private:
    static int check_m(int m) {
        if (m < 1) throw std::invalid_argument("ArtinScalar: m must be >= 1");
        return m;
    }
    void check_same(const ArtinScalar& o) const {
        if (m_ != o.m_) throw std::invalid_argument("ArtinScalar: mixed truncation orders");
    }

    int m_;
    std::vector<Rat> c_;
};

std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

}  // namespace equires
