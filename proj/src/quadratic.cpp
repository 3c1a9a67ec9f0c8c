#include "hwl/quadratic.hpp"

#include "hwl/errors.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hwl {

QuadraticNumber::QuadraticNumber(mpq_class x, mpq_class y, mpz_class D)
    : x_(std::move(x)), y_(std::move(y)), D_(std::move(D)) {
    if (y_ != 0) {
        if (D_ < 2 || mpz_perfect_square_p(D_.get_mpz_t())) {
            throw std::invalid_argument("QuadraticNumber: D must be a non-square integer >= 2");
        }
    }
    normalize();
}

void QuadraticNumber::normalize() {
    x_.canonicalize();
    y_.canonicalize();
    if (y_ == 0) D_ = 0;
}

mpz_class QuadraticNumber::common_field(const QuadraticNumber& a, const QuadraticNumber& b) {
    if (a.y_ == 0) return b.D_;
    if (b.y_ == 0) return a.D_;
    if (a.D_ != b.D_) throw std::invalid_argument("QuadraticNumber: mixing different quadratic fields");
    return a.D_;
}

QuadraticNumber QuadraticNumber::conjugate() const {
    QuadraticNumber r(*this);
    r.y_ = -r.y_;
    return r;
}

Real QuadraticNumber::to_real(mpfr_bits bits) const {
    Real r(x_, bits);
    if (y_ != 0) r += Real(y_, bits) * sqrt(Real(D_, bits));
    return r;
}

std::string QuadraticNumber::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
    D_ = common_field(*this, o);
    x_ += o.x_;
    y_ += o.y_;
    normalize();
    return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
    D_ = common_field(*this, o);
    x_ -= o.x_;
    y_ -= o.y_;
    normalize();
    return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
    const mpz_class D = common_field(*this, o);
    const mpq_class nx = x_ * o.x_ + y_ * o.y_ * D;
    const mpq_class ny = x_ * o.y_ + y_ * o.x_;
    x_ = nx;
    y_ = ny;
    D_ = D;
    normalize();
    return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
    if (o.is_zero()) throw std::domain_error("QuadraticNumber: division by zero");
    const mpz_class D = common_field(*this, o);
    const mpq_class norm = o.x_ * o.x_ - o.y_ * o.y_ * D;
    QuadraticNumber conj = o.conjugate();
    *this *= conj;
    x_ /= norm;
    y_ /= norm;
    normalize();
    return *this;
}

QuadraticNumber QuadraticNumber::operator-() const {
    QuadraticNumber r(*this);
    r.x_ = -r.x_;
    r.y_ = -r.y_;
    return r;
}

bool operator==(const QuadraticNumber& a, const QuadraticNumber& b) {
    if (a.y_ != 0 && b.y_ != 0 && a.D_ != b.D_) return false;
    return a.x_ == b.x_ && a.y_ == b.y_;
}

QuadraticNumber operator+(QuadraticNumber a, const QuadraticNumber& b) { return a += b; }
QuadraticNumber operator-(QuadraticNumber a, const QuadraticNumber& b) { return a -= b; }
QuadraticNumber operator*(QuadraticNumber a, const QuadraticNumber& b) { return a *= b; }
QuadraticNumber operator/(QuadraticNumber a, const QuadraticNumber& b) { return a /= b; }

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& q) {
    os << q.x();
    if (!q.is_rational()) os << (q.y() < 0 ? " - " : " + ") << abs(q.y()) << "*sqrt(" << q.D() << ")";
    return os;
}

void split_square(const mpz_class& n, mpz_class& s, mpz_class& D, unsigned long trial_limit) {
    if (n <= 0) throw std::invalid_argument("split_square: n must be positive");
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
        D = 1;
        return;
    }
    s = 1;
    D = n;
    for (unsigned long p = 2; p <= trial_limit; p += (p == 2 ? 1 : 2)) {
        const mpz_class sq = mpz_class(p) * p;
        if (sq > D) break;
        while (mpz_divisible_ui_p(D.get_mpz_t(), p * p)) {
            D /= sq;
            s *= p;
        }
    }
    if (mpz_perfect_square_p(D.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), D.get_mpz_t());
        s *= r;
        D = 1;
    }
}

}  // namespace hwl
