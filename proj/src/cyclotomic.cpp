#include "pnorm/cyclotomic.hpp"

#include <sstream>

#include "pnorm/error.hpp"
#include "pnorm/space.hpp"

namespace pnorm {

CyclotomicInt::CyclotomicInt(int p) : c_(std::size_t(p), 0) {
    if (!is_prime(p)) throw Error("cyclotomic order must be prime");
}

CyclotomicInt::CyclotomicInt(int p, std::vector<Coeff> counts) : c_(std::move(counts)) {
    if (!is_prime(p)) throw Error("cyclotomic order must be prime");
    if (int(c_.size()) != p) throw Error("cyclotomic coefficient vector must have length p");
}

CyclotomicInt CyclotomicInt::integer(int p, Coeff v) {
    CyclotomicInt z(p);
    z.c_[0] = v;
    return z;
}

CyclotomicInt CyclotomicInt::root(int p, int j) {
    CyclotomicInt z(p);
    z.c_[std::size_t(((j % p) + p) % p)] = 1;
    return z;
}

CyclotomicInt CyclotomicInt::gauss_sum(int p) {
    CyclotomicInt z(p);
    for (int t = 0; t < p; ++t) z.c_[std::size_t(t * t % p)] += 1;
    return z;
}

CyclotomicInt CyclotomicInt::canonical() const {
    CyclotomicInt z(*this);
    const Coeff top = c_.back();
    for (auto& v : z.c_) v -= top;
    return z;
}

std::optional<CyclotomicInt::Coeff> CyclotomicInt::as_integer() const {
    const auto z = canonical();
    for (std::size_t j = 1; j < z.c_.size(); ++j)
        if (z.c_[j] != 0) return std::nullopt;
    return z.c_[0];
}

CyclotomicInt CyclotomicInt::conj() const {
    CyclotomicInt z(p());
    const int q = p();
    for (int j = 0; j < q; ++j) z.c_[std::size_t((q - j) % q)] = c_[std::size_t(j)];
    return z;
}

CyclotomicInt CyclotomicInt::shifted(int k) const {
    const int q = p();
    k = ((k % q) + q) % q;
    CyclotomicInt z(q);
    for (int j = 0; j < q; ++j) z.c_[std::size_t((j + k) % q)] = c_[std::size_t(j)];
    return z;
}

CyclotomicInt CyclotomicInt::norm_sq() const {
    const int q = p();
    CyclotomicInt z(q);
    for (int d = 0; d < q; ++d) {
        Coeff s = 0;
        for (int j = 0; j < q; ++j) s += c_[std::size_t((j + d) % q)] * c_[std::size_t(j)];
        z.c_[std::size_t(d)] = s;
    }
    return z;
}

void CyclotomicInt::check_same(const CyclotomicInt& o) const {
    if (o.p() != p()) throw Error("mixed cyclotomic orders");
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
    check_same(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
    check_same(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(Coeff s) {
    for (auto& v : c_) v *= s;
    return *this;
}

CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    a.check_same(b);
    const int q = a.p();
    CyclotomicInt z(q);
    for (int i = 0; i < q; ++i) {
        if (!a.c_[std::size_t(i)]) continue;
        for (int j = 0; j < q; ++j) z.c_[std::size_t((i + j) % q)] += a.c_[std::size_t(i)] * b.c_[std::size_t(j)];
    }
    return z;
}

bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.p() != b.p()) return false;
    return a.canonical().c_ == b.canonical().c_;
}

std::string CyclotomicInt::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t j = 0; j < c_.size(); ++j) os << (j ? "," : "") << c_[j];
    os << ']';
    return os.str();
}

}  // namespace pnorm
