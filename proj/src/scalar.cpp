#include "kepler/scalar.hpp"

#include <stdexcept>

namespace kepler {

GaussianRational::GaussianRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::fraction(long num, long den) {
  if (den == 0) throw std::domain_error("GaussianRational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return {q};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.isZero()) throw std::domain_error("GaussianRational: division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

mpz_class GaussianRational::denominator() const {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), re_.get_den_mpz_t(), im_.get_den_mpz_t());
  return l;
}

std::string rationalString(const mpq_class& q) { return q.get_str(); }

mpq_class rationalPow(const mpq_class& base, int exponent) {
  if (exponent < 0) {
    if (sgn(base) == 0) throw std::domain_error("rationalPow: zero to negative power");
    mpq_class inv = 1 / base;
    return rationalPow(inv, -exponent);
  }
  mpq_class out = 1;
  mpq_class b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) out *= b;
    b *= b;
    e >>= 1U;
  }
  return out;
}

std::string GaussianRational::toString() const {
  const bool hasRe = sgn(re_) != 0;
  const bool hasIm = sgn(im_) != 0;
  if (!hasRe && !hasIm) return "0";
  std::string out;
  if (hasRe) out = re_.get_str();
  if (hasIm) {
    std::string im;
    if (im_ == 1) {
      im = "i";
    } else if (im_ == -1) {
      im = "-i";
    } else {
      im = im_.get_str() + "i";
    }
    if (hasRe && im.front() != '-') out += '+';
    out += im;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.toString(); }

}  // namespace kepler
