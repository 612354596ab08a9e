#include "nij/gaussian.hpp"

#include "nij/error.hpp"

namespace nij {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::UnboundParameter: return "UnboundParameter";
    case ErrorKind::NoSquareRootInField: return "NoSquareRootInField";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPreLie: return "NotPreLie";
    case ErrorKind::NotLie: return "NotLie";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::UndeclaredParameter: return "UndeclaredParameter";
    case ErrorKind::UnsupportedSideCondition: return "UnsupportedSideCondition";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateProduct: return "DuplicateProduct";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

GaussianRational GaussianRational::fraction(long num, long den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in rational literal");
  mpq_class q(num, den);
  q.canonicalize();
  return {q};
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  mpq_class norm = re_ * re_ + im_ * im_;
  return {mpq_class(re_ / norm), mpq_class(-im_ / norm)};
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
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string GaussianRational::to_string(bool bare) const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return imag;
  std::string out = re_.get_str();
  if (sgn(im_) < 0) {
    out += " - " + imag.substr(1);
  } else {
    out += " + " + imag;
  }
  return bare ? out : "(" + out + ")";
}

}  // namespace nij
