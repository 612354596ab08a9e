#include "nij/format.hpp"

namespace nij {

namespace {

bool leading_negative(const GaussianRational& c) {
  if (sgn(c.re()) != 0) return sgn(c.re()) < 0 && c.is_real();
  return sgn(c.im()) < 0;
}

}  // namespace

std::string format_linear_combination(const std::vector<std::pair<Scalar, std::string>>& terms) {
  std::string out;
  for (const auto& [c, label] : terms) {
    if (c.is_zero()) continue;
    bool negative = false;
    std::string body;
    const Polynomial& num = c.numerator();
    if (num.terms().size() == 1 && leading_negative(num.leading_coefficient())) {
      negative = true;
      Scalar mag = -c;
      body = mag.is_one() ? "" : mag.to_string();
    } else if (c.is_one()) {
      body = "";
    } else if (num.terms().size() > 1 && c.denominator() == Polynomial(1)) {
      body = "(" + c.to_string() + ")";
    } else {
      body = c.to_string();
    }
    std::string piece = body.empty() ? label : body + " " + label;
    if (out.empty()) {
      out = negative ? "- " + piece : piece;
    } else {
      out += negative ? " - " + piece : " + " + piece;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace nij
