#include "alphaleak/order.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "alphaleak/errors.hpp"

namespace alphaleak {

Order Order::finite(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha == 1.0) {
    throw InvalidInput("InvalidOrder",
                       "Finite order requires alpha > 0, alpha != 1; exact "
                       "0/1/inf must use the tags");
  }
  return Order(Tag::Finite, alpha);
}

Order Order::parse(const std::string& token) {
  if (token == "0") return zero();
  if (token == "1") return one();
  if (token == "inf" || token == "infinity") return infinity();
  std::size_t pos = 0;
  double alpha = 0.0;
  try {
    alpha = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw InvalidInput("InvalidOrder", "cannot parse order token '" + token + "'");
  }
  if (pos != token.size()) {
    throw InvalidInput("InvalidOrder", "trailing characters in order token '" + token + "'");
  }
  if (alpha == 0.0) return zero();
  if (alpha == 1.0) return one();
  return finite(alpha);
}

double Order::alpha() const {
  if (tag_ != Tag::Finite) {
    throw std::logic_error("Order::alpha() on a non-finite tag");
  }
  return alpha_;
}

std::string Order::str() const {
  switch (tag_) {
    case Tag::Zero:
      return "0";
    case Tag::One:
      return "1";
    case Tag::Infinity:
      return "inf";
    case Tag::Finite: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.15g", alpha_);
      return buf;
    }
  }
  return {};
}

}  // namespace alphaleak
