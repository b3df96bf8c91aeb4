#pragma once

#include <string>

namespace alphaleak {

// The Renyi order alpha as an extended value. Exact 0, 1 and infinity are
// tags of their own; Finite carries alpha > 0, alpha != 1.
class Order {
 public:
  enum class Tag { Zero, One, Infinity, Finite };

  static Order zero() { return Order(Tag::Zero, 0.0); }
  static Order one() { return Order(Tag::One, 1.0); }
  static Order infinity() { return Order(Tag::Infinity, 0.0); }

  // Rejects 0, 1, negative and non-finite payloads; those must use the tags.
  static Order finite(double alpha);

  // Tokens: "0", "1", "inf" (also "infinity"), or a positive decimal.
  static Order parse(const std::string& token);

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::Finite; }

  // Only meaningful for Finite orders.
  double alpha() const;

  // Token form used in CLI output ("0", "1", "inf", or %.15g of alpha).
  std::string str() const;

  friend bool operator==(const Order& a, const Order& b) {
    return a.tag_ == b.tag_ && (a.tag_ != Tag::Finite || a.alpha_ == b.alpha_);
  }

 private:
  Order(Tag tag, double alpha) : tag_(tag), alpha_(alpha) {}

  Tag tag_;
  double alpha_;
};

}  // namespace alphaleak
