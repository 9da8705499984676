#include "ua/pushout.hpp"

namespace ua {

QuotientPushout pushout_of_quotients(const Homomorphism& f, std::span<const ElementPair> pairs) {
  const auto& a = f.source;
  const auto& b = f.target;
  for (auto [x, y] : pairs)
    if (x >= a.size() || y >= a.size()) throw PreconditionError("pair out of range for the source");
  std::vector<ElementPair> image;
  for (auto [x, y] : pairs) image.emplace_back(f(x), f(y));

  auto left = quotient(a, theta(a, pairs).partition());
  auto right = quotient(b, theta(b, image).partition());
  const auto blocks = left.algebra.size();
  std::vector<Element> induced(blocks, 0);
  std::vector<bool> set(blocks, false);
  bool commutes = true;
  for (Element x = 0; x < a.size(); ++x) {
    const Element block = left.canonical(x);
    const Element target = right.canonical(f(x));
    if (!set[block]) {
      induced[block] = target;
      set[block] = true;
    } else if (induced[block] != target) {
      commutes = false;
    }
  }
  commutes = commutes && is_homomorphism(left.algebra, right.algebra, induced).holds;
  Homomorphism mediating{left.algebra, right.algebra, std::move(induced)};
  return QuotientPushout{std::move(left), std::move(right), std::move(mediating), commutes};
}

}  // namespace ua
