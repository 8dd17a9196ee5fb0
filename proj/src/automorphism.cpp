#include "zsum/automorphism.hpp"

#include <algorithm>

namespace zsum {

namespace {

struct Enumerator {
  const GroupTable& t;
  std::size_t max_size;
  std::vector<std::uint32_t> gens;   // basis element indices
  std::vector<std::uint32_t> orders;  // n_i of each written coordinate
  std::vector<std::uint32_t> images;
  std::vector<std::uint16_t>* out;
  std::size_t count = 0;
  bool overflow = false;

  void emit() {
    const std::uint32_t n = t.size();
    const std::size_t d = gens.size();
    // multiples[j][a] = a * images[j]
    std::vector<std::vector<std::uint32_t>> multiples(d);
    for (std::size_t j = 0; j < d; ++j) {
      multiples[j].resize(orders[j]);
      std::uint32_t acc = 0;
      for (std::uint32_t a = 0; a < orders[j]; ++a) {
        multiples[j][a] = acc;
        acc = t.add(acc, images[j]);
      }
    }
    bool identity = true;
    std::size_t base = out->size();
    out->resize(base + n);
    for (std::uint32_t x = 0; x < n; ++x) {
      // digits of x, last coordinate fastest
      std::uint32_t rest = x, img = 0;
      for (std::size_t j = d; j-- > 0;) {
        std::uint32_t a = rest % orders[j];
        rest /= orders[j];
        img = t.add(img, multiples[j][a]);
      }
      (*out)[base + x] = static_cast<std::uint16_t>(img);
      identity = identity && img == x;
    }
    if (identity) {
      out->resize(base);
      return;
    }
    ++count;
  }

  void search(std::size_t i, std::vector<std::uint8_t>& image_set) {
    if (overflow) return;
    if (i == gens.size()) {
      if (count + 1 > max_size) {
        overflow = true;
        return;
      }
      emit();
      return;
    }
    const std::uint32_t n = t.size();
    for (std::uint32_t h = 0; h < n; ++h) {
      if (t.order(h) != orders[i]) continue;
      // k*h must avoid the current image subgroup for 0 < k < n_i
      bool ok = true;
      std::uint32_t kh = h;
      for (std::uint32_t k = 1; k < orders[i] && ok; ++k, kh = t.add(kh, h)) ok = !image_set[kh];
      if (!ok) continue;
      std::vector<std::uint8_t> next(n, 0);
      for (std::uint32_t a = 0; a < n; ++a) {
        if (!image_set[a]) continue;
        std::uint32_t v = a;
        for (std::uint32_t k = 0; k < orders[i]; ++k, v = t.add(v, h)) next[v] = 1;
      }
      images[i] = h;
      search(i + 1, next);
      if (overflow) return;
    }
  }
};

}  // namespace

AutomorphismSet::AutomorphismSet(const GroupTable& table, std::size_t max_size) : n_(table.size()) {
  const std::size_t d = table.spec().dimension();
  for (std::size_t fixed = 0; fixed <= d; ++fixed)
    if (enumerate(table, fixed, max_size)) return;
}

bool AutomorphismSet::enumerate(const GroupTable& table, std::size_t fixed, std::size_t max_size) {
  const auto& spec = table.spec();
  const std::size_t d = spec.dimension();
  Enumerator e{table, max_size + 1, {}, {}, {}, &perms_};
  perms_.clear();
  for (std::size_t i = 0; i < d; ++i) {
    if (spec.order(i) == 1) continue;
    e.gens.push_back(table.index(basis(spec, i)));
    e.orders.push_back(static_cast<std::uint32_t>(spec.order(i)));
  }
  // Trivial coordinates were skipped; map the fixed count onto the rest.
  const std::size_t dd = e.gens.size();
  const std::size_t f = std::min(fixed, dd);
  e.images.assign(dd, 0);
  std::vector<std::uint8_t> image_set(table.size(), 0);
  image_set[0] = 1;
  for (std::size_t i = 0; i < f; ++i) {
    e.images[i] = e.gens[i];
    std::vector<std::uint8_t> next(table.size(), 0);
    for (std::uint32_t a = 0; a < table.size(); ++a) {
      if (!image_set[a]) continue;
      std::uint32_t v = a;
      for (std::uint32_t k = 0; k < e.orders[i]; ++k, v = table.add(v, e.gens[i])) next[v] = 1;
    }
    image_set = std::move(next);
  }
  e.search(f, image_set);
  if (e.overflow) {
    perms_.clear();
    return false;
  }
  count_ = e.count;
  fixed_ = fixed;
  return true;
}

}  // namespace zsum
