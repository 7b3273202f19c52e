#include "varprop/fock.hpp"

#include <bit>

namespace varprop {

namespace {

int parity_below(std::uint64_t word, int m) {
  const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
  return (std::popcount(word & mask) & 1) ? -1 : 1;
}

}  // namespace

FockBasis::FockBasis(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 2 || n_sites > 15) {
    throw std::invalid_argument("FockBasis: n_sites must be in [2, 15]");
  }
  for (std::uint64_t w = 0; w < n_states(); ++w) {
    sectors_[{particle_count(w), sz2(w)}].push_back(w);
  }
}

std::optional<FockBasis::Amplitude> FockBasis::annihilate(std::uint64_t word, int m) {
  if (!occupied(word, m)) return std::nullopt;
  return Amplitude{word ^ (std::uint64_t{1} << m), parity_below(word, m)};
}

std::optional<FockBasis::Amplitude> FockBasis::create(std::uint64_t word, int m) {
  if (occupied(word, m)) return std::nullopt;
  return Amplitude{word ^ (std::uint64_t{1} << m), parity_below(word, m)};
}

std::optional<FockBasis::Amplitude> FockBasis::hop(std::uint64_t word, int site_to,
                                                   int site_from, Spin spin) {
  const auto a = annihilate(word, mode(site_from, spin));
  if (!a) return std::nullopt;
  const auto c = create(a->word, mode(site_to, spin));
  if (!c) return std::nullopt;
  return Amplitude{c->word, a->sign * c->sign};
}

int FockBasis::particle_count(std::uint64_t word) const { return std::popcount(word); }

int FockBasis::sz2(std::uint64_t word) const {
  int up = 0, down = 0;
  for (int s = 0; s < n_sites_; ++s) {
    up += occupied(word, mode(s, Spin::kUp));
    down += occupied(word, mode(s, Spin::kDown));
  }
  return up - down;
}

int FockBasis::doublon_count(std::uint64_t word) const {
  int n = 0;
  for (int s = 0; s < n_sites_; ++s) {
    n += occupied(word, mode(s, Spin::kUp)) && occupied(word, mode(s, Spin::kDown));
  }
  return n;
}

bool FockBasis::singly_occupied(std::uint64_t word) const {
  for (int s = 0; s < n_sites_; ++s) {
    if (occupied(word, mode(s, Spin::kUp)) + occupied(word, mode(s, Spin::kDown)) != 1) {
      return false;
    }
  }
  return true;
}

std::uint64_t FockBasis::spin_word(std::uint64_t word) const {
  std::uint64_t out = 0;
  for (int s = 0; s < n_sites_; ++s) {
    if (occupied(word, mode(s, Spin::kUp))) out |= std::uint64_t{1} << s;
  }
  return out;
}

const std::vector<std::uint64_t>& FockBasis::sector(int n_particles, int sz2) const {
  static const std::vector<std::uint64_t> kEmpty;
  const auto it = sectors_.find({n_particles, sz2});
  return it == sectors_.end() ? kEmpty : it->second;
}

std::vector<std::uint64_t> FockBasis::half_filled_sector() const {
  std::vector<std::uint64_t> out;
  for (int sz = -n_sites_; sz <= n_sites_; ++sz) {
    const auto& sec = sector(n_sites_, sz);
    out.insert(out.end(), sec.begin(), sec.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> FockBasis::singly_occupied_words() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t w = 0; w < n_states(); ++w) {
    if (singly_occupied(w)) out.push_back(w);
  }
  std::sort(out.begin(), out.end(),
            [this](std::uint64_t a, std::uint64_t b) { return spin_word(a) < spin_word(b); });
  return out;
}

}  // namespace varprop
